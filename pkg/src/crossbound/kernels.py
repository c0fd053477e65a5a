"""Backend selection for the O(M^2) pair loops and the objective grid scan.

The compiled module is used when it was built; set ``CROSSBOUND_PURE_PYTHON=1``
to force the fallback.  Inputs are ``array.array`` buffers ('q' for upper-pair
indices, 'Q' for lower-subset bitmasks).
"""

import os

from . import _pykernels

python_backend = _pykernels
compiled_backend = None

if not os.environ.get("CROSSBOUND_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if active is compiled_backend else "python"

pair_class_totals = active.pair_class_totals
shared_upper_profile = active.shared_upper_profile
distinct_curves = active.distinct_curves
objective_grid_min = active.objective_grid_min


def available_backends():
    """Mapping of backend name to module, compiled first when present."""
    out = {}
    if compiled_backend is not None:
        out["cython"] = compiled_backend
    out["python"] = python_backend
    return out
