"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py --p 6 --q 12 --k 5 --repeat 3
"""

import argparse
import timeit

from crossbound import kernels
from crossbound.family import FamilySpec, _arrays, family_size


def cases(spec):
    upper, lower = _arrays(spec, cap=None)
    return {
        "pair_class_totals": lambda impl: impl.pair_class_totals(upper),
        "shared_upper_profile": lambda impl: impl.shared_upper_profile(upper),
        "distinct_curves": lambda impl: impl.distinct_curves(upper, lower),
        "objective_grid_min": lambda impl: impl.objective_grid_min(5000, 1e-4),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=6)
    ap.add_argument("--q", type=int, default=12)
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    spec = FamilySpec(args.p, args.q, args.k)
    backends = kernels.available_backends()
    print(f"family (p={spec.p}, q={spec.q}, k={spec.k}), M = {family_size(spec)}; backends: {', '.join(backends)}")
    print(f"{'kernel':<22}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for name, call in cases(spec).items():
        times = {}
        for bname, impl in backends.items():
            times[bname] = min(timeit.repeat(lambda: call(impl), number=1, repeat=args.repeat))
        row = f"{name:<22}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times.values())
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
