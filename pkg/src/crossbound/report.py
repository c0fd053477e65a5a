"""Report envelopes, JSON/CSV serialization and the shipped JSON schema."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from fractions import Fraction
from importlib import resources

from mpmath import mp, mpf

from . import __version__

SCHEMA_ID = "crossbound.report/1"
REAL_DIGITS = 15
CSV_COLUMNS = (
    "alpha", "g", "feasible", "q", "k", "p",
    "leading_constant", "symmetric_constant", "bjp_upper", "bjp_lower",
)


def real(value):
    """Round a real to REAL_DIGITS significant digits as a JSON float."""
    if isinstance(value, mpf):
        return float(mp.nstr(value, REAL_DIGITS, strip_zeros=False))
    return float(f"{float(value):.{REAL_DIGITS}g}")


def jsonable(obj):
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return int(obj)
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else real(obj)
    if isinstance(obj, (float, mpf)):
        return real(obj)
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "__int__") and type(obj).__name__ == "mpz":
        return int(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def envelope(command: str, inputs: dict, outputs: dict, precision_used: int) -> dict:
    return {
        "schema": SCHEMA_ID,
        "command": command,
        "inputs": jsonable(inputs),
        "outputs": jsonable(outputs),
        "tool_version": __version__,
        "precision_used": int(precision_used),
    }


def dumps(env: dict) -> str:
    return json.dumps(env, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)


def load_schema() -> dict:
    return json.loads(resources.files("crossbound").joinpath("schema/report.schema.json").read_text("utf-8"))


def csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(["" if row[c] is None else _csv_cell(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)
