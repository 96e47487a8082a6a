"""Canonical JSON and CSV encodings of results.

Both encoders are byte-stable: keys are sorted, exact scalars are written as
``"p/q"`` strings and rows keep their input order.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from charderiv.core.errors import PreconditionError
from charderiv.core.scalars import ExactScalar

FORMATS = ("json", "csv")


def _numeric(value: ExactScalar) -> float | dict[str, float]:
    if value.is_real:
        return float(value.re)
    return {"re": float(value.re), "im": float(value.im)}


def to_plain(obj: Any, numeric: bool = False) -> Any:
    """JSON-ready copy of ``obj``: exact scalars become strings, or doubles with ``numeric``."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        obj = ExactScalar.coerce(obj)
    if isinstance(obj, ExactScalar):
        return _numeric(obj) if numeric else str(obj)
    if isinstance(obj, float):
        return obj
    if hasattr(obj, "to_json"):
        return to_plain(obj.to_json(), numeric)
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_plain(asdict(obj), numeric)
    if isinstance(obj, Mapping):
        return {str(k): to_plain(v, numeric) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v, numeric) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def emit_json(result: Any, numeric: bool = False) -> bytes:
    text = json.dumps(to_plain(result, numeric), sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return (text + "\n").encode("utf-8")


def emit_csv(rows: Iterable[Mapping[str, Any]], fields: Sequence[str] | None = None, numeric: bool = False) -> bytes:
    """Header row then one line per mapping; ``fields`` defaults to the sorted keys of the first row."""
    rows = [to_plain(row, numeric) for row in rows]
    if fields is None:
        fields = sorted(rows[0]) if rows else []
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fields), lineterminator="\n", extrasaction="raise")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(v) for k, v in row.items()})
    return buffer.getvalue().encode("utf-8")


def _cell(value: Any) -> str:
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


MOMENT_FIELDS = ("k", "alpha", "h", "exp_coeff", "pi_power", "one_minus_t_power", "poly_t")


def moment_rows(results: Iterable[Any]) -> list[dict[str, Any]]:
    """One CSV row per moment result; ``poly_t`` is ``m:coeff`` pairs joined by ``;``."""
    rows = []
    for result in results:
        payload = result.to_json()
        prefactor = payload["prefactor"]
        rows.append({
            "k": payload["k"],
            "alpha": " ".join(str(a) for a in payload.get("alpha", [])),
            "h": " ".join(str(a) for a in payload.get("h", [])),
            "exp_coeff": prefactor["exp_coeff"],
            "pi_power": prefactor["pi_power"],
            "one_minus_t_power": prefactor["one_minus_t_power"],
            "poly_t": ";".join(f"{m}:{c}" for m, c in payload["poly_t"]),
        })
    return rows


def emit(result: Any, fmt: str, numeric: bool = False) -> bytes:
    """Encode ``result`` as ``json`` or ``csv``.

    CSV takes a sequence of mappings or of moment results; anything else is
    written as a single ``value`` column.
    """
    if fmt == "json":
        return emit_json(result, numeric)
    if fmt != "csv":
        raise PreconditionError(f"unknown output format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if isinstance(result, (list, tuple)) and result and hasattr(result[0], "poly_t"):
        return emit_csv(moment_rows(result), MOMENT_FIELDS, numeric)
    if hasattr(result, "poly_t"):
        return emit_csv(moment_rows([result]), MOMENT_FIELDS, numeric)
    if isinstance(result, (list, tuple)) and result and all(is_dataclass(r) for r in result):
        return emit_csv([asdict(r) for r in result], numeric=numeric)
    if isinstance(result, (list, tuple)) and all(isinstance(r, Mapping) for r in result):
        return emit_csv(result, numeric=numeric)
    return emit_csv([{"value": result}], ["value"], numeric)
