"""
Result records for command-line answers and their text/JSON rendering.
"""

import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional

import pandas as pd
from pydantic import BaseModel, Field

from . import __version__
from .derivation_complex import LiePresentation

logger = logging.getLogger(__name__)

REPORT_VERSION = __version__


class Certification(BaseModel):
    """Which degrees of an answer are proved exact"""
    window: Optional[str] = None
    length_bound: Optional[int] = None
    certified_degrees: List[int] = Field(default_factory=list)
    edge_degrees: List[int] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)


class ResultRecord(BaseModel):
    query: Dict[str, Any]
    answer: Dict[str, Any] = Field(default_factory=dict)
    certification: Certification = Field(default_factory=Certification)
    routes: List[str] = Field(default_factory=list)
    version: str = REPORT_VERSION
    timing: float = 0.0
    status: str = "ok"
    disagreement: Optional[Dict[str, Any]] = None
    error: Optional[str] = None


def serialize_value(value: Any) -> Any:
    """JSON-safe copy: Fractions become "p/q" strings, keys become strings"""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Mapping):
        return {str(k): serialize_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [serialize_value(v) for v in value]
    return value


def dimension_answer(dimensions: Mapping[int, int], certified: Optional[List[int]] = None) -> Dict[str, Any]:
    """Dimension table restricted to certified degrees"""
    keep = sorted(dimensions) if certified is None else sorted(d for d in dimensions if d in certified)
    return {"dimensions": {str(degree): int(dimensions[degree]) for degree in keep}}


def lie_answer(lie: LiePresentation) -> Dict[str, Any]:
    triples = []
    for (i, j), value in sorted(lie.brackets.items()):
        if value is None:
            continue
        triples.extend([i, j, k, str(c)] for k, c in enumerate(value) if c)
    return {
        "dimension": lie.dimension,
        "basis": lie.labels,
        "grading": list(lie.grading),
        "abelian": lie.is_abelian,
        "structure_constants": triples,
        "cocycles": lie.cocycle_dimension,
        "boundaries": lie.boundary_dimension,
        "well_defined": lie.well_defined,
    }


def dimension_disagreement(tables: Mapping[str, Mapping[int, int]], degrees: List[int]) -> Optional[Dict[str, Any]]:
    """Degrees on which the route tables differ, or None"""
    names = list(tables)
    differing = [
        degree for degree in degrees
        if len({tables[name].get(degree) for name in names}) > 1
    ]
    if not differing:
        return None
    return {
        "degrees": differing,
        "tables": {name: {str(d): tables[name].get(d) for d in degrees} for name in names},
    }


def _table(dimensions: Mapping[str, Any], value_name: str = "dimension") -> str:
    frame = pd.DataFrame(
        {"degree": [int(k) for k in dimensions], value_name: list(dimensions.values())}
    )
    return frame.to_string(index=False)


def _render_text(record: ResultRecord) -> str:
    lines = [f"query: {json.dumps(serialize_value(record.query), sort_keys=True)}", f"status: {record.status}"]
    if record.error:
        lines.append(f"error: {record.error}")

    answer = record.answer
    if "dimensions" in answer and answer["dimensions"]:
        lines.append("")
        lines.append(_table(answer["dimensions"]))
    if "basis" in answer:
        lines.append("")
        lines.append(f"Lie algebra of dimension {answer['dimension']} ({'abelian' if answer['abelian'] else 'non-abelian'})")
        if answer["basis"]:
            basis = pd.DataFrame({"index": range(len(answer["basis"])), "degree": answer["grading"], "basis": answer["basis"]})
            lines.append(basis.to_string(index=False))
        if answer["structure_constants"]:
            triples = pd.DataFrame(answer["structure_constants"], columns=["i", "j", "k", "value"])
            lines.append(triples.to_string(index=False))
    for key, value in answer.items():
        if key in ("dimensions", "basis", "grading", "abelian", "structure_constants", "dimension"):
            continue
        if key == "routes" and isinstance(value, Mapping):
            for route, table in value.items():
                lines.append("")
                lines.append(f"route {route}:")
                lines.append(_table(table) if table else "  (empty)")
            continue
        lines.append(f"{key}: {serialize_value(value)}")

    if record.disagreement:
        lines.append("")
        lines.append("diff:")
        for degree in record.disagreement["degrees"]:
            values = ", ".join(
                f"{name}={table.get(str(degree))}" for name, table in record.disagreement["tables"].items()
            )
            lines.append(f"  H^{degree}: {values}")

    cert = record.certification
    lines.append("")
    lines.append(f"window: {cert.window}  length bound: {cert.length_bound}")
    lines.append(f"certified degrees: {cert.certified_degrees}")
    if cert.edge_degrees:
        lines.append(f"edge degrees: {cert.edge_degrees}")
    lines.extend(f"note: {note}" for note in cert.notes)
    lines.append(f"routes: {', '.join(record.routes) or '-'}  version: {record.version}  time: {record.timing:.3f}s")
    return "\n".join(lines) + "\n"


def emit_report(record: ResultRecord, format: str = "text") -> bytes:
    if format == "json":
        payload = serialize_value(record.model_dump(mode="python"))
        return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")
    if format == "text":
        return _render_text(record).encode("utf-8")
    raise ValueError(f"Unknown report format {format!r}")
