"""JSON documents for distributions, statistics and constraints; CSV samples.

Distribution document::

    {"axes": [{"name": "X", "labels": ["0", "1"]}, ...],
     "probs": [0.4, 0.1, 0.1, 0.4]}

Statistic document::

    {"block": [0, 1], "output": {"name": "Y", "labels": ["0", "1"]},
     "map": {"0,0": "0", "0,1": "1", "1,0": "1", "1,1": "0"}}

Constraint document (a file may hold one object or a list of them)::

    {"values": [0, 1], "target": 0.7}

Floats are written with ``repr``, the shortest decimal that round-trips.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .dist import Axis, JointDistribution, Statistic
from .errors import EmptyTable, NPInfoError, ParseError, ShapeMismatch, UnknownLabel
from .maxent import MomentConstraint
from .partitions import parse_partition

__all__ = [
    "SampleTable",
    "parse_distribution",
    "serialize_distribution",
    "parse_axes",
    "parse_statistic",
    "serialize_statistic",
    "parse_constraints",
    "parse_partition",
    "read_samples",
    "estimate_from_samples",
]


def _load(text: bytes | str):
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"document is not UTF-8 (byte {exc.start})") from None
    try:
        return text, json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at byte {exc.pos}: {exc.msg}") from None


def _offset(text: str, key: str) -> int:
    pos = text.find(f'"{key}"')
    return len(text[:pos].encode("utf-8")) if pos >= 0 else 0


def _axis(obj) -> Axis:
    if not isinstance(obj, dict) or "name" not in obj or "labels" not in obj:
        raise ParseError(f"axis entry must have 'name' and 'labels', got {obj!r}")
    labels = obj["labels"]
    if not isinstance(labels, list) or not all(isinstance(l, str) for l in labels):
        raise ParseError(f"labels of axis {obj['name']!r} must be a list of strings")
    return Axis(str(obj["name"]), tuple(labels))


def parse_axes(text: bytes | str) -> list[Axis]:
    """Axis declarations: ``{"axes": [...]}`` or a bare list."""
    _, doc = _load(text)
    if isinstance(doc, dict):
        doc = doc.get("axes")
    if not isinstance(doc, list) or not doc:
        raise ParseError("expected a nonempty list of axes")
    return [_axis(a) for a in doc]


def parse_distribution(text: bytes | str) -> JointDistribution:
    raw, doc = _load(text)
    if not isinstance(doc, dict) or "axes" not in doc or "probs" not in doc:
        raise ParseError("distribution document needs 'axes' and 'probs'")
    if not isinstance(doc["axes"], list) or not doc["axes"]:
        raise ParseError("'axes' must be a nonempty list")
    axes = [_axis(a) for a in doc["axes"]]
    probs = doc["probs"]
    if not isinstance(probs, list) or not all(
        isinstance(p, (int, float)) and not isinstance(p, bool) for p in probs
    ):
        raise ParseError(f"'probs' must be a flat list of numbers (byte {_offset(raw, 'probs')})")
    size = int(np.prod([a.cardinality for a in axes], dtype=int))
    if len(probs) != size:
        raise ShapeMismatch(
            f"'probs' has {len(probs)} entries, axes need {size} (byte {_offset(raw, 'probs')})"
        )
    try:
        return JointDistribution(axes, probs)
    except NPInfoError as exc:
        raise type(exc)(f"{exc} (byte {_offset(raw, 'probs')})") from None


def serialize_distribution(dist: JointDistribution) -> str:
    doc = {
        "axes": [{"name": a.name, "labels": list(a.labels)} for a in dist.axes],
        "probs": [float(p) for p in dist.probs],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_statistic(text: bytes | str) -> Statistic:
    _, doc = _load(text)
    try:
        block = [int(i) for i in doc["block"]]
        output = _axis(doc["output"])
        mapping = {tuple(k.split(",")): str(v) for k, v in doc["map"].items()}
    except (KeyError, TypeError, ValueError, AttributeError):
        raise ParseError("statistic document needs 'block', 'output' and 'map'") from None
    return Statistic(tuple(sorted(block)), output, mapping)


def serialize_statistic(stat: Statistic) -> str:
    doc = {
        "block": list(stat.block),
        "output": {"name": stat.output.name, "labels": list(stat.output.labels)},
        "map": {",".join(k): v for k, v in stat.mapping.items()},
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_constraints(text: bytes | str) -> list[MomentConstraint]:
    _, doc = _load(text)
    if isinstance(doc, dict) and "constraints" in doc:
        doc = doc["constraints"]
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list):
        raise ParseError("constraints must be an object or a list of objects")
    out = []
    for k, c in enumerate(doc):
        try:
            out.append(MomentConstraint(np.array(c["values"], dtype=float), float(c["target"])))
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"constraint {k} needs numeric 'values' and 'target'") from None
    return out


@dataclass(frozen=True)
class SampleTable:
    column_names: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "column_names", tuple(self.column_names))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        width = len(self.column_names)
        for n, row in enumerate(self.rows):
            if len(row) != width:
                raise ParseError(f"row {n + 1} has {len(row)} fields, header has {width}")


def read_samples(text: bytes | str) -> SampleTable:
    """CSV with a header row of axis names; labels stay raw strings."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyTable("sample file has no header row") from None
    except csv.Error as exc:
        raise ParseError(f"bad CSV: {exc}") from None
    try:
        rows = [row for row in reader if row]
    except csv.Error as exc:
        raise ParseError(f"bad CSV: {exc}") from None
    return SampleTable(tuple(header), tuple(tuple(r) for r in rows))


def estimate_from_samples(table: SampleTable, axes: Sequence[Axis], smoothing: float = 0.0) -> JointDistribution:
    """Plug-in estimate ``(count + smoothing) / (total + smoothing * cells)``."""
    if smoothing < 0:
        raise ValueError("smoothing must be nonnegative")
    if not table.rows:
        raise EmptyTable("no samples")
    axes = list(axes)
    try:
        cols = [table.column_names.index(a.name) for a in axes]
    except ValueError:
        raise UnknownLabel(
            f"columns {table.column_names} do not match axes {[a.name for a in axes]}"
        ) from None
    lookups = [{l: i for i, l in enumerate(a.labels)} for a in axes]
    counts = np.zeros(tuple(a.cardinality for a in axes))
    for n, row in enumerate(table.rows):
        idx = []
        for a, c, lk in zip(axes, cols, lookups):
            try:
                idx.append(lk[row[c]])
            except KeyError:
                raise UnknownLabel(f"row {n + 1}: {row[c]!r} is not a label of axis {a.name!r}") from None
        counts[tuple(idx)] += 1
    probs = (counts + smoothing) / (len(table.rows) + smoothing * counts.size)
    return JointDistribution(axes, probs)
