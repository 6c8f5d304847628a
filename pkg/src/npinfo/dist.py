"""Immutable discrete joint distributions over named finite axes.

A :class:`JointDistribution` is a nonnegative tensor with one dimension per
:class:`Axis`, stored row-major and summing to one.  All operations here are
pure: they never mutate their inputs and always return new objects.

Sums over cells go through :func:`math.fsum`.  Because ``fsum`` is correctly
rounded, every marginal is independent of the order in which cells are
visited, which makes relabelled distributions produce bit-identical
functionals.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Union

import numpy as np

from .errors import (
    AxisNameCollision,
    BadAxisIndex,
    BadLabel,
    EmptyKeepSet,
    IncompleteMap,
    InvalidPartition,
    NegativeProbability,
    NormalizationError,
    NotABijection,
    ShapeMismatch,
    ZeroConditioningEvent,
)

__all__ = [
    "Axis",
    "JointDistribution",
    "Partition",
    "Statistic",
    "new_joint",
    "relabel",
    "marginalize",
    "condition",
    "product_independent",
    "embed_statistic",
    "product_marginal",
]

NORMALIZATION_TOL = 1e-9
# Sums this close to one are treated as already normalized, so that
# serialize -> parse round trips do not perturb the last bit.
_UNIT_SLACK = 8 * np.finfo(float).eps

AxisRef = Union[int, str]


@dataclass(frozen=True)
class Axis:
    """A named finite proposition space with ordered, distinct labels."""

    name: str
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(str(label) for label in self.labels)
        object.__setattr__(self, "name", str(self.name))
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ShapeMismatch(f"axis {self.name!r} has no labels")
        if len(set(labels)) != len(labels):
            raise BadLabel(f"axis {self.name!r} has duplicate labels")

    @property
    def cardinality(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise BadLabel(f"label {label!r} not on axis {self.name!r}") from None

    @classmethod
    def range(cls, name: str, n: int) -> "Axis":
        """Axis with labels ``"0" .. str(n - 1)``."""
        return cls(name, tuple(str(i) for i in range(n)))


def _fsum_keep(arr: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Correctly rounded marginal of ``arr`` over the axes in ``keep`` (in that order)."""
    keep = list(keep)
    drop = [i for i in range(arr.ndim) if i not in keep]
    if not drop:
        return np.array(np.transpose(arr, keep), dtype=float)
    moved = np.transpose(arr, keep + drop)
    kept_shape = moved.shape[: len(keep)]
    rows = moved.reshape(int(np.prod(kept_shape, dtype=int)), -1)
    out = np.fromiter((math.fsum(row) for row in rows), dtype=float, count=rows.shape[0])
    return out.reshape(kept_shape)


class JointDistribution:
    """Normalized probability tensor over an ordered tuple of axes.

    Use :func:`new_joint` (or the constructor, which is the same thing) to
    build one from a flat row-major sequence or an already shaped array.
    The underlying array is read-only.
    """

    __slots__ = ("_axes", "_table")

    def __init__(self, axes: Iterable[Axis], probs) -> None:
        axes = tuple(axes)
        names = [a.name for a in axes]
        if len(set(names)) != len(names):
            raise AxisNameCollision(f"duplicate axis names in {names}")
        shape = tuple(a.cardinality for a in axes)
        arr = np.array(probs, dtype=float)
        size = int(np.prod(shape, dtype=int))
        if arr.shape != shape:
            if arr.ndim != 1 or arr.size != size:
                raise ShapeMismatch(
                    f"expected {size} probabilities for shape {shape}, got {arr.size}"
                )
            arr = arr.reshape(shape)
        if not np.all(np.isfinite(arr)):
            raise NormalizationError("probabilities must be finite")
        if np.any(arr < 0):
            raise NegativeProbability(f"negative entry {arr.min()!r}")
        total = math.fsum(arr.ravel())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(f"probabilities sum to {total!r}, not 1")
        if abs(total - 1.0) > _UNIT_SLACK:
            arr = arr / total
        self._axes = axes
        self._table = arr
        arr.flags.writeable = False

    @classmethod
    def _wrap(cls, axes: tuple[Axis, ...], table: np.ndarray) -> "JointDistribution":
        # Trusted internal constructor: no validation, no renormalization.
        obj = cls.__new__(cls)
        obj._axes = axes
        table = np.ascontiguousarray(table, dtype=float)
        table.flags.writeable = False
        obj._table = table
        return obj

    @property
    def axes(self) -> tuple[Axis, ...]:
        return self._axes

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self._axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return self._table.shape

    @property
    def n_axes(self) -> int:
        return len(self._axes)

    @property
    def table(self) -> np.ndarray:
        """Read-only probability tensor, one dimension per axis."""
        return self._table

    @property
    def probs(self) -> np.ndarray:
        """Read-only flat row-major view of the probabilities."""
        return self._table.reshape(-1)

    def axis_index(self, ref: AxisRef) -> int:
        if isinstance(ref, (int, np.integer)) and not isinstance(ref, bool):
            if 0 <= ref < self.n_axes:
                return int(ref)
            raise BadAxisIndex(f"axis index {ref} out of range for {self.n_axes} axes")
        try:
            return self.names.index(str(ref))
        except ValueError:
            raise BadAxisIndex(f"no axis named {ref!r}") from None

    def axis_set(self, refs: Iterable[AxisRef]) -> tuple[int, ...]:
        """Resolve names or indices to a sorted tuple of distinct indices."""
        if isinstance(refs, (int, str, np.integer)):
            refs = [refs]
        return tuple(sorted({self.axis_index(r) for r in refs}))

    def cells(self):
        """Yield ``(labels, probability)`` for every cell in row-major order."""
        for idx in itertools.product(*(range(c) for c in self.shape)):
            yield tuple(a.labels[i] for a, i in zip(self._axes, idx)), float(self._table[idx])

    def prob(self, *labels: str) -> float:
        idx = tuple(a.index(l) for a, l in zip(self._axes, labels))
        if len(idx) != self.n_axes:
            raise ShapeMismatch(f"expected {self.n_axes} labels, got {len(labels)}")
        return float(self._table[idx])

    def marginal_table(self, keep: Sequence[int]) -> np.ndarray:
        """Marginal tensor over ``keep`` with dimensions in the given order."""
        return _fsum_keep(self._table, keep)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JointDistribution):
            return NotImplemented
        return self._axes == other._axes and np.array_equal(self._table, other._table)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        dims = ", ".join(f"{a.name}[{a.cardinality}]" for a in self._axes)
        return f"JointDistribution({dims})"


def new_joint(axes: Iterable[Axis], probs) -> JointDistribution:
    """Validate and build a joint distribution from row-major probabilities."""
    return JointDistribution(axes, probs)


@dataclass(frozen=True)
class Partition:
    """Disjoint, nonempty blocks of axis indices.

    Block order is preserved since the chain rule depends on it; indices
    inside a block are sorted.  Coverage of a particular distribution is
    checked by :meth:`validate`.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = []
        seen: set[int] = set()
        for block in self.blocks:
            block = tuple(sorted(int(i) for i in block))
            if not block:
                raise InvalidPartition("empty block")
            if len(set(block)) != len(block) or seen.intersection(block):
                raise InvalidPartition(f"index repeated in blocks {self.blocks}")
            seen.update(block)
            blocks.append(block)
        if not blocks:
            raise InvalidPartition("partition has no blocks")
        object.__setattr__(self, "blocks", tuple(blocks))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple((i,) for i in range(n)))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls((tuple(range(n)),))

    @property
    def indices(self) -> frozenset[int]:
        return frozenset(i for b in self.blocks for i in b)

    def __len__(self) -> int:
        return len(self.blocks)

    def validate(self, n_axes: int) -> "Partition":
        if self.indices != frozenset(range(n_axes)):
            raise InvalidPartition(
                f"partition {self} does not cover axes 0..{n_axes - 1} exactly"
            )
        return self

    def reordered(self, order: Sequence[int]) -> "Partition":
        return Partition(tuple(self.blocks[k] for k in order))

    def __str__(self) -> str:
        return "|".join(",".join(str(i) for i in b) for b in self.blocks)


@dataclass(frozen=True, eq=False)
class Statistic:
    """Deterministic map from the joint labels of ``block`` onto ``output``.

    ``mapping`` keys are label tuples, one label per axis of ``block`` in
    ascending axis order.
    """

    block: tuple[int, ...]
    output: Axis
    mapping: Mapping[tuple[str, ...], str] = field(repr=False)

    def __post_init__(self) -> None:
        block = tuple(int(i) for i in self.block)
        if not block:
            raise BadAxisIndex("statistic needs a nonempty domain block")
        if len(set(block)) != len(block):
            raise BadAxisIndex(f"repeated index in statistic block {block}")
        if list(block) != sorted(block):
            raise BadAxisIndex(f"statistic block must be ascending, got {block}")
        mapping = {}
        for key, value in self.mapping.items():
            if isinstance(key, str):
                key = (key,)
            mapping[tuple(str(k) for k in key)] = str(value)
        bad = {v for v in mapping.values() if v not in self.output.labels}
        if bad:
            raise BadLabel(f"map images {sorted(bad)} not on output axis {self.output.name!r}")
        object.__setattr__(self, "block", block)
        object.__setattr__(self, "mapping", MappingProxyType(mapping))

    @classmethod
    def from_function(cls, dist: JointDistribution, block, fn, output: Axis) -> "Statistic":
        """Tabulate ``fn(*labels)`` over the block's label space."""
        block = dist.axis_set(block)
        spaces = [dist.axes[i].labels for i in block]
        return cls(block, output, {key: fn(*key) for key in itertools.product(*spaces)})

    @classmethod
    def identity(cls, dist: JointDistribution, axis: AxisRef, name: str) -> "Statistic":
        i = dist.axis_index(axis)
        src = dist.axes[i]
        return cls((i,), Axis(name, src.labels), {(l,): l for l in src.labels})

    @classmethod
    def constant(cls, dist: JointDistribution, block, name: str, value: str = "c") -> "Statistic":
        return cls.from_function(dist, block, lambda *_: value, Axis(name, (value,)))

    def index_table(self, dist: JointDistribution) -> np.ndarray:
        """Output label index for every joint label of the block, shaped by the block."""
        for i in self.block:
            dist.axis_index(i)
        spaces = [dist.axes[i].labels for i in self.block]
        shape = tuple(len(s) for s in spaces)
        out = np.empty(shape, dtype=np.intp)
        lookup = {l: j for j, l in enumerate(self.output.labels)}
        for idx in itertools.product(*(range(n) for n in shape)):
            key = tuple(s[i] for s, i in zip(spaces, idx))
            try:
                out[idx] = lookup[self.mapping[key]]
            except KeyError:
                raise IncompleteMap(f"statistic has no image for {key}") from None
        return out


def relabel(dist: JointDistribution, axis: AxisRef, bijection: Mapping[str, str]) -> JointDistribution:
    """Rename the labels of one axis through a bijection.

    If the images are a permutation of the existing labels, the label order
    is kept and probabilities move with their labels.  Otherwise the axis
    is renamed in place and the tensor is untouched.
    """
    i = dist.axis_index(axis)
    old = dist.axes[i]
    bij = {str(k): str(v) for k, v in bijection.items()}
    if set(bij) != set(old.labels):
        raise NotABijection(f"map must cover exactly the labels {old.labels}")
    images = [bij[l] for l in old.labels]
    if len(set(images)) != len(images):
        raise NotABijection(f"duplicate images in {bij}")
    axes = list(dist.axes)
    if set(images) == set(old.labels):
        # new position j holds the old cell whose image is old.labels[j]
        inverse = {v: k for k, v in bij.items()}
        perm = [old.index(inverse[l]) for l in old.labels]
        table = np.take(dist.table, perm, axis=i)
    else:
        axes[i] = Axis(old.name, tuple(images))
        table = dist.table
    return JointDistribution._wrap(tuple(axes), table)


def marginalize(dist: JointDistribution, keep) -> JointDistribution:
    """Sum out every axis not in ``keep``; kept axes stay in ascending order."""
    keep = dist.axis_set(keep)
    if not keep:
        raise EmptyKeepSet("marginalize needs at least one axis to keep")
    if len(keep) == dist.n_axes:
        return dist
    return JointDistribution._wrap(tuple(dist.axes[i] for i in keep), dist.marginal_table(keep))


def condition(dist: JointDistribution, axis: AxisRef, label: str) -> JointDistribution:
    """Distribution of the remaining axes given ``axis == label``."""
    i = dist.axis_index(axis)
    j = dist.axes[i].index(label)
    if dist.n_axes == 1:
        raise BadAxisIndex("cannot condition a single-axis distribution on its only axis")
    sliced = np.take(dist.table, j, axis=i)
    mass = math.fsum(sliced.ravel())
    if mass <= 0.0:
        raise ZeroConditioningEvent(f"P({dist.axes[i].name}={label}) = 0")
    axes = tuple(a for k, a in enumerate(dist.axes) if k != i)
    return JointDistribution._wrap(axes, sliced / mass)


def product_independent(a: JointDistribution, b: JointDistribution) -> JointDistribution:
    """Independent product; axes of ``a`` followed by axes of ``b``."""
    clash = set(a.names) & set(b.names)
    if clash:
        raise AxisNameCollision(f"axis names {sorted(clash)} appear in both factors")
    return JointDistribution._wrap(a.axes + b.axes, np.multiply.outer(a.table, b.table))


def embed_statistic(dist: JointDistribution, stat: Statistic) -> JointDistribution:
    """Append an axis carrying ``y = f(x_block)`` deterministically."""
    if stat.output.name in dist.names:
        raise AxisNameCollision(f"axis {stat.output.name!r} already exists")
    idx = stat.index_table(dist)
    shape = [1] * dist.n_axes
    for k, i in enumerate(stat.block):
        shape[i] = idx.shape[k]
    full = np.broadcast_to(idx.reshape(shape), dist.shape)
    out = np.zeros(dist.shape + (stat.output.cardinality,))
    np.put_along_axis(out, full[..., None], dist.table[..., None], axis=-1)
    return JointDistribution._wrap(dist.axes + (stat.output,), out)


def block_marginals(dist: JointDistribution, partition: Partition) -> list[np.ndarray]:
    """Marginal tensors of each block, broadcastable against ``dist.table``."""
    out = []
    for block in partition.blocks:
        marg = dist.marginal_table(block)
        shape = [1] * dist.n_axes
        for k, i in enumerate(block):
            shape[i] = marg.shape[k]
        out.append(marg.reshape(shape))
    return out


def product_marginal(dist: JointDistribution, partition: Partition) -> JointDistribution:
    """Independent product of the block marginals, in the original axis order."""
    partition.validate(dist.n_axes)
    if len(partition) == 1:
        return dist
    m = np.ones(dist.shape)
    for marg in block_marginals(dist, partition):
        m = m * marg
    return JointDistribution._wrap(dist.axes, m)
