"""Statistics, sufficiency ratios and posterior ratios.

A statistic is a deterministic map on a block of axes (see
:class:`npinfo.dist.Statistic`).  Applying it with ``replace=True`` pushes
the block forward and drops the original axes; the image axis is always
appended after the surviving axes.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from .dist import JointDistribution, Partition, Statistic, embed_statistic, marginalize
from .errors import (
    BlockMismatch,
    NoBaselineCorrelation,
    NotBinaryTheta,
    OverlappingBlocks,
    ZeroMarginal,
)
from .functionals import _npi_table, _sub_table, npartite_information

__all__ = [
    "Statistic",
    "apply_statistic",
    "sufficiency",
    "npartite_sufficiency",
    "joint_sufficiency",
    "posterior_ratio",
    "BASELINE_EPS",
]

BASELINE_EPS = 1e-12
OVERSHOOT_TOL = 1e-10


def apply_statistic(dist: JointDistribution, stat: Statistic, replace: bool = False) -> JointDistribution:
    """Embed ``stat`` as a new last axis; with ``replace`` drop its domain axes."""
    out = embed_statistic(dist, stat)
    if not replace:
        return out
    keep = [i for i in range(out.n_axes) if i not in stat.block]
    return marginalize(out, keep)


def _ratio(num: float, den: float) -> float:
    if den <= BASELINE_EPS:
        raise NoBaselineCorrelation(f"baseline information {den!r} nats is below {BASELINE_EPS}")
    r = num / den
    if 1.0 < r <= 1.0 + OVERSHOOT_TOL:
        return 1.0
    return r


def sufficiency(dist: JointDistribution, stat: Statistic, theta_block) -> float:
    """``I[f(X); Theta] / I[X; Theta]`` where X is the statistic's domain block."""
    theta = dist.axis_set(theta_block)
    if set(theta) & set(stat.block):
        raise OverlappingBlocks("theta block overlaps the statistic's domain")
    table, (ix, it) = _sub_table(dist, stat.block, theta)
    den = _npi_table(table, [ix, it])
    # pushforward on the (X, Theta) marginal, with the block re-indexed
    sub = JointDistribution._wrap(tuple(dist.axes[i] for i in sorted(stat.block + theta)), table)
    local = Statistic(tuple(ix), stat.output, stat.mapping)
    pushed = apply_statistic(sub, local, replace=True)
    num = _npi_table(pushed.table, [list(range(len(theta))), [len(theta)]])
    return _ratio(num, den)


def _pushed_partition(dist: JointDistribution, partition: Partition, stats: Sequence[Statistic]):
    """Apply every statistic (replace=True) and map the partition onto the result."""
    out = dist
    # axis ids are tracked symbolically: ints for originals, ("stat", k) for images
    ids: list = list(range(dist.n_axes))
    for k, stat in enumerate(stats):
        local_block = tuple(ids.index(i) for i in stat.block)
        local = Statistic(local_block, stat.output, stat.mapping)
        out = apply_statistic(out, local, replace=True)
        ids = [i for i in ids if i not in stat.block] + [("stat", k)]
    replaced = {tuple(s.block): ("stat", k) for k, s in enumerate(stats)}
    blocks = []
    for block in partition.blocks:
        if block in replaced:
            blocks.append((ids.index(replaced[block]),))
        else:
            blocks.append(tuple(ids.index(i) for i in block))
    return out, Partition(tuple(blocks))


def npartite_sufficiency(dist: JointDistribution, partition: Partition, stats: Sequence[Statistic]) -> float:
    """NPI after applying one statistic per chosen block, over NPI before."""
    partition.validate(dist.n_axes)
    used: set[tuple[int, ...]] = set()
    for stat in stats:
        if stat.block not in partition.blocks or stat.block in used:
            raise BlockMismatch(f"statistic block {stat.block} is not a distinct partition block")
        used.add(stat.block)
    den = npartite_information(dist, partition)
    if den <= BASELINE_EPS:
        raise NoBaselineCorrelation(f"baseline NPI {den!r} nats is below {BASELINE_EPS}")
    out, part = _pushed_partition(dist, partition, stats)
    return _ratio(npartite_information(out, part), den)


def joint_sufficiency(dist: JointDistribution, partition: Partition, joint_stat: Statistic) -> float:
    """NPI of ``(f(X1..Xm); X(m+1); ...; Xn)`` over the NPI of the n-block partition.

    The statistic must act on the union of the first ``m >= 2`` blocks and
    at least one block must remain.
    """
    partition.validate(dist.n_axes)
    target = set(joint_stat.block)
    m, acc = 0, set()
    for block in partition.blocks:
        if acc == target:
            break
        acc |= set(block)
        m += 1
    if acc != target or m < 2:
        raise BlockMismatch("joint statistic must cover exactly the first m >= 2 blocks")
    if m == len(partition):
        raise BlockMismatch("joint statistic merges every block; no remaining block to correlate with")
    den = npartite_information(dist, partition)
    if den <= BASELINE_EPS:
        raise NoBaselineCorrelation(f"baseline NPI {den!r} nats is below {BASELINE_EPS}")
    out = apply_statistic(dist, joint_stat, replace=True)
    ids = [i for i in range(dist.n_axes) if i not in target] + ["stat"]
    blocks = [(ids.index("stat"),)] + [tuple(ids.index(i) for i in b) for b in partition.blocks[m:]]
    return _ratio(npartite_information(out, Partition(tuple(blocks))), den)


def posterior_ratio(dist: JointDistribution, theta_block) -> dict[tuple[str, ...], float]:
    """``p(theta1|x) / p(theta2|x)`` for every joint label ``x`` of the other axes.

    ``theta1`` and ``theta2`` are the first and second joint labels of the
    theta block in row-major order.  Division by zero yields ``inf``.
    """
    theta = dist.axis_set(theta_block)
    rest = [i for i in range(dist.n_axes) if i not in theta]
    n_theta = int(np.prod([dist.shape[i] for i in theta], dtype=int))
    if n_theta != 2:
        raise NotBinaryTheta(f"theta block has {n_theta} joint labels, need exactly 2")
    if not rest:
        raise ZeroMarginal("no non-theta axes to condition on")
    moved = np.transpose(dist.table, rest + list(theta)).reshape(-1, 2)
    shape = [dist.shape[i] for i in rest]
    out = {}
    for flat_idx, (a, b) in enumerate(moved):
        idx = np.unravel_index(flat_idx, shape)
        key = tuple(dist.axes[i].labels[j] for i, j in zip(rest, idx))
        if math.fsum((a, b)) <= 0.0:
            raise ZeroMarginal(f"p(x={key}) = 0")
        out[key] = math.inf if b == 0 else float(a / b)
    return out
