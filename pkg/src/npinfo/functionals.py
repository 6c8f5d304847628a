"""Scalar information functionals of discrete joint distributions.

All values are plain floats in nats.  The measure-zero conventions
``0 log 0 = 0`` and ``0 log(0/0) = 0`` apply throughout, and every sum is
evaluated with :func:`math.fsum`, so results do not depend on cell order.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence

import numpy as np

from .dist import JointDistribution, Partition, _fsum_keep
from .errors import AxisMismatch, BadAxisIndex, InvalidPartition, OverlappingBlocks

__all__ = [
    "shannon_entropy",
    "relative_entropy",
    "total_correlation",
    "npartite_information",
    "mutual_information",
    "conditional_mutual_information",
    "chain_rule_terms",
    "entropy_decomposition",
    "causation_entropy",
    "transfer_entropy",
    "mi_upper_bound",
]


def _entropy_table(table: np.ndarray) -> float:
    p = table[table > 0]
    return max(0.0, -math.fsum((p * np.log(p)).tolist()))


def _divergence(p: np.ndarray, q: np.ndarray) -> float:
    mask = p > 0
    if np.any(q[mask] <= 0):
        return math.inf
    pm = p[mask]
    return math.fsum((pm * np.log(pm / q[mask])).tolist())


def _npi_table(table: np.ndarray, blocks: Sequence[Sequence[int]]) -> float:
    """NPI of a raw probability tensor under ``blocks`` (dimension indices)."""
    # a block with a single cell is independent of everything; its marginal
    # would only reintroduce the rounding of the table's total
    blocks = [sorted(b) for b in blocks if math.prod(table.shape[i] for i in b) > 1]
    if len(blocks) < 2:
        return 0.0
    m = np.ones(table.shape)
    for block in blocks:
        marg = _fsum_keep(table, block)
        shape = [1] * table.ndim
        for k, i in enumerate(block):
            shape[i] = marg.shape[k]
        m = m * marg.reshape(shape)
    # product marginal dominates the joint, so this is always finite
    return max(0.0, _divergence(table, m))


def _sub_table(dist: JointDistribution, *groups: Sequence[int]) -> tuple[np.ndarray, list[list[int]]]:
    """Marginalize to the union of ``groups`` and re-index each group into it."""
    union = sorted(set().union(*groups))
    pos = {a: k for k, a in enumerate(union)}
    return dist.marginal_table(union), [[pos[a] for a in g] for g in groups]


def shannon_entropy(dist: JointDistribution) -> float:
    """Joint Shannon entropy ``-sum p log p``."""
    return _entropy_table(dist.table)


def relative_entropy(p: JointDistribution, q: JointDistribution) -> float:
    """Divergence ``D(p||q) = sum p log(p/q)``; ``inf`` when q fails to dominate p.

    This is the nonnegative orientation, i.e. minus the entropy that is
    maximized during updating.
    """
    if p.axes != q.axes:
        raise AxisMismatch("relative entropy needs identical axes in identical order")
    return max(0.0, _divergence(p.table, q.table))


def npartite_information(dist: JointDistribution, partition: Partition) -> float:
    """Divergence of the joint from the product of its block marginals."""
    partition.validate(dist.n_axes)
    return _npi_table(dist.table, partition.blocks)


def total_correlation(dist: JointDistribution) -> float:
    """NPI under the all-singletons partition."""
    return _npi_table(dist.table, [(i,) for i in range(dist.n_axes)])


def _bipartition(dist: JointDistribution, block_a, block_b) -> Partition:
    a, b = dist.axis_set(block_a), dist.axis_set(block_b)
    if not a or not b:
        raise InvalidPartition("both blocks must be nonempty")
    return Partition((a, b)).validate(dist.n_axes)


def mutual_information(dist: JointDistribution, block_a, block_b) -> float:
    """MI between two blocks that together cover every axis."""
    return npartite_information(dist, _bipartition(dist, block_a, block_b))


def _disjoint_sets(dist: JointDistribution, *groups) -> list[tuple[int, ...]]:
    sets = [dist.axis_set(g) for g in groups]
    for x, y in itertools.combinations(sets, 2):
        if set(x) & set(y):
            raise OverlappingBlocks(f"blocks {x} and {y} overlap")
    return sets


def conditional_mutual_information(dist: JointDistribution, block_a, block_b, given=()) -> float:
    """``I[A;B|Z] = sum_z p(z) I[A;B | Z=z]``.

    Axes outside ``A``, ``B`` and ``Z`` are marginalized out first;
    zero-probability values of ``Z`` contribute nothing.
    """
    a, b, z = _disjoint_sets(dist, block_a, block_b, given)
    if not a or not b:
        raise BadAxisIndex("conditional mutual information needs nonempty A and B")
    table, (ia, ib, iz) = _sub_table(dist, a, b, z)
    order = ia + ib + iz
    moved = np.transpose(table, order)
    na, nb = len(ia), len(ib)
    if not iz:
        return _npi_table(moved, [range(na), range(na, na + nb)])
    flat = moved.reshape(moved.shape[: na + nb] + (-1,))
    blocks = [range(na), range(na, na + nb)]
    terms = []
    for k in range(flat.shape[-1]):
        sl = flat[..., k]
        pz = math.fsum(sl.ravel())
        if pz <= 0.0:
            continue
        terms.append(pz * _npi_table(sl / pz, blocks))
    return max(0.0, math.fsum(terms))


def chain_rule_terms(dist: JointDistribution, partition: Partition) -> list[float]:
    """``I[X1 x ... x X(k-1); Xk]`` for k = 2..n in the partition's block order."""
    partition.validate(dist.n_axes)
    if len(partition) < 2:
        raise InvalidPartition("chain rule needs at least two blocks")
    terms = []
    prefix: list[int] = list(partition.blocks[0])
    for block in partition.blocks[1:]:
        table, (ip, ib) = _sub_table(dist, prefix, block)
        terms.append(_npi_table(table, [ip, ib]))
        prefix.extend(block)
    return terms


def entropy_decomposition(dist: JointDistribution, partition: Partition) -> tuple[list[float], float]:
    """Block marginal entropies and the joint entropy.

    ``sum(blocks) - joint`` is the NPI of ``partition``.
    """
    partition.validate(dist.n_axes)
    blocks = [_entropy_table(dist.marginal_table(b)) for b in partition.blocks]
    return blocks, shannon_entropy(dist)


def causation_entropy(dist: JointDistribution, target, source, conditioning=()) -> float:
    """``C_{source -> target | conditioning} = I[target; source | conditioning]``."""
    return conditional_mutual_information(dist, target, source, conditioning)


def transfer_entropy(dist: JointDistribution, target, source, target_history) -> float:
    """Causation entropy conditioned on the target's own history axes."""
    return causation_entropy(dist, target, source, target_history)


def mi_upper_bound(dist: JointDistribution, block_a, block_b) -> float:
    """``min(H[A], H[B])``, which always bounds ``I[A;B]`` for discrete variables."""
    part = _bipartition(dist, block_a, block_b)
    return min(_entropy_table(dist.marginal_table(b)) for b in part.blocks)
