"""Randomized battery of information inequalities and identities.

Random distributions are drawn uniformly from the probability simplex,
i.e. Dirichlet(1, ..., 1), by normalizing i.i.d. unit exponentials from a
seeded :func:`numpy.random.default_rng` (PCG64).  Every trial emits each
named check exactly once, keeping the worst case seen inside that trial.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .dist import (
    Axis,
    JointDistribution,
    Partition,
    Statistic,
    embed_statistic,
    marginalize,
    product_independent,
    relabel,
)
from .functionals import (
    chain_rule_terms,
    conditional_mutual_information,
    entropy_decomposition,
    mi_upper_bound,
    npartite_information,
    shannon_entropy,
    total_correlation,
)
from .partitions import BranchTree, iter_set_partitions, watanabe_sum
from .sufficiency import apply_statistic

__all__ = [
    "Check",
    "VerifyReport",
    "random_distribution",
    "random_statistic",
    "all_trees",
    "run_battery",
    "CHECK_NAMES",
]

EQ_TOL = 1e-10
TIGHT_TOL = 1e-12

CHECK_NAMES = (
    "tc_decomposition",
    "npi_le_tc",
    "singleton_npi_equals_tc",
    "chain_rule",
    "watanabe_full_trees",
    "watanabe_partial_trees",
    "data_processing",
    "npartite_monotone_chain",
    "joint_processing",
    "joint_processing_coarse_between",
    "subsystem_additivity",
    "relabel_invariance",
    "noise_invariance",
    "redundancy_invariance",
    "mi_upper_bound",
    "nonnegativity",
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    lhs: float
    rhs: float
    tolerance: float
    trial: int = 0


@dataclass
class VerifyReport:
    seed: int
    trials: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }


def random_distribution(
    rng: np.random.Generator,
    max_axes: int = 4,
    max_labels: int = 4,
    min_axes: int = 2,
    prefix: str = "X",
) -> JointDistribution:
    """Uniform draw from the simplex over a random product space."""
    n = int(rng.integers(min_axes, max_axes + 1))
    axes = [Axis.range(f"{prefix}{i}", int(rng.integers(2, max_labels + 1))) for i in range(n)]
    w = rng.exponential(size=int(np.prod([a.cardinality for a in axes])))
    return JointDistribution(axes, w / math.fsum(w.tolist()))


def random_statistic(
    rng: np.random.Generator, dist: JointDistribution, block, name: str, n_out: int | None = None
) -> Statistic:
    """Uniformly random deterministic map from the block's label space."""
    block = dist.axis_set(block)
    spaces = [dist.axes[i].labels for i in block]
    size = int(np.prod([len(s) for s in spaces]))
    if n_out is None:
        n_out = int(rng.integers(1, size + 1))
    out = Axis.range(name, n_out)
    images = rng.integers(0, n_out, size=size)
    keys = itertools.product(*spaces)
    return Statistic(block, out, {k: out.labels[int(j)] for k, j in zip(keys, images)})


def all_trees(indices) -> list[BranchTree]:
    """Every branch tree rooted at ``indices``, including partial ones."""
    indices = sorted(indices)
    out = [BranchTree(frozenset(indices))]
    if len(indices) == 1:
        return out
    for blocks in iter_set_partitions(indices):
        if len(blocks) < 2:
            continue
        for children in itertools.product(*(all_trees(b) for b in blocks)):
            out.append(BranchTree(frozenset(indices), children))
    return out


def _mi(dist: JointDistribution, a, b) -> float:
    return conditional_mutual_information(dist, a, b, ())


def _random_subset_split(rng: np.random.Generator, n: int) -> tuple[list[int], list[int]]:
    perm = [int(i) for i in rng.permutation(n)]
    k = int(rng.integers(1, n))
    return sorted(perm[:k]), sorted(perm[k:])


def _random_partition(rng: np.random.Generator, n: int, min_blocks: int) -> Partition:
    options = [p for p in iter_set_partitions(range(n)) if len(p) >= min(min_blocks, n)]
    blocks = options[int(rng.integers(len(options)))]
    order = rng.permutation(len(blocks))
    return Partition(tuple(tuple(blocks[int(k)]) for k in order))


class _Trial:
    def __init__(self, index: int):
        self.index = index
        self.checks: dict[str, Check] = {}
        self.values: list[float] = []

    def _keep(self, name: str, check: Check) -> None:
        prev = self.checks.get(name)
        if prev is None or (prev.passed and not check.passed) or (
            prev.passed == check.passed and _margin(check) > _margin(prev)
        ):
            self.checks[name] = check

    def equal(self, name: str, lhs: float, rhs: float, tol: float) -> None:
        self.values.extend((lhs, rhs))
        self._keep(name, Check(name, abs(lhs - rhs) <= tol, lhs, rhs, tol, self.index))

    def at_most(self, name: str, lhs: float, rhs: float, tol: float) -> None:
        self.values.extend((lhs, rhs))
        self._keep(name, Check(name, lhs <= rhs + tol, lhs, rhs, tol, self.index))

    def identical(self, name: str, lhs: float, rhs: float) -> None:
        self._keep(name, Check(name, lhs == rhs, lhs, rhs, 0.0, self.index))


def _margin(c: Check) -> float:
    # how close a check came to failing; larger is worse
    if c.name in _INEQUALITIES:
        return c.lhs - c.rhs
    return abs(c.lhs - c.rhs)


_INEQUALITIES = {
    "npi_le_tc",
    "data_processing",
    "npartite_monotone_chain",
    "joint_processing",
    "joint_processing_coarse_between",
    "mi_upper_bound",
}


def _run_trial(t: _Trial, dist: JointDistribution, rng: np.random.Generator) -> None:
    n = dist.n_axes
    tc = total_correlation(dist)

    singles = Partition.singletons(n)
    block_h, joint_h = entropy_decomposition(dist, singles)
    t.equal("tc_decomposition", tc, math.fsum(block_h) - joint_h, EQ_TOL)
    t.equal("singleton_npi_equals_tc", npartite_information(dist, singles), tc, TIGHT_TOL)

    for blocks in iter_set_partitions(range(n)):
        part = Partition(tuple(tuple(b) for b in blocks))
        npi = npartite_information(dist, part)
        t.at_most("npi_le_tc", npi, tc, EQ_TOL)
        if len(part) >= 2:
            for order in itertools.permutations(range(len(part))):
                terms = chain_rule_terms(dist, part.reordered(order))
                t.values.extend(terms)
                t.equal("chain_rule", math.fsum(terms), npi, EQ_TOL)

    for tree in all_trees(range(n)):
        w = watanabe_sum(dist, tree)
        if tree.is_full():
            t.equal("watanabe_full_trees", w, tc, EQ_TOL)
        t.equal("watanabe_partial_trees", w, npartite_information(dist, tree.leaf_partition()), EQ_TOL)

    # data processing on a random block against the rest
    xs, thetas = _random_subset_split(rng, n)
    stat = random_statistic(rng, dist, xs, "~F")
    pushed = apply_statistic(dist, stat, replace=True)
    theta_after = [i - sum(1 for x in xs if x < i) for i in thetas]
    t.at_most("data_processing", _mi(pushed, theta_after, [pushed.n_axes - 1]), _mi(dist, xs, thetas), EQ_TOL)

    # apply statistics block by block; NPI must not increase
    part = _random_partition(rng, n, 2)
    current, ids = dist, list(range(n))
    prev = npartite_information(dist, part)
    worst = (prev, prev)
    for k, block in enumerate(part.blocks):
        local = [ids.index(i) for i in block]
        current = apply_statistic(current, random_statistic(rng, current, local, f"~S{k}"), replace=True)
        ids = [i for i in ids if i not in block] + [("s", k)]
        mapped = []
        for j, b in enumerate(part.blocks):
            mapped.append((ids.index(("s", j)),) if j <= k else tuple(ids.index(i) for i in b))
        now = npartite_information(current, Partition(tuple(mapped)))
        if now - prev > worst[0] - worst[1]:
            worst = (now, prev)
        prev = now
    t.at_most("npartite_monotone_chain", worst[0], worst[1], EQ_TOL)

    # merge the first two blocks through a random map
    part = _random_partition(rng, n, 3)
    merged = tuple(sorted(part.blocks[0] + part.blocks[1]))
    npi_n = npartite_information(dist, part)
    coarse = Partition((merged,) + part.blocks[2:])
    npi_coarse = npartite_information(dist, coarse)
    out = apply_statistic(dist, random_statistic(rng, dist, merged, "~J"), replace=True)
    ids = [i for i in range(n) if i not in merged] + ["J"]
    jpart = Partition(((ids.index("J"),),) + tuple(tuple(ids.index(i) for i in b) for b in part.blocks[2:]))
    npi_joint = npartite_information(out, jpart)
    t.at_most("joint_processing", npi_joint, npi_n, EQ_TOL)
    t.at_most("joint_processing_coarse_between", npi_joint, npi_coarse, EQ_TOL)
    t.at_most("joint_processing_coarse_between", npi_coarse, npi_n, EQ_TOL)

    # TC is additive over independent subsystems
    a_axes, b_axes = _random_subset_split(rng, n)
    a, b = marginalize(dist, a_axes), marginalize(dist, b_axes)
    t.equal(
        "subsystem_additivity",
        total_correlation(product_independent(a, b)),
        total_correlation(a) + total_correlation(b),
        EQ_TOL,
    )

    # relabelling an axis is invisible to every functional
    axis = int(rng.integers(n))
    labels = dist.axes[axis].labels
    perm = rng.permutation(len(labels))
    moved = relabel(dist, axis, {l: labels[int(p)] for l, p in zip(labels, perm)})
    renamed = relabel(dist, axis, {l: f"r{l}" for l in labels})
    for other in (moved, renamed):
        t.identical("relabel_invariance", total_correlation(other), tc)
        t.identical("relabel_invariance", shannon_entropy(other), shannon_entropy(dist))
        for blocks in iter_set_partitions(range(n)):
            p = Partition(tuple(tuple(b) for b in blocks))
            t.identical("relabel_invariance", npartite_information(other, p), npartite_information(dist, p))

    # independent noise and redundant copies leave block MI alone
    xa, xb = _random_subset_split(rng, n)
    base = _mi(dist, xa, xb)
    noise = random_distribution(rng, 1, 3, min_axes=1, prefix="N")
    noisy = product_independent(dist, noise)
    t.equal("noise_invariance", _mi(noisy, xa + [n], xb), base, TIGHT_TOL)
    redundant = embed_statistic(dist, random_statistic(rng, dist, xa, "~R"))
    t.equal("redundancy_invariance", _mi(redundant, xa + [n], xb), base, TIGHT_TOL)

    ab = marginalize(dist, sorted(xa + xb))
    t.at_most("mi_upper_bound", base, mi_upper_bound(ab, list(range(len(xa))), list(range(len(xa), n))), EQ_TOL)

    lowest = min(t.values + [base, tc])
    t.at_most("nonnegativity", -lowest, 0.0, TIGHT_TOL)


def run_battery(
    seed: int,
    trials: int,
    max_axes: int = 4,
    max_labels: int = 4,
    dist: JointDistribution | None = None,
) -> VerifyReport:
    """Run every check on ``trials`` distributions (or ``trials`` times on ``dist``)."""
    rng = np.random.default_rng(seed)
    report = VerifyReport(seed=seed, trials=trials)
    for k in range(trials):
        current = dist if dist is not None else random_distribution(rng, max_axes, max_labels, min(3, max_axes))
        trial = _Trial(k)
        _run_trial(trial, current, rng)
        report.checks.extend(trial.checks[name] for name in CHECK_NAMES)
    return report
