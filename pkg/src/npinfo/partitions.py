"""Set-partition combinatorics and Watanabe branch trees."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator
from dataclasses import dataclass

from .dist import JointDistribution, Partition
from .errors import InvalidPartition, InvalidTree, OutOfRange, ParseError
from .functionals import _npi_table, _sub_table

__all__ = [
    "stirling2",
    "enumerate_partitions",
    "iter_set_partitions",
    "parse_partition",
    "BranchTree",
    "full_trees",
    "watanabe_sum",
]

STIRLING_MAX = 20
ENUMERATE_MAX = 12


def _binomial_row(n: int) -> list[int]:
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row


def stirling2(N: int, n: int) -> int:
    """Stirling number of the second kind, exact.

    Evaluates ``(1/n!) sum_{i<n} (-1)^i C(n,i) (n-i)^N`` in integer
    arithmetic; the alternating sum cancels catastrophically in floats.
    """
    if not (1 <= n <= N <= STIRLING_MAX):
        raise OutOfRange(f"need 1 <= n <= N <= {STIRLING_MAX}, got N={N}, n={n}")
    binom = _binomial_row(n)
    total = sum((-1) ** i * binom[i] * (n - i) ** N for i in range(n))
    q, r = divmod(total, math.factorial(n))
    assert r == 0
    return q


def _restricted_growth(N: int) -> Iterator[list[int]]:
    # lexicographic restricted growth strings a[0]=0, a[i] <= 1 + max(a[:i])
    a = [0] * N
    yield list(a)
    while True:
        i = N - 1
        while i > 0 and a[i] > max(a[:i]):
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, N):
            a[j] = 0
        yield list(a)


def iter_set_partitions(elements) -> Iterator[list[list]]:
    """All set partitions of ``elements`` in canonical order.

    Blocks are ordered by least element; partitions come in lexicographic
    order of their restricted growth strings.
    """
    elements = list(elements)
    if not elements:
        return
    for rgs in _restricted_growth(len(elements)):
        blocks: list[list] = [[] for _ in range(max(rgs) + 1)]
        for e, b in zip(elements, rgs):
            blocks[b].append(e)
        yield blocks


def enumerate_partitions(N: int, n: int) -> list[Partition]:
    """Every partition of ``{0..N-1}`` into exactly ``n`` blocks."""
    if not (1 <= n <= N <= ENUMERATE_MAX):
        raise OutOfRange(f"need 1 <= n <= N <= {ENUMERATE_MAX}, got N={N}, n={n}")
    return [
        Partition(tuple(tuple(b) for b in blocks))
        for blocks in iter_set_partitions(range(N))
        if len(blocks) == n
    ]


def parse_partition(text: str, axis_count: int) -> Partition:
    """Parse ``"0,1|2|3"`` and check it covers ``0..axis_count-1`` exactly once."""
    blocks = []
    for chunk in str(text).strip().split("|"):
        try:
            blocks.append(tuple(int(tok) for tok in chunk.split(",")))
        except ValueError:
            raise ParseError(f"bad partition block {chunk!r} in {text!r}") from None
    for block in blocks:
        bad = [i for i in block if not 0 <= i < axis_count]
        if bad:
            raise InvalidPartition(f"axis indices {bad} out of range for {axis_count} axes")
    return Partition(tuple(blocks)).validate(axis_count)


@dataclass(frozen=True)
class BranchTree:
    """Recursive splitting of a block of axis indices."""

    block: frozenset[int]
    children: tuple["BranchTree", ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "block", frozenset(self.block))
        object.__setattr__(self, "children", tuple(self.children))
        if not self.block:
            raise InvalidTree("tree nodes need a nonempty block")
        if len(self.children) == 1:
            raise InvalidTree("internal nodes need at least two children")
        if self.children:
            seen: set[int] = set()
            for child in self.children:
                if seen & child.block:
                    raise InvalidTree(f"children of {sorted(self.block)} overlap")
                seen |= child.block
            if seen != self.block:
                raise InvalidTree(f"children do not cover {sorted(self.block)}")

    @classmethod
    def build(cls, nested) -> "BranchTree":
        """Build from nested sequences, e.g. ``[[0, 1], 2]``; ints are leaves."""
        if isinstance(nested, int):
            return cls(frozenset((nested,)))
        children = tuple(cls.build(s) for s in nested)
        block = frozenset().union(*(c.block for c in children))
        if len(children) == 1:
            return children[0]
        return cls(block, children)

    def leaves(self) -> list["BranchTree"]:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def internal_nodes(self) -> Iterator["BranchTree"]:
        if self.children:
            yield self
            for c in self.children:
                yield from c.internal_nodes()

    def leaf_partition(self) -> Partition:
        leaves = sorted(self.leaves(), key=lambda t: min(t.block))
        return Partition(tuple(tuple(sorted(l.block)) for l in leaves))

    def is_full(self) -> bool:
        return all(len(l.block) == 1 for l in self.leaves())


def full_trees(indices) -> Iterator[BranchTree]:
    """Every branch tree over ``indices`` whose leaves are singletons."""
    indices = sorted(indices)
    if len(indices) == 1:
        yield BranchTree(frozenset(indices))
        return
    for blocks in iter_set_partitions(indices):
        if len(blocks) < 2:
            continue
        yield from _combine([list(full_trees(b)) for b in blocks], frozenset(indices))


def _combine(options: list[list[BranchTree]], block: frozenset[int]) -> Iterator[BranchTree]:
    for children in itertools.product(*options):
        yield BranchTree(block, children)


def watanabe_sum(dist: JointDistribution, tree: BranchTree) -> float:
    """Sum over internal nodes of the NPI between the node's children.

    For singleton leaves this is the total correlation; in general it is
    the NPI of the leaf partition.
    """
    if tree.block != frozenset(range(dist.n_axes)):
        raise InvalidTree(f"root block {sorted(tree.block)} != all {dist.n_axes} axes")
    terms = []
    for node in tree.internal_nodes():
        groups = [sorted(c.block) for c in node.children]
        table, local = _sub_table(dist, *groups)
        terms.append(_npi_table(table, local))
    return math.fsum(terms)
