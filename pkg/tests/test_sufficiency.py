import math

import numpy as np
import pytest
from hypothesis import given, settings

import oracle
from conftest import bit, distributions
from npinfo import (
    Axis,
    Partition,
    Statistic,
    apply_statistic,
    joint_sufficiency,
    marginalize,
    mutual_information,
    new_joint,
    npartite_sufficiency,
    posterior_ratio,
    product_independent,
    sufficiency,
)
from npinfo.errors import (
    BlockMismatch,
    IncompleteMap,
    NoBaselineCorrelation,
    NotBinaryTheta,
    OverlappingBlocks,
    ZeroMarginal,
)
from npinfo.verify import random_statistic

X3 = Axis("X", ("a", "b", "c"))
THETA = Axis("T", ("s", "b"))


@pytest.fixture
def channel():
    # p(x) = (0.3, 0.2, 0.5); p(s|x) = (0.8, 0.8, 0.1): symbols a and b share a posterior ratio
    return new_joint([X3, THETA], [0.24, 0.06, 0.16, 0.04, 0.05, 0.45])


@pytest.fixture
def merge_ab():
    return Statistic((0,), Axis("Y", ("ab", "c")), {("a",): "ab", ("b",): "ab", ("c",): "c"})


def xor_stat(d, name="Y"):
    return Statistic.from_function(d, (0, 1), lambda a, b: str(int(a) ^ int(b)), bit(name))


class TestApplyStatistic:
    def test_identity_replace(self, table22):
        out = apply_statistic(table22, Statistic.identity(table22, 0, "C"), replace=True)
        assert out.names == ("X1", "C")
        # same table with axes swapped
        assert out.table.tolist() == table22.table.T.tolist()

    def test_constant_replace(self, xor):
        out = apply_statistic(xor, Statistic.constant(xor, [0], "K"), replace=True)
        assert out.shape == (2, 2, 1)
        assert mutual_information(out, [2], [0, 1]) == 0.0

    def test_xor_pushforward(self, xor):
        out = apply_statistic(xor, xor_stat(xor), replace=True)
        assert out.names == ("X2", "Y")
        assert out.probs.tolist() == [0.5, 0.0, 0.0, 0.5]

    def test_embed_mode(self, table22):
        out = apply_statistic(table22, Statistic.identity(table22, 0, "C"), replace=False)
        assert out.n_axes == 3

    def test_incomplete(self, table22):
        with pytest.raises(IncompleteMap):
            apply_statistic(table22, Statistic((0,), bit("Y"), {("0",): "0"}), replace=True)


class TestSufficiency:
    def test_identity(self, table22):
        assert sufficiency(table22, Statistic.identity(table22, 0, "C"), [1]) == 1.0

    def test_constant(self, table22):
        assert sufficiency(table22, Statistic.constant(table22, [0], "K"), [1]) == 0.0

    def test_merge_equal_posterior_ratio(self, channel, merge_ab):
        # oracle: build the merged joint by hand and sum directly
        merged = new_joint([Axis("Y", ("ab", "c")), THETA], [0.40, 0.10, 0.05, 0.45])
        assert oracle.mi(merged, [0], [1]) == pytest.approx(oracle.mi(channel, [0], [1]), abs=1e-15)
        assert sufficiency(channel, merge_ab, [1]) == pytest.approx(1.0, abs=1e-10)

    def test_lossy_merge(self, channel):
        stat = Statistic((0,), Axis("Y", ("a", "bc")), {("a",): "a", ("b",): "bc", ("c",): "bc"})
        assert sufficiency(channel, stat, [1]) < 0.9

    def test_other_axes_are_ignored(self, channel, merge_ab):
        noise = new_joint([Axis("N", ("u", "v"))], [0.3, 0.7])
        d = product_independent(channel, noise)
        assert sufficiency(d, merge_ab, [1]) == pytest.approx(1.0, abs=1e-10)

    def test_no_baseline(self, independent):
        with pytest.raises(NoBaselineCorrelation):
            sufficiency(independent, Statistic.identity(independent, 0, "C"), [1])

    def test_overlap(self, table22):
        with pytest.raises(OverlappingBlocks):
            sufficiency(table22, Statistic.identity(table22, 0, "C"), [0])


class TestNPartiteSufficiency:
    def test_identities(self, xor):
        stats = [Statistic.identity(xor, i, f"C{i}") for i in range(3)]
        assert npartite_sufficiency(xor, Partition.singletons(3), stats) == pytest.approx(1.0, abs=1e-15)

    def test_independent(self, independent):
        with pytest.raises(NoBaselineCorrelation):
            npartite_sufficiency(independent, Partition.singletons(2), [Statistic.identity(independent, 0, "C")])

    def test_constant_kills(self, xor):
        stat = Statistic.constant(xor, [2], "K")
        assert npartite_sufficiency(xor, Partition.singletons(3), [stat]) == 0.0

    def test_block_mismatch(self, xor):
        with pytest.raises(BlockMismatch):
            npartite_sufficiency(xor, Partition.singletons(3), [xor_stat(xor)])
        ident = Statistic.identity(xor, 0, "C")
        with pytest.raises(BlockMismatch):
            npartite_sufficiency(xor, Partition.singletons(3), [ident, ident])

    def test_bipartition_matches_plain_sufficiency(self, channel, merge_ab):
        assert npartite_sufficiency(channel, Partition.singletons(2), [merge_ab]) == pytest.approx(
            sufficiency(channel, merge_ab, [1]), abs=1e-15
        )


class TestJointSufficiency:
    def test_xor(self, xor):
        assert joint_sufficiency(xor, Partition.singletons(3), xor_stat(xor)) == pytest.approx(1.0, abs=1e-12)

    def test_constant(self, xor):
        assert joint_sufficiency(xor, Partition.singletons(3), Statistic.constant(xor, [0, 1], "K")) == 0.0

    def test_merging_every_block_is_rejected(self, table22):
        # with nothing left to correlate against the ratio is undefined
        bij = Statistic.from_function(table22, (0, 1), lambda a, b: a + b, Axis("Y", ("00", "01", "10", "11")))
        with pytest.raises(BlockMismatch):
            joint_sufficiency(table22, Partition.singletons(2), bij)

    def test_wrong_blocks(self, xor):
        stat = Statistic.from_function(xor, (0, 2), lambda a, b: a, bit("Y"))
        with pytest.raises(BlockMismatch):
            joint_sufficiency(xor, Partition.singletons(3), stat)


class TestPosteriorRatio:
    def test_independent(self, independent):
        ratios = posterior_ratio(independent, [0])
        assert all(r == pytest.approx(0.7 / 0.3, rel=1e-15) for r in ratios.values())

    def test_table22(self, table22):
        r = posterior_ratio(table22, [1])
        assert r[("0",)] == pytest.approx(4.0, rel=1e-15)
        assert r[("1",)] == pytest.approx(0.25, rel=1e-15)

    def test_infinite(self):
        d = new_joint([bit("X"), THETA], [0.5, 0.0, 0.25, 0.25])
        assert posterior_ratio(d, [1])[("0",)] == math.inf

    def test_errors(self, xor, table22):
        with pytest.raises(NotBinaryTheta):
            posterior_ratio(xor, [0, 1])
        d = new_joint([X3, THETA], [0.5, 0.5, 0, 0, 0, 0])
        with pytest.raises(ZeroMarginal):
            posterior_ratio(d, [1])

    def test_mass_per_ratio_preserved(self, channel, merge_ab):
        def classes(d):
            mass = marginalize(d, [0])
            out = {}
            for (x,), ratio in posterior_ratio(d, [1]).items():
                key = round(ratio, 12)
                out[key] = out.get(key, 0.0) + mass.prob(x)
            return {k: round(v, 12) for k, v in out.items()}

        assert sufficiency(channel, merge_ab, [1]) == pytest.approx(1.0, abs=1e-10)
        pushed = apply_statistic(channel, merge_ab, replace=True)
        pushed = new_joint([pushed.axes[1], pushed.axes[0]], pushed.table.T)
        assert classes(pushed) == classes(channel)


@settings(max_examples=150, deadline=None)
@given(distributions(min_axes=2, max_axes=3))
def test_data_processing(d):
    rng = np.random.default_rng(d.n_axes * 1000 + d.probs.size)
    x, theta = [0], list(range(1, d.n_axes))
    stat = random_statistic(rng, d, x, "F")
    pushed = apply_statistic(d, stat, replace=True)
    after = mutual_information(pushed, list(range(d.n_axes - 1)), [d.n_axes - 1])
    assert after <= mutual_information(d, x, theta) + 1e-10
