import math

import numpy as np
import pytest
from hypothesis import given, settings

from npinfo import (
    Axis,
    Partition,
    Statistic,
    condition,
    embed_statistic,
    marginalize,
    new_joint,
    product_independent,
    product_marginal,
    relabel,
)
from npinfo.errors import (
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

from conftest import bit, distributions


class TestNewJoint:
    def test_uniform_coin(self):
        d = new_joint([bit("X")], [0.5, 0.5])
        assert d.probs.tolist() == [0.5, 0.5]

    def test_running_example_sums_to_one(self, table22):
        assert math.fsum(table22.probs) == 1.0
        assert table22.shape == (2, 2)
        assert table22.prob("0", "1") == 0.1

    def test_normalization_error(self):
        with pytest.raises(NormalizationError):
            new_joint([bit("X")], [0.7, 0.4])

    def test_negative(self):
        with pytest.raises(NegativeProbability):
            new_joint([bit("X")], [1.5, -0.5])

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            new_joint([bit("X"), bit("Y")], [0.5, 0.5])

    def test_small_rounding_is_renormalized(self):
        d = new_joint([Axis.range("X", 3)], [0.3333333333, 0.3333333333, 0.3333333334])
        assert math.isclose(math.fsum(d.probs), 1.0, abs_tol=1e-15)

    def test_immutable(self, table22):
        with pytest.raises(ValueError):
            table22.table[0, 0] = 1.0

    def test_axis_validation(self):
        with pytest.raises(BadLabel):
            Axis("X", ("a", "a"))
        with pytest.raises(ShapeMismatch):
            Axis("X", ())

    def test_duplicate_axis_names(self):
        with pytest.raises(AxisNameCollision):
            new_joint([bit("X"), bit("X")], [0.25] * 4)


class TestRelabel:
    def test_rename_keeps_values(self, coin):
        d = relabel(coin, 0, {"0": "T", "1": "H"})
        assert d.axes[0].labels == ("T", "H")
        assert d.probs.tolist() == [0.5, 0.5]

    def test_swap_permutes_cells(self, table22):
        d = relabel(table22, 0, {"0": "1", "1": "0"})
        assert d.probs.tolist() == [0.1, 0.4, 0.4, 0.1]

    def test_not_bijection(self, coin):
        with pytest.raises(NotABijection):
            relabel(coin, 0, {"0": "a", "1": "a"})
        with pytest.raises(NotABijection):
            relabel(coin, 0, {"0": "a"})

    def test_each_cell_keeps_preimage_probability(self):
        d = new_joint([Axis("X", ("a", "b", "c"))], [0.2, 0.3, 0.5])
        r = relabel(d, 0, {"a": "b", "b": "c", "c": "a"})
        assert r.prob("b") == 0.2 and r.prob("c") == 0.3 and r.prob("a") == 0.5


class TestMarginalize:
    def test_row_sums(self, table22):
        assert marginalize(table22, [0]).probs.tolist() == [0.5, 0.5]

    def test_factorized(self, independent):
        m = marginalize(independent, [0])
        np.testing.assert_allclose(m.probs, [0.7, 0.3], rtol=0, atol=1e-16)

    def test_keep_all_is_identity(self, table22):
        assert marginalize(table22, [0, 1]) == table22

    def test_errors(self, table22):
        with pytest.raises(EmptyKeepSet):
            marginalize(table22, [])
        with pytest.raises(BadAxisIndex):
            marginalize(table22, [5])

    def test_by_name(self, table22):
        assert marginalize(table22, ["X1"]).names == ("X1",)


class TestCondition:
    def test_column_normalization(self, table22):
        np.testing.assert_allclose(condition(table22, 1, "0").probs, [0.8, 0.2], atol=1e-15)

    def test_independence(self, independent):
        for label in ("a", "b", "c"):
            np.testing.assert_allclose(condition(independent, 1, label).probs, [0.7, 0.3], atol=1e-15)

    def test_zero_event(self):
        d = new_joint([bit("X"), bit("Y")], [0.5, 0.0, 0.5, 0.0])
        with pytest.raises(ZeroConditioningEvent):
            condition(d, 1, "1")

    def test_bad_label(self, table22):
        with pytest.raises(BadLabel):
            condition(table22, 1, "7")


class TestProducts:
    def test_fair_coins(self):
        d = product_independent(new_joint([bit("A")], [0.5, 0.5]), new_joint([bit("B")], [0.5, 0.5]))
        assert d.probs.tolist() == [0.25] * 4

    def test_outer_product(self):
        d = product_independent(new_joint([bit("A")], [0.7, 0.3]), new_joint([bit("B")], [0.5, 0.5]))
        assert d.probs.tolist() == [0.7 * 0.5, 0.7 * 0.5, 0.3 * 0.5, 0.3 * 0.5]
        np.testing.assert_allclose(d.probs, [0.35, 0.35, 0.15, 0.15], atol=1e-16)

    def test_unit_factor(self, table22):
        d = product_independent(table22, new_joint([Axis("U", ("u",))], [1.0]))
        assert d.shape == (2, 2, 1)
        assert d.probs.tolist() == table22.probs.tolist()

    def test_collision(self, table22):
        with pytest.raises(AxisNameCollision):
            product_independent(table22, table22)

    def test_product_marginal_singletons(self, table22):
        m = product_marginal(table22, Partition.singletons(2))
        assert m.probs.tolist() == [0.25] * 4

    def test_product_marginal_identity_cases(self, table22, independent):
        assert product_marginal(table22, Partition.whole(2)) == table22
        np.testing.assert_allclose(
            product_marginal(independent, Partition.singletons(2)).probs, independent.probs, atol=1e-16
        )

    def test_product_marginal_invalid(self, table22):
        with pytest.raises(InvalidPartition):
            product_marginal(table22, Partition(((0,),)))


class TestEmbed:
    def test_copy(self, table22):
        d = embed_statistic(table22, Statistic.identity(table22, 0, "C"))
        assert marginalize(d, [2]).probs.tolist() == marginalize(table22, [0]).probs.tolist()

    def test_xor_cells(self, xor):
        # enumerate the four equiprobable input pairs
        expected = {}
        for a in "01":
            for b in "01":
                expected[(a, b, str(int(a) ^ int(b)))] = 0.25
        for labels, p in xor.cells():
            assert p == expected.get(labels, 0.0)

    def test_constant(self, table22):
        d = embed_statistic(table22, Statistic.constant(table22, [0, 1], "K"))
        assert marginalize(d, [2]).probs.tolist() == [1.0]

    def test_incomplete_map(self, table22):
        stat = Statistic((0,), bit("Y"), {("0",): "1"})
        with pytest.raises(IncompleteMap):
            embed_statistic(table22, stat)

    def test_name_collision(self, table22):
        with pytest.raises(AxisNameCollision):
            embed_statistic(table22, Statistic.identity(table22, 0, "X1"))


class TestPartition:
    def test_validation(self):
        with pytest.raises(InvalidPartition):
            Partition(((0,), (0, 1)))
        with pytest.raises(InvalidPartition):
            Partition(((0,), ()))
        with pytest.raises(InvalidPartition):
            Partition(((0,), (2,))).validate(2)

    def test_str(self):
        assert str(Partition(((1, 0), (2,)))) == "0,1|2"


@settings(max_examples=150, deadline=None)
@given(distributions())
def test_dominance(d):
    m = product_marginal(d, Partition.singletons(d.n_axes))
    assert np.all(m.table[d.table > 0] > 0)


@settings(max_examples=100, deadline=None)
@given(distributions(max_axes=2), distributions(max_axes=2))
def test_marginalize_product_recovers_factor(a, b):
    b = new_joint([Axis(f"Y{i}", ax.labels) for i, ax in enumerate(b.axes)], b.probs)
    back = marginalize(product_independent(a, b), range(a.n_axes))
    assert back.axes == a.axes
    np.testing.assert_allclose(back.table, a.table, rtol=1e-15, atol=1e-17)


@settings(max_examples=100, deadline=None)
@given(distributions(min_axes=2))
def test_embed_then_marginalize_is_exact(d):
    stat = Statistic.from_function(d, [0], lambda x: str(len(x) % 2), bit("F"))
    back = marginalize(embed_statistic(d, stat), range(d.n_axes))
    assert back.table.tolist() == d.table.tolist()


@settings(max_examples=100, deadline=None)
@given(distributions(min_axes=2))
def test_condition_marginalize_consistency(d):
    axis = d.n_axes - 1
    marg = marginalize(d, [axis]).probs
    acc = np.zeros(d.shape[:-1])
    for j, label in enumerate(d.axes[axis].labels):
        if marg[j] > 0:
            acc = acc + marg[j] * condition(d, axis, label).table
    np.testing.assert_allclose(acc, marginalize(d, range(axis)).table, atol=1e-15)
