import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from npinfo import Axis, Statistic, embed_statistic, new_joint, product_independent  # noqa: E402

LN2 = math.log(2)


def bit(name):
    return Axis(name, ("0", "1"))


@pytest.fixture
def coin():
    return new_joint([bit("X0")], [0.5, 0.5])


@pytest.fixture
def table22():
    return new_joint([bit("X0"), bit("X1")], [0.4, 0.1, 0.1, 0.4])


def make_xor():
    pair = product_independent(new_joint([bit("X0")], [0.5, 0.5]), new_joint([bit("X1")], [0.5, 0.5]))
    f = Statistic.from_function(pair, (0, 1), lambda a, b: str(int(a) ^ int(b)), bit("X2"))
    return embed_statistic(pair, f)


@pytest.fixture
def xor():
    return make_xor()


@pytest.fixture
def independent():
    a = new_joint([bit("X0")], [0.7, 0.3])
    b = new_joint([Axis("X1", ("a", "b", "c"))], [0.2, 0.5, 0.3])
    return product_independent(a, b)


@st.composite
def distributions(draw, min_axes=1, max_axes=3, max_labels=3, allow_zeros=True):
    """Small random joint distributions, optionally with exact zeros."""
    n = draw(st.integers(min_axes, max_axes))
    cards = [draw(st.integers(1, max_labels)) for _ in range(n)]
    size = int(np.prod(cards))
    low = 0 if allow_zeros else 1
    weights = draw(st.lists(st.integers(low, 20), min_size=size, max_size=size))
    if sum(weights) == 0:
        weights[0] = 1
    total = sum(weights)
    axes = [Axis.range(f"X{i}", c) for i, c in enumerate(cards)]
    return new_joint(axes, [w / total for w in weights])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
