from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nicepartition.weights import Config, add, ceil_log, sub

DESK = Config(n=100, beta=5, K=2)


def test_desk_config_derivation():
    assert DESK.L == 3
    assert DESK.denom == 625


@pytest.mark.parametrize("level, expected", [(2, 25), (3, 5), (4, 1)])
def test_weight_of_level(level, expected):
    assert DESK.weight_of_level(level) == expected


def test_weight_of_level_out_of_range():
    with pytest.raises(AssertionError):
        DESK.weight_of_level(5)
    with pytest.raises(AssertionError):
        DESK.weight_of_level(1)


@pytest.mark.parametrize("name, expected", [
    ("f_beta", 250), ("one_minus_2_over_beta", 375),
    ("one_minus_1_over_beta", 500), ("one", 625),
])
def test_thresholds(name, expected):
    assert DESK.threshold(name) == expected


def test_unknown_threshold():
    with pytest.raises(KeyError):
        DESK.threshold("half")


def test_add_sub():
    assert add(500, 25) == 525
    assert sub(525, 525) == 0
    assert sub(250, 5) == 245
    with pytest.raises(AssertionError):
        sub(5, 6)


@pytest.mark.parametrize("kwargs", [dict(n=10, beta=4), dict(n=10, K=-1), dict(n=0)])
def test_config_rejects(kwargs):
    with pytest.raises(ValueError):
        Config(**kwargs)


def test_derived_quantities():
    assert DESK.f_beta == Fraction(2, 5)
    assert DESK.epsilon_equiv == 3
    assert DESK.as_fraction(250) == Fraction(2, 5)
    assert list(DESK.levels) == [2, 3]
    assert list(DESK.edge_levels) == [2, 3, 4]


def test_ceil_log():
    assert [ceil_log(5, n) for n in (1, 5, 6, 25, 26, 16384)] == [0, 1, 2, 2, 3, 7]


@given(n=st.integers(1, 10**6), beta=st.integers(5, 12), K=st.integers(0, 6))
def test_scaled_weights_are_exact(n, beta, K):
    cfg = Config(n=n, beta=beta, K=K)
    assert cfg.L >= K + 1 and beta ** cfg.L >= n
    for i in cfg.edge_levels:
        assert cfg.as_fraction(cfg.weight_of_level(i)) == Fraction(1, beta ** i)
    names = ("f_beta", "one_minus_2_over_beta", "one_minus_1_over_beta", "one")
    values = [cfg.as_fraction(cfg.threshold(x)) for x in names]
    assert values == [1 - Fraction(3, beta), 1 - Fraction(2, beta), 1 - Fraction(1, beta), 1]
