import re
from fractions import Fraction

import pytest

from hagafold.search_space import CategoricalDistribution, Distribution, SearchSpace
from hagafold.settings import SweepConfig


def test_distribution():
    with pytest.raises(ValueError, match=re.escape("`n_bins` must be greater than 0.")):
        Distribution(-10, 10, 0)
    with pytest.raises(
        ValueError, match=re.escape("Invalid arguments. low>high for Distribution.")
    ):
        Distribution(10, -10, 5)

    for n_bins in [1, 7, 200]:
        a = Distribution(-10, 10, n_bins)
        s = a.expand()
        assert a.contains(-10) and a.contains(10)
        assert a.contains("10")
        assert not a.contains("10001/1000")
        assert len(s) == n_bins + 1
        assert max(s) == 10 and min(s) == -10
        assert sorted(s) == s
        assert all(isinstance(v, Fraction) for v in s)

    a = Distribution("-1/3", "2/3", 3)
    assert a.expand() == [Fraction(-1, 3), Fraction(0), Fraction(1, 3), Fraction(2, 3)]
    assert repr(a) == "Distribution(low=Fraction(-1, 3), high=Fraction(2, 3), n_bins=3)"
    # a single point range
    assert Distribution(1, 1, 4).expand() == [Fraction(1)]


def test_cat_distribution():
    with pytest.raises(
        ValueError,
        match=re.escape("Must provide at least one item for CategoricalDistribution"),
    ):
        CategoricalDistribution([])

    a = CategoricalDistribution([Fraction(1, 2), 0, "3"])
    assert a.expand() == [Fraction(1, 2), 0, "3"]
    assert a.contains(0)
    assert not a.contains(1)

    nested = CategoricalDistribution([
        Distribution(0, 1, 2),
        CategoricalDistribution([Fraction(5, 3)]),
        Fraction(-1),
    ])
    assert nested.expand() == [
        Fraction(0),
        Fraction(1, 2),
        Fraction(1),
        Fraction(5, 3),
        Fraction(-1),
    ]


def test_acceptance_grid():
    grid = CategoricalDistribution(
        [Distribution(-3, 4, 196), Fraction(-1, 3), Fraction(1, 3), Fraction(5, 3)]
    ).expand()
    assert len(grid) == len(set(grid)) == 200
    assert Fraction(1, 28) in grid


def test_expand_search_space():
    space = SearchSpace({
        "d": CategoricalDistribution([1, 2]),
        "e": Distribution(0, 1, 2),
        "tag": "fixed",
    })
    points = space.expand()
    assert len(space) == 6
    assert points[0] == {"d": 1, "e": Fraction(0), "tag": "fixed"}
    assert points[-1] == {"d": 2, "e": Fraction(1), "tag": "fixed"}
    assert SearchSpace({"d": [1, 2, 3]}).expand() == [{"d": 1}, {"d": 2}, {"d": 3}]


def test_sweep_search_space():
    space = SweepConfig(d=2, e_from=-1, e_to=1, steps=4).search_space()
    assert len(space) == 5
    assert all(point["d"] == 2 for point in space.expand())
    explicit = SweepConfig(d=1, e_values=["1/2", "3"]).search_space()
    assert [p["e"] for p in explicit.expand()] == [Fraction(1, 2), Fraction(3)]


if __name__ == "__main__":
    from conftest import run_tests_local
    import conftest

    _locals = locals()
    run_tests_local(_locals, conftest)
