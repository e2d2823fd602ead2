from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ORDINARY_CONFIGS, WORKED_CONFIGS, ordinary_d_e, pythagorean_legs
from hagafold.fold import (
    DEGENERATE_CASES,
    ORDINARY_CASES,
    CircleSet,
    HagaCase,
    InvalidSquare,
    NoF,
    build,
    circle_alpha,
    circle_eps1,
    circle_set,
    circles_eps2_to_eps6,
    classify,
    config_document,
    ef_length,
    f_closed_form,
    fg_dh_relation,
    haga_residue,
    is_physically_foldable,
    length_identities,
    length_residues,
    similarity_residues,
    squares_from_triangle,
)
from hagafold.kernel import Circle, Line, Point, dist_sq
from hagafold.tritangent import RightTriangleFrame, TritangentKind, tritangent_radius


@pytest.mark.parametrize(
    "e, case",
    [
        (3, "h1"),
        (2, "h2"),
        (Fraction(3, 2), "h3"),
        (1, "h4"),
        (Fraction(1, 2), "h5"),
        (0, "h6"),
        (-3, "h7"),
    ],
)
def test_classify(e, case):
    assert classify(1, e) == case
    assert classify(1, e) == HagaCase(case)


def test_classify_invalid():
    with pytest.raises(InvalidSquare):
        classify(0, 1)
    with pytest.raises(InvalidSquare):
        build(-1, 0)
    assert ORDINARY_CASES.isdisjoint(DEGENERATE_CASES)


def test_build_h5():
    cfg = build(2, 1)
    assert cfg.case == HagaCase.H5
    assert cfg.m == Line(-4, -2, 7)
    assert cfg.B_prime == Point(Fraction(8, 5), Fraction(-1, 5))
    assert cfg.F == Point(Fraction(4, 3), 0)
    assert cfg.G == Point(Fraction(7, 4), 0)
    assert cfg.H == Point(Fraction(3, 4), 2)
    assert (cfg.a, cfg.b, cfg.c) == (Fraction(1, 3), 1, Fraction(2, 3))
    # |AF| : |FB| = 2 : 1
    assert cfg.F.x / (cfg.d - cfg.F.x) == 2
    assert circle_alpha(cfg) == Circle(Point(Fraction(1, 3), Fraction(1, 3)), cfg.a)


def test_build_h1():
    cfg = build(1, 3)
    assert cfg.B_prime == Point(Fraction(-4, 5), Fraction(18, 5))
    assert cfg.F == Point(4, 0)
    assert cfg.G == Point(Fraction(-7, 2), 0)
    assert cfg.H == Point(Fraction(-3, 2), 1)
    assert ef_length(cfg) == 5
    assert fg_dh_relation(cfg) == 6
    circles = circle_set(cfg)
    assert circles.alpha == Circle(Point(6, 6), 6)
    assert circles.beta == Circle(Point(-2, 2), 2)
    assert circles.gamma == Circle(Point(3, -3), 3)
    assert circles.eps1.radius == Fraction(5, 2)
    assert not is_physically_foldable(cfg)


def test_build_h2():
    cfg = build(1, 2)
    assert cfg.case == HagaCase.H2
    assert cfg.B_prime == Point(-1, 2)
    assert cfg.F is None and cfg.a is None and cfg.c is None
    assert cfg.b == 1
    with pytest.raises(NoF):
        cfg.require_F()
    with pytest.raises(NoF):
        circle_alpha(cfg)
    circles = circle_set(cfg)
    assert circles.delta == Circle(Point(1, 1), 1)
    assert all(circle is None for name, circle in circles.items() if name != "delta")


@pytest.mark.parametrize("d_e, expected", list(WORKED_CONFIGS.items()))
def test_worked_lengths(d_e, expected):
    case, a, b, c = expected
    cfg = build(*d_e)
    assert cfg.case == case
    assert (cfg.a, cfg.b, cfg.c) == (a, b, c)
    assert all(r == 0 for r in length_residues(cfg).values())
    identities = length_identities(cfg)
    assert identities.sum_ok and identities.product_ok and identities.haga_ok
    assert haga_residue(cfg) == 0
    assert fg_dh_relation(cfg) == cfg.a


def test_build_h4():
    cfg = build(2, 2)
    assert cfg.B_prime == cfg.F == cfg.A
    assert cfg.m == Line.vertical(1)
    circles = circle_set(cfg)
    assert circles.alpha.is_point and circles.beta.is_point
    assert circles.gamma == Circle(Point(-2, 2), 2)
    assert circles.eps5 == Circle(Point(1, 1), 1)
    assert circles.eps6 == Circle(Point(1, 3), 1)
    assert is_physically_foldable(cfg)


def test_build_h6():
    cfg = build(2, 0)
    assert cfg.E == cfg.A and cfg.F == cfg.B == cfg.B_prime
    circles = circle_set(cfg)
    assert circles.beta == Circle(Point(2, -2), 2)
    assert circles.gamma == Circle.point(cfg.A)
    assert circles.eps1 == Circle(Point(1, 1), 1)


@pytest.mark.parametrize(
    "d_e, radii",
    [
        ((2, 1), ["1/12", "1/4", "1/4", "1/2", "1/2"]),
        ((1, 3), ["9/2", "3/2", "3/2", "3", "3"]),
        ((2, 3), ["9/4", "3/4", "3/4", "3/2", "3/2"]),
        ((2, -1), ["1/10", "1/2", "1/2", "3/4", "3/4"]),
    ],
)
def test_eps_radii(d_e, radii):
    cfg = build(*d_e)
    assert [c.radius for c in circles_eps2_to_eps6(cfg)] == [Fraction(r) for r in radii]


def test_eps1():
    assert circle_eps1(build(2, 1)) == Circle(
        Point(Fraction(7, 6), Fraction(7, 6)), Fraction(5, 6)
    )
    assert circle_eps1(build(2, -1)).radius == Fraction(13, 10)


def test_f_closed_form():
    for d, e in ORDINARY_CONFIGS:
        assert build(d, e).F == Point(f_closed_form(d, e), 0)


def test_similar_triangles():
    for d, e in ORDINARY_CONFIGS:
        assert all(r == 0 for r in similarity_residues(build(d, e)))


def test_squares_from_345():
    squares = squares_from_triangle(RightTriangleFrame.from_legs(4, 3))
    found = {s.alpha_kind: (s.d, s.e, s.f) for s in squares}
    assert found == {
        TritangentKind.INCIRCLE: (6, 3, 4),
        TritangentKind.EX_OPP_RIGHT: (1, 3, 4),
        TritangentKind.EX_OPP_P: (3, -3, 4),
        TritangentKind.EX_OPP_Q: (2, 3, -4),
    }
    assert all(s.round_trip() for s in squares)
    assert build(6, 3).case == HagaCase.H5


def test_config_document():
    document = config_document(build(2, 1))
    assert list(document) == [
        "d",
        "e",
        "case",
        "points",
        "lengths",
        "circles",
        "crease",
        "foldable",
    ]
    assert document["case"] == "h5"
    assert document["points"]["F"] == ["4/3", "0"]
    assert document["lengths"]["a"] == "1/3"
    assert document["circles"]["alpha"] == {"center": ["1/3", "1/3"], "radius": "1/3"}
    h2 = config_document(build(1, 2))
    assert h2["points"]["F"] is None
    assert h2["circles"]["eps3"] is None
    assert h2["lengths"]["DH"] == "0"


def test_circle_set_names():
    assert CircleSet.names()[0] == "delta"
    assert len(CircleSet.names()) == 10
    with pytest.raises(KeyError):
        circle_set(build(2, 1)).get("zeta")


@given(d_e=ordinary_d_e(), k=st.integers(1, 7).map(Fraction))
@settings(max_examples=200, deadline=None)
def test_scale_equivariance(d_e, k: Fraction):
    d, e = d_e
    cfg, scaled = build(d, e), build(k * d, k * e)
    assert scaled.case == cfg.case
    assert (scaled.a, scaled.b, scaled.c) == (k * cfg.a, k * cfg.b, k * cfg.c)
    for (_, circle), (_, other) in zip(circle_set(cfg).items(), circle_set(scaled).items()):
        assert other.radius == k * circle.radius
        assert other.center == circle.center * k


@given(d_e=ordinary_d_e())
@settings(max_examples=300, deadline=None)
def test_identities_hold(d_e):
    cfg = build(*d_e)
    assert all(r == 0 for r in length_residues(cfg).values())
    assert haga_residue(cfg) == 0
    assert dist_sq(cfg.E, cfg.F) == ef_length(cfg) ** 2
    assert all(r == 0 for r in similarity_residues(cfg))


@given(legs=pythagorean_legs())
@settings(max_examples=50, deadline=None)
def test_squares_round_trip(legs):
    triangle = RightTriangleFrame.from_legs(*legs)
    squares = squares_from_triangle(triangle)
    assert len(squares) == 4
    assert sorted(s.d for s in squares) == sorted(
        tritangent_radius(triangle, kind) for kind in TritangentKind
    )
    for square in squares:
        assert square.round_trip()
        cfg = build(square.d, square.e)
        rebuilt = sorted([abs(cfg.e), abs(cfg.F.x), ef_length(cfg)])
        assert rebuilt == sorted([triangle.leg_q, triangle.leg_p, triangle.hyp])


if __name__ == "__main__":
    from conftest import run_tests_local
    import conftest

    _locals = locals()
    run_tests_local(_locals, conftest)
