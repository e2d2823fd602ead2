from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import positive_rationals, rationals
from hagafold.kernel import (
    Circle,
    DegenerateInput,
    Line,
    LineRelation,
    NegativeInput,
    NotASquare,
    Point,
    collinear,
    dist_sq,
    foot_of_perpendicular,
    intersect_lines,
    line_tangent_to_circle,
    midpoint,
    perpendicular_bisector,
    reflect_circle,
    reflect_point,
    require_sqrt,
    sqrt_rat,
    tangency_residue,
)

points = st.builds(Point, rationals(), rationals())


def test_point_coercion():
    p = Point("1/2", 3)
    assert p == Point(Fraction(1, 2), Fraction(3))
    assert str(p) == "(1/2, 3)"
    with pytest.raises(ValueError, match="float"):
        Point(0.5, 1)


def test_line_canonical_form():
    assert Line(-4, -2, 7) == Line(2, 1, Fraction(-7, 2))
    assert Line(0, 3, -6) == Line.horizontal(2)
    assert Line(1, 0, 0) == Line.vertical(0)
    with pytest.raises(DegenerateInput):
        Line(0, 0, 1)
    with pytest.raises(DegenerateInput):
        Line.through(Point(1, 1), Point(1, 1))


def test_perpendicular_bisector():
    line = perpendicular_bisector(Point(0, 0), Point(2, 0))
    assert line == Line(1, 0, -1)
    # crease of the fold with d = 2, e = 1
    line = perpendicular_bisector(Point(2, 2), Point(0, 1))
    assert line.contains(Point(Fraction(7, 4), 0))
    assert line.contains(Point(Fraction(3, 4), 2))
    with pytest.raises(DegenerateInput):
        perpendicular_bisector(Point(1, 2), Point(1, 2))


def test_reflect_point():
    assert reflect_point(Point(5, 7), Line.vertical(0)) == Point(-5, 7)
    assert reflect_point(Point(3, 0), Line(1, -1, 0)) == Point(0, 3)
    # B of the square of side 2 over the crease of E = (0, 1)
    crease = perpendicular_bisector(Point(2, 2), Point(0, 1))
    assert reflect_point(Point(2, 0), crease) == Point(Fraction(8, 5), Fraction(-1, 5))


def test_reflect_circle():
    circle = Circle(Point(2, 2), 2)
    assert reflect_circle(circle, Line.horizontal(0)) == Circle(Point(2, -2), 2)


def test_intersect_lines():
    assert intersect_lines(Line.horizontal(0), Line(1, -1, 0)) == Point(0, 0)
    assert intersect_lines(Line.horizontal(0), Line.horizontal(1)) == LineRelation.PARALLEL
    assert intersect_lines(Line(1, 1, -2), Line(2, 2, -4)) == LineRelation.COINCIDENT
    assert intersect_lines(Line(1, 1, -2), Line(2, 2, -4)) == "coincident"


def test_foot_and_midpoint():
    assert foot_of_perpendicular(Point(3, 5), Line.horizontal(0)) == Point(3, 0)
    assert midpoint(Point(0, 3), Point(4, 0)) == Point(2, Fraction(3, 2))
    assert dist_sq(Point(0, 0), Point(3, 4)) == 25


def test_sqrt_rat():
    assert sqrt_rat(Fraction(169, 25)) == Fraction(13, 5)
    assert sqrt_rat(0) == 0
    assert sqrt_rat(2) is None
    assert sqrt_rat(Fraction(1, 2)) is None
    with pytest.raises(NegativeInput):
        sqrt_rat(-4)
    with pytest.raises(NotASquare) as exc:
        require_sqrt(2)
    assert exc.value.residue == 2


def test_tangency():
    circle = Circle(Point(1, 1), 1)
    assert line_tangent_to_circle(Line.horizontal(0), circle)
    assert line_tangent_to_circle(Line.vertical(2), circle)
    assert not line_tangent_to_circle(Line(1, -1, 0), circle)
    assert tangency_residue(Line.horizontal(3), circle) == 3


def test_circle():
    assert Circle.point(Point(1, 2)).is_point
    with pytest.raises(NegativeInput):
        Circle(Point(0, 0), -1)


def test_collinear():
    assert collinear(Point(0, 0), Point(1, 1), Point(3, 3))
    assert not collinear(Point(0, 0), Point(1, 1), Point(3, 2))


@given(p=points, a=rationals(), b=rationals(), c=rationals())
@settings(max_examples=200)
def test_reflection_is_involution(p: Point, a: Fraction, b: Fraction, c: Fraction):
    if a == 0 and b == 0:
        return
    line = Line(a, b, c)
    assert reflect_point(reflect_point(p, line), line) == p
    assert line.contains(midpoint(p, reflect_point(p, line)))


@given(p=points, q=points, x=rationals())
@settings(max_examples=200)
def test_bisector_is_equidistant(p: Point, q: Point, x: Fraction):
    if p == q:
        return
    line = perpendicular_bisector(p, q)
    on_line = foot_of_perpendicular(Point(x, -x), line)
    assert dist_sq(on_line, p) == dist_sq(on_line, q)


@given(s=rationals(0, 50))
def test_sqrt_of_squares(s: Fraction):
    assert sqrt_rat(s * s) == abs(s)


@given(center=points, r=positive_rationals(), k=positive_rationals())
def test_tangency_is_scale_invariant(center: Point, r: Fraction, k: Fraction):
    circle = Circle(center, r)
    line = Line.horizontal(center.y + r)
    scaled = Circle(center * k, r * k)
    assert line_tangent_to_circle(line, circle)
    assert line_tangent_to_circle(Line.horizontal((center.y + r) * k), scaled)


if __name__ == "__main__":
    from conftest import run_tests_local
    import conftest

    _locals = locals()
    run_tests_local(_locals, conftest)
