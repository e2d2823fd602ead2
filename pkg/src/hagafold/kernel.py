"""
Exact rational primitives of the plane. Every construction of the fold reduces to the
predicates in this module, and none of them touches floating point.
"""

import math
import typing as ty
from dataclasses import dataclass
from fractions import Fraction

from hagafold.config.types import Enum
from hagafold.utils import parse_rational

Rat = Fraction


def rat(value: ty.Any) -> Fraction:
    """
    Coerces ``value`` to an exact rational. See :func:`hagafold.utils.parse_rational`.
    """
    return parse_rational(value)


class GeometryError(ValueError):
    """
    Base class of the exact geometry errors. ``residue`` carries the exact quantity
    that failed the construction, when there is one.
    """

    def __init__(self, message: str, residue: Fraction | None = None) -> None:
        super().__init__(message)
        self.residue = residue


class DegenerateInput(GeometryError):
    pass


class NegativeInput(GeometryError):
    pass


class NotASquare(GeometryError):
    pass


class LineRelation(Enum):
    PARALLEL = "parallel"
    COINCIDENT = "coincident"


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", rat(self.x))
        object.__setattr__(self, "y", rat(self.y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, f: Fraction | int) -> "Point":
        return Point(self.x * f, self.y * f)

    def __rmul__(self, f: Fraction | int) -> "Point":
        return self * f

    def __truediv__(self, f: Fraction | int) -> "Point":
        return Point(self.x / f, self.y / f)

    def dot(self, other: "Point") -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> Fraction:
        return self.x * other.y - self.y * other.x

    def to_json(self) -> list[Fraction]:
        return [self.x, self.y]

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class Line:
    """
    The locus ``a x + b y + c = 0``. The coefficients are scaled on construction so
    that the leading nonzero coefficient among ``(a, b)`` is 1, which makes equality
    of lines decidable by comparing coefficients.

    Raises
    ------
    DegenerateInput
        When ``a = b = 0``.

    Examples
    --------
    >>> Line(-4, -2, 7)
    Line(a=Fraction(1, 1), b=Fraction(1, 2), c=Fraction(-7, 4))
    """

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self) -> None:
        a, b, c = rat(self.a), rat(self.b), rat(self.c)
        if a == 0 and b == 0:
            raise DegenerateInput("A line needs a nonzero normal (a, b).")
        lead = a if a != 0 else b
        object.__setattr__(self, "a", a / lead)
        object.__setattr__(self, "b", b / lead)
        object.__setattr__(self, "c", c / lead)

    @classmethod
    def through(cls, p: Point, q: Point) -> "Line":
        if p == q:
            raise DegenerateInput(f"A line through {p} needs a second, distinct point.")
        a = q.y - p.y
        b = p.x - q.x
        return cls(a, b, -(a * p.x + b * p.y))

    @classmethod
    def horizontal(cls, y: Fraction | int) -> "Line":
        return cls(0, 1, -rat(y))

    @classmethod
    def vertical(cls, x: Fraction | int) -> "Line":
        return cls(1, 0, -rat(x))

    @property
    def normal(self) -> Point:
        return Point(self.a, self.b)

    @property
    def normal_sq(self) -> Fraction:
        return self.a * self.a + self.b * self.b

    def evaluate(self, p: Point) -> Fraction:
        return self.a * p.x + self.b * p.y + self.c

    def contains(self, p: Point) -> bool:
        return self.evaluate(p) == 0

    def to_json(self) -> list[Fraction]:
        return [self.a, self.b, self.c]


@dataclass(frozen=True)
class Circle:
    """
    A circle with a rational center and radius. A radius of 0 is a point-circle.
    """

    center: Point
    radius: Fraction

    def __post_init__(self) -> None:
        radius = rat(self.radius)
        if radius < 0:
            raise NegativeInput(f"Negative radius {radius}.", residue=radius)
        object.__setattr__(self, "radius", radius)

    @classmethod
    def point(cls, p: Point) -> "Circle":
        return cls(p, Fraction(0))

    @property
    def is_point(self) -> bool:
        return self.radius == 0

    def to_json(self) -> dict[str, ty.Any]:
        return {"center": self.center, "radius": self.radius}


def midpoint(p: Point, q: Point) -> Point:
    return (p + q) / 2


def dist_sq(p: Point, q: Point) -> Fraction:
    """
    Squared euclidean distance, exact.

    Examples
    --------
    >>> dist_sq(Point(0, 0), Point(3, 4))
    Fraction(25, 1)
    """
    delta = p - q
    return delta.dot(delta)


def perpendicular_bisector(p: Point, q: Point) -> Line:
    """
    The perpendicular bisector of the segment ``pq``, i.e. the locus of points with
    ``dist_sq(x, p) == dist_sq(x, q)``.

    Raises
    ------
    DegenerateInput
        When ``p == q``.
    """
    if p == q:
        raise DegenerateInput(f"Can not bisect the degenerate segment at {p}.")
    return Line(2 * (q.x - p.x), 2 * (q.y - p.y), p.dot(p) - q.dot(q))


def foot_of_perpendicular(p: Point, line: Line) -> Point:
    return p - line.normal * (line.evaluate(p) / line.normal_sq)


def reflect_point(p: Point, line: Line) -> Point:
    """
    Reflects ``p`` in ``line``. The map is an involution.

    Examples
    --------
    >>> reflect_point(Point(5, 7), Line.vertical(0))
    Point(x=Fraction(-5, 1), y=Fraction(7, 1))
    """
    return p - line.normal * (2 * line.evaluate(p) / line.normal_sq)


def reflect_circle(circle: Circle, line: Line) -> Circle:
    return Circle(reflect_point(circle.center, line), circle.radius)


def intersect_lines(l1: Line, l2: Line) -> Point | LineRelation:
    """
    Intersects two lines with Cramer's rule.

    Returns
    -------
    Point | LineRelation
        the common point, ``LineRelation.PARALLEL`` for distinct parallel lines or
        ``LineRelation.COINCIDENT`` when the lines are the same.
    """
    det = l1.a * l2.b - l2.a * l1.b
    if det == 0:
        if l1 == l2:
            return LineRelation.COINCIDENT
        return LineRelation.PARALLEL
    return Point(
        (l1.b * l2.c - l2.b * l1.c) / det,
        (l2.a * l1.c - l1.a * l2.c) / det,
    )


def sqrt_rat(s: Fraction | int) -> Fraction | None:
    """
    The exact square root of a rational.

    Parameters
    ----------
    s : Fraction | int
        a non-negative rational.

    Returns
    -------
    Fraction | None
        the non-negative root, or ``None`` when ``s`` is not the square of a rational.

    Raises
    ------
    NegativeInput
        When ``s < 0``.

    Examples
    --------
    >>> sqrt_rat(Fraction(169, 25))
    Fraction(13, 5)
    >>> sqrt_rat(2) is None
    True
    """
    s = rat(s)
    if s < 0:
        raise NegativeInput(f"Square root of negative {s}.", residue=s)
    num = math.isqrt(s.numerator)
    den = math.isqrt(s.denominator)
    if num * num != s.numerator or den * den != s.denominator:
        return None
    return Fraction(num, den)


def require_sqrt(s: Fraction | int, what: str = "value") -> Fraction:
    root = sqrt_rat(s)
    if root is None:
        raise NotASquare(f"{what} {s} is not the square of a rational.", residue=rat(s))
    return root


def tangency_residue(line: Line, circle: Circle) -> Fraction:
    """
    ``(a cx + b cy + c)^2 - r^2 (a^2 + b^2)``, zero exactly when ``line`` touches
    ``circle``.
    """
    value = line.evaluate(circle.center)
    return value * value - circle.radius * circle.radius * line.normal_sq


def line_tangent_to_circle(line: Line, circle: Circle) -> bool:
    return tangency_residue(line, circle) == 0


def collinear(p: Point, q: Point, r: Point) -> bool:
    return (q - p).cross(r - p) == 0
