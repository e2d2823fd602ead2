"""
Incircles and excircles of right triangles with rational sides, the subtended angle
formula for general triangles and the Hansen relations between the four radii.

A right triangle is held in a canonical frame: right angle at the origin, leg ``p``
along the first axis and leg ``q`` along the second. A :class:`Placement` maps the
canonical frame onto the plane with a rational orthonormal pair of axes, which exists
for every triangle with rational legs.
"""

import typing as ty
from dataclasses import dataclass
from fractions import Fraction

from hagafold.config.types import Enum
from hagafold.kernel import (
    Circle,
    GeometryError,
    Line,
    Point,
    collinear,
    rat,
    require_sqrt,
)


class InvalidTriangle(GeometryError):
    pass


class NoSuchCircle(GeometryError):
    pass


class UnsupportedPair(GeometryError):
    pass


class TritangentKind(Enum):
    INCIRCLE = "incircle"
    EX_OPP_RIGHT = "ex_opp_right"
    EX_OPP_P = "ex_opp_p"
    EX_OPP_Q = "ex_opp_q"


# signs of the canonical center (+-rho, +-rho)
_CENTER_SIGNS = {
    TritangentKind.INCIRCLE: (1, 1),
    TritangentKind.EX_OPP_RIGHT: (1, 1),
    TritangentKind.EX_OPP_P: (-1, 1),
    TritangentKind.EX_OPP_Q: (1, -1),
}

SUPPORTED_PAIRS = frozenset({
    frozenset({TritangentKind.EX_OPP_RIGHT, TritangentKind.EX_OPP_P}),
    frozenset({TritangentKind.EX_OPP_RIGHT, TritangentKind.EX_OPP_Q}),
    frozenset({TritangentKind.INCIRCLE, TritangentKind.EX_OPP_P}),
    frozenset({TritangentKind.INCIRCLE, TritangentKind.EX_OPP_Q}),
})


@dataclass(frozen=True)
class Placement:
    """
    A rigid map ``(u, v) -> origin + u axis_p + v axis_q``. The axes must be rational
    unit vectors and orthogonal, they may form a left-handed pair.
    """

    origin: Point
    axis_p: Point
    axis_q: Point

    def __post_init__(self) -> None:
        if (
            self.axis_p.dot(self.axis_p) != 1
            or self.axis_q.dot(self.axis_q) != 1
            or self.axis_p.dot(self.axis_q) != 0
        ):
            raise InvalidTriangle(
                f"Axes {self.axis_p}, {self.axis_q} are not orthonormal.",
                residue=self.axis_p.dot(self.axis_q),
            )

    @classmethod
    def identity(cls) -> "Placement":
        return cls(Point(0, 0), Point(1, 0), Point(0, 1))

    def apply(self, u: Fraction | int, v: Fraction | int) -> Point:
        return self.origin + self.axis_p * u + self.axis_q * v


@dataclass(frozen=True)
class RightTriangleFrame:
    """
    A right triangle with rational legs and a rational hypotenuse.

    Parameters
    ----------
    leg_p : Fraction
        length of the leg along ``placement.axis_p``, > 0.
    leg_q : Fraction
        length of the leg along ``placement.axis_q``, > 0.
    hyp : Fraction
        the hypotenuse, ``leg_p**2 + leg_q**2 == hyp**2``.
    placement : Placement
        the map of the canonical frame onto the plane.

    Raises
    ------
    InvalidTriangle
        When a leg is not positive or the sides are not those of a right triangle.
    """

    leg_p: Fraction
    leg_q: Fraction
    hyp: Fraction
    placement: Placement = Placement.identity()

    def __post_init__(self) -> None:
        p, q, h = rat(self.leg_p), rat(self.leg_q), rat(self.hyp)
        if p <= 0 or q <= 0:
            raise InvalidTriangle(
                f"Legs must be positive, got {p} and {q}.", residue=min(p, q)
            )
        if p * p + q * q != h * h:
            raise InvalidTriangle(
                f"{p}, {q}, {h} are not the sides of a right triangle.",
                residue=p * p + q * q - h * h,
            )
        object.__setattr__(self, "leg_p", p)
        object.__setattr__(self, "leg_q", q)
        object.__setattr__(self, "hyp", h)

    @classmethod
    def from_legs(
        cls,
        leg_p: Fraction | int,
        leg_q: Fraction | int,
        placement: Placement | None = None,
    ) -> "RightTriangleFrame":
        """
        Raises
        ------
        NotASquare
            When the hypotenuse is irrational.
        """
        p, q = rat(leg_p), rat(leg_q)
        hyp = require_sqrt(p * p + q * q, "squared hypotenuse")
        return cls(p, q, hyp, placement if placement is not None else Placement.identity())

    @classmethod
    def from_vertices(
        cls, right: Point, p_end: Point, q_end: Point
    ) -> "RightTriangleFrame":
        """
        Frames the triangle ``right, p_end, q_end`` with its right angle at ``right``.

        Raises
        ------
        InvalidTriangle
            When a leg is degenerate or the angle at ``right`` is not right. The
            residue is the dot product of the legs.
        NotASquare
            When a leg length is irrational.
        """
        u = p_end - right
        v = q_end - right
        if u.dot(u) == 0 or v.dot(v) == 0:
            raise InvalidTriangle(
                f"Degenerate triangle {right}, {p_end}, {q_end}.", residue=Fraction(0)
            )
        if u.dot(v) != 0:
            raise InvalidTriangle(
                f"The angle at {right} is not right.", residue=u.dot(v)
            )
        p = require_sqrt(u.dot(u), "squared leg")
        q = require_sqrt(v.dot(v), "squared leg")
        return cls.from_legs(p, q, Placement(right, u / p, v / q))

    @property
    def right_vertex(self) -> Point:
        return self.placement.apply(0, 0)

    @property
    def p_vertex(self) -> Point:
        return self.placement.apply(self.leg_p, 0)

    @property
    def q_vertex(self) -> Point:
        return self.placement.apply(0, self.leg_q)

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return self.right_vertex, self.p_vertex, self.q_vertex

    @property
    def side_lines(self) -> tuple[Line, Line, Line]:
        right, p_end, q_end = self.vertices
        return Line.through(right, p_end), Line.through(right, q_end), self.hypotenuse

    @property
    def hypotenuse(self) -> Line:
        return Line.through(self.p_vertex, self.q_vertex)

    def scaled(self, k: Fraction | int) -> "RightTriangleFrame":
        k = rat(k)
        placement = Placement(
            self.placement.origin * k, self.placement.axis_p, self.placement.axis_q
        )
        return RightTriangleFrame(self.leg_p * k, self.leg_q * k, self.hyp * k, placement)


def tritangent_radius(t: RightTriangleFrame, kind: TritangentKind) -> Fraction:
    p, q, h = t.leg_p, t.leg_q, t.hyp
    if kind == TritangentKind.INCIRCLE:
        return (p + q - h) / 2
    if kind == TritangentKind.EX_OPP_RIGHT:
        return (p + q + h) / 2
    if kind == TritangentKind.EX_OPP_P:
        return (h + q - p) / 2
    return (h + p - q) / 2


def tritangent_circle(t: RightTriangleFrame, kind: TritangentKind) -> Circle:
    """
    The incircle or one of the excircles of ``t``.

    Parameters
    ----------
    t : RightTriangleFrame
        the triangle.
    kind : TritangentKind
        which of the four tritangent circles.

    Returns
    -------
    Circle
        a circle tangent to the three side lines of ``t``.

    Examples
    --------
    >>> t = RightTriangleFrame.from_legs(4, 3)
    >>> tritangent_circle(t, TritangentKind.EX_OPP_Q)
    Circle(center=Point(x=Fraction(3, 1), y=Fraction(-3, 1)), radius=Fraction(3, 1))
    """
    rho = tritangent_radius(t, kind)
    sign_p, sign_q = _CENTER_SIGNS[TritangentKind(kind)]
    return Circle(t.placement.apply(sign_p * rho, sign_q * rho), rho)


def tritangent_circles(t: RightTriangleFrame) -> dict[TritangentKind, Circle]:
    return {kind: tritangent_circle(t, kind) for kind in TritangentKind}


def kind_of(t: RightTriangleFrame, circle: Circle) -> TritangentKind:
    for kind, candidate in tritangent_circles(t).items():
        if candidate == circle:
            return kind
    raise NoSuchCircle(f"{circle} is not a tritangent circle of the triangle.")


def tritangent_on_line(
    t: RightTriangleFrame, through: Point, known: Circle
) -> Circle:
    """
    Selects the tritangent circle of ``t``, other than ``known``, whose center is
    collinear with the vertex ``through`` and the center of ``known``. The selection
    tests the four circles exhaustively.

    Raises
    ------
    NoSuchCircle
        When ``through`` is not a vertex of ``t``, ``known`` is not one of its
        tritangent circles or the collinear circle is not unique.
    """
    if through not in t.vertices:
        raise NoSuchCircle(f"{through} is not a vertex of the triangle.")
    kind_of(t, known)
    matches = [
        circle
        for circle in tritangent_circles(t).values()
        if circle != known and collinear(through, known.center, circle.center)
    ]
    if len(matches) != 1:
        raise NoSuchCircle(
            f"Found {len(matches)} tritangent circles on the line through {through}"
            f" and {known.center}.",
            residue=Fraction(len(matches)),
        )
    return matches[0]


@dataclass(frozen=True)
class GeneralTriangleSides:
    """
    Side lengths of a triangle ABC with ``a = |BC|``, ``b = |CA|``, ``c = |AB|``.

    Raises
    ------
    InvalidTriangle
        When a side is not positive or the strict triangle inequality fails.
    """

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self) -> None:
        a, b, c = rat(self.a), rat(self.b), rat(self.c)
        slack = min(b + c - a, c + a - b, a + b - c)
        if min(a, b, c) <= 0 or slack <= 0:
            raise InvalidTriangle(
                f"{a}, {b}, {c} violate the triangle inequality.", residue=slack
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def semiperimeter(self) -> Fraction:
        return (self.a + self.b + self.c) / 2

    @property
    def cos_a(self) -> Fraction:
        # law of cosines at vertex A
        return (self.b**2 + self.c**2 - self.a**2) / (2 * self.b * self.c)


def tangent_lengths(
    sides: GeneralTriangleSides, kind: TritangentKind
) -> tuple[Fraction, Fraction]:
    """
    The lengths ``|BZ|`` and ``|CY|`` where ``Z`` and ``Y`` are the points where the
    chosen circle touches the lines ``AB`` and ``CA``. The kinds are read with ``A``
    in the role of the right-angle vertex, ``B`` of the ``p`` end and ``C`` of the
    ``q`` end.
    """
    s = sides.semiperimeter
    kind = TritangentKind(kind)
    if kind == TritangentKind.INCIRCLE:
        return s - sides.b, s - sides.c
    if kind == TritangentKind.EX_OPP_RIGHT:
        return s - sides.c, s - sides.b
    if kind == TritangentKind.EX_OPP_P:
        return s, s - sides.a
    return s - sides.a, s


def sin2_half_subtended(sides: GeneralTriangleSides, kind: TritangentKind) -> Fraction:
    """
    ``sin^2(theta / 2)`` where ``theta`` is the angle the chosen tritangent circle
    subtends from ``A``, computed as ``|BZ| |CY| / (b c)``.

    Examples
    --------
    >>> sin2_half_subtended(GeneralTriangleSides(13, 14, 15), TritangentKind.INCIRCLE)
    Fraction(1, 5)
    """
    bz, cy = tangent_lengths(sides, kind)
    return bz * cy / (sides.b * sides.c)


def sin2_half_by_cosine(sides: GeneralTriangleSides, kind: TritangentKind) -> Fraction:
    # the incircle and the excircle opposite A subtend the angle A itself, the other
    # two excircles subtend its supplement
    if TritangentKind(kind) in (TritangentKind.INCIRCLE, TritangentKind.EX_OPP_RIGHT):
        return (1 - sides.cos_a) / 2
    return (1 + sides.cos_a) / 2


@dataclass(frozen=True)
class HansenRelations:
    sum_ok: bool
    product_ok: bool
    leg_b_ok: bool
    leg_c_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.sum_ok and self.product_ok and self.leg_b_ok and self.leg_c_ok


def hansen_residues(t: RightTriangleFrame) -> dict[str, Fraction]:
    """
    Residues of the four Hansen relations of a right triangle: the exradius opposite
    the right angle is the sum of the other three radii, the products ``r r_right``
    and ``r_p r_q`` agree and each leg is the sum of the inradius and the exradius
    opposite the other leg's far vertex.
    """
    r = tritangent_radius(t, TritangentKind.INCIRCLE)
    r_right = tritangent_radius(t, TritangentKind.EX_OPP_RIGHT)
    r_p = tritangent_radius(t, TritangentKind.EX_OPP_P)
    r_q = tritangent_radius(t, TritangentKind.EX_OPP_Q)
    return {
        "sum": r_right - (r + r_p + r_q),
        "product": r * r_right - r_p * r_q,
        "leg_b": r + r_p - t.leg_q,
        "leg_c": r + r_q - t.leg_p,
    }


def hansen_relations(t: RightTriangleFrame) -> HansenRelations:
    residues = hansen_residues(t)
    return HansenRelations(
        sum_ok=residues["sum"] == 0,
        product_ok=residues["product"] == 0,
        leg_b_ok=residues["leg_b"] == 0,
        leg_c_ok=residues["leg_c"] == 0,
    )


def _perpendicular_offsets(
    line: Line, norm: Fraction, circle: Circle
) -> set[Fraction]:
    # offsets k of the lines b x - a y + k = 0 tangent to circle
    value = line.b * circle.center.x - line.a * circle.center.y
    return {-value + circle.radius * norm, -value - circle.radius * norm}


def common_tangent_perpendicular(
    t: RightTriangleFrame, pair: ty.Iterable[TritangentKind]
) -> Line:
    """
    The common tangent of two tritangent circles that is not a side line of ``t``.
    For the supported pairs it is perpendicular to the hypotenuse.

    Parameters
    ----------
    t : RightTriangleFrame
        the triangle.
    pair : ty.Iterable[TritangentKind]
        two kinds, in any order.

    Returns
    -------
    Line
        the common tangent perpendicular to the hypotenuse.

    Raises
    ------
    UnsupportedPair
        When the pair is not one of the excircle opposite the right angle or the
        incircle, together with one of the other two excircles.
    NoSuchCircle
        When the two circles have no common tangent perpendicular to the hypotenuse.

    Examples
    --------
    >>> t = RightTriangleFrame.from_legs(4, 3)
    >>> common_tangent_perpendicular(t, (TritangentKind.INCIRCLE, TritangentKind.EX_OPP_P))
    Line(a=Fraction(1, 1), b=Fraction(-3, 4), c=Fraction(1, 1))
    """
    kinds = frozenset(TritangentKind(kind) for kind in pair)
    if kinds not in SUPPORTED_PAIRS:
        names = ", ".join(sorted(kind.value for kind in kinds))
        raise UnsupportedPair(f"No perpendicular common tangent for ({names}).")
    hyp = t.hypotenuse
    norm = require_sqrt(hyp.normal_sq, "squared normal")
    first, second = (tritangent_circle(t, kind) for kind in kinds)
    common = _perpendicular_offsets(hyp, norm, first) & _perpendicular_offsets(
        hyp, norm, second
    )
    if len(common) != 1:
        raise NoSuchCircle(
            f"Expected one common perpendicular tangent, found {len(common)}.",
            residue=Fraction(len(common)),
        )
    return Line(hyp.b, -hyp.a, common.pop())

