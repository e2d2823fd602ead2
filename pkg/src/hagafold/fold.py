"""
The generalized Haga fold of a square ``ABCD``: corner ``C`` is folded onto a point
``E`` of the line ``DA``. The crease ``m`` is the perpendicular bisector of ``CE``,
``B'`` is the reflection of ``B`` in ``m`` and ``F`` is the point where the folded
side ``B'E`` meets ``AB``.

The frame is fixed as ``A=(0,0)``, ``B=(d,0)``, ``C=(d,d)``, ``D=(0,d)`` and
``E=(0,e)``, so every case of the fold is a sign condition on ``e``.
"""

import typing as ty
from dataclasses import dataclass, fields
from fractions import Fraction

from hagafold.config.types import Enum
from hagafold.kernel import (
    Circle,
    GeometryError,
    Line,
    Point,
    dist_sq,
    foot_of_perpendicular,
    intersect_lines,
    perpendicular_bisector,
    rat,
    reflect_circle,
    reflect_point,
    require_sqrt,
)
from hagafold.tritangent import (
    RightTriangleFrame,
    TritangentKind,
    tritangent_circle,
    tritangent_on_line,
)
from hagafold.utils import to_jsonable


class InvalidSquare(GeometryError):
    pass


class PointAbsent(GeometryError):
    pass


class NoF(PointAbsent):
    pass


class NoGH(PointAbsent):
    pass


class HagaCase(Enum):
    H1 = "h1"
    H2 = "h2"
    H3 = "h3"
    H4 = "h4"
    H5 = "h5"
    H6 = "h6"
    H7 = "h7"


ORDINARY_CASES = frozenset({HagaCase.H1, HagaCase.H3, HagaCase.H5, HagaCase.H7})
DEGENERATE_CASES = frozenset({HagaCase.H4, HagaCase.H6})

LINE_AB = Line.horizontal(0)
LINE_DA = Line.vertical(0)
LINE_AC = Line(1, -1, 0)


def _check_square(d: Fraction) -> None:
    if d <= 0:
        raise InvalidSquare(f"The side of the square must be positive, got {d}.", residue=d)


def classify(d: Fraction | int | str, e: Fraction | int | str) -> HagaCase:
    """
    Classifies the position of ``E`` on the line ``DA``.

    Parameters
    ----------
    d : Fraction | int | str
        the side of the square, > 0.
    e : Fraction | int | str
        the signed ordinate of ``E``.

    Returns
    -------
    HagaCase
        ``H1`` for ``e > 2d``, ``H2`` for ``e = 2d``, ``H3`` for ``d < e < 2d``,
        ``H4`` for ``e = d``, ``H5`` for ``0 < e < d``, ``H6`` for ``e = 0`` and ``H7``
        for ``e < 0``.

    Raises
    ------
    InvalidSquare
        When ``d <= 0``.

    Examples
    --------
    >>> classify(1, 3)
    HagaCase('h1')
    """
    d, e = rat(d), rat(e)
    _check_square(d)
    if e > 2 * d:
        return HagaCase.H1
    if e == 2 * d:
        return HagaCase.H2
    if e > d:
        return HagaCase.H3
    if e == d:
        return HagaCase.H4
    if e > 0:
        return HagaCase.H5
    if e == 0:
        return HagaCase.H6
    return HagaCase.H7


@dataclass(frozen=True)
class HagaConfig:
    """
    The configuration of one fold. ``F`` is absent only in case ``H2``, where ``B'E``
    is parallel to ``AB``, and then so are ``a = |B'F|`` and ``c = |BF|``.
    """

    d: Fraction
    e: Fraction
    A: Point
    B: Point
    C: Point
    D: Point
    E: Point
    m: Line
    B_prime: Point
    F: Point | None
    G: Point | None
    H: Point | None
    case: HagaCase
    a: Fraction | None
    b: Fraction
    c: Fraction | None

    @property
    def ordinary(self) -> bool:
        return self.case in ORDINARY_CASES

    @property
    def degenerate(self) -> bool:
        return self.case in DEGENERATE_CASES

    @property
    def has_F(self) -> bool:
        return self.F is not None

    def require_F(self) -> Point:
        if self.F is None:
            raise NoF(f"case {self.case.value}: F does not exist")
        return self.F

    def require_GH(self) -> tuple[Point, Point]:
        if self.G is None or self.H is None:
            raise NoGH(f"case {self.case.value}: G or H does not exist")
        return self.G, self.H

    @property
    def line_CD(self) -> Line:
        return Line.horizontal(self.d)

    @property
    def line_BC(self) -> Line:
        return Line.vertical(self.d)

    @property
    def line_BpE(self) -> Line:
        return Line.through(self.B_prime, self.E)

    @property
    def line_EF(self) -> Line:
        return Line.through(self.E, self.require_F())


def build(d: Fraction | int | str, e: Fraction | int | str) -> HagaConfig:
    """
    Builds the fold of the square of side ``d`` that carries ``C`` onto ``E=(0, e)``.

    Parameters
    ----------
    d : Fraction | int | str
        the side of the square, > 0.
    e : Fraction | int | str
        the signed ordinate of ``E``.

    Returns
    -------
    HagaConfig
        the configuration with every named point and length.

    Raises
    ------
    InvalidSquare
        When ``d <= 0``.

    Examples
    --------
    >>> cfg = build(2, 1)
    >>> cfg.F, cfg.a
    (Point(x=Fraction(4, 3), y=Fraction(0, 1)), Fraction(1, 3))
    """
    d, e = rat(d), rat(e)
    case = classify(d, e)
    A, B, C, D, E = Point(0, 0), Point(d, 0), Point(d, d), Point(0, d), Point(0, e)
    m = perpendicular_bisector(C, E)
    B_prime = reflect_point(B, m)

    hit = intersect_lines(LINE_AB, Line.through(E, B_prime))
    F: Point | None
    if isinstance(hit, Point):
        F = hit
    elif case == HagaCase.H6:
        # E = A: the folded side lies on AB and F is B by definition
        F = B
    else:
        F = None

    G = intersect_lines(m, LINE_AB)
    H = intersect_lines(m, Line.horizontal(d))
    # m has normal (-2d, 2(e - d)) so it is never parallel to AB or CD
    assert isinstance(G, Point) and isinstance(H, Point)

    a = c = None
    if F is not None:
        c = abs(d - F.x)
        a = require_sqrt(dist_sq(B_prime, F), "|B'F|^2")
    if case == HagaCase.H4:
        assert B_prime == A and F == A
    return HagaConfig(
        d=d,
        e=e,
        A=A,
        B=B,
        C=C,
        D=D,
        E=E,
        m=m,
        B_prime=B_prime,
        F=F,
        G=G,
        H=H,
        case=case,
        a=a,
        b=abs(d - e),
        c=c,
    )


def f_closed_form(d: Fraction | int, e: Fraction | int) -> Fraction:
    """
    The abscissa of ``F``, ``2d(e - d) / (e - 2d)``, valid for ``e != 2d``.
    """
    d, e = rat(d), rat(e)
    return 2 * d * (e - d) / (e - 2 * d)


def ef_length(cfg: HagaConfig) -> Fraction:
    cfg.require_F()
    if cfg.case == HagaCase.H3:
        return cfg.c - cfg.b
    if cfg.case == HagaCase.H7:
        return cfg.b - cfg.c
    return cfg.b + cfg.c


def triangle_aef(cfg: HagaConfig) -> RightTriangleFrame:
    return RightTriangleFrame.from_vertices(cfg.A, cfg.require_F(), cfg.E)


def triangle_bfg(cfg: HagaConfig) -> RightTriangleFrame:
    G, _ = cfg.require_GH()
    return RightTriangleFrame.from_vertices(cfg.B_prime, cfg.require_F(), G)


def triangle_deh(cfg: HagaConfig) -> RightTriangleFrame:
    _, H = cfg.require_GH()
    return RightTriangleFrame.from_vertices(cfg.D, cfg.E, H)


def circle_delta(cfg: HagaConfig) -> Circle:
    return Circle(cfg.C, cfg.d)


def _incircle_of_square(cfg: HagaConfig) -> Circle:
    return Circle(Point(cfg.d / 2, cfg.d / 2), cfg.d / 2)


def circle_alpha(cfg: HagaConfig) -> Circle:
    """
    The tritangent circle of ``AEF``, other than the circle ``delta``, centered on
    the diagonal ``AC``. It is the point ``A`` in the degenerate cases.

    Raises
    ------
    NoF
        In case ``H2``.
    """
    cfg.require_F()
    if cfg.degenerate:
        return Circle.point(cfg.A)
    return tritangent_on_line(triangle_aef(cfg), cfg.A, circle_delta(cfg))


def circle_beta(cfg: HagaConfig) -> Circle:
    cfg.require_F()
    if cfg.case == HagaCase.H4:
        return Circle.point(cfg.A)
    if cfg.case == HagaCase.H6:
        return reflect_circle(circle_delta(cfg), LINE_AB)
    return tritangent_on_line(triangle_aef(cfg), cfg.E, circle_alpha(cfg))


def circle_gamma(cfg: HagaConfig) -> Circle:
    cfg.require_F()
    if cfg.case == HagaCase.H4:
        return reflect_circle(circle_delta(cfg), LINE_DA)
    if cfg.case == HagaCase.H6:
        return Circle.point(cfg.A)
    return tritangent_on_line(triangle_aef(cfg), cfg.require_F(), circle_alpha(cfg))


def circle_eps1(cfg: HagaConfig) -> Circle:
    """
    The circle touching ``BC``, ``CD`` and ``EF`` with center on ``m`` and ``AC``, the
    incircle of ``ABCD`` in the degenerate cases.
    """
    cfg.require_F()
    if cfg.degenerate:
        return _incircle_of_square(cfg)
    center = intersect_lines(cfg.m, LINE_AC)
    if not isinstance(center, Point):
        raise NoF(f"case {cfg.case.value}: the crease is parallel to AC")
    return Circle(center, abs(cfg.d - center.x))


def circles_eps2_to_eps6(
    cfg: HagaConfig,
) -> tuple[Circle, Circle, Circle, Circle, Circle]:
    """
    The circles ``eps2`` to ``eps6`` of the triangles ``B'FG`` and ``DEH``.

    ``eps2`` is the excircle of ``B'FG`` opposite ``G`` in cases ``H1`` and ``H3`` and
    its incircle in ``H5`` and ``H7``, ``eps3`` is the other one of the two. ``eps4``
    is chosen the same way in ``DEH``. ``eps5`` and ``eps6`` are the tritangent
    circles on the lines through ``F`` and ``eps3``, and through ``E`` and ``eps4``.

    Raises
    ------
    NoF
        In case ``H2``.
    NoGH
        When ``G`` or ``H`` is missing.
    """
    cfg.require_F()
    if cfg.case == HagaCase.H4:
        incircle = _incircle_of_square(cfg)
        return (
            Circle.point(cfg.A),
            Circle.point(cfg.A),
            Circle.point(cfg.D),
            incircle,
            reflect_circle(incircle, cfg.line_CD),
        )
    if cfg.case == HagaCase.H6:
        return (
            Circle.point(cfg.B),
            Circle.point(cfg.B),
            Circle.point(cfg.D),
            Circle.point(cfg.B),
            Circle.point(cfg.D),
        )
    bfg = triangle_bfg(cfg)
    deh = triangle_deh(cfg)
    if cfg.case in (HagaCase.H1, HagaCase.H3):
        outer, inner = TritangentKind.EX_OPP_Q, TritangentKind.INCIRCLE
    else:
        outer, inner = TritangentKind.INCIRCLE, TritangentKind.EX_OPP_Q
    eps2 = tritangent_circle(bfg, outer)
    eps3 = tritangent_circle(bfg, inner)
    eps4 = tritangent_circle(deh, outer)
    eps5 = tritangent_on_line(bfg, cfg.require_F(), eps3)
    eps6 = tritangent_on_line(deh, cfg.E, eps4)
    return eps2, eps3, eps4, eps5, eps6


@dataclass(frozen=True)
class CircleSet:
    delta: Circle
    alpha: Circle | None = None
    beta: Circle | None = None
    gamma: Circle | None = None
    eps1: Circle | None = None
    eps2: Circle | None = None
    eps3: Circle | None = None
    eps4: Circle | None = None
    eps5: Circle | None = None
    eps6: Circle | None = None

    @classmethod
    def names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def get(self, name: str) -> Circle | None:
        if name not in self.names():
            raise KeyError(f"Unknown circle `{name}`.")
        return getattr(self, name)

    def items(self) -> list[tuple[str, Circle | None]]:
        return [(name, getattr(self, name)) for name in self.names()]


def circle_set(cfg: HagaConfig) -> CircleSet:
    """
    All named circles of ``cfg``. Only ``delta`` exists in case ``H2``.
    """
    if not cfg.has_F:
        return CircleSet(delta=circle_delta(cfg))
    eps2, eps3, eps4, eps5, eps6 = circles_eps2_to_eps6(cfg)
    return CircleSet(
        delta=circle_delta(cfg),
        alpha=circle_alpha(cfg),
        beta=circle_beta(cfg),
        gamma=circle_gamma(cfg),
        eps1=circle_eps1(cfg),
        eps2=eps2,
        eps3=eps3,
        eps4=eps4,
        eps5=eps5,
        eps6=eps6,
    )


def fg_length(cfg: HagaConfig) -> Fraction:
    G, _ = cfg.require_GH()
    return abs(cfg.require_F().x - G.x)


def dh_length(cfg: HagaConfig) -> Fraction:
    _, H = cfg.require_GH()
    return abs(H.x - cfg.D.x)


def fg_dh_relation(cfg: HagaConfig) -> Fraction:
    """
    ``|FG| - |DH|`` in cases ``H1`` and ``H3`` and ``|DH| - |FG|`` otherwise. It
    equals ``a``.
    """
    if cfg.case in (HagaCase.H1, HagaCase.H3):
        return fg_length(cfg) - dh_length(cfg)
    return dh_length(cfg) - fg_length(cfg)


def _signed_sum(cfg: HagaConfig) -> Fraction:
    a, b, c = cfg.a, cfg.b, cfg.c
    if cfg.case == HagaCase.H1:
        return a - b - c
    if cfg.case == HagaCase.H3:
        return -a - b + c
    if cfg.case == HagaCase.H7:
        return -a + b - c
    return a + b + c


def length_residues(cfg: HagaConfig) -> dict[str, Fraction]:
    """
    Residues of ``d = +-a +-b +-c``, of ``a d = b c`` and of the squared Haga relation
    ``|AE|^2 |AF|^2 = 4 b^2 c^2``.
    """
    F = cfg.require_F()
    a, b, c, d = cfg.a, cfg.b, cfg.c, cfg.d
    return {
        "sum": d - _signed_sum(cfg),
        "product": a * d - b * c,
        "haga": dist_sq(cfg.A, cfg.E) * dist_sq(cfg.A, F) - 4 * b * b * c * c,
    }


@dataclass(frozen=True)
class LengthIdentities:
    sum_ok: bool
    product_ok: bool
    haga_ok: bool


def length_identities(cfg: HagaConfig) -> LengthIdentities:
    residues = length_residues(cfg)
    return LengthIdentities(
        sum_ok=residues["sum"] == 0,
        product_ok=residues["product"] == 0,
        haga_ok=residues["haga"] == 0,
    )


def haga_residue(cfg: HagaConfig) -> Fraction:
    """
    ``|AE| |AF| - 2 |DE| |BF|`` without squaring, every length being rational.
    """
    F = cfg.require_F()
    return abs(cfg.e) * require_sqrt(dist_sq(cfg.A, F)) - 2 * cfg.b * cfg.c


def similar_triangles(cfg: HagaConfig) -> tuple[RightTriangleFrame, ...]:
    """
    The right triangles ``AEF``, ``B'FG`` and ``DEH``, which exist in the ordinary
    cases.
    """
    return triangle_aef(cfg), triangle_bfg(cfg), triangle_deh(cfg)


def similarity_residues(cfg: HagaConfig) -> list[Fraction]:
    triangles = [
        (min(t.leg_p, t.leg_q), max(t.leg_p, t.leg_q), t.hyp)
        for t in similar_triangles(cfg)
    ]
    short, long, hyp = triangles[0]
    residues = []
    for _short, _long, _hyp in triangles[1:]:
        residues.append(short * _long - _short * long)
        residues.append(hyp * _long - _hyp * long)
    return residues


def is_physically_foldable(cfg: HagaConfig) -> bool:
    """
    Whether the crease passes through the open square, i.e. separates two of its
    corners strictly.
    """
    values = [cfg.m.evaluate(corner) for corner in (cfg.A, cfg.B, cfg.C, cfg.D)]
    return any(v > 0 for v in values) and any(v < 0 for v in values)


@dataclass(frozen=True)
class Square:
    """
    A square reconstructed from a right triangle ``AEF``, with the signed coordinates
    ``e`` of ``E`` along ``AD`` and ``f`` of ``F`` along ``AB`` in units where the
    square has side ``d``.
    """

    A: Point
    B: Point
    C: Point
    D: Point
    d: Fraction
    e: Fraction
    f: Fraction
    alpha_kind: TritangentKind

    def round_trip(self) -> bool:
        cfg = build(self.d, self.e)
        return (
            cfg.F == Point(self.f, 0)
            and circle_alpha(cfg).radius == cfg.a
            and not cfg.degenerate
        )

    def to_json(self) -> dict[str, ty.Any]:
        return {
            "alpha": self.alpha_kind,
            "d": self.d,
            "e": self.e,
            "f": self.f,
            "vertices": {"A": self.A, "B": self.B, "C": self.C, "D": self.D},
        }


def squares_from_triangle(t: RightTriangleFrame) -> list[Square]:
    """
    The four squares whose fold produces the triangle ``t`` as ``AEF``, one for each
    choice of the circle ``alpha`` among the tritangent circles of ``t``. The right
    angle of ``t`` is ``A``, its ``p`` end is ``F`` and its ``q`` end is ``E``.

    Examples
    --------
    >>> sorted(s.d for s in squares_from_triangle(RightTriangleFrame.from_legs(4, 3)))
    [Fraction(1, 1), Fraction(2, 1), Fraction(3, 1), Fraction(6, 1)]
    """
    A, F, E = t.vertices
    line_AF = Line.through(A, F)
    line_AE = Line.through(A, E)
    squares = []
    for kind in TritangentKind:
        delta = tritangent_on_line(t, A, tritangent_circle(t, kind))
        C = delta.center
        B = foot_of_perpendicular(C, line_AF)
        D = foot_of_perpendicular(C, line_AE)
        d = delta.radius
        squares.append(
            Square(
                A=A,
                B=B,
                C=C,
                D=D,
                d=d,
                e=(E - A).dot(D - A) / d,
                f=(F - A).dot(B - A) / d,
                alpha_kind=kind,
            )
        )
    return squares


def config_document(cfg: HagaConfig) -> dict[str, ty.Any]:
    """
    The JSON document of a configuration. Rationals are ``"p/q"`` strings and absent
    values are ``None``.
    """
    points = {
        "A": cfg.A,
        "B": cfg.B,
        "C": cfg.C,
        "D": cfg.D,
        "E": cfg.E,
        "B_prime": cfg.B_prime,
        "F": cfg.F,
        "G": cfg.G,
        "H": cfg.H,
    }
    lengths = {
        "a": cfg.a,
        "b": cfg.b,
        "c": cfg.c,
        "d": cfg.d,
        "EF": ef_length(cfg) if cfg.has_F else None,
        "FG": fg_length(cfg) if cfg.has_F else None,
        "DH": dh_length(cfg),
    }
    return to_jsonable({
        "d": cfg.d,
        "e": cfg.e,
        "case": cfg.case,
        "points": points,
        "lengths": lengths,
        "circles": dict(circle_set(cfg).items()),
        "crease": cfg.m,
        "foldable": is_physically_foldable(cfg),
    })
