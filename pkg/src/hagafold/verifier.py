"""
Exact verification of the fold theorems on single configurations and on sweeps.

Every check is a generator of exact residues registered against a :class:`CheckId`.
A check passes when all of its residues are zero, and fails with the first nonzero
residue as the witness. Construction errors inside a check are failures too.
"""

import dataclasses
import logging
import typing as ty
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from hagafold.config.types import Enum
from hagafold.fold import (
    LINE_AB,
    HagaCase,
    HagaConfig,
    InvalidSquare,
    NoF,
    NoGH,
    build,
    circle_alpha,
    circle_beta,
    circle_delta,
    circle_eps1,
    circle_gamma,
    circles_eps2_to_eps6,
    ef_length,
    fg_dh_relation,
    length_residues,
    triangle_aef,
    triangle_bfg,
)
from hagafold.kernel import (
    Circle,
    GeometryError,
    Point,
    dist_sq,
    foot_of_perpendicular,
    midpoint,
    rat,
    reflect_point,
    tangency_residue,
)
from hagafold.tritangent import (
    common_tangent_perpendicular,
    hansen_residues,
    kind_of,
    tritangent_circles,
)
from hagafold.utils import format_rational


class CheckId(Enum):
    P3_1_TANGENT = "P3_1_TANGENT"
    P3_1_EF = "P3_1_EF"
    T3_2_HAGA = "T3_2_HAGA"
    T4_1_RADII = "T4_1_RADII"
    T4_2_SUM = "T4_2_SUM"
    T4_2_PRODUCT = "T4_2_PRODUCT"
    T4_3_BETA_TOUCH = "T4_3_BETA_TOUCH"
    SET_INEXCIRCLES = "SET_INEXCIRCLES"
    T5_1_RADIUS = "T5_1_RADIUS"
    T5_1_MIDPOINT = "T5_1_MIDPOINT"
    P6_1_FGDH = "P6_1_FGDH"
    T6_2_R3R4 = "T6_2_R3R4"
    T6_2_A_SUM = "T6_2_A_SUM"
    T6_3_CONGRUENT = "T6_3_CONGRUENT"
    T2_2_HANSEN_AEF = "T2_2_HANSEN_AEF"
    T6_TANGENT_PERP = "T6_TANGENT_PERP"


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CheckResult:
    status: Status
    witness: Fraction | None = None
    reason: str | None = None

    @classmethod
    def passed(cls) -> "CheckResult":
        return cls(Status.PASS)

    @classmethod
    def failed(cls, witness: Fraction | None, reason: str | None = None) -> "CheckResult":
        return cls(Status.FAIL, witness=witness, reason=reason)

    @classmethod
    def not_applicable(cls, reason: str) -> "CheckResult":
        return cls(Status.NOT_APPLICABLE, reason=reason)

    def to_dict(self) -> dict[str, str]:
        entry = {"status": self.status.value}
        if self.witness is not None:
            entry["witness"] = format_rational(self.witness)
        if self.reason is not None:
            entry["reason"] = self.reason
        return entry


@dataclass(frozen=True)
class VerificationReport:
    """
    The outcome of every check on one configuration, in :class:`CheckId` order.
    """

    d: Fraction
    e: Fraction
    case: HagaCase
    results: dict[CheckId, CheckResult]

    @property
    def failures(self) -> list[CheckId]:
        return [k for k, v in self.results.items() if v.status == Status.FAIL]

    @property
    def ok(self) -> bool:
        return len(self.failures) == 0

    def count(self, status: Status) -> int:
        return sum(1 for v in self.results.values() if v.status == status)

    def to_dict(self) -> dict[str, ty.Any]:
        return {
            "d": format_rational(self.d),
            "e": format_rational(self.e),
            "case": self.case.value,
            "checks": [
                {"id": check_id.value, **result.to_dict()}
                for check_id, result in self.results.items()
            ],
        }


_SINGLE_CIRCLES: dict[str, ty.Callable[[HagaConfig], Circle]] = {
    "delta": circle_delta,
    "alpha": circle_alpha,
    "beta": circle_beta,
    "gamma": circle_gamma,
    "eps1": circle_eps1,
}
_EPS_TAIL = ("eps2", "eps3", "eps4", "eps5", "eps6")


class _Context:
    """
    Lazily derived quantities of a configuration. Circles are rebuilt from the stored
    points so that a perturbed configuration is checked as it is. Each circle is built
    on its own, and a construction error reaches only the checks that use it.
    """

    def __init__(self, cfg: HagaConfig) -> None:
        self.cfg = cfg
        self._circles: dict[str, Circle] = {}

    @cached_property
    def eps_tail(self) -> dict[str, Circle]:
        return dict(zip(_EPS_TAIL, circles_eps2_to_eps6(self.cfg)))

    def circle(self, name: str) -> Circle:
        if name not in self._circles:
            if name in _SINGLE_CIRCLES:
                self._circles[name] = _SINGLE_CIRCLES[name](self.cfg)
            elif name in _EPS_TAIL:
                self._circles[name] = self.eps_tail[name]
            else:
                raise KeyError(f"Unknown circle `{name}`.")
        return self._circles[name]

    @cached_property
    def F(self) -> Point:
        return self.cfg.require_F()

    @cached_property
    def GH(self) -> tuple[Point, Point]:
        return self.cfg.require_GH()


ResidueFn = ty.Callable[[_Context], list[Fraction]]


@dataclass(frozen=True)
class _Check:
    fn: ResidueFn
    needs_F: bool
    ordinary_only: bool


_CHECKS: dict[CheckId, _Check] = {}


def _check(
    check_id: CheckId, needs_F: bool = True, ordinary_only: bool = False
) -> ty.Callable[[ResidueFn], ResidueFn]:
    def register(fn: ResidueFn) -> ResidueFn:
        _CHECKS[check_id] = _Check(fn, needs_F, ordinary_only)
        return fn

    return register


def _point_residues(p: Point, q: Point) -> list[Fraction]:
    return [p.x - q.x, p.y - q.y]


@_check(CheckId.P3_1_TANGENT, needs_F=False)
def _tangent(ctx: _Context) -> list[Fraction]:
    cfg = ctx.cfg
    residues = [
        tangency_residue(cfg.line_BpE, circle_delta(cfg)),
        dist_sq(cfg.B_prime, cfg.E) - cfg.d * cfg.d,
        *_point_residues(cfg.B_prime, reflect_point(cfg.B, cfg.m)),
    ]
    # incidences of G and H, which exist without F
    if cfg.G is not None:
        residues += [cfg.m.evaluate(cfg.G), LINE_AB.evaluate(cfg.G)]
    if cfg.H is not None:
        residues += [cfg.m.evaluate(cfg.H), cfg.line_CD.evaluate(cfg.H)]
    return residues


@_check(CheckId.P3_1_EF)
def _ef(ctx: _Context) -> list[Fraction]:
    cfg, F = ctx.cfg, ctx.F
    ef = ef_length(cfg)
    return [
        F.y,
        cfg.line_BpE.evaluate(F),
        dist_sq(cfg.E, F) - ef * ef,
        cfg.a * cfg.a - dist_sq(cfg.B_prime, F),
        cfg.b * cfg.b - dist_sq(cfg.D, cfg.E),
        cfg.c * cfg.c - dist_sq(cfg.B, F),
    ]


@_check(CheckId.T3_2_HAGA)
def _haga(ctx: _Context) -> list[Fraction]:
    return [length_residues(ctx.cfg)["haga"]]


@_check(CheckId.T4_1_RADII)
def _radii(ctx: _Context) -> list[Fraction]:
    cfg = ctx.cfg
    return [
        ctx.circle("alpha").radius - cfg.a,
        ctx.circle("beta").radius - cfg.b,
        ctx.circle("gamma").radius - cfg.c,
    ]


@_check(CheckId.T4_2_SUM)
def _sum(ctx: _Context) -> list[Fraction]:
    return [length_residues(ctx.cfg)["sum"]]


@_check(CheckId.T4_2_PRODUCT)
def _product(ctx: _Context) -> list[Fraction]:
    return [length_residues(ctx.cfg)["product"]]


@_check(CheckId.T4_3_BETA_TOUCH)
def _beta_touch(ctx: _Context) -> list[Fraction]:
    cfg, beta = ctx.cfg, ctx.circle("beta")
    if beta.is_point:
        return _point_residues(beta.center, cfg.B_prime)
    line = cfg.line_BpE
    return [
        dist_sq(beta.center, cfg.B_prime) - beta.radius * beta.radius,
        tangency_residue(line, beta),
        *_point_residues(foot_of_perpendicular(beta.center, line), cfg.B_prime),
    ]


@_check(CheckId.SET_INEXCIRCLES, ordinary_only=True)
def _inexcircles(ctx: _Context) -> list[Fraction]:
    named = {ctx.circle(name) for name in ("alpha", "beta", "gamma", "delta")}
    expected = set(tritangent_circles(triangle_aef(ctx.cfg)).values())
    return [Fraction(len(named ^ expected))]


@_check(CheckId.T5_1_RADIUS)
def _eps1_radius(ctx: _Context) -> list[Fraction]:
    cfg, eps1 = ctx.cfg, ctx.circle("eps1")
    return [
        2 * eps1.radius - ef_length(cfg),
        tangency_residue(cfg.line_BC, eps1),
        tangency_residue(cfg.line_CD, eps1),
    ]


@_check(CheckId.T5_1_MIDPOINT)
def _eps1_midpoint(ctx: _Context) -> list[Fraction]:
    cfg, eps1 = ctx.cfg, ctx.circle("eps1")
    line = cfg.line_EF
    return [
        tangency_residue(line, eps1),
        *_point_residues(
            foot_of_perpendicular(eps1.center, line), midpoint(cfg.E, ctx.F)
        ),
    ]


@_check(CheckId.P6_1_FGDH)
def _fg_dh(ctx: _Context) -> list[Fraction]:
    cfg = ctx.cfg
    G, H = ctx.GH
    return [
        cfg.m.evaluate(G),
        LINE_AB.evaluate(G),
        cfg.m.evaluate(H),
        cfg.line_CD.evaluate(H),
        fg_dh_relation(cfg) - cfg.a,
    ]


@_check(CheckId.T6_2_R3R4)
def _r3_r4(ctx: _Context) -> list[Fraction]:
    return [ctx.circle("eps3").radius - ctx.circle("eps4").radius]


@_check(CheckId.T6_2_A_SUM)
def _a_sum(ctx: _Context) -> list[Fraction]:
    return [ctx.cfg.a - (ctx.circle("eps2").radius + ctx.circle("eps4").radius)]


@_check(CheckId.T6_3_CONGRUENT)
def _congruent(ctx: _Context) -> list[Fraction]:
    return [ctx.circle("eps5").radius - ctx.circle("eps6").radius]


@_check(CheckId.T2_2_HANSEN_AEF, ordinary_only=True)
def _hansen(ctx: _Context) -> list[Fraction]:
    return list(hansen_residues(triangle_aef(ctx.cfg)).values())


@_check(CheckId.T6_TANGENT_PERP, ordinary_only=True)
def _tangent_perp(ctx: _Context) -> list[Fraction]:
    bfg = triangle_bfg(ctx.cfg)
    eps3, eps5 = ctx.circle("eps3"), ctx.circle("eps5")
    tangent = common_tangent_perpendicular(bfg, (kind_of(bfg, eps3), kind_of(bfg, eps5)))
    left = sorted([eps3.radius, eps5.radius])
    right = sorted([ctx.circle("eps4").radius, ctx.circle("eps6").radius])
    return [
        tangent.b,
        tangency_residue(tangent, eps3),
        tangency_residue(tangent, eps5),
        left[0] - right[0],
        left[1] - right[1],
    ]


def _run(check_id: CheckId, ctx: _Context) -> CheckResult:
    check = _CHECKS[check_id]
    cfg = ctx.cfg
    if check.needs_F and not cfg.has_F:
        return CheckResult.not_applicable(f"case {cfg.case.value}: F does not exist")
    if check.ordinary_only and not cfg.ordinary:
        return CheckResult.not_applicable(
            f"case {cfg.case.value}: the triangle AEF is degenerate"
        )
    try:
        residues = check.fn(ctx)
    except GeometryError as e:
        result = CheckResult.failed(e.residue, reason=str(e))
    else:
        witness = next((r for r in residues if r != 0), None)
        if witness is None:
            return CheckResult.passed()
        result = CheckResult.failed(witness)
    logging.warning(
        "Check %s failed for d=%s, e=%s with witness %s",
        check_id.value,
        format_rational(cfg.d),
        format_rational(cfg.e),
        "-" if result.witness is None else format_rational(result.witness),
    )
    return result


def verify(cfg: HagaConfig) -> VerificationReport:
    """
    Evaluates every check on ``cfg`` exactly.

    Parameters
    ----------
    cfg : HagaConfig
        the configuration, possibly modified with :func:`perturb`.

    Returns
    -------
    VerificationReport
        one result for each :class:`CheckId`. Failures are entries of the report and
        are never raised.

    Examples
    --------
    >>> verify(build(1, 3)).ok
    True
    """
    ctx = _Context(cfg)
    results = {check_id: _run(check_id, ctx) for check_id in CheckId}
    return VerificationReport(cfg.d, cfg.e, cfg.case, results)


def _verify_point(d_e: tuple[Fraction, Fraction]) -> VerificationReport:
    return verify(build(*d_e))


def sweep(
    d: Fraction | int | str,
    e_values: ty.Iterable[Fraction | int | str],
    workers: int = 1,
) -> list[VerificationReport]:
    """
    Verifies the configurations ``(d, e)`` for each ``e``, in order.

    Parameters
    ----------
    d : Fraction | int | str
        the side of the square.
    e_values : ty.Iterable[Fraction | int | str]
        the ordinates of ``E``.
    workers : int, optional
        the size of the process pool, by default 1 which evaluates sequentially.

    Raises
    ------
    InvalidSquare
        When ``d <= 0``.
    """
    d = rat(d)
    if d <= 0:
        raise InvalidSquare(f"The side of the square must be positive, got {d}.", residue=d)
    tasks = [(d, rat(e)) for e in e_values]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_point, tasks))
    else:
        reports = [_verify_point(task) for task in tasks]
    logging.info(
        "Verified %d configurations with d=%s, %d failing.",
        len(reports),
        format_rational(d),
        sum(1 for r in reports if not r.ok),
    )
    return reports


def case_coverage(reports: ty.Iterable[VerificationReport]) -> set[HagaCase]:
    return {report.case for report in reports}


PERTURBABLE_POINTS = ("B_prime", "F", "G", "H")


def perturb(
    cfg: HagaConfig, point: str, dx: Fraction | int, dy: Fraction | int
) -> HagaConfig:
    """
    A copy of ``cfg`` with the derived point ``point`` moved by ``(dx, dy)``. The
    copy is inconsistent by construction and is meant for :func:`verify`.

    Raises
    ------
    ValueError
        When ``point`` is not one of ``PERTURBABLE_POINTS``.
    NoF
        When ``point`` is ``F`` in case ``H2``.
    """
    if point not in PERTURBABLE_POINTS:
        raise ValueError(
            f"Can not perturb `{point}`. Choose one of {', '.join(PERTURBABLE_POINTS)}."
        )
    current = getattr(cfg, point)
    if current is None:
        error = NoF if point == "F" else NoGH
        raise error(f"case {cfg.case.value}: {point} does not exist")
    return dataclasses.replace(cfg, **{point: current + Point(dx, dy)})
