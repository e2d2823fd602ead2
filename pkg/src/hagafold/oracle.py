"""
A floating point re-derivation of the fold, used to test the exact construction
differentially. It shares no geometric routine with :mod:`hagafold.kernel`:
reflections are projections onto the crease direction, tritangent centers are weighted
vertex averages and tangency is a distance.
"""

import logging
import typing as ty
from dataclasses import dataclass

import numpy as np

from hagafold.fold import CircleSet, HagaCase, HagaConfig, circle_set
from hagafold.kernel import Circle, Point
from hagafold.utils import format_rational

NEAR_PARALLEL = 1e-9
CLASSIFY_TOLERANCE = 1e-12


class NearDegenerate(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class ApproxCircle(ty.NamedTuple):
    center: np.ndarray
    radius: float


@dataclass
class ApproxConfig:
    d: float
    e: float
    case: HagaCase
    points: dict[str, np.ndarray | None]
    lengths: dict[str, float]
    circles: dict[str, ApproxCircle]


def _xy(x: float, y: float) -> np.ndarray:
    return np.array([x, y], dtype=np.float64)


def _norm(v: np.ndarray) -> float:
    return float(np.linalg.norm(v))


def _line_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    direction, offset = b - a, p - a
    cross = direction[0] * offset[1] - direction[1] * offset[0]
    return abs(float(cross)) / _norm(direction)


def _classify(d: float, e: float) -> HagaCase:
    if abs(e - 2 * d) <= NEAR_PARALLEL:
        raise NearDegenerate(f"e={e} is within {NEAR_PARALLEL} of 2d={2 * d}.")
    if e > 2 * d:
        return HagaCase.H1
    if abs(e - d) <= CLASSIFY_TOLERANCE:
        return HagaCase.H4
    if e > d:
        return HagaCase.H3
    if abs(e) <= CLASSIFY_TOLERANCE:
        return HagaCase.H6
    if e > 0:
        return HagaCase.H5
    return HagaCase.H7


def _tritangent_circles(
    v0: np.ndarray, v1: np.ndarray, v2: np.ndarray
) -> dict[str, ApproxCircle]:
    # side lengths opposite each vertex, then signed-weight averages
    sides = np.array([_norm(v2 - v1), _norm(v0 - v2), _norm(v1 - v0)])
    vertices = np.stack([v0, v1, v2])
    weights = {
        "in": sides,
        "ex0": sides * np.array([-1.0, 1.0, 1.0]),
        "ex1": sides * np.array([1.0, -1.0, 1.0]),
        "ex2": sides * np.array([1.0, 1.0, -1.0]),
    }
    circles = {}
    for name, w in weights.items():
        center = w @ vertices / w.sum()
        circles[name] = ApproxCircle(center, _line_distance(center, v1, v2))
    return circles


def _on_line(
    circles: dict[str, ApproxCircle], through: np.ndarray, known: ApproxCircle
) -> ApproxCircle:
    # drop the circle nearest to ``known``, keep the one nearest to the line
    ranked = sorted(circles.values(), key=lambda c: _norm(c.center - known.center))
    return min(
        ranked[1:], key=lambda c: _line_distance(c.center, through, known.center)
    )


def _point_circle(p: np.ndarray) -> ApproxCircle:
    return ApproxCircle(p.copy(), 0.0)


def approx_build(d: float, e: float) -> ApproxConfig:
    """
    Builds the fold of the square of side ``d`` with binary floating point.

    Parameters
    ----------
    d : float
        the side of the square, > 0.
    e : float
        the ordinate of ``E``, at distance more than ``1e-9`` from ``2d``.

    Returns
    -------
    ApproxConfig
        the points, lengths and named circles of the fold.

    Raises
    ------
    NearDegenerate
        When ``|e - 2d| <= 1e-9``, where ``F`` is undefined or runs off to infinity.
    ValueError
        When ``d <= 0``.
    """
    d, e = float(d), float(e)
    if d <= 0:
        raise ValueError(f"The side of the square must be positive, got {d}.")
    case = _classify(d, e)
    A, B, C, D, E = _xy(0, 0), _xy(d, 0), _xy(d, d), _xy(0, d), _xy(0, e)

    M = (C + E) / 2
    ce = E - C
    u = np.array([-ce[1], ce[0]]) / _norm(ce)
    B_prime = 2 * (M + u * float(np.dot(B - M, u))) - B

    if case == HagaCase.H6:
        F = B.copy()
    else:
        # E + s (B' - E) on the line y = 0
        s = -E[1] / (B_prime[1] - E[1])
        F = E + s * (B_prime - E)
    G = M + u * (-M[1] / u[1])
    H = M + u * ((d - M[1]) / u[1])

    a = _norm(B_prime - F)
    lengths = {"a": a, "b": abs(d - e), "c": abs(d - F[0]), "d": d}
    points = {
        "A": A,
        "B": B,
        "C": C,
        "D": D,
        "E": E,
        "B_prime": B_prime,
        "F": F,
        "G": G,
        "H": H,
    }

    delta = ApproxCircle(C.copy(), d)
    square_incircle = ApproxCircle(_xy(d / 2, d / 2), d / 2)
    circles = {"delta": delta}
    if case == HagaCase.H4:
        circles |= {
            "alpha": _point_circle(A),
            "beta": _point_circle(A),
            "gamma": ApproxCircle(_xy(-d, d), d),
            "eps1": square_incircle,
            "eps2": _point_circle(A),
            "eps3": _point_circle(A),
            "eps4": _point_circle(D),
            "eps5": square_incircle,
            "eps6": ApproxCircle(_xy(d / 2, 3 * d / 2), d / 2),
        }
    elif case == HagaCase.H6:
        circles |= {
            "alpha": _point_circle(A),
            "beta": ApproxCircle(_xy(d, -d), d),
            "gamma": _point_circle(A),
            "eps1": square_incircle,
            "eps2": _point_circle(B),
            "eps3": _point_circle(B),
            "eps4": _point_circle(D),
            "eps5": _point_circle(B),
            "eps6": _point_circle(D),
        }
    else:
        aef = _tritangent_circles(A, E, F)
        alpha = _on_line(aef, A, delta)
        circles["alpha"] = alpha
        circles["beta"] = _on_line(aef, E, alpha)
        circles["gamma"] = _on_line(aef, F, alpha)

        # the crease meets the diagonal y = x
        t = (M[0] - M[1]) / (u[1] - u[0])
        center = M + t * u
        circles["eps1"] = ApproxCircle(center, abs(d - center[0]))

        bfg = _tritangent_circles(B_prime, F, G)
        deh = _tritangent_circles(D, E, H)
        if case in (HagaCase.H1, HagaCase.H3):
            eps2, eps3, eps4 = bfg["ex2"], bfg["in"], deh["ex2"]
        else:
            eps2, eps3, eps4 = bfg["in"], bfg["ex2"], deh["in"]
        circles |= {
            "eps2": eps2,
            "eps3": eps3,
            "eps4": eps4,
            "eps5": _on_line(bfg, F, eps3),
            "eps6": _on_line(deh, E, eps4),
        }
    return ApproxConfig(d, e, case, points, lengths, circles)


def _point_error(exact: Point, approx: np.ndarray) -> float:
    return float(np.max(np.abs(_xy(float(exact.x), float(exact.y)) - approx)))


def _circle_error(exact: Circle, approx: ApproxCircle) -> float:
    return max(
        _point_error(exact.center, approx.center),
        abs(float(exact.radius) - approx.radius),
    )


def compare(
    cfg: HagaConfig,
    approx: ApproxConfig,
    tol: float = 1e-9,
    circles: CircleSet | None = None,
) -> float:
    """
    The largest absolute discrepancy between the exact and the approximate fold over
    every coordinate, length and radius.

    Parameters
    ----------
    cfg : HagaConfig
        the exact configuration.
    approx : ApproxConfig
        the approximate configuration of the same ``(d, e)``.
    tol : float, optional
        the discrepancy above which a warning is logged, by default 1e-9
    circles : CircleSet | None, optional
        the circles of ``cfg`` when already computed.

    Returns
    -------
    float
        the maximum absolute error.

    Raises
    ------
    ShapeMismatch
        When a point or circle exists in one configuration and not in the other.
    """
    if cfg.has_F != (approx.points["F"] is not None):
        raise ShapeMismatch(
            f"F is {'present' if cfg.has_F else 'absent'} in the exact case "
            f"{cfg.case.value} and not in the approximate case {approx.case.value}."
        )
    if circles is None:
        circles = circle_set(cfg)
    errors = []
    for name, approx_point in approx.points.items():
        exact_point = getattr(cfg, name)
        if (exact_point is None) != (approx_point is None):
            raise ShapeMismatch(f"Point {name} exists in only one configuration.")
        if exact_point is not None:
            errors.append(_point_error(exact_point, approx_point))
    for name, value in approx.lengths.items():
        errors.append(abs(float(getattr(cfg, name)) - value))
    for name, exact_circle in circles.items():
        approx_circle = approx.circles.get(name)
        if (exact_circle is None) != (approx_circle is None):
            raise ShapeMismatch(f"Circle {name} exists in only one configuration.")
        if exact_circle is not None:
            errors.append(_circle_error(exact_circle, approx_circle))

    max_error = max(errors)
    if max_error > tol:
        logging.warning(
            "Oracle discrepancy %.3e above %.1e for d=%s, e=%s.",
            max_error,
            tol,
            format_rational(cfg.d),
            format_rational(cfg.e),
        )
    return max_error
