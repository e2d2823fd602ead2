"""
SVG figures of a fold. The geometry of a figure is resolved exactly into a
:class:`FigureSpec` and only converted to pixels, with two decimals, when the document
is written, so identical inputs give byte-identical documents.
"""

import copy
import dataclasses
import logging
import typing as ty
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import svgwrite

from hagafold.fold import CircleSet, HagaConfig, build, circle_set
from hagafold.kernel import Circle, Line, Point
from hagafold.settings import FigureConfig

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
LABELED_POINTS = ("A", "B", "C", "D", "E", "B_prime", "F")
LABEL_NAMES = {"B_prime": "B′"}
LABEL_DIRECTIONS = ((1, -1), (-1, -1), (1, 1), (-1, 1))
MAX_LABEL_RINGS = 20
POINT_RADIUS_PX = 3
CHAR_WIDTH = 0.6


class FigureError(ValueError):
    pass


@dataclass(frozen=True)
class Viewport:
    x_min: Fraction
    y_min: Fraction
    x_max: Fraction
    y_max: Fraction

    @property
    def width(self) -> Fraction:
        return self.x_max - self.x_min

    @property
    def height(self) -> Fraction:
        return self.y_max - self.y_min

    def contains(self, p: Point) -> bool:
        return self.x_min <= p.x <= self.x_max and self.y_min <= p.y <= self.y_max

    def clip(self, line: Line) -> tuple[Point, Point] | None:
        """
        The segment of ``line`` inside the viewport, or ``None`` when the line misses
        it or only touches a corner.
        """
        hits = set()
        if line.b != 0:
            for x in (self.x_min, self.x_max):
                hits.add(Point(x, -(line.a * x + line.c) / line.b))
        if line.a != 0:
            for y in (self.y_min, self.y_max):
                hits.add(Point(-(line.b * y + line.c) / line.a, y))
        inside = sorted((p for p in hits if self.contains(p)), key=lambda p: (p.x, p.y))
        if len(inside) < 2:
            return None
        return inside[0], inside[-1]


@dataclass(frozen=True)
class Label:
    text: str
    anchor: Point
    box: tuple[float, float, float, float]

    @property
    def insert(self) -> tuple[float, float]:
        # text baseline starts at the lower left corner of the box
        return self.box[0], self.box[3]


def _disjoint(u: tuple[float, ...], v: tuple[float, ...]) -> bool:
    return u[2] <= v[0] or v[2] <= u[0] or u[3] <= v[1] or v[3] <= u[1]


@dataclass(frozen=True)
class FigureSpec:
    """
    Everything a figure draws, in drawing order: the square, the crease clipped to the
    viewport, the folded side ``B'E``, the triangle ``AEF``, the selected circles in
    ascending order of name and the point labels.
    """

    config: HagaConfig
    circles: dict[str, Circle]
    viewport: Viewport
    height: int
    font_size: int
    caption: str | None
    labels: tuple[Label, ...] = ()

    @property
    def scale(self) -> float:
        return self.height / float(self.viewport.height)

    @property
    def width(self) -> float:
        return float(self.viewport.width) * self.scale

    def to_px(self, p: Point) -> tuple[float, float]:
        return (
            float(p.x - self.viewport.x_min) * self.scale,
            float(self.viewport.y_max - p.y) * self.scale,
        )

    @property
    def crease(self) -> tuple[Point, Point] | None:
        return self.viewport.clip(self.config.m)

    @property
    def folded_side(self) -> tuple[Point, Point] | None:
        cfg = self.config
        if cfg.B_prime == cfg.E:
            return None
        return cfg.B_prime, cfg.E

    @property
    def triangle(self) -> tuple[Point, Point, Point] | None:
        cfg = self.config
        if not cfg.ordinary:
            return None
        return cfg.A, cfg.E, cfg.require_F()


def _select_circles(cfg: HagaConfig, names: ty.Iterable[str]) -> dict[str, Circle]:
    circles: CircleSet = circle_set(cfg)
    selected = {}
    for name in sorted(set(names)):
        if name not in CircleSet.names():
            raise FigureError(
                f"Unknown circle `{name}`. Choose from {', '.join(CircleSet.names())}."
            )
        circle = circles.get(name)
        if circle is None:
            raise FigureError(
                f"Circle `{name}` does not exist in case {cfg.case.value}."
            )
        selected[name] = circle
    return selected


def _labeled_points(cfg: HagaConfig) -> list[tuple[str, Point]]:
    # coincident points share one label, e.g. ``A=B′=F``
    groups: dict[Point, list[str]] = {}
    for name in LABELED_POINTS:
        point = getattr(cfg, name)
        if point is not None:
            groups.setdefault(point, []).append(LABEL_NAMES.get(name, name))
    return [("=".join(names), point) for point, names in groups.items()]


def _viewport(
    points: ty.Iterable[Point], circles: ty.Iterable[Circle], margin: Fraction
) -> Viewport:
    xs: list[Fraction] = []
    ys: list[Fraction] = []
    for p in points:
        xs.append(p.x)
        ys.append(p.y)
    for c in circles:
        xs.extend((c.center.x - c.radius, c.center.x + c.radius))
        ys.extend((c.center.y - c.radius, c.center.y + c.radius))
    x_min, x_max, y_min, y_max = min(xs), max(xs), min(ys), max(ys)
    dx, dy = (x_max - x_min) * margin, (y_max - y_min) * margin
    return Viewport(x_min - dx, y_min - dy, x_max + dx, y_max + dy)


def _place_labels(spec: FigureSpec) -> tuple[Label, ...]:
    font = spec.font_size
    gap = font / 2
    placed: list[Label] = []
    for text, anchor in _labeled_points(spec.config):
        ax, ay = spec.to_px(anchor)
        width, height = CHAR_WIDTH * font * len(text), float(font)
        candidates = [
            (
                ax + sx * gap * ring - (width if sx < 0 else 0),
                ay + sy * gap * ring - (height if sy < 0 else 0),
            )
            for ring in range(1, MAX_LABEL_RINGS + 1)
            for sx, sy in LABEL_DIRECTIONS
        ]
        boxes = [(x, y, x + width, y + height) for x, y in candidates]
        box = next(
            (b for b in boxes if all(_disjoint(b, other.box) for other in placed)),
            None,
        )
        if box is None:
            logging.warning("Could not place label %s without overlap.", text)
            box = boxes[-1]
        placed.append(Label(text, anchor, box))
    return tuple(placed)


def figure_spec(figure: FigureConfig) -> FigureSpec:
    """
    Resolves a figure configuration into the elements to draw.

    Parameters
    ----------
    figure : FigureConfig
        the fold and the circles to draw.

    Returns
    -------
    FigureSpec
        the exact geometry of the figure with placed labels.

    Raises
    ------
    FigureError
        When a circle name is unknown or the circle does not exist in this case.
    """
    cfg = build(figure.d, figure.e)
    circles = _select_circles(cfg, figure.circles)
    points = [point for _, point in _labeled_points(cfg)]
    viewport = _viewport(points, circles.values(), figure.margin)
    spec = FigureSpec(
        config=cfg,
        circles=circles,
        viewport=viewport,
        height=figure.height,
        font_size=figure.font_size,
        caption=figure.caption,
    )
    return dataclasses.replace(spec, labels=_place_labels(spec))


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _xy(spec: FigureSpec, p: Point) -> tuple[str, str]:
    x, y = spec.to_px(p)
    return _fmt(x), _fmt(y)


def render_svg(spec: FigureSpec) -> str:
    """
    Writes the SVG document of ``spec``. Coordinates are formatted with two decimals.
    """
    cfg = spec.config
    dwg = svgwrite.Drawing(
        size=(_fmt(spec.width), _fmt(spec.height)), profile="full", debug=False
    )
    dwg.add(
        dwg.polygon(
            [_xy(spec, p) for p in (cfg.A, cfg.B, cfg.C, cfg.D)],
            fill="none",
            stroke="black",
            stroke_width=2,
        )
    )
    if (crease := spec.crease) is not None:
        dwg.add(
            dwg.line(
                _xy(spec, crease[0]),
                _xy(spec, crease[1]),
                stroke="gray",
                stroke_dasharray="6,4",
            )
        )
    if (side := spec.folded_side) is not None:
        dwg.add(dwg.line(_xy(spec, side[0]), _xy(spec, side[1]), stroke="black"))
    if (triangle := spec.triangle) is not None:
        dwg.add(
            dwg.polygon(
                [_xy(spec, p) for p in triangle],
                fill="#f2f2f2",
                fill_opacity=0.5,
                stroke="black",
            )
        )
    for i, (name, circle) in enumerate(spec.circles.items()):
        color = PALETTE[i % len(PALETTE)]
        if circle.is_point:
            dwg.add(
                dwg.circle(
                    _xy(spec, circle.center), r=POINT_RADIUS_PX, fill=color, id=name
                )
            )
        else:
            dwg.add(
                dwg.circle(
                    _xy(spec, circle.center),
                    r=_fmt(float(circle.radius) * spec.scale),
                    fill="none",
                    stroke=color,
                    id=name,
                )
            )
    for label in spec.labels:
        x, y = label.insert
        dwg.add(
            dwg.text(
                label.text,
                insert=(_fmt(x), _fmt(y)),
                font_size=spec.font_size,
                font_family="sans-serif",
            )
        )
    if spec.caption is not None:
        dwg.add(
            dwg.text(
                spec.caption,
                insert=(_fmt(spec.font_size / 2), _fmt(spec.height - spec.font_size / 2)),
                font_size=spec.font_size,
                font_family="serif",
            )
        )
    return dwg.tostring()


def render_figure(figure: FigureConfig) -> str:
    """
    Renders ``figure`` to an SVG document and writes it to ``figure.output`` when set.
    """
    svg = render_svg(figure_spec(figure))
    if figure.output is not None:
        Path(figure.output).write_text(svg, encoding="utf-8")
        logging.info("Wrote figure %s to %s.", figure.uid, figure.output)
    return svg


def _preset(d: int, e: int, circles: list[str], caption: str) -> FigureConfig:
    figure = FigureConfig(
        d=Fraction(d), e=Fraction(e), circles=circles, caption=caption
    )
    figure.freeze()
    return figure


_CASE_POINTS = {
    "h1": (1, 3),
    "h2": (1, 2),
    "h3": (2, 3),
    "h4": (2, 2),
    "h5": (2, 1),
    "h6": (2, 0),
    "h7": (2, -1),
}
_TANGENT_CIRCLES = ["alpha", "beta", "gamma", "delta"]
_EPS_CIRCLES = ["eps1", "eps2", "eps3", "eps4", "eps5", "eps6"]

# (d, e) pairs chosen so that each figure shows its case, not the original scale
PRESETS: dict[str, FigureConfig] = {
    **{name: _preset(d, e, [], f"({name})") for name, (d, e) in _CASE_POINTS.items()},
    **{
        f"{name}-circles": _preset(d, e, _TANGENT_CIRCLES, f"({name})")
        for name, (d, e) in _CASE_POINTS.items()
        if name in ("h1", "h3", "h5", "h7")
    },
    **{
        f"{name}-eps": _preset(d, e, _EPS_CIRCLES, f"({name})")
        for name, (d, e) in _CASE_POINTS.items()
        if name in ("h1", "h3", "h5", "h7")
    },
    "haga": _preset(2, 1, ["alpha"], "the inradius of AEF equals |B′F|"),
    "h7-equal": _preset(5, -7, _EPS_CIRCLES, "(h7)"),
    "h7-large": _preset(1, -3, _TANGENT_CIRCLES, "(h7)"),
}


def preset(name: str) -> FigureConfig:
    """
    An unfrozen copy of the preset figure ``name``.

    Raises
    ------
    FigureError
        When there is no such preset.
    """
    if name not in PRESETS:
        raise FigureError(
            f"Unknown preset `{name}`. Choose from {', '.join(sorted(PRESETS))}."
        )
    figure = copy.deepcopy(PRESETS[name])
    figure.unfreeze()
    return figure
