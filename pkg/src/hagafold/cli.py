"""
The ``hagafold`` command line. Rationals are given in the ``P/Q`` syntax, so the exact
path stays exact from the arguments to the output.
"""

import json
import logging
import typing as ty
from fractions import Fraction
from pathlib import Path

import click

from hagafold import __version__
from hagafold.fold import HagaConfig, build, classify, config_document, squares_from_triangle
from hagafold.kernel import GeometryError
from hagafold.oracle import approx_build, compare
from hagafold.render import FigureError, preset, render_figure
from hagafold.settings import FigureConfig, OracleConfig, SweepConfig
from hagafold.tritangent import RightTriangleFrame
from hagafold.utils import format_rational, parse_rational, to_jsonable
from hagafold.verifier import Status, VerificationReport, case_coverage, sweep, verify


class RationalType(click.ParamType):
    name = "P/Q"

    def convert(self, value, param, ctx) -> Fraction:
        try:
            return parse_rational(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


class RationalListType(click.ParamType):
    name = "P/Q,P/Q,..."

    def convert(self, value, param, ctx) -> list[Fraction]:
        if isinstance(value, list):
            return value
        try:
            return [parse_rational(v) for v in value.split(",") if v.strip()]
        except ValueError as e:
            self.fail(str(e), param, ctx)


RATIONAL = RationalType()
RATIONAL_LIST = RationalListType()


def _build(d: Fraction, e: Fraction) -> HagaConfig:
    try:
        return build(d, e)
    except GeometryError as e:
        raise click.BadParameter(str(e), param_hint="--d") from e


def _emit_json(document: ty.Any, path: str | None) -> None:
    text = json.dumps(to_jsonable(document), indent=2)
    if path is None or path == "-":
        click.echo(text)
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")
        logging.info("Wrote %s.", path)


def _report_line(report: VerificationReport) -> str:
    return (
        f"d={format_rational(report.d)} e={format_rational(report.e)}"
        f" case={report.case.value} pass={report.count(Status.PASS)}"
        f" fail={report.count(Status.FAIL)}"
        f" n/a={report.count(Status.NOT_APPLICABLE)}"
    )


def _run_oracle(cfg: HagaConfig, oracle: OracleConfig) -> float | None:
    if abs(float(cfg.e - 2 * cfg.d)) <= oracle.exclusion:
        logging.info(
            "Skipping the oracle for d=%s, e=%s near e=2d.",
            format_rational(cfg.d),
            format_rational(cfg.e),
        )
        return None
    return compare(cfg, approx_build(float(cfg.d), float(cfg.e)), tol=oracle.tolerance)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="log progress at the INFO level")
@click.version_option(__version__)
def main(verbose: bool) -> None:
    """
    Exact constructions and theorem checks of the generalized Haga fold.
    """
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )


@main.command("classify")
@click.option("--d", "d", type=RATIONAL, required=True, help="side of the square")
@click.option("--e", "e", type=RATIONAL, required=True, help="ordinate of E")
def classify_cmd(d: Fraction, e: Fraction) -> None:
    """
    Print the case h1 ... h7 of the fold.
    """
    try:
        click.echo(classify(d, e).value)
    except GeometryError as err:
        raise click.BadParameter(str(err), param_hint="--d") from err


@main.command("build")
@click.option("--d", "d", type=RATIONAL, required=True, help="side of the square")
@click.option("--e", "e", type=RATIONAL, required=True, help="ordinate of E")
@click.option("--json", "json_path", default=None, help="write the document to PATH")
def build_cmd(d: Fraction, e: Fraction, json_path: str | None) -> None:
    """
    Print the points, lengths and circles of the fold as JSON.
    """
    _emit_json(config_document(_build(d, e)), json_path)


@main.command("verify")
@click.option("--d", "d", type=RATIONAL, required=True, help="side of the square")
@click.option("--e", "e", type=RATIONAL, required=True, help="ordinate of E")
@click.option("--oracle", is_flag=True, help="cross-check with floating point")
@click.option("--tolerance", type=float, default=1e-9, show_default=True)
@click.option("--json", "json_path", default=None, help="write the report to PATH")
@click.pass_context
def verify_cmd(
    ctx: click.Context,
    d: Fraction,
    e: Fraction,
    oracle: bool,
    tolerance: float,
    json_path: str | None,
) -> None:
    """
    Run every theorem check on one fold. Exits with 1 when a check fails.
    """
    cfg = _build(d, e)
    report = verify(cfg)
    if json_path == "-":
        _emit_json(report.to_dict(), None)
    else:
        for check_id, result in report.results.items():
            detail = result.to_dict()
            extra = detail.get("witness", detail.get("reason", ""))
            click.echo(f"{check_id.value:<16} {result.status.value:<15} {extra}".rstrip())
        click.echo(_report_line(report))
        if json_path is not None:
            _emit_json(report.to_dict(), json_path)

    failed = not report.ok
    if oracle:
        error = _run_oracle(cfg, OracleConfig(enabled=True, tolerance=tolerance))
        if error is not None:
            click.echo(f"oracle max error: {error:.3e}", err=json_path == "-")
            failed = failed or error > tolerance
    if failed:
        ctx.exit(1)


@main.command("sweep")
@click.option("--d", "d", type=RATIONAL, default=None, help="side of the square")
@click.option("--e-from", type=RATIONAL, default=None)
@click.option("--e-to", type=RATIONAL, default=None)
@click.option("--steps", type=int, default=None, help="number of equal intervals")
@click.option("--e-list", type=RATIONAL_LIST, default=None, help="explicit values of e")
@click.option("--config", "config_path", default=None, help="a SweepConfig YAML file")
@click.option("--workers", type=int, default=None)
@click.option("--oracle", is_flag=True, help="cross-check with floating point")
@click.option("--json", "json_path", default=None, help="write the reports to PATH")
@click.pass_context
def sweep_cmd(
    ctx: click.Context,
    d: Fraction | None,
    e_from: Fraction | None,
    e_to: Fraction | None,
    steps: int | None,
    e_list: list[Fraction] | None,
    config_path: str | None,
    workers: int | None,
    oracle: bool,
    json_path: str | None,
) -> None:
    """
    Verify a grid of folds. Exits with 1 when any check fails.
    """
    try:
        cfg = SweepConfig.load(config_path) if config_path else SweepConfig()
        overrides = {
            "d": d,
            "e_from": e_from,
            "e_to": e_to,
            "steps": steps,
            "e_values": e_list,
            "workers": workers,
            "output": json_path,
        }
        for k, v in overrides.items():
            if v is not None:
                setattr(cfg, k, v)
        if oracle:
            cfg.oracle.enabled = True
        e_values = cfg.e_grid()
    except ValueError as e:
        raise click.UsageError(str(e)) from e
    logging.info("Sweep configuration %s.", cfg.uid)

    reports = sweep(cfg.d, e_values, workers=cfg.workers)
    for report in reports:
        click.echo(_report_line(report), err=cfg.output == "-")

    failed = any(not r.ok for r in reports)
    max_error = None
    if cfg.oracle.enabled:
        errors = [_run_oracle(build(cfg.d, e), cfg.oracle) for e in e_values]
        measured = [err for err in errors if err is not None]
        if measured:
            max_error = max(measured)
            failed = failed or max_error > cfg.oracle.tolerance

    coverage = sorted(case.value for case in case_coverage(reports))
    summary = f"coverage: {','.join(coverage)} reports: {len(reports)}"
    if max_error is not None:
        summary += f" oracle max error: {max_error:.3e}"
    click.echo(summary, err=cfg.output == "-")
    if cfg.output is not None:
        _emit_json(
            {
                "uid": cfg.uid,
                "d": cfg.d,
                "coverage": coverage,
                "reports": [r.to_dict() for r in reports],
            },
            cfg.output,
        )
    if failed:
        ctx.exit(1)


@main.command("figure")
@click.option("--d", "d", type=RATIONAL, default=None, help="side of the square")
@click.option("--e", "e", type=RATIONAL, default=None, help="ordinate of E")
@click.option("--circles", default=None, help="comma separated circle names")
@click.option("--out", "out", default=None, help="write the SVG document to PATH")
@click.option(
    "--preset", "--paper-figure", "preset_name", default=None, help="name of a preset figure"
)
@click.option("--config", "config_path", default=None, help="a FigureConfig YAML file")
def figure_cmd(
    d: Fraction | None,
    e: Fraction | None,
    circles: str | None,
    out: str | None,
    preset_name: str | None,
    config_path: str | None,
) -> None:
    """
    Draw a fold and a selection of its circles as SVG.
    """
    try:
        if preset_name is not None:
            figure = preset(preset_name)
        elif config_path is not None:
            figure = FigureConfig.load(config_path)
        else:
            figure = FigureConfig()
        overrides = {
            "d": d,
            "e": e,
            "circles": None if circles is None else [
                c.strip() for c in circles.split(",") if c.strip()
            ],
            "output": out,
        }
        for k, v in overrides.items():
            if v is not None:
                setattr(figure, k, v)
        svg = render_figure(figure)
    except (FigureError, GeometryError) as err:
        raise click.UsageError(str(err)) from err
    if figure.output is None:
        click.echo(svg)


@main.command("construct-squares")
@click.option("--legs", type=RATIONAL_LIST, required=True, help="the legs P/Q,P/Q")
@click.pass_context
def construct_squares_cmd(ctx: click.Context, legs: list[Fraction]) -> None:
    """
    Print the four squares whose fold yields the right triangle with the given legs.
    """
    if len(legs) != 2:
        raise click.BadParameter("Expected exactly two legs.", param_hint="--legs")
    try:
        triangle = RightTriangleFrame.from_legs(*legs)
    except GeometryError as err:
        raise click.BadParameter(str(err), param_hint="--legs") from err
    squares = squares_from_triangle(triangle)
    round_trips = [square.round_trip() for square in squares]
    _emit_json(
        {
            "legs": legs,
            "hypotenuse": triangle.hyp,
            "squares": [
                {**square.to_json(), "round_trip": ok}
                for square, ok in zip(squares, round_trips)
            ],
        },
        None,
    )
    if not all(round_trips):
        ctx.exit(1)
