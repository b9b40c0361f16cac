import csv
import io
import json
import logging
import os
import sys
from functools import wraps

import click
from rich import box
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from config import get_config
from Helpers import ParameterError, UmbralError, format_rational, parse_rational
from Models import Triangle
from Associated import associated_triangle, s1_assoc_gf, s2_assoc_gf
from Eulerian import eulerian_gf_series, eulerian_table
from Families import FAMILY_IDS, family
from Numbers import CLASSICAL_TRIANGLES, classical_triangle
from Suites import SUITES, run_suite

logger = logging.getLogger("umbral")

KINDS = {"s1": "first", "s2": "second"}


class RationalType(click.ParamType):
    name = "p/q"

    def convert(self, value, param, ctx):
        try:
            return parse_rational(value)
        except ParameterError as e:
            self.fail(str(e), param, ctx)


RATIONAL = RationalType()


def param_options(fn):
    """--lambda, --r, --s and --a as exact rationals."""
    for name in ("a", "s", "r"):
        fn = click.option(f"--{name}", name, type=RATIONAL, default=None, help=f"Parameter {name} as p/q")(fn)
    return click.option("--lambda", "lam", type=RATIONAL, default=None, help="Parameter lambda as p/q")(fn)


def handle_errors(fn):
    """Turn library errors into the JSON error envelope and exit code 2."""
    @wraps(fn)
    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except UmbralError as e:
            logger.debug("%s: %s", type(e).__name__, e)
            click.echo(json.dumps({"status": "error", "message": str(e), "code": 2}), err=True)
            sys.exit(2)
    return inner


def _configure_logging(level: str):
    logging.basicConfig(
        level=level, format="%(message)s", datefmt="[%X]", force=True,
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
    )


def _family_params(lam, r, s, a) -> dict:
    return {name: value for name, value in (("lambda", lam), ("r", r), ("s", s), ("a", a)) if value is not None}


# ------------------------------------------------------------------ rendering

def render_csv(triangle: Triangle) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "k", "value"])
    for n, k, value in triangle.items():
        writer.writerow([n, k, format_rational(value)])
    return out.getvalue()


def render_json(triangle: Triangle, family_name: str, kind: str) -> str:
    data = {
        "meta": {
            "family": family_name,
            "kind": kind,
            "params": triangle.param_dict(),
            "max_n": triangle.max_n,
        },
        "rows": [[format_rational(v) for v in row] for row in triangle.rows],
    }
    return json.dumps(data, indent=2) + "\n"


def render_ascii(triangle: Triangle) -> str:
    table = Table(title=triangle.name, box=box.ASCII)
    table.add_column("n", justify="right")
    for k in range(triangle.max_n + 1):
        table.add_column(f"k={k}", justify="right")
    for n, row in enumerate(triangle.rows):
        table.add_row(str(n), *[format_rational(v) for v in row], *[""] * (triangle.max_n - n))
    console = Console(width=max(80, 12 * (triangle.max_n + 2)), color_system=None)
    with console.capture() as capture:
        console.print(table)
    return capture.get()


def parse_csv_triangle(text: str, name: str = "triangle") -> Triangle:
    """Read back the output of render_csv."""
    rows = []
    for record in csv.DictReader(io.StringIO(text)):
        n, k = int(record["n"]), int(record["k"])
        if k == 0:
            rows.append([])
        if n != len(rows) - 1 or k != len(rows[n]):
            raise ParameterError(f"Unexpected entry ({n}, {k}) in CSV triangle")
        rows[n].append(parse_rational(record["value"]))
    return Triangle(name, rows)


def parse_json_triangle(text: str) -> Triangle:
    """Read back the output of render_json."""
    data = json.loads(text)
    meta = data["meta"]
    params = {name: parse_rational(value) for name, value in meta.get("params", {}).items()}
    rows = [[parse_rational(v) for v in row] for row in data["rows"]]
    return Triangle(meta["kind"], rows, params)


# ------------------------------------------------------------------- commands

@click.group()
@click.option("--verbose", is_flag=True, help="Debug logging on stderr")
def cli(verbose):
    """Exact Stirling and Eulerian numbers associated with polynomial families."""
    cfg_name = os.getenv("UMBRAL_CONFIG", "Default")
    _configure_logging("DEBUG" if verbose else get_config().LOG_LEVEL)
    logger.debug("using %sConfig", cfg_name)


@cli.command()
@click.option("--family", "family_id", default=None, help="Family id")
@click.option("--classical", default=None, help="Classical triangle name (or 'eulerian')")
@click.option("--kind", default="s2", help="s1, s2, eulerian or classical:<name>")
@click.option("--max-n", type=int, default=None, help="Largest row index")
@param_options
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "ascii"]), default="csv")
@handle_errors
def triangle(family_id, classical, kind, max_n, lam, r, s, a, fmt):
    """Emit a triangle of exact rationals."""
    max_n = get_config().MAX_N if max_n is None else max_n
    if classical is not None:
        kind = f"classical:{classical}"

    if kind.startswith("classical:"):
        name = kind.split(":", 1)[1]
        family_name = "classical"
        if name == "eulerian":
            table = eulerian_table(None, max_n)
        elif name in CLASSICAL_TRIANGLES:
            table = classical_triangle(name, max_n, lam, r, s)
        else:
            raise ParameterError(f"Unknown classical triangle '{name}'")
    else:
        if family_id is None:
            raise ParameterError("triangle needs --family or --classical")
        P = family(family_id, _family_params(lam, r, s, a))
        family_name = P.id
        if kind == "eulerian":
            table = eulerian_table(P, max_n)
        elif kind in KINDS:
            table = associated_triangle(P, KINDS[kind], max_n)
        else:
            raise ParameterError(f"Unknown kind '{kind}', expected s1, s2, eulerian or classical:<name>")

    logger.debug("emitting %s rows 0..%d as %s", table.name, max_n, fmt)
    if fmt == "json":
        click.echo(render_json(table, family_name, kind), nl=False)
    elif fmt == "ascii":
        click.echo(render_ascii(table), nl=False)
    else:
        click.echo(render_csv(table), nl=False)


@cli.command()
@click.option("--suite", type=click.Choice(SUITES + ("all",)), default="all")
@click.option("--family", "family_spec", default="all", help="Family id, 'classical', 'series' or 'all'")
@click.option("--max-n", type=int, default=None)
@param_options
@click.option("--workers", type=int, default=None, help="Thread pool size")
@handle_errors
def verify(suite, family_spec, max_n, lam, r, s, a, workers):
    """Run identity suites and print a JSON report."""
    if family_spec not in FAMILY_IDS + ("all", "classical", "series"):
        raise ParameterError(f"Unknown family '{family_spec}'")
    reports = run_suite(suite, family_spec, max_n, _family_params(lam, r, s, a), workers)
    passed = all(report.passed for report in reports)
    click.echo(json.dumps({"passed": passed, "reports": [report.to_dict() for report in reports]}, indent=2))
    if not passed:
        logger.warning("%d report(s) with failing checks", sum(not report.passed for report in reports))
        sys.exit(1)


@cli.command()
@click.option("--family", "family_id", required=True)
@click.option("--kind", type=click.Choice(["s1", "s2", "eulerian"]), default="s2")
@click.option("--k", "k", type=int, default=0, help="Column index")
@click.option("--order", type=int, default=None, help="Truncation order")
@param_options
@handle_errors
def gf(family_id, kind, k, order, lam, r, s, a):
    """Dump n, n! [t^n] of a generating function."""
    order = get_config().ORDER if order is None else order
    P = family(family_id, _family_params(lam, r, s, a))
    if kind == "eulerian":
        series = eulerian_gf_series(P, order)
        click.echo("n,k,value")
        for n in range(order + 1):
            poly = series.egf_coefficient(n)
            for j in range(n + 1):
                click.echo(f"{n},{j},{format_rational(poly.coefficient(j))}")
        return
    series = s2_assoc_gf(P, k, order) if kind == "s2" else s1_assoc_gf(P, k, order)
    click.echo("n,value")
    for n, value in enumerate(series.egf_coefficients()):
        click.echo(f"{n},{format_rational(value)}")


if __name__ == "__main__":
    cli()
