import functools
import json
import logging
import sys
from typing import Dict, Optional

import click

from finfish.core.config import settings
from finfish.core.errors import BudgetExceededError, FinfishError, PreconditionError
from finfish.data.cache_manager import CacheManager
from finfish.data.formats import FishRecord, TreeRecord, bfile_lines, write_jsonl
from finfish.data.tables import JointTable
from finfish.fish.grammar import build, decompose, enumerate_terms, joint_distribution
from finfish.fish.oracle import census, enumerate_by_area
from finfish.fish.surface import canonical_code, classify
from finfish.fish.terms import parse_term
from finfish.formulas import closed_forms
from finfish.render import render as render_fish
from finfish.series.catalog import SeriesCatalog
from finfish.series.mseries import VARIABLES
from finfish.trees.ternary import enumerate_trees, joint_distribution_trees, to_text, tree_stats
from finfish.validation.runner import SUITES, SuiteRunner
from finfish.validation.suites import area_report

logger = logging.getLogger(__name__)

EXIT_FAIL = 1
EXIT_BUDGET = 3


class SuiteFailedError(Exception):
    """Raised when at least one requested suite does not pass."""
    pass


def handle_errors(fn):
    """Map library errors onto the CLI exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PreconditionError as e:
            raise click.UsageError(str(e)) from e
        except BudgetExceededError as e:
            logger.error(f"❌ Budget exceeded: {e}")
            sys.exit(EXIT_BUDGET)
        except SuiteFailedError as e:
            logger.error(f"❌ {e}")
            sys.exit(EXIT_FAIL)
        except FinfishError as e:
            logger.error(f"❌ {type(e).__name__}: {e}")
            sys.exit(EXIT_FAIL)
        except OSError as e:
            logger.error(f"❌ I/O error: {e}")
            sys.exit(EXIT_FAIL)

    return wrapper


def _cache() -> CacheManager:
    return CacheManager(config=settings)


def _fish_record(term, complex_=None, with_shape: bool = False) -> FishRecord:
    complex_ = complex_ or build(term)
    s = term.stats
    record = FishRecord(
        term=term.text,
        code=canonical_code(complex_).decode("ascii"),
        size=s.size,
        tails=s.tails,
        rsize=s.rsize,
        lsize=s.lsize,
        fin=s.fin,
        fin_word=term.fin_word,
        area=term.area,
    )
    if with_shape:
        shape = classify(complex_)
        record.planar = shape.planar
        record.polyomino = shape.polyomino
    return record


def _emit_table(table: JointTable, fmt: str) -> None:
    if fmt == "csv":
        click.echo(table.to_csv(), nl=False)
    else:
        click.echo(json.dumps(table.to_json(), sort_keys=True))


def _parse_specialize(text: Optional[str]) -> Dict[str, int]:
    if not text:
        return {}
    values = {}
    for item in text.split(","):
        name, _, value = item.partition("=")
        name = name.strip()
        if name not in VARIABLES:
            raise click.BadParameter(f"unknown variable {name!r}", param_hint="--specialize")
        try:
            values[name] = int(value)
        except ValueError:
            raise click.BadParameter(f"{item!r} is not of the form var=int", param_hint="--specialize")
    return values


@click.group()
@click.option("--log-level", "log_level", default=settings.log_level, help="Logging level (logs go to stderr)")
def cli(log_level):
    """Exact enumeration and validation lab for fighting fish."""
    logging.basicConfig(level=log_level.upper(), stream=sys.stderr)


# -- fish -----------------------------------------------------------------------

@cli.group()
def fish():
    """Enumerate fighting fish."""


@fish.command("enum")
@click.option("--max-size", "max_size", type=click.IntRange(2, 14), required=True)
@click.option("--format", "fmt", type=click.Choice(["jsonl"]), default="jsonl")
@click.option("--classify", "with_shape", is_flag=True, help="Add planarity and polyomino flags")
@handle_errors
def fish_enum(max_size, fmt, with_shape):
    """Every fish of size at most MAX_SIZE built from the grammar."""
    logger.info(f"🚀 Enumerating fish up to size {max_size}")
    terms = sorted(enumerate_terms(max_size, config=settings), key=lambda t: (tuple(t.stats), t.text))
    written = write_jsonl((_fish_record(term, with_shape=with_shape) for term in terms), sys.stdout)
    logger.info(f"✅ Wrote {written} fish")


@fish.command("oracle")
@click.option("--max-area", "max_area", type=click.IntRange(1, 9), required=True)
@click.option("--census", "show_census", is_flag=True, help="Print per-area census as CSV instead of fish")
@handle_errors
def fish_oracle(max_area, show_census):
    """Fish of area at most MAX_AREA grown cell by cell."""
    fishes = enumerate_by_area(max_area, config=settings)
    if show_census:
        rows = census(fishes)
        click.echo("area,fish,non_polyomino,non_planar")
        for row in rows:
            click.echo(f"{row.area},{row.fish},{row.non_polyomino},{row.non_planar}")
        return
    records = [_fish_record(decompose(c), complex_=c, with_shape=True) for c in fishes.values()]
    records.sort(key=lambda r: (r.size, r.tails, r.rsize, r.lsize, r.fin, r.code))
    written = write_jsonl(records, sys.stdout)
    logger.info(f"✅ Wrote {written} fish")


@fish.command("table")
@click.option("--max-size", "max_size", type=click.IntRange(2, 40), required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@handle_errors
def fish_table(max_size, fmt):
    """Joint distribution of (size, tails, rsize, lsize, fin)."""
    payload = _cache().fetch("fish table", {"max_size": max_size}, lambda: joint_distribution(max_size).to_json())
    _emit_table(JointTable.from_json(payload), fmt)


# -- trees ----------------------------------------------------------------------

@cli.group()
def trees():
    """Enumerate left ternary trees."""


@trees.command("enum")
@click.option("--max-nodes", "max_nodes", type=click.IntRange(1, 12), required=True)
@click.option("--j", "j", type=click.IntRange(0, None), default=0, show_default=True)
@handle_errors
def trees_enum(max_nodes, j):
    """Every j-positive ternary tree with at most MAX_NODES nodes."""
    found = list(enumerate_trees(j, max_nodes, config=settings))
    records = []
    for tree in found:
        s = tree_stats(tree)
        records.append(TreeRecord(tree=to_text(tree), **s.model_dump()))
    records.sort(key=lambda r: (r.nodes, r.right_branches, r.non_root_even, r.odd, r.core, r.tree))
    written = write_jsonl(records, sys.stdout)
    logger.info(f"✅ Wrote {written} trees")


@trees.command("table")
@click.option("--max-nodes", "max_nodes", type=click.IntRange(1, 40), required=True)
@click.option("--j", "j", type=click.IntRange(0, None), default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@handle_errors
def trees_table(max_nodes, j, fmt):
    """Joint distribution of (nodes, right_branches, non_root_even, odd, core)."""
    payload = _cache().fetch(
        "trees table", {"max_nodes": max_nodes, "j": j}, lambda: joint_distribution_trees(max_nodes, j).to_json()
    )
    _emit_table(JointTable.from_json(payload), fmt)


# -- series ---------------------------------------------------------------------

@cli.group()
def series():
    """Exact truncated generating series."""


@series.command("eval")
@click.option("--name", "name", required=True, help="Series name, e.g. P, P1, B, U, P_greater, T_2")
@click.option("--order", "order", type=click.IntRange(0, 30), required=True)
@click.option("--specialize", "specialize", default=None, help="Comma-separated var=int, e.g. y=1,a=1,b=1")
@handle_errors
def series_eval(name, order, specialize):
    """Print the coefficients of one named series, one monomial per line."""
    values = _parse_specialize(specialize)
    fixed = frozenset(v for v, value in values.items() if value == 1)
    rest = {v: value for v, value in values.items() if value != 1}

    def produce():
        result = SeriesCatalog(order, fixed).get(name)
        if rest:
            result = result.specialize(**rest)
        return result.lines()

    lines = _cache().fetch("series eval", {"name": name, "order": order, "specialize": values}, produce)
    for line in lines:
        click.echo(line)


# -- formulas -------------------------------------------------------------------

SEQUENCES = ("fish", "fish-ij", "marked-tails", "ternary")


@cli.command()
@click.option("--sequence", "sequence", type=click.Choice(SEQUENCES), default="fish", show_default=True)
@click.option("--max", "max_n", type=click.IntRange(1, 5000), required=True)
@click.option("--i", "i", type=click.IntRange(1, None), default=1, show_default=True,
              help="Fixed first index for fish-ij and marked-tails")
@handle_errors
def formulas(sequence, max_n, i):
    """Closed-form counts as an OEIS b-file (``n a(n)`` per line)."""
    if sequence == "fish":
        text = bfile_lines(closed_forms.fish_counts(max_n), offset=1)
    elif sequence == "ternary":
        text = bfile_lines([closed_forms.ternary_tree_count(n) for n in range(max_n + 1)], offset=0)
    elif sequence == "fish-ij":
        text = bfile_lines([closed_forms.fish_count_ij(i, j) for j in range(1, max_n + 1)], offset=1)
    else:
        text = bfile_lines([closed_forms.marked_tail_count(i, j) for j in range(1, max_n + 1)], offset=1)
    click.echo(text, nl=False)


# -- validation -----------------------------------------------------------------

@cli.command()
@click.argument("suite", type=click.Choice(["all", *SUITES]))
@click.option("--max", "bound", type=int, default=None, help="Suite bound (size, area, order or nodes)")
@handle_errors
def check(suite, bound):
    """Run a validation suite and print its JSON report; exit 1 on failure."""
    runner = SuiteRunner(config=settings, cache=_cache())
    names = list(SUITES) if suite == "all" else [suite]
    reports = runner.run_all(names, bound)
    for report in reports:
        click.echo(report.to_json())
    metrics = runner.get_performance_metrics()
    logger.info(
        f"🎯 {metrics['suites_passed']}/{metrics['suites_run']} suites passed, "
        f"average {metrics['average_time']:.2f}s, cache hit rate {metrics['cache_hit_rate']:.0%}"
    )
    failed = [r.suite for r in reports if not r.passed]
    if failed:
        raise SuiteFailedError(f"failed suites: {', '.join(failed)}")


@cli.command()
@click.argument("code")
@click.option("--format", "fmt", type=click.Choice(["svg", "ascii"]), default="svg", show_default=True)
@click.option("--term", "is_term", is_flag=True, help="Read CODE as a grammar term such as C1(A,A)")
@handle_errors
def render(code, fmt, is_term):
    """Draw the fish with canonical code CODE."""
    if is_term:
        code = canonical_code(build(parse_term(code)))
    click.echo(render_fish(code, fmt), nl=False)


@cli.group()
def report():
    """Diagnostic reports."""


@report.command("area")
@click.option("--max-size", "max_size", type=click.IntRange(2, 12), default=10, show_default=True)
@click.option("--realize", "realize", is_flag=True, help="Measure area on built complexes")
@handle_errors
def report_area(max_size, realize):
    """Exact mean areas by size with slope estimates."""
    click.echo(area_report(max_size, realize=realize, config=settings).model_dump_json())


@cli.group()
def cache():
    """Manage the result cache."""


@cache.command("clear")
@handle_errors
def cache_clear():
    """Delete every cached result."""
    removed = _cache().clear()
    logger.info(f"🧹 Removed {removed} cache entries")
    click.echo(removed)


if __name__ == "__main__":
    cli()
