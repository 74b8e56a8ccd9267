"""Command line entry point: ``geoproj verify ...`` and ``geoproj scan ...``.

Every command prints BoundReport rows (CSV by default) and exits with
status 0 exactly when every asserted row holds.
"""

from __future__ import annotations

import csv
import json
import math
import sys

import click

from . import bounds
from .hyperbolic import EPS
from .plot import write_svg
from .surfaces import get_rep, is_peripheral, non_peripheral_classes
from .trees import sweep_lemma
from .words import cyclic_reduce, parse_word

FIELDS = ("claim", "instance", "lhs", "rhs", "margin", "holds")


def _settings(ctx, eps, out, plot):
    root = ctx.find_root().obj or {}
    return (
        eps if eps is not None else root.get("eps", EPS),
        out or root.get("out", "csv"),
        plot or root.get("plot"),
    )


def common_options(f):
    f = click.option("--plot", type=click.Path(dir_okay=False), default=None, help="Write an SVG chart here.")(f)
    f = click.option("--out", type=click.Choice(["csv", "json"]), default=None, help="Output format.")(f)
    f = click.option("--eps", type=float, default=None, help="Tolerance for endpoint comparisons.")(f)
    return f


def emit(ctx, reports, out: str, plot: str | None = None, series=None, title: str = "", table=None):
    """Print reports, optionally write a chart, and exit with the verdict."""
    asserted = [r for r in reports if r.asserted]
    summary = {
        "reports": len(asserted),
        "violations": sum(not r.holds for r in asserted),
        "suspicious": sum(r.suspicious for r in asserted),
        "min_margin": bounds.min_margin(reports) if asserted else None,
    }
    stream = click.get_text_stream("stdout")
    if out == "json":
        payload = {"note": bounds.SCOPE_NOTE, "reports": [dict(r.row(), asserted=r.asserted) for r in reports], "summary": summary}
        if table is not None:
            payload["table"] = table
        json.dump(payload, stream, indent=1, default=_json_default)
        stream.write("\n")
    else:
        stream.write(f"# {bounds.SCOPE_NOTE}\n")
        writer = csv.DictWriter(stream, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        for r in reports:
            writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.row().items()})
        stream.write(
            f"# reports={summary['reports']} violations={summary['violations']} "
            f"suspicious={summary['suspicious']} min_margin={summary['min_margin']}\n"
        )
    if plot:
        if series is None:
            series = {"margin": [(k, r.margin) for k, r in enumerate(asserted)]}
        write_svg(plot, series, title)
    ctx.exit(0 if summary["violations"] == 0 else 1)


def _json_default(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _word(text: str | None) -> str | None:
    if text is None:
        return None
    try:
        w = parse_word(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc
    if not w:
        raise click.BadParameter("the word reduces to the identity")
    return w


def _classes(surface: str | None, word: str | None, max_length: int):
    """(rep, word) pairs: a single word, or the default corpus."""
    names = [surface] if surface else ["sphere", "torus"]
    if word is not None:
        pairs = []
        for n in names:
            rep = get_rep(n)
            if is_peripheral(rep, word):
                click.echo(f"note: {word!r} is peripheral on the {n}; skipped", err=True)
            else:
                pairs.append((rep, cyclic_reduce(word)[0]))
        if not pairs:
            raise click.BadParameter(f"{word!r} is peripheral, so it has no closed geodesic", param_hint="--word")
        return pairs
    return [(get_rep(n), c) for n in names for c in non_peripheral_classes(get_rep(n), max_length)]


@click.group()
@common_options
@click.pass_context
def main(ctx, eps, out, plot):
    """Verify projection bounds for closed geodesics on cusped surfaces."""
    ctx.obj = {"eps": eps if eps is not None else EPS, "out": out or "csv", "plot": plot}


@main.group()
def verify():
    """Check bounds on words, lifts and trees."""


@main.group()
def scan():
    """Tabulate sharpness families and comparison functions."""


SURFACE = click.option("--surface", type=click.Choice(["sphere", "torus"]), default=None, help="Default: both.")
WORD = click.option("--word", default=None, help="Word over x, X, y, Y (capital = inverse). Default: corpus.")
MAXLEN = click.option("--max-length", type=int, default=6, show_default=True, help="Corpus word length.")


def _run_per_word(check, pairs, **kw):
    reports = []
    for rep, c in pairs:
        try:
            reports.extend(check(rep, c, **kw))
        except (bounds.NoSelfIntersections, bounds.NoPolygonsFound) as exc:
            if len(pairs) == 1:
                click.echo(f"note: {exc}", err=True)
    return reports


@verify.command("theorem1")
@SURFACE
@WORD
@click.option("--radius", type=int, default=4, show_default=True)
@MAXLEN
@common_options
@click.pass_context
def verify_theorem1(ctx, surface, word, radius, max_length, eps, out, plot):
    """Projections between lifts of one closed geodesic, with the half bounds."""
    eps, out, plot = _settings(ctx, eps, out, plot)
    pairs = _classes(surface, _word(word), max_length)
    reports = _run_per_word(bounds.check_theorem1, pairs, radius=radius, eps=eps)
    emit(ctx, reports, out, plot, title="theorem1 margins")


@verify.command("bisectors")
@SURFACE
@WORD
@click.option("--radius", type=int, default=4, show_default=True)
@MAXLEN
@common_options
@click.pass_context
def verify_bisectors(ctx, surface, word, radius, max_length, eps, out, plot):
    """Bisector projection bounds for disjoint and crossing lifts."""
    eps, out, plot = _settings(ctx, eps, out, plot)
    pairs = _classes(surface, _word(word), max_length)
    reports = _run_per_word(bounds.check_bisector_lemmas, pairs, radius=radius, eps=eps)
    emit(ctx, reports, out, plot, title="bisector margins")


@verify.command("theorem2")
@click.option("--surface", type=click.Choice(["sphere", "torus"]), default=None, help="Default: both.")
@click.option("--word", default=None, help="First word; with --word2 checks one pair, else the corpus.")
@click.option("--word2", default=None)
@click.option("--radius", type=int, default=3, show_default=True)
@click.option("--max-length", type=int, default=4, show_default=True)
@common_options
@click.pass_context
def verify_theorem2(ctx, surface, word, word2, radius, max_length, eps, out, plot):
    """Projections between lifts of two distinct closed geodesics."""
    eps, out, plot = _settings(ctx, eps, out, plot)
    names = (surface,) if surface else ("sphere", "torus")
    if (word is None) != (word2 is None):
        raise click.UsageError("give both --word and --word2, or neither")
    if word is not None:
        u, v = _word(word), _word(word2)
        if bounds.same_class_up_to_inverse(u, v):
            raise click.BadParameter("the two words must represent distinct classes", param_hint="--word2")
        triples = [(get_rep(n), u, v) for n in names]
    else:
        triples = bounds.theorem2_corpus(max_length, names)
    reports = []
    for rep, u, v in triples:
        reports.extend(bounds.check_theorem2(rep, u, v, radius, eps))
    emit(ctx, reports, out, plot, title="theorem2 margins")


@verify.command("angles")
@SURFACE
@WORD
@click.option("--radius", type=int, default=4, show_default=True)
@MAXLEN
@common_options
@click.pass_context
def verify_angles(ctx, surface, word, radius, max_length, eps, out, plot):
    """Self-intersection angles against the angle-of-parallelism window."""
    eps, out, plot = _settings(ctx, eps, out, plot)
    pairs = _classes(surface, _word(word), max_length)
    reports = _run_per_word(bounds.check_angle_corollary, pairs, radius=radius, eps=eps)
    emit(ctx, reports, out, plot, title="angle margins")


@verify.command("polygons")
@click.option("--surface", type=click.Choice(["sphere", "torus"]), default="sphere", show_default=True)
@click.option("--word", default="xY", show_default=True)
@click.option("--radius", type=int, default=4, show_default=True)
@click.option("--nmax", type=int, default=4, show_default=True)
@common_options
@click.pass_context
def verify_polygons(ctx, surface, word, radius, nmax, eps, out, plot):
    """Side lengths of polygons bounded by lifts."""
    eps, out, plot = _settings(ctx, eps, out, plot)
    pairs = _classes(surface, _word(word), 0)
    reports = _run_per_word(bounds.check_polygon_corollary, pairs, radius=radius, n_max=nmax, eps=eps)
    emit(ctx, reports, out, plot, title="polygon margins")


@verify.command("tree-lemmas")
@click.option("--max-alpha", type=int, default=6, show_default=True)
@click.option("--max-g", type=int, default=4, show_default=True)
@common_options
@click.pass_context
def verify_tree_lemmas(ctx, max_alpha, max_g, eps, out, plot):
    """Overlap of an axis with its translates in the tree of F(x, y)."""
    _, out, plot = _settings(ctx, eps, out, plot)
    reports = []
    for r in sweep_lemma(max_alpha, max_g):
        # integer form: 2n <= L - 2 is 2n < L - 1, and n <= L - 2 is n < L - 1
        lhs = 2 * r.overlap_len if r.bound == "part1" else r.overlap_len
        reports.append(bounds.BoundReport(f"tree_{r.bound}", f"alpha={r.alpha} g={r.g or '1'}", float(lhs), float(r.L_alpha - 1)))
    emit(ctx, reports, out, plot, title="tree lemma margins")


@scan.command("sharpness")
@click.option("--kind", type=click.Choice(["crossing", "disjoint", "two"]), required=True)
@click.option("--nmax", type=int, default=12, show_default=True)
@common_options
@click.pass_context
def scan_sharpness(ctx, kind, nmax, eps, out, plot):
    """Projection ratios along a sharpness family against their lower bounds."""
    _, out, plot = _settings(ctx, eps, out, plot)
    rows = bounds.sharpness_scan(kind, nmax)
    series = {"ratio": [(r.n, r.ratio) for r in rows], "lower bound": [(r.n, r.floor) for r in rows]}
    table = [r.__dict__ for r in rows]
    emit(ctx, bounds.sharpness_reports(rows), out, plot, series, f"{kind} sharpness", table)


@scan.command("gilman")
@click.option("--lmax", type=float, default=20.0, show_default=True)
@click.option("--points", type=int, default=200, show_default=True)
@common_options
@click.pass_context
def scan_gilman(ctx, lmax, points, eps, out, plot):
    """Compare the two lower bounds for sin(angle) as functions of length."""
    _, out, plot = _settings(ctx, eps, out, plot)
    grid = bounds.linspace(0.1, lmax, points)
    rows, root = bounds.gilman_compare(grid)
    series = {"1/sinh^2(L/2)": [(L, g) for L, g, _, _ in rows], "sech(L/2)": [(L, p) for L, _, p, _ in rows]}
    table = {"crossover": root, "exact": bounds.GILMAN_EXACT, "rows": rows}
    emit(ctx, bounds.gilman_reports(grid), out, plot, series, "sin(angle) lower bounds", table)


@scan.command("gapfn")
@click.option("--c", "c", type=float, default=1.44, show_default=True)
@click.option("--lmin", type=float, default=0.5, show_default=True)
@click.option("--lmax", type=float, default=20.0, show_default=True)
@click.option("--points", type=int, default=400, show_default=True)
@common_options
@click.pass_context
def scan_gapfn(ctx, c, lmin, lmax, points, eps, out, plot):
    """Tabulate R(l) = arctan(exp(c/2 - l/2)) / arctan(exp(-l/2))."""
    _, out, plot = _settings(ctx, eps, out, plot)
    if c <= 0:
        raise click.BadParameter("c must be positive", param_hint="--c")
    grid = bounds.linspace(lmin, lmax, points)
    rows = bounds.gap_function_scan(c, grid)
    table = {
        "rows": rows,
        "R_at_2_arccosh_3": bounds.gap_ratio(bounds.QUADRILATERAL_COMPUTED, c),
        "R_at_3.72488": bounds.gap_ratio(bounds.QUADRILATERAL_STATED, c),
    }
    emit(ctx, bounds.gap_reports(c, grid), out, plot, {"R": rows}, f"gap ratio, c={c:g}", table)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
