"""Command line front end.

Exit codes: 0 success, 1 the generated tables differ from the expected
ones, 2 bad usage or bad input. Output never depends on anything but the
arguments and the catalog file.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .catalog import CatalogError, default_catalog_path, load_catalog, parse_catalog, validate_record
from .chow import ChowError
from .classify.families import constructions_over
from .classify.golden import GoldenError
from .classify.tables import SCOPES, Table, TableError, TableSet, body_table, diff_expected, generate_tables, \
    render, tables_from_json, threefold_table
from .construct import BundleData, ConstructionCandidate, ConstructionError, check_construction_b, fano_check_A
from .invariants import InvariantError, invariants_4fold, minus_K_cubed, p1bundle_invariants
from .lattice import LatticeError

FORMATS = ("markdown", "csv", "json")
USAGE_ERROR = 2
MISMATCH = 1

_INPUT_ERRORS = (CatalogError, ChowError, ConstructionError, GoldenError, InvariantError, LatticeError, TableError)


class InputError(click.ClickException):
    exit_code = USAGE_ERROR


def _coords(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"malformed {what} coordinates {text!r}; expected comma-separated integers") from None


def _catalog(ctx):
    return load_catalog(ctx.obj["catalog"])


def _need_rank(Z, v, what):
    if len(v) != Z.rank:
        raise InputError(f"{what} needs {Z.rank} coordinates in the basis ({', '.join(Z.basis)}), got {len(v)}")


def _emit(text: str, output):
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


format_option = click.option("--format", "fmt", type=click.Choice(FORMATS), default="markdown", show_default=True)


@click.group()
@click.option("--catalog", "catalog", type=click.Path(dir_okay=False), default=None,
              help="Catalog file (default: $FANOFORGE_CATALOG, else the shipped catalog).")
@click.pass_context
def main(ctx, catalog):
    """Enumerate and classify Fano varieties built by blowing up P1-bundles."""
    ctx.ensure_object(dict)
    ctx.obj["catalog"] = catalog


@main.command("list-catalog")
@format_option
@click.pass_context
def list_catalog(ctx, fmt):
    """Records of the catalog with their divisor bases."""
    cat = _catalog(ctx)
    rows = [{"id": r.id, "name": r.name, "dim": str(r.dim), "rho": str(r.rank), "basis": " ".join(r.basis),
             "minus_K": " ".join(map(str, r.minus_K)), "degree": str(r.degree)} for r in cat]
    t = Table("catalog", "catalog", ("id", "name", "dim", "rho", "basis", "minus_K", "degree"), rows)
    click.echo(render(TableSet("catalog", {"catalog": t}), fmt), nl=False)


@main.command()
@click.pass_context
def validate(ctx):
    """Check every catalog record; exit 0 only if all pass."""
    path = Path(ctx.obj["catalog"]) if ctx.obj["catalog"] else default_catalog_path()
    try:
        records = parse_catalog(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read catalog {path}: {exc}") from exc
    bad = 0
    for r in records:
        problems = validate_record(r)
        if problems:
            bad += 1
            click.echo(f"FAIL {r.id}: " + "; ".join(problems))
        else:
            click.echo(f"ok   {r.id}")
    click.echo(f"{len(records) - bad}/{len(records)} records valid")
    if bad:
        ctx.exit(MISMATCH)


@main.command()
@click.option("--variety", required=True, help="Catalog id of the base.")
@format_option
@click.pass_context
def enumerate(ctx, variety, fmt):
    """All Fano outputs of the construction over one base."""
    cat = _catalog(ctx)
    Z = cat[variety]
    if Z.dim == 2:
        t = threefold_table(variety, cat)
    elif Z.dim == 3:
        t = body_table(variety, constructions_over(Z, cat))
    else:
        raise InputError(f"{variety} has dimension {Z.dim}; bases are surfaces or 3-folds")
    click.echo(render(TableSet(variety, {t.name: t}), fmt), nl=False)


@main.command()
@click.option("--variety", required=True)
@click.option("--A", "a", required=True, help="Comma-separated coordinates of A.")
@click.option("--D", "d", required=True, help="Comma-separated coordinates of D.")
@format_option
@click.pass_context
def invariants(ctx, variety, a, d, fmt):
    """Invariants of one construction; the bundle stage is shown as well."""
    cat = _catalog(ctx)
    Z = cat[variety]
    A, D = _coords(a, "A"), _coords(d, "D")
    _need_rank(Z, A, "A")
    _need_rank(Z, D, "D")
    c = ConstructionCandidate.of(Z, A, D)
    row = {"Z": Z.id, "A": " ".join(map(str, A)), "D": " ".join(map(str, D)),
           "fano": "yes" if fano_check_A(c) else "no"}
    if Z.dim == 2:
        row["minusK3"] = str(minus_K_cubed(Z, c.A, c.D))
        cols = ("Z", "A", "D", "fano", "minusK3")
    elif Z.dim == 3:
        Y = p1bundle_invariants(Z, c.D)
        v = invariants_4fold(c)
        row.update({"c1_4": str(v.c1_4), "c1sq_c2": str(v.c1sq_c2), "h0": str(v.h0_minusK), "h11": str(v.h11),
                    "h12": str(v.h12), "h13": str(v.h13), "h22": str(v.h22), "bundle_c1_4": str(Y.K4),
                    "bundle_c1sq_c2": str(Y.K2c2), "bundle_h0": str(Y.chi)})
        cols = ("Z", "A", "D", "fano", "c1_4", "c1sq_c2", "h0", "h11", "h12", "h13", "h22", "bundle_c1_4",
                "bundle_c1sq_c2", "bundle_h0")
    else:
        raise InputError(f"{variety} has dimension {Z.dim}; bases are surfaces or 3-folds")
    t = Table("invariants", "single", cols, [row])
    click.echo(render(TableSet("invariants", {"invariants": t}), fmt), nl=False)


@main.command("check-b")
@click.option("--variety", required=True, help="A surface of the catalog.")
@click.option("--A", "a", required=True, help="Curve class blown up inside the section.")
@click.option("--split", "split", multiple=True, help="A summand of E, given twice for E = L1 + L2.")
@click.option("--nonsplit-D", "nonsplit", default=None,
              help="Quotient class D of a non-split extension 0 -> O -> E -> O(D) -> 0.")
@format_option
@click.pass_context
def check_b(ctx, variety, a, split, nonsplit, fmt):
    """Three-valued Fano verdict for the bundle generalisation over a surface."""
    cat = _catalog(ctx)
    S = cat[variety]
    A = _coords(a, "A")
    _need_rank(S, A, "A")
    if nonsplit is not None and split:
        raise InputError("give either two --split summands or --nonsplit-D, not both")
    if nonsplit is not None:
        D = _coords(nonsplit, "D")
        _need_rank(S, D, "D")
        E = BundleData(S.id, S.cls(D), 0, S.cls(D), None)
    elif len(split) == 2:
        l1, l2 = (_coords(x, "summand") for x in split)
        _need_rank(S, l1, "summand")
        _need_rank(S, l2, "summand")
        E = BundleData.split_bundle(S, l1, l2)
    else:
        raise InputError("give two --split summands or --nonsplit-D")
    v = check_construction_b(S, S.cls(A), E)

    def w(x):
        return {True: "holds", False: "fails", None: "unknown"}[x]

    row = {"Z": S.id, "A": " ".join(map(str, A)), "D": " ".join(map(str, E.quotient_D.coords)),
           "verdict": v.value, "I": w(v.witnesses["I"]), "II": w(v.witnesses["II"]), "III": w(v.witnesses["III"]),
           "notes": "; ".join(v.notes)}
    t = Table("check-b", "single", ("Z", "A", "D", "verdict", "I", "II", "III", "notes"), [row])
    click.echo(render(TableSet("check-b", {"check-b": t}), fmt), nl=False)


def _ambiguity_section(ts: TableSet) -> str:
    if ts.ambiguities is None:
        return ""
    lines = ["### ambiguities", ""]
    for g in ts.ambiguities.groups:
        inv = g.invariants
        lines.append(f"- ({inv.c1_4}, {inv.c1sq_c2}, {inv.h0_minusK}, {inv.h12}, {inv.h13}, {inv.h22}): "
                     f"{' | '.join(g.members)}: {g.status}")
        for p in g.pairs:
            lines.append(f"  - {p.first} vs {p.second}: {p.rule or 'no rule applies'}")
        for r in g.recorded:
            lines.append(f"  - recorded: {r}")
    return "\n".join(lines) + "\n"


@main.command()
@click.option("--scope", type=click.Choice(SCOPES), default="all", show_default=True)
@format_option
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="Write here instead of stdout.")
@click.pass_context
def reproduce(ctx, scope, fmt, output):
    """Generate the classification tables."""
    ts = generate_tables(scope, _catalog(ctx))
    text = render(ts, fmt)
    if fmt == "markdown":
        text += "\n" + _ambiguity_section(ts)
    _emit(text, output)


@main.command()
@click.option("--scope", type=click.Choice(SCOPES), default="all", show_default=True)
@click.option("--input", "input_path", type=click.Path(dir_okay=False), default=None,
              help="Compare a JSON file written by 'reproduce --format json' instead of regenerating.")
@click.pass_context
def diff(ctx, scope, input_path):
    """Compare generated tables with the expected ones; exit 1 on any difference."""
    if input_path:
        try:
            ts = tables_from_json(Path(input_path).read_text())
        except OSError as exc:
            raise InputError(f"cannot read {input_path}: {exc}") from exc
    else:
        ts = generate_tables(scope, _catalog(ctx))
    report = diff_expected(ts)
    for line in report.lines():
        click.echo(line)
    click.echo(f"{len(report.entries)} difference(s) across {len(report.tables)} table(s)")
    if not report.ok:
        ctx.exit(MISMATCH)


def run(argv=None) -> int:
    """Run the command line with an argument vector and return the exit code."""
    try:
        code = main.main(args=argv, prog_name="fanoforge", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code if exc.exit_code in (MISMATCH, USAGE_ERROR) else USAGE_ERROR
    except click.exceptions.Abort:
        return USAGE_ERROR
    except _INPUT_ERRORS as exc:
        click.echo(f"Error: {exc}", err=True)
        return USAGE_ERROR
    return code if isinstance(code, int) else 0


def entry():
    sys.exit(run())


if __name__ == "__main__":
    entry()
