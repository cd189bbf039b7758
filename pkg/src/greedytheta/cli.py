"""greedytheta command line: calibrate | expand | pairs | lines | verify | render."""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from .dyckpath import cluster_path, maximal_dyck_path, monomial_path
from .pairs import CompatiblePair, enumerate_pairs, lambda_map, rupel_expansion, weight_polynomials
from .qtorus import ConventionConfig, DivisionError, cluster_monomial, cluster_variable, exchange_residual
from .render import diagram_svg, dyck_pair_svg, line_svg
from .scattering import Side, enumerate_BL, realize_geometrically
from .verify import Suite, calibrate, check_convention, pair_counts, run_suite

EXIT_OK, EXIT_FAIL, EXIT_AMBIGUOUS, EXIT_USAGE = 0, 1, 2, 64

# size guards
MAX_PATH_SIZE = 40
MAX_PAIRS = 50_000


def parse_convention(text: str | None) -> ConventionConfig | None:
    """'+1,NewOnLeft', '-1,NewOnRight' or the 'sign=+1,NewOnLeft' label form."""
    if text is None:
        return None
    try:
        sign, side = (t.strip() for t in text.split(","))
        sign = int(sign.removeprefix("sign="))
        return ConventionConfig(sign, side)
    except ValueError as exc:
        raise click.BadParameter(f"{text!r}: expected SIGN,SIDE like +1,NewOnLeft") from exc


def parse_q_point(text: str | None):
    if text is None:
        return None
    try:
        x, y = (Fraction(t.strip()) for t in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(f"{text!r}: expected NUM/DEN,NUM/DEN") from exc
    return x, y


def parse_indices(text: str | None) -> frozenset:
    if not text:
        return frozenset()
    try:
        return frozenset(int(t) for t in text.split(","))
    except ValueError as exc:
        raise click.BadParameter(f"{text!r}: expected comma-separated integers") from exc


def emit(payload: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        click.echo(payload, nl=not payload.endswith("\n"))


def dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def select_path(r, n, alpha, beta, ell, h):
    """The path named by --ell/--h, else C_n, else the monomial path."""
    if ell is not None or h is not None:
        if ell is None or h is None:
            raise click.UsageError("--ell and --h go together")
        return maximal_dyck_path(ell, h)
    if n is None:
        raise click.UsageError("give --n or --ell/--h")
    if (alpha, beta) == (1, 0):
        if n < 3:
            raise click.UsageError("cluster-variable paths need n >= 3")
        return cluster_path(r, n)
    if n < 3:
        raise click.UsageError("monomial paths need n >= 3")
    return monomial_path(r, n - 1, beta, alpha).path


def guard_size(path) -> None:
    if path.ell + path.h > MAX_PATH_SIZE:
        raise click.UsageError(f"path P({path.ell},{path.h}) exceeds the size guard "
                               f"ell + h <= {MAX_PATH_SIZE}")


fmt_option = click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
out_option = click.option("--out", type=click.Path(dir_okay=False), default=None)
convention_option = click.option("--convention", default=None,
                                 help="force a convention, e.g. +1,NewOnLeft")


@click.group()
def cli():
    """Compatible pairs, broken lines and the maps between them."""


@cli.command("calibrate")
@convention_option
@fmt_option
@out_option
def cmd_calibrate(convention, fmt, out):
    """Sweep the four torus conventions and keep the one that passes."""
    forced = parse_convention(convention)
    if forced is not None:
        row = check_convention(forced)
        failures = _exchange_failures(forced)
        data = {"schema": "greedytheta/calibration/1", "forced": row.to_json(),
                "failures": failures}
        text = "\n".join([f"{forced.label()}: {'passes' if row.passes else 'fails'}",
                          *failures])
        emit(dump(data) if fmt == "json" else text + "\n", out)
        return EXIT_OK if row.passes else EXIT_FAIL
    report = calibrate()
    emit(dump(report.to_json()) if fmt == "json" else report.to_text() + "\n", out)
    return EXIT_OK if report.ok else EXIT_AMBIGUOUS


def _exchange_failures(cfg, rs=(1, 2), top=6) -> list[str]:
    out = []
    for r in rs:
        for n in range(2, top):
            try:
                res = exchange_residual(n, r, cfg)
            except DivisionError as exc:
                out.append(f"exchange check r={r} n={n}: {type(exc).__name__}")
                continue
            if not res.is_zero():
                out.append(f"exchange check r={r} n={n}: residual {res}")
            elif not cluster_variable(n + 1, r, cfg).is_bar_invariant():
                out.append(f"bar invariance r={r} n={n + 1}: fails")
    return out


@cli.command("expand")
@click.option("--r", type=click.IntRange(1), required=True)
@click.option("--n", type=int, required=True)
@click.option("--alpha", type=click.IntRange(0), default=1)
@click.option("--beta", type=click.IntRange(0), default=0)
@convention_option
@fmt_option
@out_option
def cmd_expand(r, n, alpha, beta, convention, fmt, out):
    """Pair expansion of q^(alpha beta) X_n^alpha X_{n+1}^beta, checked against the torus."""
    cfg = parse_convention(convention) or ConventionConfig()
    if alpha + beta == 0:
        raise click.UsageError("alpha and beta cannot both be zero")
    if n >= 3 and r >= 2:
        guard_size(select_path(r, n, alpha, beta, None, None))
    try:
        value = rupel_expansion(r, n, alpha, beta, cfg)
        oracle = (cluster_variable(n, r, cfg) if (alpha, beta) == (1, 0)
                  else cluster_monomial(n, alpha, beta, r, cfg))
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    except DivisionError as exc:
        click.echo(f"torus division failed under {cfg.label()}: {exc}", err=True)
        return EXIT_FAIL
    same = value == oracle
    if fmt == "json":
        emit(dump({"r": r, "n": n, "alpha": alpha, "beta": beta, "convention": cfg.label(),
                   "expansion": value.to_json(), "matches_exchange_recursion": same}), out)
    else:
        emit(f"{value}\nmatches exchange recursion: {same}\n", out)
    return EXIT_OK if same else EXIT_FAIL


path_options = [
    click.option("--r", type=click.IntRange(1), required=True),
    click.option("--n", type=int, default=None),
    click.option("--alpha", type=click.IntRange(0), default=1),
    click.option("--beta", type=click.IntRange(0), default=0),
    click.option("--ell", type=click.IntRange(0), default=None),
    click.option("--h", type=click.IntRange(0), default=None),
]


def with_path_options(fn):
    for opt in reversed(path_options):
        fn = opt(fn)
    return fn


@cli.command("pairs")
@with_path_options
@click.option("--a", type=click.IntRange(0), default=None, help="|S1|")
@click.option("--b", type=click.IntRange(0), default=None, help="|S2|")
@fmt_option
@out_option
def cmd_pairs(r, n, alpha, beta, ell, h, a, b, fmt, out):
    """List compatible pairs with their weights."""
    path = select_path(r, n, alpha, beta, ell, h)
    guard_size(path)
    count = sum(p.evaluate(1) for (x, y), p in weight_polynomials(path, r).items()
                if (a is None or x == a) and (b is None or y == b))
    if count > MAX_PAIRS:
        raise click.UsageError(f"{count} pairs exceed the guard of {MAX_PAIRS}; "
                               "narrow with --a/--b")
    pairs = enumerate_pairs(path, r, a, b)
    if fmt == "json":
        emit(dump({"r": r, "path": path.word, "count": len(pairs),
                   "pairs": [dict(p.to_json(), positive=p.is_positive()) for p in pairs]}), out)
    else:
        emit("".join(f"{sorted(p.S1)} {sorted(p.S2)} {p.word} w={p.weight}\n" for p in pairs)
             + f"{len(pairs)} pairs\n", out)
    return EXIT_OK


@cli.command("lines")
@with_path_options
@click.option("--a", type=click.IntRange(0), default=None)
@click.option("--b", type=click.IntRange(0), default=None)
@click.option("--side", type=click.Choice([s.value for s in Side]), default=Side.NEGATIVE.value)
@click.option("--q-point", default=None, help="NUM/DEN,NUM/DEN endpoint to realize lines at")
@fmt_option
@out_option
def cmd_lines(r, n, alpha, beta, ell, h, a, b, side, q_point, fmt, out):
    """Broken lines from (-ell, -h) in a class (a, b) or in all classes."""
    path = select_path(r, n, alpha, beta, ell, h)
    guard_size(path)
    Q = parse_q_point(q_point)
    classes = [(x, y) for x in (range(path.ell + 1) if a is None else [a])
               for y in (range(path.h + 1) if b is None else [b])]
    rows = []
    for x, y in classes:
        for line in enumerate_BL(r, path.ell, path.h, x, y, Side(side)):
            row = dict(line.to_json(), a=x, b=y)
            if Q is not None:
                res = realize_geometrically(line, Q)
                row["realized"] = res.ok
                if res.ok:
                    row["angular_momentum"] = str(res.angular_momentum)
                else:
                    row["failure"] = res.kind.value
            rows.append(row)
    if fmt == "json":
        emit(dump({"r": r, "initial": [-path.ell, -path.h], "side": side, "lines": rows}), out)
    else:
        text = []
        for row in rows:
            bends = " ".join(f"{x['wall']}^{x['m']}" for x in row["bends"]) or "-"
            text.append(f"({row['a']},{row['b']}) {row['terminal']} {bends} {row['weight']}\n")
        emit("".join(text), out)
    return EXIT_OK


@cli.command("verify")
@click.argument("suite", type=click.Choice([s.value for s in Suite]))
@click.option("--r", type=click.IntRange(1), default=None)
@click.option("--max-n", type=click.IntRange(1), default=None)
@click.option("--max-m", type=click.IntRange(1), default=None)
@click.option("--alpha", type=click.IntRange(0), default=1)
@click.option("--beta", type=click.IntRange(0), default=0)
@click.option("--seed", type=int, default=0, help="recorded in the report; the suites are exhaustive")
@convention_option
@fmt_option
@out_option
def cmd_verify(suite, r, max_n, max_m, alpha, beta, seed, convention, fmt, out):
    """Run one verification suite; exit 1 if any identity fails."""
    cfg = parse_convention(convention)
    if cfg is None:
        cal = calibrate()
        if not cal.ok:
            click.echo(cal.to_text(), err=True)
            return EXIT_AMBIGUOUS
        cfg = cal.chosen
    if suite == Suite.BIJECTION_NEG.value and max_n:
        for rr in ((r,) if r else (2, 3)):
            path = select_path(rr, max_n, alpha, beta, None, None)
            guard_size(path)
            count = pair_counts(path, rr)[0]
            if count > MAX_PAIRS:
                raise click.UsageError(f"{count} pairs on P({path.ell},{path.h}) exceed the "
                                       f"guard of {MAX_PAIRS}; lower --max-n")
    report = run_suite(suite, cfg, r, max_n, max_m, alpha, beta)
    data = report.to_json()
    data["seed"] = seed
    if fmt == "json":
        emit(dump(data), out)
    else:
        lines = [f"{'PASS' if c.passed else 'INFO' if c.informational else 'FAIL'} "
                 f"{c.identity} {json.dumps(c.params)}" for c in report.checks]
        lines.append(f"{suite}: {data['passed']} passed, {data['failed']} failed")
        emit("\n".join(lines) + "\n", out)
    return EXIT_OK if report.ok else EXIT_FAIL


@cli.command("render")
@click.argument("target", type=click.Choice(["DyckPair", "Diagram", "Line"]))
@click.option("--r", type=click.IntRange(1), default=2)
@click.option("--n", type=int, default=None)
@click.option("--ell", type=click.IntRange(0), default=None)
@click.option("--h", type=click.IntRange(0), default=None)
@click.option("--s1", default=None, help="comma-separated eta indices")
@click.option("--s2", default=None, help="comma-separated nu indices")
@click.option("--apply-lambda", is_flag=True, help="draw lambda of the pair instead")
@click.option("--a", type=click.IntRange(0), default=None)
@click.option("--b", type=click.IntRange(0), default=None)
@click.option("--index", type=click.IntRange(0), default=0, help="which line of the class")
@click.option("--side", type=click.Choice([s.value for s in Side]), default=Side.NEGATIVE.value)
@click.option("--q-point", default="1/4,3/8")
@click.option("--depth", type=click.IntRange(2, 40), default=6, help="walls drawn per side")
@click.option("--format", "fmt", type=click.Choice(["svg"]), default="svg")
@out_option
def cmd_render(target, r, n, ell, h, s1, s2, apply_lambda, a, b, index, side, q_point, depth,
               fmt, out):
    """Write an SVG of a decorated Dyck path, the wall fan, or a broken line."""
    if target == "Diagram":
        emit(diagram_svg(r, depth), out)
        return EXIT_OK
    path = select_path(r, n, 1, 0, ell, h)
    guard_size(path)
    if target == "DyckPair":
        try:
            pair = CompatiblePair(path, parse_indices(s1), parse_indices(s2), r)
        except IndexError as exc:
            click.echo(f"invalid selector: {exc}", err=True)
            return EXIT_FAIL
        if apply_lambda:
            pair = lambda_map(pair)
        emit(dyck_pair_svg(path, pair.S1, pair.S2, r, title=str(pair)), out)
        return EXIT_OK
    if a is None or b is None:
        raise click.UsageError("render Line needs --a and --b")
    lines = enumerate_BL(r, path.ell, path.h, a, b, Side(side))
    if index >= len(lines):
        click.echo(f"invalid selector: class ({a},{b}) has {len(lines)} lines", err=True)
        return EXIT_FAIL
    try:
        emit(line_svg(lines[index], parse_q_point(q_point), depth), out)
    except ValueError as exc:
        click.echo(f"invalid selector: {exc}", err=True)
        return EXIT_FAIL
    return EXIT_OK


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="greedytheta", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_FAIL
    if isinstance(rv, int):
        return rv
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
