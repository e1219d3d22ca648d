"""Command-line interface.

Exit codes: 0 = computed, no obstruction; 1 = usage or validation error;
2 = a nonexistence certificate was produced (so `certify` can be branched
on in scripts). All numeric output is exact decimal.
"""

from __future__ import annotations

import json
import os
import re
import sys
from pathlib import Path

import click

from .arith import factor
from .euler_part import (
    CandidateFamily,
    EulerFactorQuery,
    SquarePartSpec,
    build_certificate,
    euler_divisibility,
    mod8_classify,
    remark_parity,
)
from .search import SearchConfig, abundancy, oracle_suite, search_kperfect
from .structure import enumerate_shapes, split_euler_part, valuation_identity_check
from .valuation import ValuationQuery, broughan_zhou_equiv, nu2_sigma, nu2_sigma_minus_one

CONFIG_ENV = "MULTIPERFECT_CONFIG"
_TERM_RE = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_int_expr(text: str) -> int:
    """Parse a decimal integer or a factored expression like 41^13*5^4."""
    out = 1
    for term in text.replace(" ", "").split("*"):
        m = _TERM_RE.match(term)
        if not m:
            raise click.UsageError(f"malformed integer expression {text!r}")
        base = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) else 1
        out *= base**exp
    return out


class IntExpr(click.ParamType):
    name = "int-expr"

    def convert(self, value, param, ctx):
        if isinstance(value, int):
            return value
        try:
            return parse_int_expr(value)
        except click.UsageError as exc:
            self.fail(str(exc), param, ctx)


INT_EXPR = IntExpr()


def load_config(path: str | None) -> dict:
    """Simple key = value file; unknown keys are ignored."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path or not Path(path).exists():
        return {}
    cfg = {}
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise click.UsageError(f"malformed config line {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        cfg[key] = value
    return cfg


def emit(ctx, result: dict, meta: dict | None = None, text_lines: list[str] | None = None):
    if ctx.obj["format"] == "json":
        payload = dict(result)
        if meta:
            payload.update(meta)
        click.echo(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines or [f"{k}: {v}" for k, v in result.items()]:
            click.echo(line)


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json",
              show_default=True, help="output format")
@click.option("--config", "config_path", type=str, default=None,
              help=f"config file (key = value); defaults to ${CONFIG_ENV}")
@click.pass_context
def cli(ctx, fmt, config_path):
    """Predicates, shape enumeration, and nonexistence certificates for
    odd multiperfect numbers."""
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt
    ctx.obj["config"] = load_config(config_path)


@cli.command("valuation")
@click.option("--p", type=INT_EXPR, required=True, help="prime base")
@click.option("--e", type=int, required=True, help="exponent")
@click.pass_context
def valuation_cmd(ctx, p, e):
    """2-adic valuations of sigma(p^e) and sigma(p^e) - 1."""
    q = ValuationQuery(p, e)
    rep = nu2_sigma(q)
    rep1 = nu2_sigma_minus_one(q)
    result = {
        "p": p,
        "e": e,
        "nu2_sigma": rep.value,
        "nu2_sigma_branch": rep.branch.value,
        "nu2_sigma_minus_one": rep1.value,
        "nu2_sigma_minus_one_branch": rep1.branch.value,
        "r": rep.r,
    }
    if p % 2 == 1 and e % 2 == 1:
        j, holds = broughan_zhou_equiv(p, e)
        result["broughan_zhou_j"] = j
        result["broughan_zhou_holds"] = holds
    emit(ctx, result)


@cli.command("shapes")
@click.option("--k", type=int, required=True, help="even abundancy k >= 2")
@click.pass_context
def shapes_cmd(ctx, k):
    """Admissible congruence shapes of odd k-perfect numbers."""
    shapes = enumerate_shapes(k)
    if ctx.obj["format"] == "json":
        for sh in shapes:
            click.echo(json.dumps(sh.as_dict(), sort_keys=True))
    else:
        current_s = None
        for sh in shapes:
            if sh.s != current_s:
                current_s = sh.s
                click.echo(f"s = {sh.s}:")
            prime_part = ", ".join(
                f"p{i+1} = {c.residue} (mod {c.modulus})"
                for i, c in enumerate(sh.prime_classes)
            )
            exp_part = ", ".join(
                f"e{j+1} = {c.residue} (mod {c.modulus})"
                for j, c in enumerate(sh.exponent_classes)
            )
            click.echo(f"  a={list(sh.assignment.a)} b={list(sh.assignment.b)}: "
                       f"{prime_part}; {exp_part}")


@cli.command("split")
@click.option("--n", type=INT_EXPR, required=True, help="odd integer")
@click.pass_context
def split_cmd(ctx, n):
    """Euler part / square part split plus the valuation identity."""
    f = factor(n)
    sp = split_euler_part(f)
    lhs, rhs, holds = valuation_identity_check(f)
    emit(ctx, {
        "n": n,
        "euler_part": [[p, e] for p, e in sp.euler_part],
        "square_part": [[p, e] for p, e in sp.square_part],
        "s": sp.s,
        "nu2_sigma": lhs,
        "identity_rhs": rhs,
        "identity_holds": holds,
    })


@cli.command("check-euler-part")
@click.option("--q", type=INT_EXPR, required=True, help="square-part prime q")
@click.option("--beta", type=int, required=True, help="exponent: q^(2*beta)")
@click.option("--others", type=str, default="",
              help="complementary square primes as p:beta pairs, e.g. 13:1,11:2")
@click.pass_context
def check_euler_part_cmd(ctx, q, beta, others):
    """Does q^(2*beta) divide sigma(Euler part)?"""
    pairs = []
    for chunk in filter(None, others.split(",")):
        p, _, b = chunk.partition(":")
        pairs.append((parse_int_expr(p), int(b or 1)))
    spec = SquarePartSpec(q, beta, tuple(pairs))
    divides, reasons = euler_divisibility(spec)
    emit(ctx, {"q": q, "beta": beta, "divides": divides, "reasons": reasons},
         text_lines=[f"q^{2*beta} divides sigma(Euler part): {divides}"]
         + [f"  p={r['p']} beta={r['beta']} [{r['branch']}] "
            f"2b+1 = {r['two_beta_plus_one_mod']} (mod {r['modulus']}) "
            f"-> coprime={r['coprime']}" for r in reasons])


@cli.command("mod8")
@click.option("--pi", type=INT_EXPR, required=True, help="Euler-factor prime, = 1 (mod 4)")
@click.option("--alpha", type=int, required=True, help="Euler-factor exponent, = 1 (mod 4)")
@click.option("--m-square", "m_square", type=INT_EXPR, required=True,
              help="square part M^2 (decimal or factored expression)")
@click.option("--assert-consistency", is_flag=True,
              help="also assert pi vs alpha mod 8 under the 2-perfect hypothesis")
@click.pass_context
def mod8_cmd(ctx, pi, alpha, m_square, assert_consistency):
    """Mod-8 classification of the Euler factor from sigma(M^2)."""
    m2 = factor(m_square)
    query = EulerFactorQuery(pi, alpha, m2)
    cls = mod8_classify(query, assert_consistency=assert_consistency)
    count, predicts = remark_parity(m2)
    from .arith import sigma as _sigma

    emit(ctx, {
        "pi": pi,
        "alpha": alpha,
        "m_square": m_square,
        "sigma_m_square_mod4": _sigma(m2) % 4,
        "class": cls.value,
        "shift_prime_power_count": count,
        "parity_predicts_shift": predicts,
    })


@cli.command("certify")
@click.option("--pi", type=INT_EXPR, default=None, help="Euler-factor prime")
@click.option("--alpha", type=int, default=None, help="Euler-factor exponent")
@click.option("--pi-mod", "pi_mod", type=str, default=None,
              help="residue class r,m for a symbolic pi")
@click.option("--alpha-mod", "alpha_mod", type=str, default=None,
              help="residue class r,m for a symbolic alpha")
@click.option("--q", type=INT_EXPR, default=None,
              help="Fermat prime in the square part (q^(2*beta), 2*beta+1 coprime to q)")
@click.option("--m-constraint", "m_constraint", type=click.Choice(["all-3-mod-4"]),
              default=None, help="constraint on the square part's primes")
@click.option("--m-square", "m_square", type=INT_EXPR, default=None,
              help="concrete square part for the mod-16 table check")
@click.option("--k-exponent", type=int, default=1, show_default=True,
              help="candidate is 2^k-perfect")
@click.option("--out", type=str, default=None, help="write the certificate JSON here")
@click.pass_context
def certify_cmd(ctx, pi, alpha, pi_mod, alpha_mod, q, m_constraint, m_square,
                k_exponent, out):
    """Try every applicable obstruction; exit 2 when a nonexistence
    certificate is produced, 0 when nothing obstructs."""

    def parse_mod(text):
        if text is None:
            return None
        r, _, m = text.partition(",")
        return (int(r), int(m))

    candidate = CandidateFamily(
        pi=pi,
        alpha=alpha,
        pi_mod=parse_mod(pi_mod),
        alpha_mod=parse_mod(alpha_mod),
        q=q,
        m_constraint=m_constraint,
        m_square=factor(m_square) if m_square is not None else None,
        k_exponent=k_exponent,
    )
    cert = build_certificate(candidate)
    if cert is None:
        emit(ctx, {"certificate": None},
             text_lines=["no obstruction fired; candidate family not excluded"])
        return
    if out:
        Path(out).write_text(cert.to_json() + "\n")
    if ctx.obj["format"] == "json":
        click.echo(json.dumps(cert.as_dict(), sort_keys=True))
    else:
        click.echo(f"certificate [{cert.kind.value}] via {cert.theorem}")
        click.echo(cert.conclusion)
    ctx.exit(2)


@cli.command("search")
@click.option("--k", type=int, required=True, help="abundancy target")
@click.option("--bound", type=INT_EXPR, default=None, help="inclusive search bound")
@click.option("--odd", "odd_only", is_flag=True, help="odd candidates only")
@click.option("--workers", type=int, default=None, help="worker count")
@click.option("--shape-filter", "shape_filter", type=int, default=None,
              help="prune odd candidates by the shape congruences for this k")
@click.option("--report-dir", "report_dir", type=str, default=None,
              help="write hits.csv and abundancy.png here")
@click.pass_context
def search_cmd(ctx, k, bound, odd_only, workers, shape_filter, report_dir):
    """Exhaustive sigma(n) = k*n search up to the bound."""
    cfg_file = ctx.obj["config"]
    if bound is None:
        bound = parse_int_expr(cfg_file.get("bound", "10000"))
    if workers is None:
        workers = int(cfg_file.get("workers", "1"))
    cfg = SearchConfig(k=k, bound=bound, odd_only=odd_only, workers=workers,
                       shape_filter=shape_filter)
    report = search_kperfect(cfg)
    result = report.as_dict()
    if report_dir:
        from .plotting import write_search_report

        result["report_files"] = write_search_report(report, k, report_dir)
    emit(ctx, result,
         text_lines=[f"hits: {report.hits}",
                     f"pruned: {report.pruned_count}",
                     f"elapsed: {report.elapsed:.3f}s"])


@cli.command("oracle")
@click.option("--family", type=str, required=True, help="oracle family name")
@click.pass_context
def oracle_cmd(ctx, family):
    """Replay one closed form against direct computation."""
    rep = oracle_suite(family)
    emit(ctx, rep.as_dict(),
         text_lines=[f"{rep.family}: {'pass' if rep.passed else 'FAIL'} "
                     f"({rep.instances} instances)"])
    if not rep.passed:
        ctx.exit(1)


@cli.command("abundancy")
@click.option("--n", type=INT_EXPR, required=True, help="positive integer")
@click.pass_context
def abundancy_cmd(ctx, n):
    """sigma(n)/n as an exact fraction."""
    frac = abundancy(n)
    emit(ctx, {"n": n, "numerator": frac.numerator, "denominator": frac.denominator},
         text_lines=[f"sigma({n})/{n} = {frac.numerator}/{frac.denominator}"])


def main(argv: list[str] | None = None) -> int:
    try:
        rv = cli.main(args=argv, standalone_mode=False, obj={})
        return rv if isinstance(rv, int) else 0
    except click.exceptions.Exit as exc:  # ctx.exit(2) from certify
        return exc.exit_code
    except SystemExit as exc:
        return int(exc.code or 0)
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except (ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
