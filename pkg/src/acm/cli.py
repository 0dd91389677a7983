"""Command-line surface: exact Hilbert data, Cohen-Macaulayness checks,
classification, parameter sweeps, and freeness certificates, with stable
JSON output.

Exit codes: 0 = a result was produced (including an "unknown" verdict);
1 = input error; 2 = internal inconsistency (e.g. two working primes
disagree), with diagnostics on standard error.

Environment: ACM_SEED overrides the random seed, ACM_PRIME the default
working prime.  Every randomized run prints its seed, and rerunning with
the same seed reproduces the output byte for byte.
"""

from __future__ import annotations

import json
import os
import sys
from fractions import Fraction

import click

from .arrangement import PrimeDisagreement, arrangement_dims, cm_check_arrangement
from .certify import CertificationFailure, freeness_certificate
from .classify import bset_report, classify
from .poly import Partition, isotypic_gen
from .scalars import QQ, parse_field
from .series import closed_form_hrs
from .subalgebra import (
    GeneratorFamily,
    NonFiniteParameter,
    default_candidate_grid,
    module_dims,
    parameter_sweep,
    subalgebra_dims,
)


class InputError(click.ClickException):
    exit_code = 1


def _parse_partition(text: str) -> Partition:
    try:
        parts = [int(p) for p in text.split(",") if p.strip()]
        lam = Partition(parts)
    except (ValueError, TypeError) as e:
        raise InputError(
            f"bad partition {text!r}: expected comma-separated positive "
            f"integers, descending ({e})")
    if list(lam.parts) != parts:
        raise InputError(
            f"bad partition {text!r}: parts must be listed in descending order")
    return lam


def _parse_rational(text: str, name: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad value for {name}: {text!r} is not a rational "
                         "number (use p/q or an integer)")


def _parse_field_opt(text: str):
    try:
        return parse_field(text)
    except ValueError as e:
        raise InputError(str(e))


def _seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get("ACM_SEED")
    return int(env) if env else 0


def _emit(payload: dict, json_path: str | None, lines):
    for line in lines:
        click.echo(line)
    text = json.dumps(payload, indent=2, sort_keys=True)
    if json_path == "-":
        click.echo(text)
    elif json_path:
        with open(json_path, "w") as f:
            f.write(text + "\n")
        click.echo(f"wrote {json_path}")


def _envelope(target, lam=None, field=None, hd=None, verdict=None,
              certificate=None, seed=None, **extra) -> dict:
    payload = {
        "target": target,
        "lambda": list(lam.parts) if lam is not None else None,
        "field": getattr(field, "tag", field),
        "dims": hd.dims if hd else None,
        "denominator_degrees": list(hd.denominator_degrees) if hd else None,
        "numerator": hd.numerator if hd else None,
        "verdict": verdict.to_json() if verdict else None,
        "certificate": certificate,
        "seed": seed,
    }
    payload.update(extra)
    return payload


@click.group()
def cli():
    """Exact Hilbert data and Cohen-Macaulayness certificates for symmetric
    subspace arrangements and Newton-sum invariant algebras."""


@cli.group()
def hilbert():
    """Graded dimension tables and Hilbert-series numerators."""


@hilbert.command("arrangement")
@click.option("--lambda", "lam_text", required=True, help="partition, e.g. 3,2,2")
@click.option("--max-deg", type=int, default=None, help="top degree (default 2n)")
@click.option("--field", "field_text", default="q", show_default=True)
@click.option("--json", "json_path", default=None, help="write JSON here ('-' = stdout)")
def hilbert_arrangement(lam_text, max_deg, field_text, json_path):
    """Dimension table of the arrangement coordinate ring, with the
    numerator over (1-t)^r."""
    lam = _parse_partition(lam_text)
    field = _parse_field_opt(field_text)
    if max_deg is None:
        max_deg = 2 * lam.n
    hd = arrangement_dims(lam, max_deg, field=field)
    _emit(_envelope("X_lambda", lam, field, hd),
          json_path,
          [f"lambda = {lam}", f"dims (0..{max_deg}) = {hd.dims}",
           f"numerator over (1-t)^{lam.r} = {hd.numerator}"])


@hilbert.command("invariants")
@click.option("--lambda", "lam_text", required=True)
@click.option("--slice", "slice_", is_flag=True, help="restrict to the weighted-sum-zero slice")
@click.option("--max-deg", type=int, default=12, show_default=True)
@click.option("--field", "field_text", default="q", show_default=True)
@click.option("--json", "json_path", default=None)
def hilbert_invariants(lam_text, slice_, max_deg, field_text, json_path):
    """Dimension table of the algebra generated by the weighted Newton sums."""
    lam = _parse_partition(lam_text)
    field = _parse_field_opt(field_text)
    fam = GeneratorFamily.newton(list(lam.parts), slice=slice_)
    hd = subalgebra_dims(fam, max_deg, field)
    _emit(_envelope("A_lambda" + ("^0" if slice_ else ""), lam, field, hd),
          json_path,
          [f"lambda = {lam} (slice: {slice_})",
           f"dims (0..{max_deg}) = {hd.dims}",
           f"denominator degrees = {list(hd.denominator_degrees)}",
           f"numerator = {hd.numerator}"])


@hilbert.command("subalgebra")
@click.option("--family", "family_name", default="slice-newton", show_default=True,
              type=click.Choice(["slice-newton"]))
@click.option("--a", "a_text", required=True)
@click.option("--b", "b_text", required=True)
@click.option("--max-deg", type=int, default=12, show_default=True)
@click.option("--field", "field_text", default="q", show_default=True)
@click.option("--json", "json_path", default=None)
def hilbert_subalgebra(family_name, a_text, b_text, max_deg, field_text, json_path):
    """Dimension table of the two-parameter slice algebra R_{a,b}."""
    a = _parse_rational(a_text, "--a")
    b = _parse_rational(b_text, "--b")
    field = _parse_field_opt(field_text)
    try:
        fam = GeneratorFamily.slice_newton(a, b)
    except ValueError as e:
        raise InputError(str(e))
    hd = subalgebra_dims(fam, max_deg, field)
    _emit(_envelope(f"R_{{{a},{b}}}", None, field, hd),
          json_path,
          [f"R_(a,b) with a = {a}, b = {b}",
           f"dims (0..{max_deg}) = {hd.dims}",
           f"numerator over (1-t^2)(1-t^3) = {hd.numerator}"])


@hilbert.command("deformed")
@click.option("--r", "r", type=int, required=True)
@click.option("--s", "s", type=int, required=True)
@click.option("--a", "a_text", required=True)
@click.option("--max-deg", type=int, default=12, show_default=True)
@click.option("--field", "field_text", default="q", show_default=True)
@click.option("--compare-closed-form", is_flag=True,
              help="also print the generic closed-form dimensions")
@click.option("--json", "json_path", default=None)
def hilbert_deformed(r, s, a_text, max_deg, field_text, compare_closed_form,
                     json_path):
    """Dimension table of the deformed Newton-sum algebra."""
    a = _parse_rational(a_text, "--a")
    field = _parse_field_opt(field_text)
    try:
        fam = GeneratorFamily.deformed(r, s, a)
    except NonFiniteParameter as e:
        raise InputError(f"a = {a}: {e}")
    hd = subalgebra_dims(fam, max_deg, field)
    lines = [f"Lambda_({r},{s},{a})", f"dims (0..{max_deg}) = {hd.dims}",
             f"numerator = {hd.numerator}"]
    extra = {}
    if compare_closed_form:
        cf = closed_form_hrs(r, s, max_deg)
        lines.append(f"generic closed form = {cf}")
        lines.append("matches closed form" if cf == hd.dims
                     else "DIFFERS from generic closed form")
        extra = {"closed_form": cf, "matches_closed_form": cf == hd.dims}
    _emit(_envelope(f"Lambda_{{{r},{s},{a}}}", None, field, hd, **extra),
          json_path, lines)


@cli.command("cm-check")
@click.option("--lambda", "lam_text", required=True)
@click.option("--trials", type=int, default=5, show_default=True)
@click.option("--max-deg", type=int, default=None)
@click.option("--field", "field_text", default="q", show_default=True)
@click.option("--certify", "policy", default="certified", show_default=True,
              type=click.Choice(["certified", "two-primes", "single"]))
@click.option("--seed", type=int, default=None)
@click.option("--json", "json_path", default=None)
def cm_check(lam_text, trials, max_deg, field_text, policy, seed, json_path):
    """Decide Cohen-Macaulayness of the arrangement by hunting for a linear
    regular sequence whose quotient matches the numerator."""
    lam = _parse_partition(lam_text)
    field = _parse_field_opt(field_text)
    seed = _seed(seed)
    if policy == "two-primes":
        policy = "certified"
    click.echo(f"seed = {seed}")
    verdict = cm_check_arrangement(lam, trials=trials, max_degree=max_deg,
                                   field=field, policy=policy, seed=seed)
    _emit(_envelope("X_lambda", lam, field, None, verdict=verdict, seed=seed),
          json_path,
          [f"lambda = {lam}",
           f"verdict: {verdict.status} ({verdict.certainty})"]
          + [f"  rule {r.id}: {r.citation}" for r in verdict.rules])


@cli.command("classify")
@click.option("--lambda", "lam_text", required=True)
@click.option("--json", "json_path", default=None)
def classify_cmd(lam_text, json_path):
    """Rule-based verdict pair for the arrangement and its quotient."""
    lam = _parse_partition(lam_text)
    vx, vq = classify(lam)
    lines = [f"lambda = {lam}"]
    for v in (vx, vq):
        lines.append(f"{v.target}: {v.status} ({v.certainty})")
        for r in v.rules:
            note = f" [{r.note}]" if r.note else ""
            lines.append(f"  rule {r.id}: {r.citation}{note}")
    payload = _envelope("classification", lam)
    payload["verdict"] = vx.to_json()
    payload["quotient_verdict"] = vq.to_json()
    _emit(payload, json_path, lines)


_LINES = {
    "a=b+1": lambda t: (t + 1, t),
    "b=a+1": lambda t: (t, t + 1),
    "a+b=1": lambda t: (t, 1 - t),
}


@cli.command("sweep")
@click.option("--family", "family_name", required=True,
              type=click.Choice(["deformed", "slice-newton-line"]))
@click.option("--r", "r", type=int, default=None)
@click.option("--s", "s", type=int, default=None)
@click.option("--line", "line", default=None,
              type=click.Choice(sorted(_LINES)))
@click.option("--candidates", default="auto", show_default=True,
              help="'auto' or comma-separated rationals")
@click.option("--max-deg", type=int, default=12, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--json", "json_path", default=None)
def sweep(family_name, r, s, line, candidates, max_deg, seed, json_path):
    """Sweep a family parameter and report dimension drops against the
    generic table."""
    seed = _seed(seed)
    click.echo(f"seed = {seed}")
    if family_name == "deformed":
        if r is None or s is None:
            raise InputError("--family deformed requires --r and --s")
        if candidates == "auto":
            cand = default_candidate_grid(r, s)
        else:
            cand = [_parse_rational(t, "--candidates") for t in candidates.split(",")]
        rep = parameter_sweep(lambda a: GeneratorFamily.deformed(r, s, a),
                              cand, max_degree=max_deg, seed=seed)
        _emit({"target": f"Lambda_{{{r},{s},a}}", "seed": seed,
               "sweep": rep.to_json()},
              json_path,
              [f"generic dims = {rep.generic_dims}",
               f"drop set = {[str(x) for x in rep.drop_set]}",
               f"non-finitely-generated values = {[str(x) for x in rep.nonfinite]}"]
              + [f"flag: {f}" for f in rep.flags])
        return
    if line is None:
        raise InputError("--family slice-newton-line requires --line")
    point = _LINES[line]
    if candidates == "auto":
        cand = [Fraction(k) for k in (3, 5, 7)]
    else:
        cand = [_parse_rational(t, "--candidates") for t in candidates.split(",")]

    def make(t):
        a, b = point(Fraction(t))
        return GeneratorFamily.slice_newton(a, b)

    import random
    rng = random.Random(seed)
    generic = None
    for _ in range(3):
        a = Fraction(rng.randint(1, 10 ** 4), rng.randint(1, 10 ** 4))
        b = Fraction(rng.randint(1, 10 ** 4), rng.randint(1, 10 ** 4))
        try:
            dims = subalgebra_dims(GeneratorFamily.slice_newton(a, b),
                                   max_deg).dims
        except ValueError:
            continue
        if generic is None:
            generic = dims
        elif dims != generic:
            raise PrimeDisagreement(
                f"generic off-line samples disagree: {dims} vs {generic}")
    on_line = {str(t): subalgebra_dims(make(t), max_deg).dims for t in cand}
    lines_out = [f"generic (off the line) dims = {generic}"]
    for t, dims in on_line.items():
        diff = [d for d, (u, v) in enumerate(zip(dims, generic)) if u != v]
        lines_out.append(f"on {line} at t={t}: dims = {dims}; "
                         f"differs at degrees {diff}")
    _emit({"target": f"R_(a,b) on {line}", "seed": seed,
           "generic_dims": generic, "on_line_dims": on_line},
          json_path, lines_out)


@cli.command("freeness")
@click.option("--family", "family_name", required=True,
              type=click.Choice(["bplus1", "bplus1-11", "slice-newton", "deformed"]))
@click.option("--a", "a_text", default=None)
@click.option("--b", "b_text", default=None)
@click.option("--r", "r", type=int, default=None)
@click.option("--s", "s", type=int, default=None)
@click.option("--gens", default="auto", show_default=True,
              help="'auto' or semicolon-separated generator partitions, e.g. '4;5;4,4'")
@click.option("--json", "json_path", default=None)
def freeness(family_name, a_text, b_text, r, s, gens, json_path):
    """Search for a freeness certificate (module generators, annihilators,
    recursion, closure witnesses) and re-verify it."""
    if family_name == "bplus1":
        if b_text is None:
            raise InputError("--family bplus1 requires --b")
        b = _parse_rational(b_text, "--b")
        fam = GeneratorFamily.slice_newton(b + 1, b)
    elif family_name == "bplus1-11":
        if b_text is None:
            raise InputError("--family bplus1-11 requires --b")
        b = int(_parse_rational(b_text, "--b"))
        fam = GeneratorFamily.newton([b + 1, b, 1, 1], slice=True)
    elif family_name == "slice-newton":
        if a_text is None or b_text is None:
            raise InputError("--family slice-newton requires --a and --b")
        fam = GeneratorFamily.slice_newton(
            _parse_rational(a_text, "--a"), _parse_rational(b_text, "--b"))
    else:
        if r is None or s is None or a_text is None:
            raise InputError("--family deformed requires --r, --s and --a")
        try:
            fam = GeneratorFamily.deformed(r, s, _parse_rational(a_text, "--a"))
        except NonFiniteParameter as e:
            raise InputError(str(e))
    gen_list = None
    if gens != "auto":
        gen_list = [tuple(int(x) for x in g.split(",")) for g in gens.split(";")]
    cert = freeness_certificate(fam, gens=gen_list)
    _emit({"target": "freeness", "certificate": cert.to_json()},
          json_path,
          [f"rank = {cert.rank}, recursion degree = {cert.recursion_degree}",
           f"generators = {[list(g) for g in cert.generators]}",
           f"numerator = {cert.numerator}",
           f"verified = {cert.verified}"])


@cli.command("module-hilbert")
@click.option("--beta", "beta_text", required=True)
@click.option("--max-deg", type=int, default=10, show_default=True)
@click.option("--json", "json_path", default=None)
def module_hilbert(beta_text, max_deg, json_path):
    """Dimension table of the reflection-isotypic module over the slice
    algebra with weights (beta+1, beta, 1)."""
    beta = _parse_rational(beta_text, "--beta")
    if beta in (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2)):
        raise InputError(f"beta = {beta} is a degenerate value for the module")
    fam = GeneratorFamily.slice_newton(beta + 1, beta)
    gens = [isotypic_gen(beta, i) for i in range(1, max_deg + 1)]
    hd = module_dims(fam, gens, max_deg)
    q1 = sum(hd.numerator)
    rank = 2 * fam.bezout_rank()
    _emit(_envelope(f"M(beta={beta})", None, QQ, hd,
                    numerator_sum=q1, module_rank=rank),
          json_path,
          [f"beta = {beta}", f"dims (0..{max_deg}) = {hd.dims}",
           f"numerator = {hd.numerator}",
           f"numerator sum = {q1}, module rank = {rank}"
           + (" (not free => not CM)" if q1 > rank else "")])


@cli.command("bset-report")
@click.option("--r", "r", type=int, required=True)
@click.option("--s", "s", type=int, required=True)
@click.option("--max-deg", type=int, default=12, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--json", "json_path", default=None)
def bset_report_cmd(r, s, max_deg, seed, json_path):
    """Compare swept dimension drops of the deformed family against the
    predicted exceptional parameter set."""
    seed = _seed(seed)
    click.echo(f"seed = {seed}")
    rep = bset_report(r, s, max_degree=max_deg, seed=seed)
    _emit({"target": f"B({r},{s})", "seed": seed, "report": rep.to_json()},
          json_path,
          [f"predicted exceptional set = {[str(a) for a in rep.bbar]}",
           f"drops known to stay CM = {[str(a) for a in rep.known_cm_drops]}",
           f"sweep drop set = {[str(a) for a in rep.sweep.drop_set]}",
           f"unexplained drops = {[str(a) for a in rep.unexplained_drops]}",
           f"missing predictions = {[str(a) for a in rep.missing]}",
           f"agrees = {rep.agrees}"])


def main():
    try:
        cli.main(standalone_mode=False)
    except click.UsageError as e:
        e.show()
        sys.exit(1)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except click.Abort:
        sys.exit(1)
    except (PrimeDisagreement, CertificationFailure) as e:
        click.echo(f"internal inconsistency: {e}", err=True)
        sys.exit(2)
    sys.exit(0)


if __name__ == "__main__":
    main()
