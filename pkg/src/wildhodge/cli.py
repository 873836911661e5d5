"""Command-line front end.

Every subcommand builds one job from its flags and runs it.  Output is plain
text by default; ``--format json`` prints a document of the form::

    {"command": ..., "params": ..., "result": ..., "checks": [...], "runtime_ms": ...}

Exit codes: 0 ok, 1 a verification failed, 2 bad input, 3 a size guard was
hit, 4 two independent computations disagreed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import fq, hecke, hodge, macdonald as mac
from .partitions import Partition, parse_partition, parse_partition_list, partitions_of
from .polys import LaurentPoly2, RatFunc2, to_json

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_GUARD, EXIT_DISAGREE = range(5)

DEFAULT_MAX_N = 4
DEFAULT_MAX_Q = 7


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class Outcome:
    result: object
    text: list[str]
    checks: list[tuple[str, bool]] = field(default_factory=list)
    code: int = EXIT_OK


# ---------------------------------------------------------------- parsing

def _wild_type(args) -> hodge.WildType:
    try:
        mu = parse_partition_list(args.mu) if args.mu else []
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    r_list = list(args.r or [])
    m = args.m if args.m is not None else len(r_list)
    if not r_list:
        r_list = [1] * m
    if len(r_list) != m:
        raise CliError(f"--m {m} needs exactly {m} --r values (one pole order per wild point), got {len(r_list)}",
                       EXIT_INPUT)
    try:
        t = hodge.WildType(g=args.g, mu=tuple(mu), r_vec=tuple(r_list), n=args.n)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    if t.n > args.max_degree:
        raise CliError(f"n = {t.n} exceeds the symbolic size guard {args.max_degree} (raise --max-degree)",
                       EXIT_GUARD)
    return t


def _params(args, t: hodge.WildType | None = None) -> dict:
    out = {}
    if t is not None:
        out.update(n=t.n, g=t.g, k=t.k, m=t.m, mu=[list(p) for p in t.mu], r_vec=list(t.r_vec))
    for key in ("q", "suite", "shape", "basis", "lift"):
        if getattr(args, key, None) is not None:
            out[key] = getattr(args, key)
    if getattr(args, "command", None) == "verify" and args.n is not None:
        out["n"] = args.n
    return out


def _check_q(args) -> int:
    if args.q is None:
        raise CliError("--q is required", EXIT_INPUT)
    if args.q > args.max_q:
        raise CliError(f"q = {args.q} exceeds the oracle size guard {args.max_q} (raise --max-q)", EXIT_GUARD)
    return args.q


def _fmt(f, args, names=("q", "t")) -> str:
    style = "latex" if args.format == "latex" else "text"
    return f.format(names, style)


# ---------------------------------------------------------------- commands

def cmd_hpoly(args) -> Outcome:
    t = _wild_type(args)
    h = hodge.hh_poly(t)
    return Outcome(to_json(h), [_fmt(h, args, ("z", "w"))])


def cmd_epoly(args) -> Outcome:
    t = _wild_type(args)
    e = _polynomial_or_fail(hodge.e_polynomial, t)
    return Outcome(to_json(e), [_fmt(e, args)])


def cmd_mhp(args) -> Outcome:
    t = _wild_type(args)
    wh = _polynomial_or_fail(hodge.mixed_hodge_conjectural, t)
    result = dict(to_json(wh), conjectural=True)
    return Outcome(result, [_fmt(wh, args), "CONJECTURAL: mixed Hodge polynomial predicted from the H-polynomial"])


def _polynomial_or_fail(fn: Callable, t: hodge.WildType) -> LaurentPoly2:
    try:
        return fn(t)
    except ArithmeticError as exc:
        raise CliError(str(exc), EXIT_VERIFY) from None


def cmd_dim(args) -> Outcome:
    t = _wild_type(args)
    d = hodge.dimension(t)
    return Outcome(d, [str(d)])


def cmd_count(args) -> Outcome:
    t = _wild_type(args)
    q = _check_q(args)
    try:
        gt = fq.find_generic(t, q)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    if not gt:
        suggestion = fq.smallest_generic_prime(t, start=q + 1)
        text = [f"NotFound: no generic eigenvalue tuple over F_{q} ({gt.reason})"]
        if suggestion is not None:
            text.append(f"smallest prime with a generic tuple: q={suggestion}")
        return Outcome({"generic": None, "suggested_q": suggestion}, text)
    try:
        with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
            fused_job = pool.submit(fq.fused_count, t, gt, q)
            brute_job = None if args.skip_bruteforce else pool.submit(fq.count_solutions_bruteforce, t, gt, q)
            fused = fused_job.result()
            brute = None if brute_job is None else fq.count_points(t, gt, q, solutions=brute_job.result())
    except fq.GuardError as exc:
        raise CliError(f"{exc} (use --skip-bruteforce)", EXIT_GUARD) from None
    formula = _polynomial_or_fail(hodge.e_polynomial, t).evaluate(Fraction(q))
    values = {"fused": fused, "formula": formula}
    if brute is not None:
        values["bruteforce"] = brute
    agree = len(set(values.values())) == 1
    text = [f"generic tuple: {gt.describe()}"]
    if brute is not None:
        text.append(f"brute-force count: {brute}")
    text += [f"fused count: {fused}", f"formula: {formula}", "PASS" if agree else "FAIL"]
    result = {"generic": gt.describe(), **{k: str(v) for k, v in values.items()}}
    checks = [("oracle agreement", agree)]
    return Outcome(result, text, checks, EXIT_OK if agree else EXIT_DISAGREE)


def cmd_macdonald(args) -> Outcome:
    try:
        lam = parse_partition(args.shape)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    if lam.size > _macdonald_guard(args):
        raise CliError(f"|lambda| = {lam.size} exceeds the Macdonald size guard {_macdonald_guard(args)}",
                       EXIT_GUARD)
    h = mac.macdonald(lam, bound=lam.size)
    expansion = h.schur_expansion() if args.basis == "schur" else h.expansion
    prefix = "s" if args.basis == "schur" else "m"
    text, result = [], {}
    for nu in partitions_of(lam.size):
        c = expansion.get(nu)
        if c is None or c.is_zero():
            continue
        text.append(f"{prefix}{list(nu)}: {_fmt(c, args)}")
        result[",".join(map(str, nu))] = to_json(c)
    return Outcome(result, text)


def _macdonald_guard(args) -> int:
    return max(args.max_degree, mac.DEFAULT_BOUND)


def cmd_hecke_spectrum(args) -> Outcome:
    q = _check_q(args)
    n = args.n or 2
    try:
        rep = hecke.t0sq_spectrum_check(n, q, lift=args.lift)
    except fq.GuardError as exc:
        raise CliError(str(exc), EXIT_GUARD) from None
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    checks = [
        ("central", rep.central),
        ("annihilating polynomial", rep.annihilated),
        ("rank multiplicities", rep.ranks == rep.predicted),
    ]
    text = [f"eigenvalues: {rep.eigenvalues}"] + [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in checks]
    result = {"eigenvalues": rep.eigenvalues, "multiplicities": {str(k): v for k, v in sorted(rep.predicted.items())}}
    return Outcome(result, text, checks, EXIT_OK if rep.ok else EXIT_VERIFY)


# ---------------------------------------------------------------- verification suites

def _instances(n: int) -> list[hodge.WildType]:
    if n == 2:
        out = [t for t, _ in hodge.n2_genus0_cases()]
        out += [hodge.WildType(g=g, mu=((1, 1),) * k, r_vec=(1,) * (m - 1) + (r - m + 1,), n=2)
                for g in (1, 2) for k, m, r in ((1, 1, 1), (0, 1, 2))]
        return out
    if n == 3:
        return [
            hodge.WildType(g=0, mu=((1, 1, 1),), r_vec=(2,)),
            hodge.WildType(g=0, mu=((2, 1),) * 2, r_vec=(1,)),
            hodge.WildType(g=0, mu=((1, 1, 1),) * 2, r_vec=(1,)),
        ]
    return [hodge.WildType(g=0, mu=(), r_vec=(1,), n=n)]


def _suite_symmetry(args) -> list[tuple[str, bool]]:
    return [(f"H(z,w) = H(-w,-z) [{t.describe()}]", hodge.swap_symmetric(hodge.hh_poly(t)))
            for t in _instances(args.n)]


def _suite_palindromic(args) -> list[tuple[str, bool]]:
    out = []
    for t in _instances(args.n):
        e = hodge.e_polynomial(t)
        out.append((f"E(q) = q^d E(1/q) [{t.describe()}]", e.is_zero() or hodge.palindromic(e, hodge.dimension(t))))
    return out


def _suite_duality(args) -> list[tuple[str, bool]]:
    out = []
    for t in _instances(args.n):
        wh = hodge.mixed_hodge_conjectural(t)
        out.append((f"curious Poincare duality [{t.describe()}]",
                    wh.is_zero() or hodge.curious_poincare(wh, hodge.dimension(t))))
    return out


def _suite_hecke(args) -> list[tuple[str, bool]]:
    n, q = args.n, _check_q(args)
    try:
        pres = hecke.presentation_check(n, q)
        checks = list(pres.checks)
        x = hecke.t0_squared(n, q)
        checks.append(("T_omega0^2 central", hecke.is_central(x)))
        words = hecke.reduced_words_w0(n)
        checks.append(("independent of reduced word",
                       len({hecke.t0_squared(n, q, w).coeffs for w in words}) == 1))
        for lift in hecke.LIFTS:
            rep = hecke.t0sq_spectrum_check(n, q, lift)
            checks.append((f"spectrum ({lift} lift): annihilating polynomial", rep.annihilated))
            checks.append((f"spectrum ({lift} lift): rank multiplicities", rep.ranks == rep.predicted))
        checks.append(("T_omega0^2 = T_s0^2 T_(omega0^2)", hecke.lift_relation_holds(n, q)))
        checks.append(("Hecke and group actions commute", hecke.actions_commute(n, q)))
    except fq.GuardError as exc:
        raise CliError(str(exc), EXIT_GUARD) from None
    return checks


def _suite_macdonald(args) -> list[tuple[str, bool]]:
    bound = args.n or mac.DEFAULT_BOUND
    if bound > _macdonald_guard(args):
        raise CliError(f"|lambda| <= {bound} exceeds the Macdonald size guard {_macdonald_guard(args)}", EXIT_GUARD)
    shapes = [lam for k in range(1, bound + 1) for lam in partitions_of(k)]

    def run(lam: Partition) -> list[tuple[str, bool]]:
        h = mac.macdonald(lam, bound=bound)
        swapped = mac.macdonald(lam.conjugate(), bound=bound).swap()
        return [
            (f"pairing with s_(1^n) [{lam}]", mac.pair_with_sign(lam) == mac.closed_form_pairing(lam)),
            (f"transpose symmetry [{lam}]", h.expansion == swapped.expansion),
            (f"q=t=1 specialization [{lam}]", mac.specialization_check(lam)),
        ]

    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        return [c for block in pool.map(run, shapes) for c in block]


def _suite_tame(args) -> list[tuple[str, bool]]:
    n = args.n
    candidates = [lam for lam in partitions_of(n) if lam[0] < n]
    out = []
    for mu in candidates:
        res = hodge.tame_equivalence_check(mu)
        if res is not None:
            out.append((f"wild (mu,(1^n)) vs tame instance [mu={mu}]", res))
    return out


SUITES = {
    "symmetry": _suite_symmetry,
    "palindromic": _suite_palindromic,
    "duality": _suite_duality,
    "hecke": _suite_hecke,
    "macdonald": _suite_macdonald,
    "tame": _suite_tame,
}


def cmd_verify(args) -> Outcome:
    if args.suite != "macdonald":
        if args.n is None:
            raise CliError("--n is required for this suite", EXIT_INPUT)
        if args.n > args.max_degree:
            raise CliError(f"n = {args.n} exceeds the symbolic size guard {args.max_degree}", EXIT_GUARD)
    checks = SUITES[args.suite](args)
    ok = all(passed for _, passed in checks)
    text = [f"{'PASS' if passed else 'FAIL'}  {name}" for name, passed in checks]
    text.append(f"{sum(p for _, p in checks)}/{len(checks)} checks passed")
    return Outcome(ok, text, checks, EXIT_OK if ok else EXIT_VERIFY)


COMMANDS = {
    "hpoly": cmd_hpoly,
    "epoly": cmd_epoly,
    "mhp": cmd_mhp,
    "dim": cmd_dim,
    "count": cmd_count,
    "verify": cmd_verify,
    "macdonald": cmd_macdonald,
    "hecke-spectrum": cmd_hecke_spectrum,
}


# ---------------------------------------------------------------- driver

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="rank")
    common.add_argument("--g", type=int, default=0, help="genus")
    common.add_argument("--mu", help="tame puncture types, e.g. 21,11 or (10,1),11")
    common.add_argument("--m", type=int, help="number of wild points")
    common.add_argument("--r", type=int, action="append", help="pole order of a wild point (repeat per point)")
    common.add_argument("--q", type=int, help="prime field size for oracle commands")
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_N,
                        help="largest n accepted by symbolic commands")
    common.add_argument("--max-q", type=int, default=DEFAULT_MAX_Q, help="largest q accepted by oracle commands")
    common.add_argument("--out", help="also write the output to this file")
    common.add_argument("--no-timing", action="store_true", help="omit runtime_ms from JSON (byte-stable output)")

    parser = argparse.ArgumentParser(prog="wildhodge", description="Exact computations for wild character varieties.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("hpoly", "epoly", "mhp", "dim"):
        sub.add_parser(name, parents=[common])
    p = sub.add_parser("count", parents=[common])
    p.add_argument("--skip-bruteforce", action="store_true")
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("suite", choices=sorted(SUITES))
    p = sub.add_parser("macdonald", parents=[common])
    p.add_argument("shape", help="partition, e.g. 21")
    p.add_argument("--basis", choices=("schur", "monomial"), default="schur")
    p = sub.add_parser("hecke-spectrum", parents=[common])
    p.add_argument("--lift", choices=hecke.LIFTS, default="s")
    return parser


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (LaurentPoly2, RatFunc2)):
        return to_json(x)
    raise TypeError(f"not serializable: {type(x).__name__}")


def _render(args, outcome: Outcome, params: dict, elapsed_ms: float) -> str:
    if args.format == "json":
        doc = {
            "command": args.command,
            "params": params,
            "result": outcome.result,
            "checks": [{"name": n, "status": "PASS" if ok else "FAIL"} for n, ok in outcome.checks],
            "runtime_ms": None if args.no_timing else round(elapsed_ms, 3),
        }
        return json.dumps(doc, default=_jsonable, sort_keys=False)
    return "\n".join(outcome.text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        outcome = COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except fq.GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    elapsed = (time.perf_counter() - start) * 1000
    try:
        t = _wild_type(args) if args.command in ("hpoly", "epoly", "mhp", "dim", "count") else None
    except CliError:
        t = None
    text = _render(args, outcome, _params(args, t), elapsed)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
