"""Command-line front end.

Exit codes: 0 success, 1 failed self-test, 2 usage or parse error. Machine
output goes to stdout (or --out); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import acceptance
from .exactmat import IntMatrix, charpoly
from .gen import bruner_counterexample, companion, jordan_example, random_instance
from .io import (
    ParseError, dumps, encode_value, matrix_to_json, parse_matrix_text, report_to_json,
    smith_to_json,
)
from .ntkit import (
    PolyProbe, newton_polygon, period_candidates, poly_probe_seq, prime_factors, require_prime,
)
from .powertrace import (
    NilpotentError, analyze, decompose_valuation, gcd_ratio_seq, is_nilpotent, powers,
)
from .seqlab import detect_period
from .smith import relevant_primes, smith_form


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    matrix_path: str | None = None
    family: str | None = None
    params: dict = field(default_factory=dict)
    horizon: int = 40
    primes: list[int] | None = None  # None means auto
    confirm: int = 3
    fmt: str = "json"
    out: str | None = None
    seed: int = 0

    def validate(self) -> None:
        if self.horizon < 2:
            raise UsageError("horizon too small (need >= 2)")
        if self.confirm < 2:
            raise UsageError("--confirm must be >= 2")
        if self.primes is not None:
            if not self.primes:
                raise UsageError("empty prime list")
            for p in self.primes:
                try:
                    require_prime(p)
                except ValueError as exc:
                    raise UsageError(str(exc)) from None


def _parse_params(items: list[str]) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"bad --param {item!r}, expected K=V")
        out[key] = value
    return out


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"expected a list of integers, got {text!r}") from None


def _build_family(cfg: RunConfig):
    """Matrix plus instance metadata for a named family."""
    p = cfg.params
    try:
        if cfg.family == "jordan":
            inst = jordan_example(int(p.get("p", 2)), int(p.get("pad", 0)))
            return inst.matrix, inst.family, inst.params
        if cfg.family == "bruner":
            inst = bruner_counterexample(int(p.get("m", 4)))
            return inst.matrix, inst.family, inst.params
        if cfg.family == "random":
            params = {"m": int(p.get("m", 3)), "bound": int(p.get("bound", 9)), "seed": cfg.seed}
            return random_instance(params["m"], params["bound"], cfg.seed), "random", params
        if cfg.family == "identity":
            m = int(p.get("m", 3))
            return IntMatrix.identity(m), "identity", {"m": m}
        if cfg.family == "companion":
            coeffs = _int_list(p.get("coeffs", ""))
            return companion(coeffs), "companion", {"coeffs": [str(c) for c in coeffs]}
    except ValueError as exc:
        raise UsageError(f"family {cfg.family}: {exc}") from None
    raise UsageError(f"unknown family {cfg.family!r}")


def load_matrix(cfg: RunConfig) -> IntMatrix:
    if cfg.matrix_path:
        try:
            with open(cfg.matrix_path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.matrix_path}: {exc}") from None
        try:
            return parse_matrix_text(text)
        except ParseError as exc:
            raise UsageError(f"{cfg.matrix_path}: {exc}") from None
    if cfg.family:
        return _build_family(cfg)[0]
    raise UsageError("need --matrix FILE or --family NAME")


def _square(a: IntMatrix) -> IntMatrix:
    if not a.is_square:
        raise UsageError(f"expected a square matrix, got {a.rows}x{a.cols}")
    return a


def resolve_primes(cfg: RunConfig, a: IntMatrix) -> list[int]:
    if cfg.primes is not None:
        return list(cfg.primes)
    primes = relevant_primes(a)
    if smith_form(a).rank < a.rows:
        print("note: singular matrix; later powers may involve primes outside the auto set",
              file=sys.stderr)
    if not primes:
        print("note: no prime divides the top determinantal divisor", file=sys.stderr)
    return primes


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# -- subcommands -------------------------------------------------------------

def cmd_snf(cfg: RunConfig, witnesses: bool = False):
    a = _square(load_matrix(cfg))
    return smith_to_json(smith_form(a, with_witnesses=witnesses))


def cmd_trace(cfg: RunConfig):
    a = _square(load_matrix(cfg))
    primes = resolve_primes(cfg, a)
    nilpotent = is_nilpotent(a)
    if nilpotent:
        print("note: nilpotent matrix, per-prime valuation sections omitted", file=sys.stderr)
    t, period, decomps = analyze(a, cfg.horizon, primes, cfg.confirm)
    if cfg.fmt == "csv":
        buf = _stdio.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "S", "D"] + [f"nu_{d.p}" for d in decomps])
        for n, s in enumerate(t.smith_seq):
            d = ";".join(map(str, t.d_seq[n])) if n < len(t.d_seq) else ""
            w.writerow([n, ";".join(map(str, s.diag)), d]
                       + [str(dec.valuations[n]) for dec in decomps])
        return buf.getvalue()
    return {
        "matrix": matrix_to_json(a),
        "horizon": cfg.horizon,
        "smith": [[str(x) for x in s.diag] for s in t.smith_seq],
        "D": [[str(x) for x in d] for d in t.d_seq],
        "period": report_to_json(period),
        "per_prime": [{"p": d.p, "a": _frac(d.a), "h_period": report_to_json(d.h_report),
                       "dh_period": report_to_json(d.dh_report)} for d in decomps],
    }


def cmd_gcd_seq(cfg: RunConfig):
    a = _square(load_matrix(cfg))
    try:
        g = gcd_ratio_seq(a, cfg.horizon)
    except NilpotentError as exc:
        raise UsageError(str(exc)) from None
    return {"g": encode_value(list(g.samples)),
            "period": report_to_json(detect_period(g, cfg.confirm))}


def cmd_valuation(cfg: RunConfig):
    a = _square(load_matrix(cfg))
    if is_nilpotent(a):
        raise UsageError("matrix is nilpotent (A^m = 0); valuations are eventually infinite")
    pw = powers(a, cfg.horizon)
    decomps = [decompose_valuation(a, p, cfg.horizon, cfg.confirm, _powers=pw)
               for p in resolve_primes(cfg, a)]
    return {"per_prime": [{
        "p": d.p, "a": _frac(d.a),
        "nu": encode_value(list(d.valuations.samples)),
        "h": encode_value(list(d.h_samples.samples)),
        "h_period": report_to_json(d.h_report),
        "dh_period": report_to_json(d.dh_report),
    } for d in decomps]}


def cmd_newton(cfg: RunConfig, poly: str | None):
    if poly:
        coeffs = _int_list(poly)
    else:
        coeffs = charpoly(_square(load_matrix(cfg)))
    if not any(coeffs):
        raise UsageError("zero polynomial")
    primes = cfg.primes if cfg.primes is not None else sorted(
        set().union(*[set(prime_factors(c)) for c in coeffs if c]))
    out = []
    for p in primes:
        npg = newton_polygon(coeffs, p)
        out.append({"p": p, "points": [[i, v] for i, v in npg.points],
                    "slopes": [{"valuation": _frac(s), "multiplicity": k} for s, k in npg.slopes],
                    "zero_roots": npg.zero_roots})
    return {"coeffs": [str(c) for c in coeffs], "polygons": out}


def cmd_probe(cfg: RunConfig, q: str, c: str, horizon: int | None):
    try:
        coeffs = tuple(Fraction(x) for x in q.replace(",", " ").split())
        cval = Fraction(c)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational in --q {q!r} or --c {c!r}") from None
    if not coeffs or not any(coeffs):
        raise UsageError("probe polynomial must be nonzero")
    primes = cfg.primes or [2]
    out = []
    for p in primes:
        probe = PolyProbe(coeffs, cval, p)
        h = horizon or 4 * p**probe.depth
        seq, rep = poly_probe_seq(probe, h, cfg.confirm)
        out.append({"p": p, "theta": str(probe.theta), "D": probe.depth, "horizon": h,
                    "f": encode_value(list(seq.samples)), "period": report_to_json(rep)})
    return {"q": [str(x) for x in coeffs], "c": str(cval), "probes": out}


def cmd_candidates(p: int, max_f: int, max_L: int):
    try:
        return {"p": p, "candidates": period_candidates(p, max_f, max_L)}
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_generate(cfg: RunConfig):
    if not cfg.family:
        raise UsageError("generate needs --family NAME")
    a, family, params = _build_family(cfg)
    return {"family": family, "params": params, "matrix": matrix_to_json(a)}


def cmd_selftest(suites: list[str] | None) -> tuple[str, int]:
    names = suites or list(acceptance.SUITES)
    unknown = [s for s in names if s not in acceptance.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {unknown}; choose from {list(acceptance.SUITES)}")
    lines, failed = [], 0
    for name in names:
        res = acceptance.run_suite(name)
        failed += not res.passed
        lines.append(res.line(timing=False))
        print(res.line(), file=sys.stderr, flush=True)
    lines.append(f"{len(names) - failed}/{len(names)} suites passed")
    return "\n".join(lines) + "\n", 1 if failed else 0


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--matrix", metavar="FILE", help="matrix file (text or JSON)")
    src.add_argument("--family", help="jordan | bruner | random | identity | companion")
    common.add_argument("--param", action="append", default=[], metavar="K=V",
                        help="family parameter, repeatable")
    common.add_argument("--horizon", type=int, default=40)
    common.add_argument("--primes", default="auto", help="comma list or 'auto'")
    common.add_argument("--confirm", type=int, default=3)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="snfpowers", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    snf = sub.add_parser("snf", parents=[common], help="Smith form of a matrix")
    snf.add_argument("--witnesses", action="store_true", help="include U, V with U S V = M")
    sub.add_parser("trace", parents=[common], help="Smith forms of powers, D_n and periods")
    sub.add_parser("gcd-seq", parents=[common], help="gcd(A^(n+1)) / gcd(A^n)")
    sub.add_parser("valuation", parents=[common], help="v_p(A^n) = a n + h(n)")
    newton = sub.add_parser("newton", parents=[common], help="Newton polygon")
    newton.add_argument("--poly", help="integer coefficients c_0..c_m (default: charpoly)")
    probe = sub.add_parser("probe", parents=[common], help="min(0, v_p(q(n)) - c)")
    probe.add_argument("--q", required=True, help="rational coefficients, constant first")
    probe.add_argument("--c", default="0")
    probe.add_argument("--probe-horizon", type=int, help="default 4 p^D")
    cand = sub.add_parser("candidates", parents=[common], help="(p^f - 1) p^L values")
    cand.add_argument("--p", type=int, required=True)
    cand.add_argument("--max-f", type=int, default=1)
    cand.add_argument("--max-L", type=int, default=0)
    sub.add_parser("generate", parents=[common], help="instance JSON for a family")
    st = sub.add_parser("selftest", help="run the acceptance suites")
    st.add_argument("--suite", action="append", help="suite name, repeatable")
    st.add_argument("--out", metavar="PATH")
    return parser


def _config(args) -> RunConfig:
    primes = None
    if getattr(args, "primes", "auto") != "auto":
        primes = _int_list(args.primes)
    cfg = RunConfig(
        command=args.command,
        matrix_path=getattr(args, "matrix", None),
        family=getattr(args, "family", None),
        params=_parse_params(getattr(args, "param", [])),
        horizon=getattr(args, "horizon", 40),
        primes=primes,
        confirm=getattr(args, "confirm", 3),
        fmt=getattr(args, "format", "json"),
        out=getattr(args, "out", None),
        seed=getattr(args, "seed", 0),
    )
    cfg.validate()
    return cfg


def _dispatch(args, cfg: RunConfig):
    c = args.command
    if c == "snf":
        return cmd_snf(cfg, args.witnesses), 0
    if c == "trace":
        return cmd_trace(cfg), 0
    if c == "gcd-seq":
        return cmd_gcd_seq(cfg), 0
    if c == "valuation":
        return cmd_valuation(cfg), 0
    if c == "newton":
        return cmd_newton(cfg, args.poly), 0
    if c == "probe":
        return cmd_probe(cfg, args.q, args.c, args.probe_horizon), 0
    if c == "candidates":
        return cmd_candidates(args.p, args.max_f, args.max_L), 0
    if c == "generate":
        return cmd_generate(cfg), 0
    if c == "selftest":
        return cmd_selftest(args.suite)
    raise UsageError(f"unknown command {c}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        cfg = _config(args)
        result, code = _dispatch(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = result if isinstance(result, str) else dumps(result)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "selftest":
        print(f"total {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
