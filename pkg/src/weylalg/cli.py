"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or I/O
errors.  Output is JSON unless a subcommand offers csv or text.
"""

from __future__ import annotations

import argparse
import cmath
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from weylalg import bicyclic, ergodic, finsgp, rings
from weylalg.certify import (DEFAULT_TOL, SIGMA_NOTE, DistalityCertificate, NotInF1Error,
                             SampledFunction, certify, distality_probe, recover_f1,
                             verify_certificate)
from weylalg.phase import PhasePolynomial, parse_coeffs
from weylalg.selftest import run_selftest
from weylalg.torus import EXACT, FLOAT, ModeError, TorusPoint, coerce_phases, format_phase

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    mode: str | None
    tol: float
    fmt: str
    output: Path | None

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("tolerance must be positive")


def _phase_json(t: TorusPoint) -> str:
    return format_phase(t.phase)


def _layout(obj, indent: int = 0) -> str:
    # one line when it fits, otherwise one member per line
    compact = json.dumps(obj, separators=(",", ":"))
    if len(compact) + indent <= 88 or not isinstance(obj, (dict, list)) or not obj:
        return compact
    pad = " " * (indent + 2)
    if isinstance(obj, dict):
        items = [f"{pad}{json.dumps(k)}: {_layout(v, indent + 2)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    items = [pad + _layout(v, indent + 2) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"


def _dumps(obj) -> str:
    return _layout(obj) + "\n"


def _emit(cfg: RunConfig, payload) -> None:
    text = payload if isinstance(payload, str) else _dumps(payload)
    if cfg.output is None:
        sys.stdout.write(text)
        return
    try:
        cfg.output.write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {cfg.output}: {exc}") from exc


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(float(x)) if "e" in x.lower() else int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _poly(cfg: RunConfig, text: str) -> PhasePolynomial:
    return parse_coeffs(text, cfg.mode)


def _phases(cfg: RunConfig, *texts: str) -> list[TorusPoint]:
    return coerce_phases(list(texts), cfg.mode)


# ---------------------------------------------------------------- phase / Z

def cmd_certify(cfg, a):
    cert = certify(_poly(cfg, a.coeffs), a.depth)
    _emit(cfg, cert.to_json())
    return OK


def _samples(cfg, a, head: PhasePolynomial | None) -> SampledFunction:
    if a.samples:
        return SampledFunction.from_json(_read_json(a.samples))
    if head is None:
        raise UsageError("give --samples or --coeffs")
    return SampledFunction.from_polynomial(head, a.window)


def cmd_verify(cfg, a):
    if a.cert:
        cert = DistalityCertificate.from_json(_read_json(a.cert))
    elif a.coeffs:
        cert = certify(_poly(cfg, a.coeffs))
    else:
        raise UsageError("give --cert or --coeffs")
    f = _samples(cfg, a, cert.head)
    for item in a.inject or []:
        n, angle = item.split(":")
        n = int(n)
        f = f.with_value(n, complex(f[n]) * cmath.exp(1j * float(angle)))
    report = verify_certificate(f, cert, _int_list(a.shifts), cfg.tol)
    _emit(cfg, report.to_json())
    return OK if report.passed else FAILED


def cmd_recover(cfg, a):
    head = _poly(cfg, a.coeffs) if a.coeffs else None
    f = _samples(cfg, a, head)
    try:
        lam, lam1 = recover_f1(f, cfg.tol)
    except NotInF1Error as exc:
        _emit(cfg, {"accepted": False, "n": exc.n, "error": exc.error})
        return FAILED
    _emit(cfg, {"accepted": True, "lambda": _phase_json(lam), "lambda1": _phase_json(lam1)})
    return OK


def cmd_probe(cfg, a):
    pairs = []
    for item in a.pairs.split(","):
        x, y = item.split(":")
        pairs.append((int(x), int(y)))
    report = distality_probe(_poly(cfg, a.coeffs), pairs, a.S, a.M, a.weight_base)
    _emit(cfg, report.to_json())
    return OK if report.delta > 0 else FAILED


# ---------------------------------------------------------------- bicyclic

def cmd_bc_mul(cfg, a):
    x = bicyclic.element(a.m1, a.n1) * bicyclic.element(a.m2, a.n2)
    _emit(cfg, {"m": x.m, "n": x.n})
    return OK


def cmd_bc_f1(cfg, a):
    mu, nu = _phases(cfg, a.mu, a.nu)
    v = bicyclic.BicyclicF1(mu, nu)(bicyclic.element(a.m, a.n))
    _emit(cfg, {"m": a.m, "n": a.n, "phase": _phase_json(v)})
    return OK


def cmd_bc_f2(cfg, a):
    lam, mu, nu = _phases(cfg, a.lam, a.mu, a.nu)
    v = bicyclic.BicyclicF2(lam, mu, nu)(bicyclic.element(a.m, a.n))
    _emit(cfg, {"m": a.m, "n": a.n, "phase": _phase_json(v)})
    return OK


def _f2_failure(f: bicyclic.BicyclicF2, elems) -> dict | None:
    f_p, f_q = f.cocycle_partners()
    for x in elems:
        for t, ft, name in ((bicyclic.P, f_p, "R_p f = f_p f"), (bicyclic.Q, f_q, "R_q f = f_q f")):
            lhs, rhs = f(x * t), ft(x) * f(x)
            if lhs != rhs if lhs.exact else abs(lhs.value - rhs.value) > 1e-12:
                return {"law": name, "x": [x.m, x.n]}
    g = bicyclic.BicyclicF1(f.mu, f.nu)
    if not bicyclic.lemma5_check(g):
        return {"law": "f(p)f(q) = f(1)^2"}
    if any(g(x) != g.as_f2()(x) for x in elems):
        return {"law": "F1 embeds in F2"}
    return None


def cmd_bc_verify(cfg, a):
    elems = bicyclic.window(a.window)
    given = [a.lam, a.mu, a.nu]
    if any(given) and not all(given):
        raise UsageError("give all of --lambda --mu --nu or none")
    if all(given):
        triples = [tuple(_phases(cfg, *given))]
    else:
        rng = random.Random(a.seed)
        triples = [tuple(TorusPoint(Fraction(rng.randrange(d), d))
                         for d in (rng.randint(1, 12) for _ in range(3)))
                   for _ in range(a.trials)]
    for t in triples:
        bad = _f2_failure(bicyclic.BicyclicF2(*t), elems)
        if bad is not None:
            bad["lambda"], bad["mu"], bad["nu"] = (_phase_json(x) for x in t)
            _emit(cfg, {"passed": False, "window": a.window, "counterexample": bad})
            return FAILED
    _emit(cfg, {"passed": True, "window": a.window, "elements": len(elems), "instances": len(triples)})
    return OK


def cmd_bc_collapse(cfg, a):
    rel = None if a.relation == "none" else a.relation
    report = bicyclic.idempotent_collapse(rel, a.window)
    _emit(cfg, report.to_json())
    return OK


# ---------------------------------------------------------------- finite semigroups

def _table(path: str) -> finsgp.FiniteSemigroup:
    try:
        return finsgp.FiniteSemigroup.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def cmd_solve_f1(cfg, a):
    _emit(cfg, finsgp.solve_f1(_table(a.table)).to_json())
    return OK


def cmd_idempotents(cfg, a):
    report = finsgp.idempotent_fixed_check(_table(a.table))
    _emit(cfg, report.to_json())
    return OK if report.passed else FAILED


def cmd_fk(cfg, a):
    fam = finsgp.solve_fk(_table(a.table), a.k, a.depth_limit)
    _emit(cfg, fam.to_json())
    return OK if fam.nesting_verified else FAILED


def cmd_chars(cfg, a):
    G = _table(a.table)
    chars = finsgp.characters(G)
    _emit(cfg, {"characters": [[str(x) for x in c] for c in chars],
                "span_dimension": finsgp.character_span_dimension(G), "order": G.size})
    return OK


# ---------------------------------------------------------------- rings

def cmd_ring_certify(cfg, a):
    chi, q = rings.parse_ring_args(a.moduli, a.char, a.poly)
    shift = None if a.shift is None else tuple(_int_list(a.shift))
    cert = rings.certify_ring(chi, q, shift if shift is None or len(shift) > 1 else shift[0])
    _emit(cfg, cert.to_json())
    return OK if cert.passed else FAILED


# ---------------------------------------------------------------- ergodic

def cmd_avg(cfg, a):
    p = _poly(cfg, a.coeffs)
    series = ergodic.birkhoff_average(p, a.n, _int_list(a.checkpoints) if a.checkpoints else (),
                                      a.workers)
    _emit(cfg, series.to_csv() if cfg.fmt == "csv" else series.to_json())
    return OK


def cmd_equidist(cfg, a):
    p = _poly(cfg, a.coeffs)
    cps = _int_list(a.checkpoints) if a.checkpoints else ()
    _emit(cfg, ergodic.equidistribution_report(p, a.n, a.bins, cps).to_json())
    return OK


def cmd_selftest(cfg, a):
    ok, text = run_selftest(cfg.mode or EXACT, a.seed)
    _emit(cfg, text)
    return OK if ok else FAILED


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[EXACT, FLOAT], help="phase arithmetic mode (default: inferred)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="float-mode tolerance")
    common.add_argument("-o", "--output", type=Path, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="weylalg", description="Certify and test F_k membership on semigroups.",
        epilog=f"Note: {SIGMA_NOTE}. Default worker count comes from ${ergodic.THREADS_ENV}.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(parent, name, fn, help_):
        p = parent.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add(sub, "certify", cmd_certify, "certificate chain for a phase polynomial")
    p.add_argument("--coeffs", required=True, help='theta_0..theta_k, e.g. "0,1/4"')
    p.add_argument("--depth", type=int, help="claimed level (default: degree)")

    p = add(sub, "verify", cmd_verify, "check a certificate against samples")
    p.add_argument("--cert", help="certificate JSON file")
    p.add_argument("--coeffs", help="certify these coefficients instead of reading --cert")
    p.add_argument("--samples", help="sampled-function JSON (default: sampled from the chain head)")
    p.add_argument("--window", type=int, default=32, help="half-width M when sampling")
    p.add_argument("--shifts", default="1,-1", help="comma-separated translations")
    p.add_argument("--inject", action="append", metavar="N:ANGLE",
                   help="multiply sample n by exp(i*angle) before verifying")

    p = add(sub, "recover-f1", cmd_recover, "recover (lambda, lambda1) from samples")
    p.add_argument("--samples")
    p.add_argument("--coeffs")
    p.add_argument("--window", type=int, default=16)

    p = add(sub, "probe-distal", cmd_probe, "finite-truncation separation of translate pairs")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--pairs", required=True, help='e.g. "0:1,0:4"')
    p.add_argument("--S", type=int, default=64, help="shift range")
    p.add_argument("--M", type=int, default=16, help="truncation")
    p.add_argument("--weight-base", type=float, default=2.0)

    bc = sub.add_parser("bicyclic", help="bicyclic monoid arithmetic and families")
    bsub = bc.add_subparsers(dest="action", required=True)
    p = add(bsub, "mul", cmd_bc_mul, "product of q^m1 p^n1 and q^m2 p^n2")
    for name in ("m1", "n1", "m2", "n2"):
        p.add_argument(name, type=int)
    p = add(bsub, "eval-f1", cmd_bc_f1, "mu^r nu^(1-r)")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p = add(bsub, "eval-f2", cmd_bc_f2, "lambda^((r^2-r)/2) mu^((r^2+r)/2) nu^(1-r^2)")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p = add(bsub, "verify-f2", cmd_bc_verify, "replay the F2 cocycle identities on a window")
    p.add_argument("--window", type=int, default=20)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--mu")
    p.add_argument("--nu")
    p.add_argument("--trials", type=int, default=100, help="random exact instances when no phases given")
    p.add_argument("--seed", type=int, default=0)
    p = add(bsub, "collapse", cmd_bc_collapse, "solve F1 with p^2 = p or q^2 = q imposed")
    p.add_argument("--relation", choices=["p", "q", "none"], default="p")
    p.add_argument("--window", type=int, default=6)

    fs = sub.add_parser("finsgp", help="finite semigroups from multiplication tables")
    fsub = fs.add_subparsers(dest="action", required=True)
    for name, fn, help_ in (("solve-f1", cmd_solve_f1, "F1 family of a table"),
                            ("check-idempotents", cmd_idempotents, "R_e f = f for idempotents e"),
                            ("chars", cmd_chars, "characters of a finite abelian group")):
        add(fsub, name, fn, help_).add_argument("table")
    p = add(fsub, "fk", cmd_fk, "level-k family")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--depth-limit", type=int, default=finsgp.DEFAULT_DEPTH_LIMIT)
    p.add_argument("table")

    rg = sub.add_parser("ring", help="characters composed with ring polynomials")
    rsub = rg.add_subparsers(dest="action", required=True)
    p = add(rsub, "certify", cmd_ring_certify, "differencing chain with exhaustive replay")
    p.add_argument("--moduli", required=True, help='"12" or "4,3"')
    p.add_argument("--char", required=True, help="character weights")
    p.add_argument("--poly", required=True, help='c_0..c_k, e.g. "0,1,0,2"')
    p.add_argument("--shift", help="differencing step (default: the ring identity)")

    p = add(sub, "avg", cmd_avg, "Birkhoff averages of exp(2 pi i p(n))")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--n", type=lambda s: _int_list(s)[0], required=True)
    p.add_argument("--checkpoints", help="e.g. 1e3,1e4,1e5")
    p.add_argument("--out", dest="fmt", choices=["json", "csv"], default="json")
    p.add_argument("--workers", type=int, help=f"threads (default: ${ergodic.THREADS_ENV} or 1)")

    p = add(sub, "equidist", cmd_equidist, "histogram and star discrepancy of frac(p(n))")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--n", type=lambda s: _int_list(s)[0], required=True)
    p.add_argument("--bins", type=int, default=100)
    p.add_argument("--checkpoints")

    p = add(sub, "selftest", cmd_selftest, "bundled invariant suite")
    p.add_argument("--seed", type=int, default=20100101)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        cfg = RunConfig(args.command, args.mode, args.tol, getattr(args, "fmt", "json"), args.output)
        return args.fn(cfg, args)
    except finsgp.NonAssociativeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (UsageError, ModeError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
