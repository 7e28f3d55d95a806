"""Command-line front end.

Subcommands: ``analyze`` (torsion profile, cardinality, canonical
generators of a code given by generators), ``census`` (exhaustive ideal
enumeration with the full structural check suite), ``sweep`` (closed-form
tables against the membership oracle), ``sigma`` (transfer of codes into a
twisted-shift ambient).

Exit codes: 0 success / all-match, 2 input error, 3 enumeration cap
exceeded, 4 sweep mismatch recorded (report still written), 5 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import oracle, reports
from .algebra import FieldCtx, is_irreducible
from .code import Code
from .constacyclic import SigmaMap
from .errors import (
    CapExceeded,
    ChainringError,
    InternalInvariantError,
    PolyParseError,
)
from .parsing import parse_element, parse_field_poly, parse_field_scalar
from .quotient import RingCtx

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4
EXIT_INVARIANT = 5


def _default_cap() -> int:
    env = os.environ.get("CHAINRING_CAP")
    return int(env) if env else oracle.DEFAULT_CAP


def _add_ring_args(sub, need_t=True):
    sub.add_argument("--p", type=int, required=True, help="characteristic (prime)")
    sub.add_argument("--m", type=int, default=1, help="extension degree of the residue field")
    if need_t:
        sub.add_argument("--t", type=int, required=True, help="nilpotency index of u")
    sub.add_argument("--s", type=int, default=None, help="exponent s in omega = f^(p^s)")
    sub.add_argument("--f", default=None, help="irreducible polynomial literal, e.g. 'x-1'")
    sub.add_argument("--omega", default=None, help="explicit monic omega literal (overrides --s/--f)")


def _build_ring(args, t=None) -> RingCtx:
    field = FieldCtx(args.p, args.m)
    t = t if t is not None else args.t
    if args.omega is not None:
        from .parsing import parse_rt_poly

        return RingCtx(field, t, parse_rt_poly(args.omega, field, t))
    if args.f is None or args.s is None:
        raise PolyParseError("need either --omega or both --f and --s", 0)
    f = parse_field_poly(args.f, field)
    if f.degree is None or f.degree < 1 or not is_irreducible(f):
        raise PolyParseError("--f must be irreducible of degree >= 1", 0)
    return RingCtx(field, t, f ** (args.p**args.s))


def _emit(env: dict, args, csv_text: str | None = None) -> None:
    text = reports.to_json(env)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if getattr(args, "csv", None):
        with open(args.csv, "w") as fh:
            fh.write(csv_text or "")


def _cmd_analyze(args) -> int:
    ctx = _build_ring(args)
    gens_text = [g for g in args.gens.split(";") if g.strip()]
    gens = [parse_element(g, ctx) for g in gens_text]
    code = Code.from_gens(ctx, gens)
    log_card = code.log_cardinality()
    entry: dict = {
        "generators": [g.canonical_str() for g in gens],
        "rank": code.rank,
        "log_p_cardinality": log_card,
        # exact decimal alongside the exponent, guarded against huge blobs
        "cardinality": str(args.p**log_card) if log_card <= 512 else None,
    }
    if ctx.is_special:
        entry["torsion_profile"] = list(code.torsion_profile())
        if code.is_zero():
            entry["canonical_generators"] = ["0"]
        elif code.is_unit_ideal():
            entry["canonical_generators"] = ["1"]
        else:
            entry["canonical_generators"] = [
                g.canonical_str() for g in code.canonical_generators()
            ]
        entry["type_signature"] = sorted(code.type_signature())
    payload = {"kind": "analysis", "codes": [entry]}
    env = reports.envelope("analyze", oracle.ring_summary(ctx), payload, args.stamp)
    _emit(env, args, reports.analysis_csv(payload))
    return EXIT_OK


def _cmd_census(args) -> int:
    ctx = _build_ring(args)
    cap = args.cap if args.cap is not None else _default_cap()
    report = oracle.census(ctx, cap, with_timing=args.stamp)
    env = reports.envelope("census", report.ring, reports.census_payload(report), args.stamp)
    _emit(env, args, reports.census_csv(report))
    return EXIT_OK if report.passed else EXIT_INVARIANT


def _cmd_sweep(args) -> int:
    ctx = _build_ring(args, t=4)
    report = oracle.param_sweep(args.prop, ctx, support=args.support, with_timing=args.stamp)
    env = reports.envelope("sweep", report.ring, reports.sweep_payload(report), args.stamp)
    _emit(env, args, reports.sweep_csv(report))
    return EXIT_OK if report.all_match else EXIT_MISMATCH


def _cmd_sigma(args) -> int:
    field = FieldCtx(args.p, args.m)
    lam = parse_field_scalar(args.lam, field)
    sigma = SigmaMap(field, args.t, args.s, lam)
    gens_text = [g for g in args.gens.split(";") if g.strip()]
    gens = [parse_element(g, sigma.source) for g in gens_text]
    code = Code.from_gens(sigma.source, gens)
    image = sigma.transfer(code)
    payload = {
        "kind": "sigma",
        "lambda": repr(lam),
        "lambda0": repr(sigma.lam0),
        "twist_identity_ok": bool((sigma.lam0 ** (args.p**args.s)) * lam == field.one),
        "source_omega": repr(sigma.source.omega),
        "target_omega": repr(sigma.target.omega),
        "generators": [g.canonical_str() for g in gens],
        "transferred_generators": [sigma.apply(g).canonical_str() for g in gens],
        "log_p_cardinality": code.log_cardinality(),
        "target_log_p_cardinality": image.log_cardinality(),
        "cardinality_preserved": image.log_cardinality() == code.log_cardinality(),
    }
    env = reports.envelope("sigma", oracle.ring_summary(sigma.source), payload, args.stamp)
    _emit(env, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainring",
        description="Exact construction and classification of polycyclic codes over chain rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="torsion profile, cardinality and canonical generators")
    _add_ring_args(pa)
    pa.add_argument("--gens", required=True, help="semicolon-separated generator literals")
    pa.add_argument("--json", default=None, help="write the JSON report to this path")
    pa.add_argument("--csv", default=None, help="write a flattened CSV to this path")
    pa.add_argument("--stamp", action="store_true", help="attach wall-clock metadata")
    pa.set_defaults(func=_cmd_analyze)

    pc = sub.add_parser("census", help="enumerate all ideals and verify the structure suite")
    _add_ring_args(pc)
    pc.add_argument("--cap", type=int, default=None, help="enumeration cap (elements)")
    pc.add_argument("--json", default=None)
    pc.add_argument("--csv", default=None)
    pc.add_argument("--stamp", action="store_true")
    pc.set_defaults(func=_cmd_census)

    pw = sub.add_parser("sweep", help="closed-form parameter tables against the oracle")
    pw.add_argument("--prop", required=True, choices=["4.1", "4.2", "4.3", "4.4"])
    pw.add_argument("--p", type=int, required=True)
    pw.add_argument("--m", type=int, default=1)
    pw.add_argument("--s", type=int, required=True)
    pw.add_argument("--f", default="x-1", help="irreducible polynomial literal")
    pw.add_argument("--omega", default=None, help=argparse.SUPPRESS)
    pw.add_argument("--support", type=int, default=2, help="f-adic support bound for unit tails")
    pw.add_argument("--json", default=None)
    pw.add_argument("--csv", default=None)
    pw.add_argument("--stamp", action="store_true")
    pw.set_defaults(func=_cmd_sweep)

    ps = sub.add_parser("sigma", help="transfer codes into the twisted-shift ambient")
    ps.add_argument("--p", type=int, required=True)
    ps.add_argument("--m", type=int, default=1)
    ps.add_argument("--t", type=int, required=True)
    ps.add_argument("--s", type=int, required=True)
    ps.add_argument("--lambda", dest="lam", required=True, help="nonzero field constant literal")
    ps.add_argument("--gens", required=True)
    ps.add_argument("--json", default=None)
    ps.add_argument("--stamp", action="store_true")
    ps.set_defaults(func=_cmd_sigma)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ChainringError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
