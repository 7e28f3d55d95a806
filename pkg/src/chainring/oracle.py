"""Ground truth by brute force on small rings.

Ideal enumeration seeds with the principal ideal of every ring element and
closes the set under pairwise sums; on desk-scale rings this is exact and
fast, and it property-checks itself (closure under x and u, pairwise
distinct spans).  The census runs every structural identity the library
relies on over every enumerated ideal, and the parameter sweeps compare the
closed-form tables in :mod:`chainring.classify` against membership searches
that know nothing about those tables.
"""

from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .algebra import FieldPoly
from .classify import CLOSED_FORMS
from .code import Code
from .errors import (
    AmbiguousBranch,
    BadIndex,
    CapExceeded,
    InternalInvariantError,
    NotSpecialCase,
)
from .quotient import QuotElem, RingCtx

DEFAULT_CAP = 1 << 16


def ring_summary(ctx: RingCtx) -> dict:
    from .algebra import poly_str_modp

    out = {
        "p": ctx.field.p,
        "m": ctx.field.m,
        "modulus": poly_str_modp(ctx.field.modulus).replace("x", "a"),
        "t": ctx.t,
        "omega": repr(ctx.omega),
        "size_log_p": ctx.size_log_p(),
    }
    if ctx.is_special:
        out["f"] = repr(ctx.f)
        out["d"] = ctx.d
        out["s"] = ctx.s
    return out


def _principal_codes(ctx: RingCtx, cap: int) -> dict[bytes, Code]:
    size = ctx.element_count()
    if size > cap:
        raise CapExceeded(
            f"ring has {size} elements, enumeration cap is {cap}", required=size
        )
    q, n, t, N = ctx.field.q, ctx.n, ctx.t, ctx.N
    Xt = np.ascontiguousarray(ctx.x_matrix.T)
    found: dict[bytes, Code] = {}
    chunk = max(1, (1 << 21) // (n * n))
    weights = q ** np.arange(n, dtype=np.int64)
    for start in range(0, size, chunk):
        idx = np.arange(start, min(start + chunk, size), dtype=np.int64)
        V = ((idx[:, None] // weights[None, :]) % q).astype(linalg.DTYPE)
        c = len(idx)
        stack = np.zeros((c, n, n), dtype=linalg.DTYPE)
        W = V
        for k in range(N):
            Wr = W.reshape(c, t, N)
            for l in range(t):
                shifted = np.zeros((c, t, N), dtype=linalg.DTYPE)
                shifted[:, l:, :] = Wr[:, : t - l, :]
                stack[:, l * N + k, :] = shifted.reshape(c, n)
            if k + 1 < N:
                W = linalg.matmul(W, Xt, ctx.tb)
        for j in range(c):
            basis, _ = linalg.rref(stack[j], ctx.tb)
            key = linalg.span_key(basis)
            if key not in found:
                found[key] = Code.from_span_rows(ctx, basis)
    return found


def enumerate_ideals(ctx: RingCtx, cap: int = DEFAULT_CAP) -> list[Code]:
    """All ideals: principal spans of every element, closed under sums.

    Deterministic output order: by rank, then lexicographic canonical basis.
    """
    codes = _principal_codes(ctx, cap)
    worklist = deque(codes.values())
    while worklist:
        cur = worklist.popleft()
        if cur.rank == 0:
            continue
        for other in list(codes.values()):
            if other.rank == 0:
                continue
            s = cur + other
            key = s.key()
            if key not in codes:
                codes[key] = s
                worklist.append(s)
    return sorted(codes.values(), key=lambda c: (c.rank, c.basis.tobytes()))


def smallest_witness(code: Code, pattern: tuple[int, int]) -> Optional[QuotElem]:
    """Concrete certificate for u^(t-1-j) f^L + (higher u-terms) membership.

    ``pattern`` is (j, L); returns an element of the code realizing the
    membership, or None when the code has no such element.
    """
    j, L = pattern
    ctx = code.ctx
    ctx._require_special()
    if not 0 <= j <= ctx.t - 1:
        raise BadIndex("shift outside [0, t-1]")
    return code.level_witness(ctx.t - 1 - j, L)


# ---------------------------------------------------------------------------
# census


@dataclass
class CensusReport:
    ring: dict
    cap: int
    ideal_count: int
    checks_run: tuple[str, ...]
    violations: list[dict]
    signature_counts: Optional[dict[str, int]] = None
    distinct_signatures: Optional[int] = None
    types_with_trivial_merged: Optional[int] = None
    elapsed_ms: Optional[int] = None

    @property
    def passed(self) -> bool:
        return not self.violations


def _signature_key(sig: frozenset) -> str:
    return ",".join(str(l) for l in sorted(sig))


def census(ctx: RingCtx, cap: int = DEFAULT_CAP, with_timing: bool = False) -> CensusReport:
    """Enumerate all ideals and check every structural identity on each."""
    t0 = time.monotonic()
    ideals = enumerate_ideals(ctx, cap)
    special = ctx.is_special
    checks = [
        "ideal-closure",
        "cardinality-torsion-product",
        "torsion-chain",
    ]
    if ctx.t >= 2:
        checks.append("decompose-reconstruction")
    if special:
        checks += [
            "profile-monotone",
            "torsion-principal",
            "witness-minimality",
            "canonical-roundtrip",
            "canonical-shape",
        ]
    violations: list[dict] = []
    sig_counts: dict[str, int] = {}
    nontrivial_sigs: set[str] = set()

    def flag(i, name, detail=""):
        violations.append({"ideal": i, "check": name, "detail": detail})

    u_elem = ctx.monomial(1, 0) if ctx.t >= 2 else None
    for i, C in enumerate(ideals):
        if not C.is_closed_under_ring():
            flag(i, "ideal-closure")
        torsions = [C.torsion(k) for k in range(ctx.t)]
        if C.rank != sum(tor.rank for tor in torsions):
            flag(i, "cardinality-torsion-product")
        for k in range(ctx.t - 1):
            if not torsions[k] <= torsions[k + 1]:
                flag(i, "torsion-chain", f"Tor_{k} not inside Tor_{k+1}")
        if ctx.t >= 2:
            lifts, rem = C.decompose(u_elem)
            if Code.from_gens(ctx, lifts) + rem != C:
                flag(i, "decompose-reconstruction")
        if special:
            profile = C.torsion_profile()
            ok = all(0 <= Ti <= ctx.ps for Ti in profile) and all(
                profile[k] >= profile[k + 1] for k in range(ctx.t - 1)
            )
            if not ok:
                flag(i, "profile-monotone", str(profile))
            res_ring = ctx.residue_ring
            for k, tor in enumerate(torsions):
                want = Code.from_gens(
                    res_ring, [res_ring.from_field_poly(ctx.f_power(profile[k]))]
                )
                if tor != want:
                    flag(i, "torsion-principal", f"Tor_{k} != <f^{profile[k]}>")
            for k in range(ctx.t):
                if profile[k] > 0 and C.level_witness(k, profile[k] - 1) is not None:
                    flag(i, "witness-minimality", f"level {k}")
            if not (C.is_zero() or C.is_unit_ideal()):
                try:
                    gens = C.canonical_generators()
                except InternalInvariantError as exc:
                    flag(i, "canonical-roundtrip", str(exc))
                    gens = None
                if gens is not None:
                    if len(gens) > ctx.t:
                        flag(i, "canonical-roundtrip", "more than t generators")
                    levels = [g.u_valuation() for g in gens]
                    exps = [profile[l] for l in levels]
                    shape_ok = levels == sorted(set(levels)) and all(
                        e1 > e2 for e1, e2 in zip(exps, exps[1:])
                    )
                    for g, lvl in zip(gens, levels):
                        coords = ctx.to_f_coords(g.vec)
                        lead = np.zeros_like(coords[lvl])
                        if profile[lvl] < ctx.ps:
                            lead[profile[lvl], 0] = 1
                        if not np.array_equal(coords[lvl], lead):
                            shape_ok = False
                    if not shape_ok:
                        flag(i, "canonical-shape", f"levels {levels} exps {exps}")
            sig = C.type_signature()
            key = _signature_key(sig)
            sig_counts[key] = sig_counts.get(key, 0) + 1
            if not (C.is_zero() or C.is_unit_ideal()):
                nontrivial_sigs.add(key)
    elapsed = int((time.monotonic() - t0) * 1000)
    report = CensusReport(
        ring=ring_summary(ctx),
        cap=cap,
        ideal_count=len(ideals),
        checks_run=tuple(checks),
        violations=violations,
        elapsed_ms=elapsed if with_timing else None,
    )
    if special:
        report.signature_counts = dict(sorted(sig_counts.items()))
        report.distinct_signatures = len(sig_counts)
        # merged-trivial convention: <0> and <1> count as one type
        report.types_with_trivial_merged = len(nontrivial_sigs) + 1
    return report


# ---------------------------------------------------------------------------
# closed-form sweeps


@dataclass
class SweepEntry:
    case: dict
    oracle: int
    certificate_ok: bool
    closed_form: Optional[int]
    branch: Optional[str]
    candidates: Optional[tuple] = None

    @property
    def match(self) -> Optional[bool]:
        if self.closed_form is None:
            return None
        return self.closed_form == self.oracle


@dataclass
class SweepReport:
    prop_id: str
    ring: dict
    grid: dict
    entries: list[SweepEntry]
    elapsed_ms: Optional[int] = None

    @property
    def total(self) -> int:
        return len(self.entries)

    @property
    def matched(self) -> int:
        return sum(1 for e in self.entries if e.match)

    @property
    def mismatched(self) -> int:
        return sum(1 for e in self.entries if e.match is False)

    @property
    def ambiguous(self) -> int:
        return sum(1 for e in self.entries if e.closed_form is None)

    @property
    def all_match(self) -> bool:
        return self.mismatched == 0 and self.ambiguous == 0


def unit_pool(ctx: RingCtx, support: int) -> list[FieldPoly]:
    """Units of the residue ring with f-adic support below ``support``."""
    ctx._require_special()
    q = ctx.field.q
    support = min(support, ctx.ps)
    out = []
    for c0 in range(1, q):
        for rest in itertools.product(range(q), repeat=max(0, support - 1)):
            poly = ctx.field.poly([c0])
            for j, cj in enumerate(rest, start=1):
                if cj:
                    poly = poly + ctx.f_power(j).scale(cj)
            out.append(poly % ctx.omega0)
    return out


def _h_options(ctx: RingCtx, support: int) -> list[Optional[FieldPoly]]:
    return [None] + unit_pool(ctx, support)


def _gen_from_terms(ctx: RingCtx, terms) -> QuotElem:
    acc = ctx.zero()
    for level, exp, h in terms:
        if h is None:
            if exp is not None:
                acc = acc + ctx.shifted_f_power(level, exp)
        elif not h.is_zero():
            acc = acc + ctx.from_field_poly((ctx.f_power(exp) * h) % ctx.omega0, level)
    return acc


def _describe_h(h: Optional[FieldPoly]) -> str:
    return "0" if h is None or h.is_zero() else repr(h)


def _oracle_L(ctx: RingCtx, gens: list[QuotElem], j: int = 0) -> tuple[int, bool]:
    code = Code.from_gens(ctx, gens)
    L = code.min_top_exponent(j)
    shifted = code if j == 0 else code.mul_elem(ctx.monomial(j, 0))
    cert = shifted.contains(ctx.shifted_f_power(ctx.t - 1, L))
    if L > 0:
        cert = cert and not shifted.contains(ctx.shifted_f_power(ctx.t - 1, L - 1))
    return L, cert


def _cases_41(ctx: RingCtx, support: int):
    ps = ctx.ps
    for a in range(ps):
        yield {"a": a, "tau": None, "h": None}
    for h in unit_pool(ctx, support):
        for a in range(ps):
            for tau in range(a):
                yield {"a": a, "tau": tau, "h": h}


def _cases_42(ctx: RingCtx, support: int):
    ps = ctx.ps
    units = unit_pool(ctx, support)
    for a in range(ps):
        yield {"a": a, "t1": None, "h1": None, "t2": None, "h2": None}
    for h1 in units:
        for a in range(ps):
            for t1 in range(a):
                yield {"a": a, "t1": t1, "h1": h1, "t2": None, "h2": None}
    for h2 in units:
        for a in range(ps):
            for t2 in range(a):
                yield {"a": a, "t1": None, "h1": None, "t2": t2, "h2": h2}
    for h1 in units:
        for h2 in units:
            for a in range(ps):
                for t1 in range(a):
                    for t2 in range(t1):
                        yield {"a": a, "t1": t1, "h1": h1, "t2": t2, "h2": h2}


def _cases_43(ctx: RingCtx, support: int):
    # admissible domain from the two-generator type shape: t1 < a1 < a2 and
    # t3 < t2 < a1 for whichever tails are present
    ps = ctx.ps
    units = unit_pool(ctx, support)
    opts = [None] + units
    for a1 in range(ps):
        for a2 in range(a1 + 1, ps):
            for h1 in opts:
                t1_range = [None] if h1 is None else list(range(a1))
                for t1 in t1_range:
                    for h2 in opts:
                        for h3 in opts:
                            if h2 is None and h3 is None:
                                tpairs = [(None, None)]
                            elif h3 is None:
                                tpairs = [(t2, None) for t2 in range(a1)]
                            elif h2 is None:
                                tpairs = [(None, t3) for t3 in range(a1)]
                            else:
                                tpairs = [
                                    (t2, t3)
                                    for t2 in range(a1)
                                    for t3 in range(t2)
                                ]
                            for t2, t3 in tpairs:
                                yield {
                                    "a1": a1,
                                    "t1": t1,
                                    "h1": h1,
                                    "a2": a2,
                                    "t2": t2,
                                    "h2": h2,
                                    "t3": t3,
                                    "h3": h3,
                                }


def _cases_44(ctx: RingCtx, support: int):
    ps = ctx.ps
    units = unit_pool(ctx, support)
    opts = [None] + units
    for b in range(ps):
        for h1 in opts:
            for h2 in opts:
                for h3 in opts:
                    present = [name for name, h in (("t1", h1), ("t2", h2), ("t3", h3)) if h is not None]
                    k = len(present)
                    if k == 0:
                        chains = [()]
                    else:
                        chains = list(itertools.combinations(range(b - 1, -1, -1), k))
                    for chain in chains:
                        case = {
                            "b": b,
                            "t1": None,
                            "h1": h1,
                            "t2": None,
                            "h2": h2,
                            "t3": None,
                            "h3": h3,
                        }
                        for name, value in zip(present, chain):
                            case[name] = value
                        yield case


def _gens_for_case(prop_id: str, ctx: RingCtx, case: dict) -> list[QuotElem]:
    if prop_id == "4.1":
        return [_gen_from_terms(ctx, [(2, case["a"], None), (3, case["tau"], case["h"])])]
    if prop_id == "4.2":
        return [
            _gen_from_terms(
                ctx,
                [(1, case["a"], None), (2, case["t1"], case["h1"]), (3, case["t2"], case["h2"])],
            )
        ]
    if prop_id == "4.3":
        return [
            _gen_from_terms(ctx, [(2, case["a1"], None), (3, case["t1"], case["h1"])]),
            _gen_from_terms(
                ctx,
                [(1, case["a2"], None), (2, case["t2"], case["h2"]), (3, case["t3"], case["h3"])],
            ),
        ]
    if prop_id == "4.4":
        return [
            _gen_from_terms(
                ctx,
                [
                    (0, case["b"], None),
                    (1, case["t1"], case["h1"]),
                    (2, case["t2"], case["h2"]),
                    (3, case["t3"], case["h3"]),
                ],
            )
        ]
    raise BadIndex(f"unknown sweep table {prop_id}")


def _closed_form_for_case(prop_id: str, ctx: RingCtx, case: dict):
    fn = CLOSED_FORMS[prop_id]
    if prop_id == "4.1":
        return fn(ctx, case["a"], case["tau"], case["h"])
    if prop_id == "4.2":
        return fn(ctx, case["a"], case["t1"], case["h1"], case["t2"], case["h2"])
    if prop_id == "4.3":
        return fn(
            ctx,
            case["a1"], case["t1"], case["h1"],
            case["a2"], case["t2"], case["h2"],
            case["t3"], case["h3"],
        )
    return fn(
        ctx,
        case["b"],
        case["t1"], case["h1"],
        case["t2"], case["h2"],
        case["t3"], case["h3"],
    )


_CASE_GENS = {"4.1": _cases_41, "4.2": _cases_42, "4.3": _cases_43, "4.4": _cases_44}


def param_sweep(
    prop_id: str,
    ctx: RingCtx,
    support: int = 2,
    with_timing: bool = False,
) -> SweepReport:
    """Compare a closed-form table against the membership oracle on a grid.

    The grid covers every admissible exponent tuple with tail units drawn
    from the pool of units with f-adic support below ``support``; only
    membership tests are used on the oracle side, never full enumeration.
    """
    if prop_id not in _CASE_GENS:
        raise BadIndex(f"unknown sweep table {prop_id}")
    ctx._require_special()
    if ctx.t != 4:
        raise NotSpecialCase("parameter sweeps are stated in the rank-4 ring")
    t0 = time.monotonic()
    entries: list[SweepEntry] = []
    for case in _CASE_GENS[prop_id](ctx, support):
        gens = _gens_for_case(prop_id, ctx, case)
        oracle_value, cert = _oracle_L(ctx, gens, 0)
        closed = branch = candidates = None
        try:
            closed, branch = _closed_form_for_case(prop_id, ctx, case)
        except AmbiguousBranch as exc:
            candidates = exc.candidates
        public_case = {
            k: (_describe_h(v) if k.startswith("h") else v) for k, v in case.items()
        }
        entries.append(
            SweepEntry(
                case=public_case,
                oracle=oracle_value,
                certificate_ok=cert,
                closed_form=closed,
                branch=branch,
                candidates=candidates,
            )
        )
    elapsed = int((time.monotonic() - t0) * 1000)
    return SweepReport(
        prop_id=prop_id,
        ring=ring_summary(ctx),
        grid={"support": support, "ps": ctx.ps},
        entries=entries,
        elapsed_ms=elapsed if with_timing else None,
    )
