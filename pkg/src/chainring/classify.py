"""Closed-form parameter evaluators and the sixteen ideal types at t=4.

Everything here is the "fast path" whose answers the brute-force membership
oracle (:mod:`chainring.oracle`) cross-checks: closed forms for the smallest
exponent L with u^3 f^L in an ideal given by generators of a fixed u-level
shape, the torsional-degree and cardinality tables for the sixteen ideal
types of the rank-4 coefficient ring, and constructors/validators for those
types.

Some branch guards in the level-0 table overlap at boundary equalities and
others leave gaps; when zero or several rows match, the evaluator raises
:class:`AmbiguousBranch` with the candidate set instead of silently picking
one, and sweep reports record it.
"""

from __future__ import annotations

import itertools

from dataclasses import dataclass, field
from typing import Callable, Optional

from .algebra import FieldPoly, poly_inv_mod
from .code import Code
from .errors import AmbiguousBranch, ConstraintViolation, NotSpecialCase
from .quotient import QuotElem, RingCtx


# ---------------------------------------------------------------------------
# unit-or-zero values in the residue chain ring


def check_unit_or_zero(ctx: RingCtx, h: Optional[FieldPoly]) -> FieldPoly:
    """Normalize h to a residue-ring value that is zero or a unit."""
    ctx._require_special()
    if h is None:
        return ctx.field.poly([])
    h = h % ctx.omega0
    if not h.is_zero() and ctx.val_f(h) != 0:
        raise ConstraintViolation("tail coefficient is neither zero nor a unit")
    return h


class _Residue:
    """Arithmetic scratchpad in R^{1, f^(p^s)} for the closed-form tables."""

    def __init__(self, ctx: RingCtx):
        ctx._require_special()
        self.ctx = ctx
        self.ps = ctx.ps
        self.omega0 = ctx.omega0
        self.f = ctx.f

    def fpow(self, e: int) -> FieldPoly:
        if e < 0:
            raise ConstraintViolation(f"negative exponent f^{e} in a table row")
        return self.ctx.f_power(e)

    def val(self, poly: FieldPoly) -> int:
        return self.ctx.val_f(poly % self.omega0)

    def inv(self, h: FieldPoly) -> FieldPoly:
        return poly_inv_mod(h, self.omega0)

    def unit_part(self, poly: FieldPoly, v: int) -> FieldPoly:
        """The unit w with poly = f^v * w; poly must be nonzero of valuation v."""
        lift = poly % self.omega0
        q, r = lift.divmod(self.f**v)
        if not r.is_zero():
            raise ConstraintViolation("valuation/unit-part mismatch")
        return q % self.omega0

    def mul(self, *polys: FieldPoly) -> FieldPoly:
        out = self.ctx.field.poly([1])
        for p in polys:
            out = (out * p) % self.omega0
        return out


# ---------------------------------------------------------------------------
# closed forms for the smallest L with u^3 f^L in the generated ideal


def min_exponent_u2_single(ctx: RingCtx, a: int, tau: Optional[int], h) -> tuple[int, str]:
    """Ideal <u^2 f^a + u^3 f^tau h> in the rank-4 ring."""
    rr = _Residue(ctx)
    h = check_unit_or_zero(ctx, h)
    if h.is_zero():
        if not 0 <= a <= rr.ps - 1:
            raise ConstraintViolation("need 0 <= a <= p^s - 1")
        return a, "zero-tail"
    if tau is None or not 0 <= tau < a <= rr.ps - 1:
        raise ConstraintViolation("need 0 <= tau < a <= p^s - 1")
    return min(a, rr.ps - a + tau), "unit-tail"


def min_exponent_u1_single(
    ctx: RingCtx,
    a: int,
    t1: Optional[int],
    h1,
    t2: Optional[int],
    h2,
) -> tuple[int, str]:
    """Ideal <u f^a + u^2 f^t1 h1 + u^3 f^t2 h2> in the rank-4 ring."""
    rr = _Residue(ctx)
    ps = rr.ps
    h1 = check_unit_or_zero(ctx, h1)
    h2 = check_unit_or_zero(ctx, h2)
    if not 0 <= a <= ps - 1:
        raise ConstraintViolation("need 0 <= a <= p^s - 1")
    for name, tv, hv in (("t1", t1, h1), ("t2", t2, h2)):
        if not hv.is_zero() and (tv is None or not 0 <= tv < a):
            raise ConstraintViolation(f"need 0 <= {name} < a when its tail is a unit")
    if not h1.is_zero() and not h2.is_zero() and not t2 < t1:
        raise ConstraintViolation("need t2 < t1 when both tails are units")
    if h1.is_zero() and h2.is_zero():
        return a, "both-zero"
    if h1.is_zero():
        return min(a, ps - a + t2), "h2-only"
    if h2.is_zero():
        if a <= ps - a + t1:
            return min(a, ps - 2 * (a - t1)), "h1-only-low"
        return t1, "h1-only-high"
    if a <= ps - a + t1:
        beta1 = rr.val(
            rr.mul(rr.fpow(ps - a + t2), h2) - rr.mul(rr.fpow(ps - 2 * a + 2 * t1), h1, h1)
        )
        return min(a, ps - a + t1, beta1), "both-low"
    beta2 = rr.val(
        rr.mul(rr.fpow(t1), h1) - rr.mul(rr.fpow(a + t2 - t1), h2, rr.inv(h1))
    )
    return min(a, ps + t2 - t1, beta2), "both-high"


@dataclass
class BranchRow:
    row_id: str
    cond: Callable[[], bool]
    value: Callable[[], int]


def _match_rows(rows: list[BranchRow], table_name: str) -> tuple[int, str]:
    matches = []
    failures = []
    for row in rows:
        try:
            if not row.cond():
                continue
            matches.append((row.row_id, row.value()))
        except ConstraintViolation as exc:
            failures.append((row.row_id, str(exc)))
    if len(matches) == 1:
        return matches[0][1], matches[0][0]
    detail = matches if matches else failures
    raise AmbiguousBranch(
        f"{table_name}: {len(matches)} rows matched", candidates=tuple(detail)
    )


def min_exponent_u2_u1_pair(
    ctx: RingCtx,
    a1: int,
    t1: Optional[int],
    h1,
    a2: int,
    t2: Optional[int],
    h2,
    t3: Optional[int],
    h3,
) -> tuple[int, str]:
    """Ideal <u^2 f^a1 + u^3 f^t1 h1, u f^a2 + u^2 f^t2 h2 + u^3 f^t3 h3>."""
    rr = _Residue(ctx)
    ps = rr.ps
    h1 = check_unit_or_zero(ctx, h1)
    h2 = check_unit_or_zero(ctx, h2)
    h3 = check_unit_or_zero(ctx, h3)
    z1, z2, z3 = h1.is_zero(), h2.is_zero(), h3.is_zero()
    if not (0 <= a1 <= ps - 1 and 0 <= a2 <= ps - 1):
        raise ConstraintViolation("need exponents within [0, p^s - 1]")

    def val(expr: FieldPoly) -> int:
        return rr.val(expr)

    rows = [
        BranchRow("1", lambda: z1 and z2 and z3, lambda: min(a1, a2)),
        BranchRow("2", lambda: not z1 and z2 and z3, lambda: min(a1, a2 - a1 + t1)),
        BranchRow("3", lambda: z1 and not z2 and z3, lambda: t2),
        BranchRow("4", lambda: z1 and z2 and not z3, lambda: min(a1, ps - a2 + t3)),
        BranchRow(
            "5",
            lambda: z1 and not z2 and not z3 and a1 <= ps - a2 + t2,
            lambda: min(t2, ps - a2 + t3),
        ),
        BranchRow(
            "6",
            lambda: z1 and not z2 and not z3 and a1 >= ps - a2 + t2,
            lambda: min(
                a1,
                a1 + t3 - t2,
                val(rr.mul(rr.fpow(t2), h2) - rr.mul(rr.fpow(a2 + t3 - t2), h3, rr.inv(h2))),
            ),
        ),
        BranchRow(
            "7",
            lambda: not z1 and not z2 and z3 and a1 <= ps - a2 + t2,
            lambda: min(
                a1,
                ps - a1 - a2 + t1 + t2,
                val(rr.mul(rr.fpow(t2), h2) - rr.mul(rr.fpow(a2 - a1 + t1), h1)),
            ),
        ),
        BranchRow(
            "8",
            lambda: not z1 and not z2 and z3 and a1 >= ps - a2 + t2,
            lambda: min(t1, t2),
        ),
        BranchRow(
            "9",
            lambda: not z1 and z2 and not z3,
            lambda: min(a1, a2 - a1 + t1, ps - a2 + t3),
        ),
        BranchRow(
            "10",
            lambda: not z1 and not z2 and not z3 and a1 <= ps - a2 + t2,
            lambda: min(
                a1,
                ps - a1 + t1,
                val(rr.mul(rr.fpow(t2), h2) - rr.mul(rr.fpow(a2 - a1 + t1), h1)),
                val(
                    rr.mul(rr.fpow(ps - a2 + t3), h3)
                    - rr.mul(rr.fpow(ps - a1 - a2 + t1 + t2), h1, h2)
                ),
            ),
        ),
        BranchRow(
            "11",
            lambda: not z1 and not z2 and not z3 and a1 >= ps - a2 + t2,
            lambda: min(
                a1,
                ps + t3 - t2,
                val(rr.mul(rr.fpow(t1), h1) + rr.mul(rr.fpow(a1 + t3 - t2), h3, rr.inv(h2))),
                val(rr.mul(rr.fpow(t2), h2) + rr.mul(rr.fpow(a2 + t3 - t2), h3, rr.inv(h2))),
            ),
        ),
    ]
    return _match_rows(rows, "u2-u1 pair table")


def min_exponent_u0_single(
    ctx: RingCtx,
    b: int,
    t1: Optional[int],
    h1,
    t2: Optional[int],
    h2,
    t3: Optional[int],
    h3,
) -> tuple[int, str]:
    """Ideal <f^b + u f^t1 h1 + u^2 f^t2 h2 + u^3 f^t3 h3> in the rank-4 ring.

    The guards of rows 2/3, 13/14 and 16/17 overlap at boundary equalities
    and the three-unit family leaves one uncovered corner; both situations
    surface as AmbiguousBranch with the evaluated candidates attached.
    """
    rr = _Residue(ctx)
    ps = rr.ps
    h1 = check_unit_or_zero(ctx, h1)
    h2 = check_unit_or_zero(ctx, h2)
    h3 = check_unit_or_zero(ctx, h3)
    z1, z2, z3 = h1.is_zero(), h2.is_zero(), h3.is_zero()
    if not 0 <= b <= ps - 1:
        raise ConstraintViolation("need 0 <= b <= p^s - 1")

    def val(expr):
        return rr.val(expr)

    def conda():
        return b <= ps - (b - t1)

    def conda2():
        return b <= ps - 2 * (b - t1)

    # shared valuated expressions and their unit parts
    def expr_beta1():
        return rr.mul(rr.fpow(ps - b + t2), h2) - rr.mul(
            rr.fpow(ps - 2 * b + 2 * t1), h1, h1
        )

    def beta1():
        return val(expr_beta1())

    def h4():
        return rr.unit_part(expr_beta1(), beta1())

    def expr_alpha1():
        return rr.mul(rr.fpow(t1), h1) - rr.mul(rr.fpow(b + t2 - t1), h2, rr.inv(h1))

    def alpha1():
        return val(expr_alpha1())

    def h5():
        return rr.unit_part(expr_alpha1(), alpha1())

    beta9, h6, alpha2, h7 = beta1, h4, alpha1, h5

    def eq1():
        return expr_beta1().is_zero()

    def eq2():
        return expr_alpha1().is_zero()

    rows = [
        BranchRow("1", lambda: z1 and z2 and z3, lambda: b),
        BranchRow(
            "2",
            lambda: not z1 and z2 and z3 and conda() and conda2(),
            lambda: min(b, ps - 3 * (b - t1)),
        ),
        BranchRow(
            "3",
            lambda: not z1 and z2 and z3 and conda() and b >= ps - 2 * (b - t1),
            lambda: t1,
        ),
        BranchRow("4", lambda: z1 and not z2 and z3, lambda: min(b, ps - b + t2)),
        BranchRow("5", lambda: z1 and z2 and not z3, lambda: min(b, ps - b + t3)),
        BranchRow(
            "6",
            lambda: not z1 and not z2 and z3 and conda() and eq1(),
            lambda: min(b, ps - 2 * b + t1 + t2, beta1()),
        ),
        BranchRow(
            "7",
            lambda: not z1 and not z2 and z3 and conda() and not eq1() and beta1() <= b,
            lambda: min(
                b,
                2 * ps - 2 * b + t1 + t2 - beta1(),
                val(
                    rr.mul(rr.fpow(t1), h1)
                    + rr.mul(rr.fpow(ps - b + t1 + t2 - beta1()), h2, rr.inv(h4()))
                ),
                val(
                    rr.mul(rr.fpow(ps - b + t2), h2)
                    + rr.mul(
                        rr.fpow(2 * ps - 3 * b + 2 * t1 + t2 - beta1()),
                        h1,
                        h2,
                        rr.inv(h4()),
                    )
                ),
            ),
        ),
        BranchRow(
            "8",
            lambda: not z1 and not z2 and z3 and conda() and not eq1() and beta1() >= b,
            lambda: min(
                b,
                val(
                    rr.mul(rr.fpow(beta1() - b + t1), h1, h4())
                    + rr.mul(rr.fpow(ps - 2 * b + t1 + t2), h2)
                ),
            ),
        ),
        BranchRow(
            "9",
            lambda: not z1 and not z2 and z3 and not conda() and eq2(),
            lambda: t2,
        ),
        BranchRow(
            "10",
            lambda: not z1
            and not z2
            and z3
            and not conda()
            and not eq2()
            and b <= alpha1()
            and b <= ps + t2 - t1,
            lambda: min(
                val(rr.mul(rr.fpow(t2), h2) - rr.mul(rr.fpow(t1 + alpha1() - b), h1, h5())),
                ps + t2 - b,
            ),
        ),
        BranchRow(
            "11",
            lambda: not z1
            and not z2
            and z3
            and not conda()
            and not eq2()
            and alpha1() <= b
            and alpha1() <= ps + t2 - t1,
            lambda: min(
                b,
                val(
                    rr.mul(rr.fpow(t1), h1)
                    - rr.mul(rr.fpow(b - alpha1() + t2), h2, rr.inv(h5()))
                ),
                ps + 2 * t2 - t1 - alpha1(),
            ),
        ),
        BranchRow(
            "12",
            lambda: not z1
            and not z2
            and z3
            and not conda()
            and not eq2()
            and ps + t2 - t1 <= b
            and ps + t2 - t1 <= alpha1(),
            lambda: t2,
        ),
        BranchRow(
            "13",
            lambda: not z1 and z2 and not z3 and conda() and conda2(),
            lambda: min(
                ps - 2 * (b - t1),
                val(
                    rr.mul(rr.fpow(ps - 3 * b + 3 * t1), h1, h1, h1)
                    + rr.mul(rr.fpow(ps - b + t3), h3)
                ),
            ),
        ),
        BranchRow(
            "14",
            lambda: not z1 and z2 and not z3 and conda() and b >= ps - 2 * (b - t1),
            lambda: min(
                b,
                ps - b - 2 * t1 + t3,
                val(
                    rr.mul(rr.fpow(t1), h1)
                    + rr.mul(rr.fpow(2 * b - 2 * t1 + t3), h3, rr.inv(h1))
                ),
            ),
        ),
        BranchRow(
            "15",
            lambda: not z1 and z2 and not z3 and not conda(),
            lambda: min(
                b,
                ps + t3 - t1,
                val(
                    rr.mul(rr.fpow(t1), h1)
                    + rr.mul(rr.fpow(2 * b - 2 * t1 + t3), h3, rr.inv(h1))
                ),
            ),
        ),
        BranchRow(
            "16",
            lambda: z1 and not z2 and not z3 and b <= ps - (b - t2),
            lambda: min(b, ps - b + t3),
        ),
        BranchRow(
            "17",
            lambda: z1 and not z2 and not z3 and b >= ps - (b - t2),
            lambda: min(b, ps - b + t2, b + t3 - t2),
        ),
        BranchRow(
            "18",
            lambda: not z1 and not z2 and not z3 and conda() and eq1(),
            lambda: min(
                b,
                beta9(),
                val(
                    rr.mul(rr.fpow(ps - b + t3), h3)
                    - rr.mul(rr.fpow(ps - 2 * b + t1 + t2), h1, h2)
                ),
            ),
        ),
        BranchRow(
            "19",
            lambda: not z1
            and not z2
            and not z3
            and conda()
            and not eq1()
            and b <= beta9(),
            lambda: min(
                ps - b + t1,
                beta9(),
                val(
                    rr.mul(rr.fpow(ps - b + t3), h3)
                    - rr.mul(rr.fpow(ps - 2 * b + t1 + t2), h1, h2)
                    - rr.mul(rr.fpow(beta9() + t1 - b), h1, h6())
                ),
            ),
        ),
        BranchRow(
            "20",
            lambda: not z1
            and not z2
            and not z3
            and conda()
            and not eq1()
            and b >= beta9(),
            lambda: min(
                b,
                ps - 2 * b + t1 + t2,
                2 * ps - b + t3 - beta9(),
                val(
                    rr.mul(rr.fpow(t1), h1)
                    - rr.mul(rr.fpow(ps + t3 - beta9()), h3, rr.inv(h6()))
                ),
                val(
                    rr.mul(rr.fpow(ps - b + t2), h2)
                    - rr.mul(
                        rr.fpow(2 * ps - 2 * b + t1 + t3 - beta9()),
                        h1,
                        h3,
                        rr.inv(h6()),
                    )
                ),
            ),
        ),
        BranchRow(
            "21",
            lambda: not z1
            and not z2
            and not z3
            and not conda()
            and eq2()
            and b <= ps + t2 - t1,
            lambda: min(
                ps - b + t1,
                val(
                    rr.mul(rr.fpow(ps + t3 - t1), h3, h1)
                    - rr.mul(rr.fpow(ps + t2 - b), h2)
                ),
                val(
                    rr.mul(rr.fpow(t2), h2)
                    - rr.mul(rr.fpow(b + t3 - t1), h3, rr.inv(h1))
                ),
            ),
        ),
        BranchRow(
            "22",
            lambda: not z1
            and not z2
            and not z3
            and not conda()
            and eq2()
            and b >= ps + t2 - t1,
            lambda: min(
                ps + t3 - t2,
                val(
                    rr.mul(rr.fpow(t2), h2)
                    - rr.mul(rr.fpow(b + t3 - t1), h3, rr.inv(h1))
                ),
                val(
                    rr.mul(rr.fpow(t1), h1)
                    - rr.mul(rr.fpow(b + t3 - t2), h3, rr.inv(h2))
                ),
            ),
        ),
        BranchRow(
            "23",
            lambda: not z1
            and not z2
            and not z3
            and not conda()
            and not eq2()
            and b <= ps + t2 - t1
            and b <= alpha2(),
            lambda: min(
                ps - b + t1,
                val(
                    rr.mul(rr.fpow(t2), h2)
                    - rr.mul(rr.fpow(b + t3 - t1), h3, rr.inv(h1))
                    - rr.mul(rr.fpow(alpha2() - b + t1), h1, h7())
                ),
                val(
                    rr.mul(rr.fpow(ps + t3 - t1), h3, rr.inv(h1))
                    - rr.mul(rr.fpow(ps + t2 - b), h2)
                ),
            ),
        ),
        BranchRow(
            "24",
            lambda: not z1
            and not z2
            and not z3
            and not conda()
            and not eq2()
            and alpha2() <= ps + t2 - t1
            and alpha2() <= b
            and not (
                rr.mul(rr.fpow(t2), h2)
                - rr.mul(rr.fpow(b + t3 - t1), h3, rr.inv(h1))
            ).is_zero(),
            lambda: min(
                b,
                val(
                    rr.mul(rr.fpow(t1), h1)
                    - rr.mul(rr.fpow(b + t2 - alpha2()), rr.inv(h7()), h2)
                    + rr.mul(
                        rr.fpow(2 * b + t3 - t1 - alpha2()),
                        rr.inv(h7()),
                        h3,
                        rr.inv(h1),
                    )
                ),
                val(
                    rr.mul(rr.fpow(ps + t2 - alpha2()), rr.inv(h7()), h2)
                    - rr.mul(
                        rr.fpow(ps - b + t3 - t1 - alpha2()),
                        rr.inv(h7()),
                        h3,
                        rr.inv(h1),
                    )
                ),
                val(
                    rr.mul(
                        rr.fpow(ps + b + t3 + t2 - 2 * t1), h2, h2, rr.inv(rr.mul(h1, h1)), rr.inv(h7())
                    )
                    - rr.mul(rr.fpow(ps + 2 * t2 - t1), h2, h2, rr.inv(h1), rr.inv(h7()))
                    + rr.mul(rr.fpow(ps + t3 - t1), h3, rr.inv(h1))
                ),
            ),
        ),
        BranchRow(
            "25",
            lambda: not z1
            and not z2
            and not z3
            and not conda()
            and not eq2()
            and ps + t2 - t1 <= alpha2()
            and ps + t2 - t1 <= b,
            lambda: min(
                b + t3 - t2,
                val(
                    rr.mul(rr.fpow(t1), h1)
                    - rr.mul(rr.fpow(b + t3 - t2), h3, rr.inv(h2))
                ),
                val(
                    rr.mul(rr.fpow(t2), h2)
                    - rr.mul(rr.fpow(b + t3 - t1), h3, rr.inv(h1))
                    + rr.mul(rr.fpow(alpha2() + t3 - t2), h3, rr.inv(h2), h7())
                ),
            ),
        ),
    ]
    return _match_rows(rows, "u0 single-generator table")


CLOSED_FORMS = {
    "4.1": min_exponent_u2_single,
    "4.2": min_exponent_u1_single,
    "4.3": min_exponent_u2_u1_pair,
    "4.4": min_exponent_u0_single,
}


# ---------------------------------------------------------------------------
# the sixteen ideal types of the rank-4 ring (t = 4)


@dataclass(frozen=True)
class TypeSpec:
    """One of the sixteen ideal types with concrete parameters.

    ``params`` maps exponent names to ints; ``units`` maps tail names (h,
    h1, ...) to residue-ring values that are zero or units.  Type 1 uses
    ``params={"unit": 0}`` for <0> and ``{"unit": 1}`` for <1>.
    """

    type_id: int
    params: dict
    units: dict = field(default_factory=dict)


# generator term: (u-level, exponent name, tail name or None for the leading 1)
_GenTerm = tuple[int, str, Optional[str]]


@dataclass(frozen=True)
class TypeDef:
    type_id: int
    gens: tuple[tuple[_GenTerm, ...], ...]
    # chain entries: (lhs, op, rhs); names resolve through params/derived,
    # "ps1" means p^s - 1; comparisons touching the exponent of a zero tail
    # are skipped.
    chains: tuple[tuple[str, str, str], ...]
    # derived exponent -> (generator indices of the stated sub-ideal, u-shift)
    derived: dict
    torsion: tuple[str, str, str, str]
    card: tuple[int, tuple[str, ...]]
    signature: frozenset


TYPE_DEFS: dict[int, TypeDef] = {
    2: TypeDef(
        2,
        gens=((( 3, "a", None),),),
        chains=(("0", "<=", "a"), ("a", "<=", "ps1")),
        derived={},
        torsion=("ps", "ps", "ps", "a"),
        card=(1, ("a",)),
        signature=frozenset({3}),
    ),
    3: TypeDef(
        3,
        gens=(
            ((3, "a1", None),),
            ((2, "a2", None), (3, "t", "h")),
        ),
        chains=(
            ("0", "<=", "t"),
            ("t", "<", "a1"),
            ("a1", "<", "L"),
            ("L", "<", "a2"),
            ("a2", "<=", "ps1"),
        ),
        derived={"L": ((1,), 0)},
        torsion=("ps", "ps", "a2", "a1"),
        card=(2, ("a1", "a2")),
        signature=frozenset({2, 3}),
    ),
    4: TypeDef(
        4,
        gens=(
            ((3, "a1", None),),
            ((1, "a2", None), (2, "t1", "h1"), (3, "t2", "h2")),
        ),
        chains=(
            ("0", "<=", "t2"),
            ("t2", "<", "a1"),
            ("a1", "<", "L"),
            ("L", "<", "a2"),
            ("a2", "<=", "ps1"),
            ("t2", "<", "t1"),
            ("t1", "<", "M"),
            ("M", "<", "a2"),
        ),
        derived={"L": ((1,), 0), "M": ((1,), 1)},
        torsion=("ps", "a2", "M", "a1"),
        card=(3, ("a1", "a2", "M")),
        signature=frozenset({1, 3}),
    ),
    5: TypeDef(
        5,
        gens=(
            ((3, "a1", None),),
            ((2, "a2", None), (3, "t1", "h1")),
            ((1, "a3", None), (2, "t2", "h2"), (3, "t3", "h3")),
        ),
        chains=(
            ("0", "<=", "t1"),
            ("t1", "<", "a1"),
            ("0", "<=", "t3"),
            ("t3", "<", "a1"),
            ("a1", "<", "L"),
            ("L", "<", "a2"),
            ("a2", "<", "M"),
            ("M", "<", "a3"),
            ("a3", "<=", "ps1"),
            ("t3", "<", "t2"),
            ("t2", "<", "a2"),
        ),
        derived={"L": ((1, 2), 0), "M": ((2,), 1)},
        torsion=("ps", "a3", "a2", "a1"),
        card=(3, ("a1", "a2", "a3")),
        signature=frozenset({1, 2, 3}),
    ),
    6: TypeDef(
        6,
        gens=((( 2, "a", None), (3, "t", "h")),),
        chains=(
            ("0", "<=", "t"),
            ("t", "<", "L"),
            ("L", "<", "a"),
            ("a", "<=", "ps1"),
        ),
        derived={"L": ((0,), 0)},
        torsion=("ps", "ps", "a", "L"),
        card=(2, ("a", "L")),
        signature=frozenset({2}),
    ),
    7: TypeDef(
        7,
        gens=(
            ((2, "a1", None), (3, "t1", "h1")),
            ((1, "a2", None), (2, "t2", "h2"), (3, "t3", "h3")),
        ),
        chains=(
            ("0", "<=", "t1"),
            ("t1", "<", "a1"),
            ("a1", "<", "L"),
            ("L", "<", "a2"),
            ("a2", "<=", "ps1"),
            ("0", "<=", "t3"),
            ("t3", "<", "t2"),
            ("t2", "<", "a1"),
            ("t1", "<", "M"),
            ("t3", "<", "M"),
            ("M", "<", "L"),
        ),
        derived={"L": ((1,), 1), "M": ((0, 1), 0)},
        torsion=("ps", "a2", "a1", "M"),
        card=(3, ("a1", "a2", "M")),
        signature=frozenset({1, 2}),
    ),
    8: TypeDef(
        8,
        gens=((( 1, "a", None), (2, "t1", "h1"), (3, "t2", "h2")),),
        chains=(
            ("0", "<=", "t2"),
            ("t2", "<", "t1"),
            ("t1", "<", "L"),
            ("L", "<", "a"),
            ("a", "<=", "ps1"),
            ("t2", "<", "M"),
            ("M", "<", "L"),
        ),
        derived={"L": ((0,), 1), "M": ((0,), 0)},
        torsion=("ps", "a", "L", "M"),
        card=(3, ("a", "L", "M")),
        signature=frozenset({1}),
    ),
    9: TypeDef(
        9,
        gens=((( 0, "b", None), (1, "t1", "h1"), (2, "t2", "h2"), (3, "t3", "h3")),),
        chains=(
            ("0", "<=", "t3"),
            ("t3", "<", "t2"),
            ("t2", "<", "t1"),
            ("t1", "<", "L"),
            ("L", "<", "b"),
            ("b", "<=", "ps1"),
            ("t2", "<", "M"),
            ("M", "<", "L"),
            ("t3", "<", "N"),
            ("N", "<", "M"),
        ),
        derived={"L": ((0,), 2), "M": ((0,), 1), "N": ((0,), 0)},
        torsion=("b", "L", "M", "N"),
        card=(4, ("b", "L", "M", "N")),
        signature=frozenset({0}),
    ),
    10: TypeDef(
        10,
        gens=(
            ((0, "b", None), (1, "t1", "h1"), (2, "t2", "h2"), (3, "t3", "h3")),
            ((3, "a", None),),
        ),
        chains=(
            ("0", "<=", "t3"),
            ("t3", "<", "a"),
            ("a", "<", "L"),
            ("L", "<", "b"),
            ("b", "<=", "ps1"),
            ("t3", "<", "t2"),
            ("t2", "<", "t1"),
            ("t1", "<", "M"),
            ("M", "<", "b"),
            ("t2", "<", "N"),
            ("N", "<", "M"),
        ),
        derived={"L": ((0,), 0), "M": ((0,), 2), "N": ((0,), 1)},
        torsion=("b", "M", "N", "a"),
        card=(4, ("b", "M", "N", "a")),
        signature=frozenset({0, 3}),
    ),
    11: TypeDef(
        11,
        gens=(
            ((0, "b", None), (1, "t1", "h1"), (2, "t2", "h2"), (3, "t3", "h3")),
            ((3, "a1", None),),
            ((2, "a2", None), (3, "t4", "h4")),
        ),
        chains=(
            ("0", "<=", "t3"),
            ("t3", "<", "a1"),
            ("0", "<=", "t4"),
            ("t4", "<", "a1"),
            ("a1", "<", "L"),
            ("L", "<", "a2"),
            ("a2", "<", "M"),
            ("M", "<", "b"),
            ("b", "<=", "ps1"),
            ("t3", "<", "t2"),
            ("t2", "<", "t1"),
            ("t1", "<", "N"),
            ("N", "<", "b"),
            ("t2", "<", "a2"),
        ),
        derived={"L": ((0, 2), 0), "M": ((0,), 1), "N": ((0,), 2)},
        torsion=("b", "N", "a2", "a1"),
        card=(4, ("b", "a1", "a2", "N")),
        signature=frozenset({0, 2, 3}),
    ),
    12: TypeDef(
        12,
        gens=(
            ((0, "b", None), (1, "t1", "h1"), (2, "t2", "h2"), (3, "t3", "h3")),
            ((3, "a1", None),),
            ((1, "a2", None), (2, "t4", "h4"), (3, "t5", "h5")),
        ),
        chains=(
            ("0", "<=", "t3"),
            ("t3", "<", "a1"),
            ("0", "<=", "t5"),
            ("t5", "<", "a1"),
            ("a1", "<", "L"),
            ("L", "<", "a2"),
            ("a2", "<", "M"),
            ("M", "<", "b"),
            ("b", "<=", "ps1"),
            ("t3", "<", "t2"),
            ("t2", "<", "t1"),
            ("t1", "<", "a2"),
            ("t5", "<", "t4"),
            ("t4", "<", "a2"),
            ("t2", "<", "N"),
            ("t4", "<", "N"),
            # u^2*(I) sits inside u*(I), so the level-1 minimum N can never
            # drop below the level-0 minimum L
            ("L", "<=", "N"),
        ),
        derived={"L": ((0, 2), 0), "N": ((0, 2), 1), "M": ((0,), 2)},
        torsion=("b", "a2", "N", "a1"),
        card=(4, ("b", "a1", "a2", "N")),
        signature=frozenset({0, 1, 3}),
    ),
    13: TypeDef(
        13,
        gens=(
            ((0, "b", None), (1, "t1", "h1"), (2, "t2", "h2"), (3, "t3", "h3")),
            ((3, "a1", None),),
            ((2, "a2", None), (3, "t4", "h4")),
            ((1, "a3", None), (2, "t5", "h5"), (3, "t6", "h6")),
        ),
        chains=(
            ("0", "<=", "t3"),
            ("t3", "<", "a1"),
            ("0", "<=", "t4"),
            ("t4", "<", "a1"),
            ("0", "<=", "t6"),
            ("t6", "<", "a1"),
            ("a1", "<", "L"),
            ("L", "<", "a2"),
            ("a2", "<", "M"),
            ("M", "<", "a3"),
            ("a3", "<", "N"),
            ("N", "<", "b"),
            ("b", "<=", "ps1"),
            ("t3", "<", "t2"),
            ("t2", "<", "t1"),
            ("t1", "<", "a3"),
            ("t6", "<", "t5"),
            ("t5", "<", "a3"),
            ("t2", "<", "a2"),
            ("t5", "<", "a2"),
        ),
        derived={"L": ((0, 2, 3), 0), "M": ((0, 3), 1), "N": ((0,), 2)},
        torsion=("b", "a3", "a2", "a1"),
        card=(4, ("b", "a1", "a2", "a3")),
        signature=frozenset({0, 1, 2, 3}),
    ),
    14: TypeDef(
        14,
        gens=(
            ((0, "b", None), (1, "t1", "h1"), (2, "t2", "h2"), (3, "t3", "h3")),
            ((2, "a1", None), (3, "t4", "h4")),
            ((1, "a2", None), (2, "t5", "h5"), (3, "t6", "h6")),
        ),
        chains=(
            ("0", "<=", "t3"),
            ("t3", "<", "a1"),
            ("0", "<=", "t4"),
            ("t4", "<", "a1"),
            ("0", "<=", "t6"),
            ("t6", "<", "a1"),
            ("a1", "<", "L"),
            ("L", "<", "a2"),
            ("a2", "<", "M"),
            ("M", "<", "b"),
            ("b", "<=", "ps1"),
            ("t3", "<", "t2"),
            ("t2", "<", "t1"),
            ("t1", "<", "b"),
            ("t6", "<", "t5"),
            # t5 may equal a1 here, unlike every sibling bound
            ("t5", "<=", "a1"),
            ("t1", "<", "a2"),
            ("t2", "<", "a1"),
            ("t3", "<", "N"),
            ("t4", "<", "N"),
            ("t6", "<", "N"),
            ("N", "<", "a1"),
        ),
        derived={"L": ((0, 2), 1), "M": ((0,), 2), "N": ((0, 1, 2), 0)},
        torsion=("b", "a2", "a1", "N"),
        card=(4, ("b", "a1", "a2", "N")),
        signature=frozenset({0, 1, 2}),
    ),
    15: TypeDef(
        15,
        gens=(
            ((0, "b", None), (1, "t1", "h1"), (2, "t2", "h2"), (3, "t3", "h3")),
            ((2, "a", None), (3, "t4", "h4")),
        ),
        chains=(
            ("0", "<=", "a"),
            ("a", "<", "L"),
            ("L", "<", "b"),
            ("b", "<=", "ps1"),
            ("t3", "<", "t2"),
            ("t2", "<", "t1"),
            ("t1", "<", "b"),
            ("t2", "<", "a"),
            ("0", "<=", "t4"),
            ("t4", "<", "a"),
            # u^2*(I) sits inside u*(I), so the deeper-shift minimum M can
            # never drop below L
            ("t1", "<", "L"),
            ("L", "<=", "M"),
            ("t3", "<", "N"),
            ("N", "<", "a"),
        ),
        derived={"L": ((0,), 1), "M": ((0,), 2), "N": ((0, 1), 0)},
        torsion=("b", "M", "a", "N"),
        card=(4, ("b", "a", "M", "N")),
        signature=frozenset({0, 2}),
    ),
    16: TypeDef(
        16,
        gens=(
            ((0, "b", None), (1, "t1", "h1"), (2, "t2", "h2"), (3, "t3", "h3")),
            ((1, "a", None), (2, "t4", "h4"), (3, "t5", "h5")),
        ),
        chains=(
            ("0", "<=", "a"),
            ("a", "<", "L"),
            ("L", "<", "b"),
            ("b", "<=", "ps1"),
            ("t3", "<", "t2"),
            ("t2", "<", "t1"),
            ("t1", "<", "a"),
            ("t5", "<", "t4"),
            ("t4", "<", "a"),
            ("t2", "<", "M"),
            ("t4", "<", "M"),
            ("M", "<", "a"),
            ("t3", "<", "N"),
            ("t5", "<", "N"),
            ("N", "<", "M"),
        ),
        derived={"L": ((0,), 2), "M": ((0, 1), 1), "N": ((0, 1), 0)},
        torsion=("b", "a", "M", "N"),
        card=(4, ("b", "a", "M", "N")),
        signature=frozenset({0, 1}),
    ),
}


def _unit_for(spec: TypeSpec, name: Optional[str], ctx: RingCtx) -> Optional[FieldPoly]:
    if name is None:
        return None
    return check_unit_or_zero(ctx, spec.units.get(name))


def _require_t4(ctx: RingCtx):
    ctx._require_special()
    if ctx.t != 4:
        raise NotSpecialCase("the sixteen-type tables are stated for t = 4")


def type_generators(ctx: RingCtx, spec: TypeSpec) -> list[QuotElem]:
    """The displayed generators of the type with the given parameters."""
    _require_t4(ctx)
    if spec.type_id == 1:
        return [] if not spec.params.get("unit") else [ctx.one()]
    tdef = TYPE_DEFS[spec.type_id]
    gens = []
    for gterms in tdef.gens:
        acc = ctx.zero()
        for level, expname, unitname in gterms:
            if unitname is None:
                acc = acc + ctx.shifted_f_power(level, spec.params[expname])
                continue
            h = _unit_for(spec, unitname, ctx)
            if h is None or h.is_zero():
                continue
            exp = spec.params.get(expname)
            if exp is None:
                raise ConstraintViolation(f"missing exponent {expname} for unit tail")
            tail = (ctx.f_power(exp) * h) % ctx.omega0
            acc = acc + ctx.from_field_poly(tail, level)
        gens.append(acc)
    return gens


def build_type(ctx: RingCtx, spec: TypeSpec) -> Code:
    return Code.from_gens(ctx, type_generators(ctx, spec))


def derived_exponents(ctx: RingCtx, spec: TypeSpec) -> dict:
    """L/M/N recomputed from the stated sub-ideals via the membership oracle;
    user-supplied values are never trusted."""
    _require_t4(ctx)
    if spec.type_id == 1:
        return {}
    tdef = TYPE_DEFS[spec.type_id]
    gens = type_generators(ctx, spec)
    out = {}
    for name, (idxs, shift) in tdef.derived.items():
        sub = Code.from_gens(ctx, [gens[i] for i in idxs])
        out[name] = sub.min_top_exponent(shift)
    return out


def _zero_tail_exponents(spec: TypeSpec, tdef: TypeDef) -> set:
    dead = set()
    for gterms in tdef.gens:
        for _, expname, unitname in gterms:
            if unitname is not None:
                h = spec.units.get(unitname)
                if h is None or h.is_zero():
                    dead.add(expname)
    return dead


def validate_constraints(ctx: RingCtx, spec: TypeSpec, derived: Optional[dict] = None) -> bool:
    """Evaluate the type's printed inequality chain; comparisons that touch
    the exponent of an absent tail are vacuous."""
    _require_t4(ctx)
    if spec.type_id == 1:
        return spec.params.get("unit") in (0, 1)
    tdef = TYPE_DEFS[spec.type_id]
    if derived is None:
        derived = derived_exponents(ctx, spec)
    env = {"ps": ctx.ps, "ps1": ctx.ps - 1}
    env.update(spec.params)
    env.update(derived)
    dead = _zero_tail_exponents(spec, tdef)

    def resolve(token: str):
        if token in dead:
            return None
        if token in env:
            return env[token]
        try:
            return int(token)
        except ValueError:
            return None  # exponent never supplied (its tail is zero)

    for lhs, op, rhs in tdef.chains:
        a, b = resolve(lhs), resolve(rhs)
        if a is None or b is None:
            continue
        if op == "<" and not a < b:
            return False
        if op == "<=" and not a <= b:
            return False
    return True


def torsion_profile_table(ctx: RingCtx, spec: TypeSpec, derived: Optional[dict] = None) -> tuple:
    """Torsional degrees (T_0..T_3) from the per-type table."""
    _require_t4(ctx)
    if spec.type_id == 1:
        return (0, 0, 0, 0) if spec.params.get("unit") else (ctx.ps,) * 4
    tdef = TYPE_DEFS[spec.type_id]
    if derived is None:
        derived = derived_exponents(ctx, spec)
    env = {"ps": ctx.ps}
    env.update(spec.params)
    env.update(derived)
    return tuple(env[name] for name in tdef.torsion)


def log_cardinality_table(ctx: RingCtx, spec: TypeSpec, derived: Optional[dict] = None) -> int:
    """log_p of the cardinality from the per-type table; every entry agrees
    with |C| = (p^{dm})^(4 p^s - sum T_i) applied to the torsion entries."""
    _require_t4(ctx)
    dm = ctx.d * ctx.field.m
    if spec.type_id == 1:
        return 4 * dm * ctx.ps if spec.params.get("unit") else 0
    tdef = TYPE_DEFS[spec.type_id]
    if derived is None:
        derived = derived_exponents(ctx, spec)
    env = {"ps": ctx.ps}
    env.update(spec.params)
    env.update(derived)
    k, names = tdef.card
    return dm * (k * ctx.ps - sum(env[name] for name in names))


def expected_signature(spec: TypeSpec) -> frozenset:
    if spec.type_id == 1:
        return frozenset({0}) if spec.params.get("unit") else frozenset()
    return TYPE_DEFS[spec.type_id].signature


# ---------------------------------------------------------------------------
# instance search


def _unit_names(tdef: TypeDef) -> list[str]:
    names = []
    for gterms in tdef.gens:
        for _, _, unitname in gterms:
            if unitname is not None and unitname not in names:
                names.append(unitname)
    return names


def _exp_names(tdef: TypeDef) -> list[str]:
    names = []
    for gterms in tdef.gens:
        for _, expname, _ in gterms:
            if expname not in names:
                names.append(expname)
    return names


def _strictness_gaps(tdef: TypeDef, dead: set, ps: int) -> Optional[dict]:
    """Longest-path strictness between chain nodes, derived names included.

    gap[a][b] = k means any valid assignment needs value(b) - value(a) >= k;
    None when the live chain is contradictory on its own.
    """
    nodes = {"0", "ps1"}
    edges = []
    for lhs, op, rhs in tdef.chains:
        if lhs in dead or rhs in dead:
            continue
        nodes.update((lhs, rhs))
        edges.append((lhs, rhs, 1 if op == "<" else 0))
    nodes = sorted(nodes)
    idx = {nm: i for i, nm in enumerate(nodes)}
    neg = float("-inf")
    gap = [[neg] * len(nodes) for _ in nodes]
    for i in range(len(nodes)):
        gap[i][i] = 0
    for lhs, rhs, w in edges:
        i, j = idx[lhs], idx[rhs]
        gap[i][j] = max(gap[i][j], w)
    for k in range(len(nodes)):
        for i in range(len(nodes)):
            if gap[i][k] == neg:
                continue
            for j in range(len(nodes)):
                if gap[k][j] != neg and gap[i][k] + gap[k][j] > gap[i][j]:
                    gap[i][j] = gap[i][k] + gap[k][j]
    for i in range(len(nodes)):
        if gap[i][i] > 0:
            return None
    if gap[idx["0"]][idx["ps1"]] > ps - 1:
        return None
    return {"nodes": nodes, "idx": idx, "gap": gap}


def _static_assignments(tdef: TypeDef, dead: set, ps: int):
    """All exponent assignments compatible with the chain strictness gaps."""
    info = _strictness_gaps(tdef, dead, ps)
    if info is None:
        return
    idx, gap = info["idx"], info["gap"]
    neg = float("-inf")
    live = [nm for nm in _exp_names(tdef) if nm not in dead]
    order = [nm for nm in live if nm in idx] + [nm for nm in live if nm not in idx]

    def bounds(name, chosen):
        lo, hi = 0, ps - 1
        if name in idx:
            i = idx[name]
            g0 = gap[idx["0"]][i]
            if g0 != neg:
                lo = max(lo, int(g0))
            g1 = gap[i][idx["ps1"]]
            if g1 != neg:
                hi = min(hi, ps - 1 - int(g1))
            for other, val in chosen.items():
                if other not in idx:
                    continue
                j = idx[other]
                if gap[j][i] != neg:
                    lo = max(lo, val + int(gap[j][i]))
                if gap[i][j] != neg:
                    hi = min(hi, val - int(gap[i][j]))
        return lo, hi

    def rec(k, chosen):
        if k == len(order):
            yield dict(chosen)
            return
        name = order[k]
        lo, hi = bounds(name, chosen)
        for val in range(lo, hi + 1):
            chosen[name] = val
            yield from rec(k + 1, chosen)
            del chosen[name]

    yield from rec(0, {})


def _incremental_validate(
    ctx: RingCtx, tdef: TypeDef, spec: TypeSpec, _cache: Optional[dict] = None
) -> Optional[dict]:
    """Compute derived exponents one by one, failing fast on any violated
    chain; returns the full derived dict on success, None otherwise."""
    env = {"ps": ctx.ps, "ps1": ctx.ps - 1}
    env.update(spec.params)
    dead = _zero_tail_exponents(spec, tdef)

    def resolve(token):
        if token in dead:
            return None
        if token in env:
            return env[token]
        try:
            return int(token)
        except ValueError:
            return None

    def chains_ok(known_only: bool) -> bool:
        for lhs, op, rhs in tdef.chains:
            a, b = resolve(lhs), resolve(rhs)
            if a is None or b is None:
                if known_only:
                    continue
                return False
            if op == "<" and not a < b:
                return False
            if op == "<=" and not a <= b:
                return False
        return True

    if not chains_ok(known_only=True):
        return None
    gens = type_generators(ctx, spec)
    derived = {}
    # cheapest sub-ideals first so doomed candidates die before big builds
    order = sorted(tdef.derived.items(), key=lambda kv: len(kv[1][0]))
    for name, (idxs, shift) in order:
        key = (tuple(gens[i]._key for i in idxs), shift)
        value = _cache.get(key) if _cache is not None else None
        if value is None:
            sub = Code.from_gens(ctx, [gens[i] for i in idxs])
            value = sub.min_top_exponent(shift)
            if _cache is not None:
                _cache[key] = value
        env[name] = derived[name] = value
        if not chains_ok(known_only=True):
            return None
    return derived


def iter_type_instances(
    ctx: RingCtx,
    type_id: int,
    unit_values: Optional[list[FieldPoly]] = None,
):
    """All parameter tuples realizing the type, in a deterministic order.

    Tail patterns are searched with few units first; zero-or-unit tails take
    values from ``unit_values`` (default: 1, then 1 + f).  Yields
    ``(spec, derived)`` pairs whose constraint chains hold with the derived
    exponents recomputed from the stated sub-ideals.
    """
    _require_t4(ctx)
    if type_id == 1:
        yield TypeSpec(1, {"unit": 0}), {}
        yield TypeSpec(1, {"unit": 1}), {}
        return
    tdef = TYPE_DEFS[type_id]
    if unit_values is None:
        unit_values = [
            ctx.field.poly([1]),
            (ctx.field.poly([1]) + ctx.f) % ctx.omega0,
        ]
    unames = _unit_names(tdef)
    cache: dict = {}
    patterns = sorted(
        itertools.product([0, 1], repeat=len(unames)),
        key=lambda pat: (sum(pat), pat),
    )
    for pat in patterns:
        live_units = [nm for nm, bit in zip(unames, pat) if bit]
        dead_exps = set()
        for gterms in tdef.gens:
            for _, expname, unitname in gterms:
                if unitname is not None and unitname not in live_units:
                    dead_exps.add(expname)
        for assignment in _static_assignments(tdef, dead_exps, ctx.ps):
            for combo in itertools.product(unit_values, repeat=len(live_units)):
                units = dict(zip(live_units, combo))
                spec = TypeSpec(type_id, dict(sorted(assignment.items())), units)
                derived = _incremental_validate(ctx, tdef, spec, cache)
                if derived is not None:
                    yield spec, derived


def find_type_instance(
    ctx: RingCtx,
    type_id: int,
    unit_values: Optional[list[FieldPoly]] = None,
) -> Optional[tuple[TypeSpec, dict]]:
    """First instance from :func:`iter_type_instances`, or None."""
    return next(iter_type_instances(ctx, type_id, unit_values), None)
