"""Ideals of the quotient ring, stored as exact F_{p^m}-row spaces.

A code is the row space of the monomial multiples of its generators, kept in
canonical reduced row-echelon form (u-level major, x-degree minor column
order), so equality of ideals is equality of bytes.  Everything else -
membership, colon ideals, torsion codes, cardinality, canonical generators -
reduces to row reduction and small linear solves over F_{p^m}.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from . import linalg
from .algebra import FieldPoly
from .errors import (
    BadIndex,
    BadLevel,
    ContextMismatch,
    InternalInvariantError,
    TrivialIdeal,
)
from .quotient import QuotElem, RingCtx


class Code:
    """An ideal of R^{t,omega} with a canonical row-reduced basis."""

    __slots__ = ("ctx", "gens", "basis", "pivots", "_key")

    def __init__(self, ctx: RingCtx, gens: tuple[QuotElem, ...], rows: np.ndarray):
        basis, pivots = linalg.rref(rows.reshape(-1, ctx.n), ctx.tb)
        self.ctx = ctx
        self.gens = gens
        self.basis = basis
        self.pivots = pivots
        self._key = linalg.span_key(basis)

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_gens(cls, ctx: RingCtx, gens: Iterable[QuotElem]) -> "Code":
        gens = tuple(gens)
        rows = [np.zeros((0, ctx.n), dtype=linalg.DTYPE)]
        for g in gens:
            if g.ctx is not ctx and g.ctx != ctx:
                raise ContextMismatch("generator from a different ring")
            rows.append(ctx.monomial_multiples(g.vec))
        return cls(ctx, gens, np.vstack(rows))

    @classmethod
    def from_span_rows(cls, ctx: RingCtx, rows: np.ndarray, gens=()) -> "Code":
        """Wrap rows whose span is already known to be an ideal."""
        return cls(ctx, tuple(gens), np.asarray(rows, dtype=linalg.DTYPE))

    @classmethod
    def zero(cls, ctx: RingCtx) -> "Code":
        return cls.from_gens(ctx, ())

    @classmethod
    def unit(cls, ctx: RingCtx) -> "Code":
        return cls.from_gens(ctx, (ctx.one(),))

    # -- basic queries ----------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    def is_zero(self) -> bool:
        return self.rank == 0

    def is_unit_ideal(self) -> bool:
        return self.rank == self.ctx.n

    def key(self) -> bytes:
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, Code)
            and self.ctx == other.ctx
            and self._key == other._key
        )

    def __hash__(self):
        return hash(self._key)

    def __le__(self, other: "Code") -> bool:
        other._check(self)
        return all(other.contains_vec(row) for row in self.basis)

    def _check(self, other: "Code"):
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch("codes over different rings")

    def contains_vec(self, vec: np.ndarray) -> bool:
        return linalg.in_span(
            np.asarray(vec, dtype=linalg.DTYPE), self.basis, self.pivots, self.ctx.tb
        )

    def contains(self, elem: QuotElem) -> bool:
        if elem.ctx is not self.ctx and elem.ctx != self.ctx:
            raise ContextMismatch("element of a different ring")
        return self.contains_vec(elem.vec)

    def log_cardinality(self) -> int:
        """log_p of the number of codewords."""
        return self.ctx.field.m * self.rank

    def is_closed_under_ring(self) -> bool:
        """Self-check: the row space is closed under multiplication by x and u."""
        ctx = self.ctx
        for row in self.basis:
            xrow = linalg.matvec(ctx.x_matrix, row, ctx.tb)
            if not self.contains_vec(xrow):
                return False
            if not self.contains_vec(ctx._ushift(row, 1)):
                return False
        return True

    # -- ideal arithmetic ---------------------------------------------------------

    def __add__(self, other: "Code") -> "Code":
        self._check(other)
        rows = np.vstack([self.basis, other.basis])
        return Code(self.ctx, self.gens + other.gens, rows)

    def mul_elem(self, r: QuotElem) -> "Code":
        """The ideal r*C (an ideal because the ring is commutative)."""
        if r.ctx is not self.ctx and r.ctx != self.ctx:
            raise ContextMismatch("element of a different ring")
        if self.rank == 0:
            return Code.zero(self.ctx)
        # row v maps to M_r v, i.e. rows' = basis @ monomial_multiples(r)
        rows = linalg.matmul(self.basis, self.ctx.monomial_multiples(r.vec), self.ctx.tb)
        return Code.from_span_rows(self.ctx, rows)

    def _reduction_matrix(self) -> np.ndarray:
        """Matrix R with (w @ R) = residual of w after reduction by the basis."""
        n = self.ctx.n
        R = np.eye(n, dtype=linalg.DTYPE)
        for j, col in enumerate(self.pivots):
            R[col] = self.ctx.tb.neg[self.basis[j]]
            R[col, col] = 0
        return R

    def colon(self, a: QuotElem) -> "Code":
        """The ideal quotient {x : a*x in C}."""
        if a.ctx is not self.ctx and a.ctx != self.ctx:
            raise ContextMismatch("element of a different ring")
        ctx = self.ctx
        Ma = ctx.mul_matrix(a.vec)
        R = self._reduction_matrix()
        cond = linalg.matmul(np.ascontiguousarray(R.T), Ma, ctx.tb)
        kernel = linalg.nullspace(cond, ctx.tb)
        return Code.from_span_rows(ctx, kernel)

    def colon_u_power(self, j: int) -> "Code":
        if j == 0:
            return self
        return self.colon(self.ctx.monomial(j, 0))

    # -- torsion and cardinality ---------------------------------------------------

    def torsion(self, i: int) -> "Code":
        """The i-th torsion code, an ideal of the residue ring R^{1, omega0}."""
        if not 0 <= i <= self.ctx.t - 1:
            raise BadIndex(f"torsion index {i} outside [0, t-1]")
        col = self.colon_u_power(i)
        target = self.ctx.residue_ring
        if col.rank == 0:
            return Code.zero(target)
        rows = col.basis[:, : self.ctx.N]
        return Code.from_span_rows(target, rows)

    def torsional_degree(self, i: int) -> int:
        ctx = self.ctx
        ctx._require_special()
        tor = self.torsion(i)
        rank = tor.rank
        if rank % ctx.d:
            raise InternalInvariantError("torsion rank not divisible by deg f")
        return ctx.ps - rank // ctx.d

    def torsion_profile(self) -> tuple[int, ...]:
        return tuple(self.torsional_degree(i) for i in range(self.ctx.t))

    # -- decomposition along a principal kernel -------------------------------------

    def decompose(self, pi: QuotElem) -> tuple[list[QuotElem], "Code"]:
        """Split C into lifted generators of its image modulo <pi> plus
        pi*(C:pi); pi must be a power of u (u and u^(t-1) in practice)."""
        if pi.ctx is not self.ctx and pi.ctx != self.ctx:
            raise ContextMismatch("element of a different ring")
        k = pi.u_valuation()
        if k == 0 or k >= self.ctx.t or pi != self.ctx.monomial(k, 0):
            raise BadLevel("decompose expects pi = u^k with 1 <= k <= t-1")
        ctx = self.ctx
        target = ctx.reduced_ring(k)
        trunc = self.basis.reshape(-1, ctx.t, ctx.N)[:, :k, :].reshape(-1, k * ctx.N)
        image = Code.from_span_rows(target, trunc)
        lifts: list[QuotElem] = []
        if image.rank:
            if k == 1:
                polys = [
                    FieldPoly(ctx.field, tuple(int(c) for c in row))
                    for row in image.basis
                ]
                g = polys[0]
                for pp in polys[1:]:
                    g = g.gcd(pp)
                g = g.gcd(ctx.omega0)
                targets = [target.from_field_poly(g).vec]
            else:
                targets = list(image.basis)
            for tvec in targets:
                combo = linalg.solve(
                    np.ascontiguousarray(trunc.T), np.asarray(tvec), ctx.tb
                )
                if combo is None:
                    raise InternalInvariantError("image generator not in truncation span")
                lift = linalg.matmul(combo[None, :], self.basis, ctx.tb)[0]
                lifts.append(QuotElem(ctx, lift))
        remainder = self.colon(pi).mul_elem(pi)
        return lifts, remainder

    # -- classification-facing queries ------------------------------------------------

    def min_top_exponent(self, j: int = 0) -> int:
        """Smallest L with u^(t-1) f(x)^L in u^j * C.

        L = p^s always succeeds because u^(t-1) f^(p^s) = 0; j picks how many
        u factors are absorbed by the membership certificate.
        """
        ctx = self.ctx
        ctx._require_special()
        if not 0 <= j <= ctx.t - 1:
            raise BadIndex(f"shift {j} outside [0, t-1]")
        shifted = self if j == 0 else self.mul_elem(ctx.monomial(j, 0))
        for L in range(ctx.ps + 1):
            probe = ctx.shifted_f_power(ctx.t - 1, L)
            if shifted.contains(probe):
                return L
        raise InternalInvariantError("u^(t-1) f^(p^s) = 0 must always be a member")

    def level_witness(self, level: int, fpow: int) -> Optional[QuotElem]:
        """Element of C whose f-basis coordinates vanish below the level and
        equal exactly f^fpow at the level (higher levels free, zeroed by the
        tie-break); None when no such element exists."""
        ctx = self.ctx
        ctx._require_special()
        if not 0 <= level < ctx.t or not 0 <= fpow <= ctx.ps:
            raise BadIndex("witness pattern out of range")
        if self.rank == 0:
            return None
        ncond = (level + 1) * ctx.N
        rows_f = np.vstack(
            [ctx.to_f_coords(row).reshape(ctx.n) for row in self.basis]
        )
        A = np.ascontiguousarray(rows_f[:, :ncond].T)
        b = np.zeros(ncond, dtype=linalg.DTYPE)
        if fpow < ctx.ps:
            b[level * ctx.N + fpow * ctx.d] = 1
        combo = linalg.solve(A, b, ctx.tb)
        if combo is None:
            return None
        vec = linalg.matmul(combo[None, :], self.basis, ctx.tb)[0]
        return QuotElem(ctx, vec)

    def _level_witness(self, level: int, fpow: int) -> QuotElem:
        w = self.level_witness(level, fpow)
        if w is None:
            raise InternalInvariantError(
                "torsional degree promised a witness that does not exist"
            )
        return w

    def canonical_generators(self) -> list[QuotElem]:
        """At most t generators, one per u-level that carries new torsion.

        Level i contributes u^i f^(T_i) + (terms at higher u-levels); a level
        is skipped when the generators picked so far already realize its
        torsional degree, which keeps the emitted exponents strictly
        decreasing along increasing u-levels.  Ties in the underdetermined
        witness solve are broken by zeroing all free variables, so the output
        is deterministic.
        """
        ctx = self.ctx
        ctx._require_special()
        if self.is_zero() or self.is_unit_ideal():
            raise TrivialIdeal("use the trivial generators 0 or 1 directly")
        profile = self.torsion_profile()
        out: list[QuotElem] = []
        selected = Code.zero(ctx)
        for i in range(ctx.t):
            if profile[i] == ctx.ps:
                continue
            if selected.rank and selected.level_witness(i, profile[i]) is not None:
                continue
            out.append(self._level_witness(i, profile[i]))
            selected = Code.from_gens(ctx, out)
        if selected != self:
            raise InternalInvariantError("canonical generators failed to regenerate")
        return out

    def type_signature(self) -> frozenset[int]:
        """u-levels carrying canonical generators; {} for 0, {0} for the ring."""
        if self.is_zero():
            return frozenset()
        if self.is_unit_ideal():
            return frozenset({0})
        return frozenset(g.u_valuation() for g in self.canonical_generators())

    def __repr__(self):
        return f"Code(rank={self.rank}, ctx={self.ctx!r})"
