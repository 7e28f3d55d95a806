"""The ambient ring (F_{p^m}[u]/(u^t))[x] / (omega(x)) and its residues.

Residues are dense vectors of length t*N over F_{p^m} in the monomial
coordinates u^l x^k (u-level major, x-degree minor), which turns every ring
question downstream into exact linear algebra.  When omega lies in
F_{p^m}[x] and equals f(x)**(p**s) for an irreducible f, the context also
carries the coordinate system with respect to u^l x^i f(x)^j and the f-adic
valuation on the residue ring; the classification machinery only works in
that special case and says so via NotSpecialCase.
"""

from __future__ import annotations

from functools import cached_property
from typing import Optional, Union

import numpy as np

from . import linalg
from .algebra import (
    FieldCtx,
    FieldPoly,
    Factorization,
    RtElement,
    RtPoly,
    factor,
)
from .errors import (
    BadLevel,
    ContextMismatch,
    DegreeMismatch,
    NonUnitLeadingCoefficient,
    NotSpecialCase,
    ZeroResidue,
)


class RingCtx:
    """Quotient ring context; immutable and shareable after construction.

    The input omega must have a unit leading coefficient (it is scaled to a
    monic polynomial), so the quotient is a free module of rank N = deg omega
    over F_{p^m}[u]/(u^t) and dense representatives are canonical.
    """

    def __init__(self, field: FieldCtx, t: int, omega: Union[RtPoly, FieldPoly]):
        if t < 1:
            raise BadLevel("t must be >= 1")
        if isinstance(omega, FieldPoly):
            omega = RtPoly.from_field_poly(omega, t)
        if omega.field != field or omega.t != t:
            raise ContextMismatch("omega does not live over the given coefficient ring")
        if omega.degree is None or omega.degree < 1:
            raise DegreeMismatch("omega must have degree >= 1")
        lead = omega.coeffs[-1]
        if not lead.is_unit():
            raise NonUnitLeadingCoefficient(
                "omega must have a unit leading coefficient"
            )
        if not all(p == 0 for p in lead.parts[1:]) or lead.parts[0] != 1:
            inv = lead.inv()
            omega = RtPoly(field, t, [c * inv for c in omega.coeffs])
        self.field = field
        self.t = t
        self.omega = omega
        self.omega0 = omega.residue()
        if self.omega0.is_zero():
            raise ZeroResidue("omega vanishes modulo u")
        self.N = omega.degree
        self.n = t * self.N
        self.tb = field.tables
        self.omega0_factorization: Factorization = factor(self.omega0)
        self.special = self._detect_special()

    def _detect_special(self) -> Optional[tuple[FieldPoly, int, int]]:
        if any(any(c.parts[1:]) for c in self.omega.coeffs):
            return None
        factors = self.omega0_factorization.factors
        if len(factors) != 1:
            return None
        f, mult = factors[0]
        s = 0
        n = mult
        while n % self.field.p == 0:
            n //= self.field.p
            s += 1
        if n != 1:
            return None
        return (f, f.degree, s)

    # -- derived data --------------------------------------------------------

    @property
    def is_special(self) -> bool:
        return self.special is not None

    def _require_special(self):
        if self.special is None:
            raise NotSpecialCase(
                "operation needs omega = f(x)**(p**s) with f irreducible over F_{p^m}"
            )

    @property
    def f(self) -> FieldPoly:
        self._require_special()
        return self.special[0]

    @property
    def d(self) -> int:
        self._require_special()
        return self.special[1]

    @property
    def s(self) -> int:
        self._require_special()
        return self.special[2]

    @property
    def ps(self) -> int:
        """p**s, the nilpotency index of f in the residue ring."""
        self._require_special()
        return self.field.p ** self.special[2]

    def size_log_p(self) -> int:
        return self.field.m * self.n

    @cached_property
    def x_matrix(self) -> np.ndarray:
        """Matrix of multiplication by x on the monomial coordinates."""
        t, N, n = self.t, self.N, self.n
        fld = self.field
        X = np.zeros((n, n), dtype=linalg.DTYPE)
        for l in range(t):
            for k in range(N - 1):
                X[l * N + k + 1, l * N + k] = 1
        for j in range(N):
            wj = self.omega.coeff(j)
            for lp, c in enumerate(wj.parts):
                if not c:
                    continue
                negc = fld.neg(c)
                for l in range(t - lp):
                    X[(l + lp) * N + j, l * N + (N - 1)] = negc
        return X

    def _ushift(self, vec: np.ndarray, levels: int) -> np.ndarray:
        out = np.zeros_like(vec)
        if levels < self.t:
            v = vec.reshape(self.t, self.N)
            out.reshape(self.t, self.N)[levels:] = v[: self.t - levels]
        return out

    def monomial_multiples(self, vec: np.ndarray) -> np.ndarray:
        """All products (u^l x^k) * vec, one per row in coordinate order.

        The rows span the principal ideal of vec over F_{p^m}.
        """
        t, N, n = self.t, self.N, self.n
        out = np.zeros((n, n), dtype=linalg.DTYPE)
        w = np.asarray(vec, dtype=linalg.DTYPE)
        for k in range(N):
            for l in range(t):
                out[l * N + k] = self._ushift(w, l)
            if k + 1 < N:
                w = linalg.matvec(self.x_matrix, w, self.tb)
        return out

    def mul_matrix(self, vec: np.ndarray) -> np.ndarray:
        """Matrix of multiplication by the given element (columns act on
        coordinate vectors)."""
        return np.ascontiguousarray(self.monomial_multiples(vec).T)

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        t, N = self.t, self.N
        out = np.zeros(self.n, dtype=linalg.DTYPE)
        w = np.asarray(b, dtype=linalg.DTYPE)
        a = np.asarray(a, dtype=linalg.DTYPE)
        for k in range(N):
            col = a.reshape(t, N)[:, k]
            for l in range(t):
                c = col[l]
                if c:
                    out = self.tb.add[out, self.tb.mul[c, self._ushift(w, l)]]
            if k + 1 < N:
                w = linalg.matvec(self.x_matrix, w, self.tb)
        return out

    # -- element constructors -------------------------------------------------

    def zero(self) -> "QuotElem":
        return QuotElem(self, np.zeros(self.n, dtype=linalg.DTYPE))

    def one(self) -> "QuotElem":
        v = np.zeros(self.n, dtype=linalg.DTYPE)
        v[0] = 1
        return QuotElem(self, v)

    def monomial(self, level: int, xdeg: int, coeff: int = 1) -> "QuotElem":
        if not (0 <= level < self.t and 0 <= xdeg < self.N):
            raise BadLevel("monomial indices out of range")
        v = np.zeros(self.n, dtype=linalg.DTYPE)
        v[level * self.N + xdeg] = coeff
        return QuotElem(self, v)

    def from_rt_poly(self, poly: RtPoly) -> "QuotElem":
        if poly.field != self.field or poly.t != self.t:
            raise ContextMismatch("polynomial over a different coefficient ring")
        if poly.degree is not None and poly.degree >= self.N:
            poly = poly.divmod(self.omega)[1]
        v = np.zeros(self.n, dtype=linalg.DTYPE)
        for k, c in enumerate(poly.coeffs):
            for l, part in enumerate(c.parts):
                v[l * self.N + k] = part
        return QuotElem(self, v)

    def from_field_poly(self, poly: FieldPoly, level: int = 0) -> "QuotElem":
        """Embed a residue-field polynomial at the given u-level."""
        if poly.ctx != self.field:
            raise ContextMismatch("polynomial over a different field")
        if not 0 <= level < self.t:
            raise BadLevel("u-level out of range")
        poly = poly % self.omega0 if (poly.degree or 0) >= self.N else poly
        v = np.zeros(self.n, dtype=linalg.DTYPE)
        for k, c in enumerate(poly.coeffs):
            v[level * self.N + k] = c
        return QuotElem(self, v)

    def f_power(self, exp: int) -> FieldPoly:
        """f**exp reduced in the residue ring (zero when exp >= p**s)."""
        self._require_special()
        cache = self.__dict__.setdefault("_f_power_cache", {})
        if exp not in cache:
            cache[exp] = (self.f**exp) % self.omega0
        return cache[exp]

    def shifted_f_power(self, level: int, exp: int) -> "QuotElem":
        """The element u^level * f(x)^exp."""
        return self.from_field_poly(self.f_power(exp), level)

    def element_at(self, index: int) -> "QuotElem":
        """The index-th element in mixed-radix order; used by enumeration."""
        q = self.field.q
        v = np.zeros(self.n, dtype=linalg.DTYPE)
        for i in range(self.n):
            index, r = divmod(index, q)
            v[i] = r
        return QuotElem(self, v)

    def element_count(self) -> int:
        return self.field.q**self.n

    # -- derived rings ---------------------------------------------------------

    @cached_property
    def residue_ring(self) -> "RingCtx":
        """R^{1, omega0}, the target of reduction modulo u."""
        if self.t == 1:
            return self
        return RingCtx(self.field, 1, self.omega.mod_u_power(1))

    def reduced_ring(self, k: int) -> "RingCtx":
        if not 1 <= k <= self.t:
            raise BadLevel("reduction level must be in [1, t]")
        if k == self.t:
            return self
        if k == 1:
            return self.residue_ring
        return RingCtx(self.field, k, self.omega.mod_u_power(k))

    # -- the u^l x^i f^j coordinate system -------------------------------------

    @cached_property
    def _f_basis_pair(self) -> tuple[np.ndarray, np.ndarray]:
        self._require_special()
        f, d, _ = self.special
        N = self.N
        T = np.zeros((N, N), dtype=linalg.DTYPE)
        fj = FieldPoly(self.field, (1,))
        for j in range(self.ps):
            for i in range(d):
                col = fj.shift(i)
                for k, c in enumerate(col.coeffs):
                    T[k, j * d + i] = c
            fj = fj * f
        return T, linalg.inverse(T, self.tb)

    def to_f_coords(self, vec: np.ndarray) -> np.ndarray:
        """Monomial coordinates -> (t, p^s, d) array of f-basis coordinates."""
        _, Tinv = self._f_basis_pair
        levels = np.asarray(vec, dtype=linalg.DTYPE).reshape(self.t, self.N)
        out = linalg.matmul(Tinv, levels.T, self.tb).T
        return np.ascontiguousarray(out.reshape(self.t, self.ps, self.d))

    def from_f_coords(self, coords: np.ndarray) -> np.ndarray:
        T, _ = self._f_basis_pair
        levels = np.asarray(coords, dtype=linalg.DTYPE).reshape(self.t, self.N)
        out = linalg.matmul(T, levels.T, self.tb).T
        return np.ascontiguousarray(out.reshape(self.n))

    def val_f(self, elem) -> int:
        """Largest k with f^k dividing the residue-ring element; p^s on zero."""
        self._require_special()
        if isinstance(elem, FieldPoly):
            vec = self.residue_ring.from_field_poly(elem).vec
        elif isinstance(elem, QuotElem):
            if elem.ctx.t != 1:
                raise NotSpecialCase("f-adic valuation lives in the residue ring")
            vec = elem.vec
        else:
            vec = np.asarray(elem, dtype=linalg.DTYPE)
        coords = self.residue_ring.to_f_coords(vec)[0]
        for j in range(self.ps):
            if coords[j].any():
                return j
        return self.ps

    def __eq__(self, other):
        return (
            isinstance(other, RingCtx)
            and self.field == other.field
            and self.t == other.t
            and self.omega == other.omega
        )

    def __hash__(self):
        return hash((self.field, self.t, tuple(c.parts for c in self.omega.coeffs)))

    def __repr__(self):
        return f"RingCtx(q={self.field.q}, t={self.t}, omega={self.omega!r})"


class FBasisCoords:
    """Coordinates of a residue with respect to the basis u^l x^i f(x)^j."""

    __slots__ = ("ctx", "array")

    def __init__(self, ctx: RingCtx, array: np.ndarray):
        ctx._require_special()
        array = np.asarray(array, dtype=linalg.DTYPE).reshape(ctx.t, ctx.ps, ctx.d)
        array.flags.writeable = False
        self.ctx = ctx
        self.array = array

    def coeff(self, level: int, fpow: int, xdeg: int) -> int:
        return int(self.array[level, fpow, xdeg])

    def __eq__(self, other):
        return (
            isinstance(other, FBasisCoords)
            and self.ctx == other.ctx
            and np.array_equal(self.array, other.array)
        )

    def __repr__(self):
        return f"FBasisCoords({self.array.tolist()})"


class QuotElem:
    """A residue of the quotient ring, as a read-only coordinate vector."""

    __slots__ = ("ctx", "vec", "_key")

    def __init__(self, ctx: RingCtx, vec: np.ndarray):
        vec = np.asarray(vec, dtype=linalg.DTYPE)
        if vec.shape != (ctx.n,):
            raise DegreeMismatch("coordinate vector has the wrong length")
        vec = vec.copy()
        vec.flags.writeable = False
        self.ctx = ctx
        self.vec = vec
        self._key = vec.tobytes()

    def _check(self, other: "QuotElem") -> "QuotElem":
        if not isinstance(other, QuotElem):
            raise TypeError("expected a ring element")
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch("elements of different rings")
        return other

    def __eq__(self, other):
        return (
            isinstance(other, QuotElem)
            and self.ctx == other.ctx
            and self._key == other._key
        )

    def __hash__(self):
        return hash(self._key)

    def is_zero(self) -> bool:
        return not self.vec.any()

    def __add__(self, other):
        other = self._check(other)
        return QuotElem(self.ctx, self.ctx.tb.add[self.vec, other.vec])

    def __sub__(self, other):
        other = self._check(other)
        return QuotElem(self.ctx, self.ctx.tb.sub[self.vec, other.vec])

    def __neg__(self):
        return QuotElem(self.ctx, self.ctx.tb.neg[self.vec])

    def __mul__(self, other):
        other = self._check(other)
        return QuotElem(self.ctx, self.ctx.mul_vec(self.vec, other.vec))

    def __pow__(self, e: int):
        out = self.ctx.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def residue_poly(self) -> FieldPoly:
        """Image modulo u as a polynomial over the field."""
        return FieldPoly(self.ctx.field, tuple(int(c) for c in self.vec[: self.ctx.N]))

    def reduce_mod_u(self, k: int) -> "QuotElem":
        """Truncate to the first k u-levels; k=1 is the residue map, k=t-1 the
        one-step reduction."""
        target = self.ctx.reduced_ring(k)
        if target is self.ctx:
            return self
        return QuotElem(target, self.vec.reshape(self.ctx.t, self.ctx.N)[:k].ravel())

    def u_valuation(self) -> int:
        levels = self.vec.reshape(self.ctx.t, self.ctx.N)
        for l in range(self.ctx.t):
            if levels[l].any():
                return l
        return self.ctx.t

    def is_unit(self) -> bool:
        """Invertibility test; the two specified routes agree, see tests."""
        if self.ctx.is_special:
            return self._is_unit_special()
        return self._is_unit_general()

    def _is_unit_general(self) -> bool:
        mu = self.residue_poly()
        if mu.is_zero():
            return False
        g = mu.gcd(self.ctx.omega0)
        return g.degree == 0

    def _is_unit_special(self) -> bool:
        coords = self.ctx.to_f_coords(self.vec)
        return bool(coords[0, 0].any())

    def to_f_basis(self) -> FBasisCoords:
        return FBasisCoords(self.ctx, self.ctx.to_f_coords(self.vec))

    @classmethod
    def from_f_basis(cls, coords: FBasisCoords) -> "QuotElem":
        return cls(coords.ctx, coords.ctx.from_f_coords(coords.array))

    @property
    def coeffs(self) -> tuple[RtElement, ...]:
        """Dense x-coefficients, each an element of F_{p^m}[u]/(u^t)."""
        levels = self.vec.reshape(self.ctx.t, self.ctx.N)
        return tuple(
            RtElement(self.ctx.field, self.ctx.t, [int(levels[l, k]) for l in range(self.ctx.t)])
            for k in range(self.ctx.N)
        )

    def canonical_str(self) -> str:
        """Canonical rendering: u-level major, descending x-degree."""
        fld = self.ctx.field
        levels = self.vec.reshape(self.ctx.t, self.ctx.N)
        terms = []
        for l in range(self.ctx.t):
            for k in range(self.ctx.N - 1, -1, -1):
                c = int(levels[l, k])
                if not c:
                    continue
                parts = []
                cs = fld.elem_str(c)
                if "+" in cs:
                    parts.append(f"({cs})")
                elif cs != "1":
                    parts.append(cs)
                if l:
                    parts.append("u" if l == 1 else f"u^{l}")
                if k:
                    parts.append("x" if k == 1 else f"x^{k}")
                if not parts:
                    parts.append("1")
                terms.append("*".join(parts))
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return self.canonical_str()
