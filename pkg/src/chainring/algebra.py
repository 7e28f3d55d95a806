"""Exact arithmetic for F_{p^m}, F_{p^m}[x], R = F_{p^m}[u]/(u^t) and R[x].

Field elements are encoded as integers in ``[0, p^m)`` whose base-p digits
are the coordinates with respect to ``1, a, ..., a^{m-1}``, where ``a`` is
the class of the modulus variable.  A :class:`FieldCtx` owns the lookup
tables that make every operation a table access; the thin wrapper classes
(:class:`FieldElement`, :class:`FieldPoly`, :class:`RtElement`,
:class:`RtPoly`) give the values an API.

Factorization is trial division only, by design: this library targets desk
scale inputs where exhaustive search doubles as its own correctness
argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

import numpy as np

from . import linalg
from .errors import (
    BothZero,
    ConstantPolynomial,
    ContextMismatch,
    DegreeMismatch,
    DivisionByZero,
    FactorDegreeCapExceeded,
    NotPrime,
    ReducibleModulus,
    UnsupportedFieldSize,
    ZeroPolynomial,
)

MAX_FIELD_SIZE = 512
FACTOR_DEGREE_CAP = 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _digits(val: int, p: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        out.append(val % p)
        val //= p
    return tuple(out)


def _from_digits(digits: Sequence[int], p: int) -> int:
    val = 0
    for d in reversed(digits):
        val = val * p + d % p
    return val


def _mod_poly_mul(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> tuple[int, ...]:
    """Product of two coefficient tuples modulo (modulus, p); plain-int path
    used only while building the context tables."""
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(m):
                prod[k - m + j] = (prod[k - m + j] - c * modulus[j]) % p
    out = prod[:m] + [0] * (m - len(prod))
    return tuple(out[:m])


def _poly_divides(d: Sequence[int], f: Sequence[int], p: int) -> bool:
    """Exact divisibility of plain mod-p coefficient tuples (d monic)."""
    rem = list(f)
    dd = len(d) - 1
    while len(rem) - 1 >= dd and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dd:
            break
        c = rem[-1]
        shift = len(rem) - 1 - dd
        for j, dj in enumerate(d):
            rem[shift + j] = (rem[shift + j] - c * dj) % p
    return not any(rem)


def _monic_tuples(degree: int, p: int):
    """Monic coefficient tuples of the given degree, lex by low-to-high coeffs."""
    for low in product(range(p), repeat=degree):
        yield low + (1,)


def _is_irreducible_modp(f: Sequence[int], p: int) -> bool:
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for cand in _monic_tuples(d, p):
            if _poly_divides(cand, f, p):
                return False
    return True


class FieldCtx:
    """The field F_{p^m} with a fixed monic irreducible modulus over F_p.

    When the modulus is omitted, the lexicographically smallest monic
    irreducible of degree m is selected (coefficients compared low-to-high),
    so contexts are reproducible without any external table.
    """

    def __init__(self, p: int, m: int, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise NotPrime(f"p={p} is not prime")
        if m < 1:
            raise DegreeMismatch("m must be >= 1")
        q = p**m
        if q > MAX_FIELD_SIZE:
            raise UnsupportedFieldSize(f"p^m={q} exceeds the table cap {MAX_FIELD_SIZE}")
        self.p = p
        self.m = m
        self.q = q
        if modulus is None:
            self.modulus = self._find_modulus(p, m)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise DegreeMismatch("modulus must be monic of degree m")
            if m > 1 and not _is_irreducible_modp(modulus, p):
                raise ReducibleModulus("modulus is reducible over F_p")
            self.modulus = modulus
        self.tables = self._build_tables()

    @staticmethod
    def _find_modulus(p: int, m: int) -> tuple[int, ...]:
        if m == 1:
            return (0, 1)
        for cand in _monic_tuples(m, p):
            if _is_irreducible_modp(cand, p):
                return cand
        raise ReducibleModulus("no irreducible modulus found")  # pragma: no cover

    def _build_tables(self) -> linalg.GfTables:
        p, m, q = self.p, self.m, self.q
        digit_mat = np.array([_digits(v, p, m) for v in range(q)], dtype=np.int64)
        weights = p ** np.arange(m, dtype=np.int64)
        add = ((digit_mat[:, None, :] + digit_mat[None, :, :]) % p) @ weights
        sub = ((digit_mat[:, None, :] - digit_mat[None, :, :]) % p) @ weights
        neg = ((-digit_mat) % p) @ weights
        mul = np.zeros((q, q), dtype=np.int64)
        for i in range(q):
            di = _digits(i, p, m)
            for j in range(i, q):
                v = _from_digits(_mod_poly_mul(di, _digits(j, p, m), self.modulus, p), p)
                mul[i, j] = v
                mul[j, i] = v
        inv = np.zeros(q, dtype=np.int64)
        for i in range(1, q):
            row = mul[i]
            inv[i] = int(np.nonzero(row == 1)[0][0])
        dt = linalg.DTYPE
        return linalg.GfTables(
            q,
            add.astype(dt),
            sub.astype(dt),
            mul.astype(dt),
            inv.astype(dt),
            neg.astype(dt),
        )

    # -- integer-level arithmetic (used by the inner loops) ----------------

    def add(self, a: int, b: int) -> int:
        return int(self.tables.add[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.tables.sub[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.tables.mul[a, b])

    def neg(self, a: int) -> int:
        return int(self.tables.neg[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.tables.inv[a])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out, base = 1, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    # -- wrappers ----------------------------------------------------------

    def elem(self, value) -> FieldElement:
        """Coerce an int (reduced mod p when m=1, else an encoded value in
        [0, q)) or a coordinate iterable into a field element."""
        if isinstance(value, FieldElement):
            if value.ctx is not self:
                raise ContextMismatch("element from another field")
            return value
        if isinstance(value, int):
            if self.m == 1:
                return FieldElement(self, value % self.p)
            if not 0 <= value < self.q:
                raise ValueError("encoded value out of range")
            return FieldElement(self, value)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.m:
            raise DegreeMismatch("too many coordinates")
        coeffs += [0] * (self.m - len(coeffs))
        return FieldElement(self, _from_digits(coeffs, self.p))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of the modulus variable (requires m > 1)."""
        if self.m == 1:
            raise DegreeMismatch("prime field has no extension generator")
        return FieldElement(self, self.p)

    def elements(self) -> Iterable[FieldElement]:
        return (FieldElement(self, v) for v in range(self.q))

    def elem_str(self, val: int) -> str:
        """Canonical rendering of an encoded value as a polynomial in ``a``."""
        if self.m == 1:
            return str(val)
        digits = _digits(val, self.p, self.m)
        terms = []
        for e in range(self.m - 1, -1, -1):
            c = digits[e]
            if not c:
                continue
            if e == 0:
                terms.append(str(c))
            else:
                var = "a" if e == 1 else f"a^{e}"
                terms.append(var if c == 1 else f"{c}*{var}")
        return "+".join(terms) if terms else "0"

    def poly(self, coeffs) -> FieldPoly:
        """Polynomial from low-to-high coefficients (ints or elements)."""
        vals = [self.elem(c).val for c in coeffs]
        return FieldPoly(self, tuple(vals))

    def poly_x(self) -> FieldPoly:
        return FieldPoly(self, (0, 1))

    def __repr__(self):
        mod = "x" if self.m == 1 else poly_str_modp(self.modulus)
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={mod})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))


def poly_str_modp(coeffs: Sequence[int]) -> str:
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            var = "x" if e == 1 else f"x^{e}"
            terms.append(var if c == 1 else f"{c}*{var}")
    return "+".join(terms) if terms else "0"


@dataclass(frozen=True)
class FieldElement:
    """One element of F_{p^m}; ``val`` is the table-encoded integer."""

    ctx: FieldCtx
    val: int

    def _check(self, other: FieldElement) -> FieldElement:
        if not isinstance(other, FieldElement):
            other = self.ctx.elem(other)
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch("elements from different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.ctx, self.ctx.add(self.val, other.val))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.ctx, self.ctx.sub(self.val, other.val))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.ctx, self.ctx.mul(self.val, other.val))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.val))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.val, e))

    def inv(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.val))

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inv()

    def is_zero(self) -> bool:
        return self.val == 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        return _digits(self.val, self.ctx.p, self.ctx.m)

    def __repr__(self):
        return self.ctx.elem_str(self.val)


class FieldPoly:
    """Dense univariate polynomial over F_{p^m}.

    Coefficients are stored low-to-high as encoded ints with no trailing
    zeros; ``degree`` of the zero polynomial is None, never -1.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple[int, ...]):
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        self.ctx = ctx
        self.coeffs = coeffs

    @property
    def degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _check(self, other: FieldPoly) -> FieldPoly:
        if not isinstance(other, FieldPoly):
            raise TypeError("expected a polynomial")
        if other.ctx != self.ctx:
            raise ContextMismatch("polynomials over different fields")
        return other

    def __eq__(self, other):
        return (
            isinstance(other, FieldPoly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FieldPoly(self.ctx, tuple(self.ctx.add(x, y) for x, y in zip(a, b)))

    def __sub__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FieldPoly(self.ctx, tuple(self.ctx.sub(x, y) for x, y in zip(a, b)))

    def __neg__(self):
        return FieldPoly(self.ctx, tuple(self.ctx.neg(c) for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other.val)
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return FieldPoly(self.ctx, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        ctx = self.ctx
        for i, ai in enumerate(self.coeffs):
            if ai:
                for j, bj in enumerate(other.coeffs):
                    out[i + j] = ctx.add(out[i + j], ctx.mul(ai, bj))
        return FieldPoly(ctx, tuple(out))

    def scale(self, c: int) -> FieldPoly:
        return FieldPoly(self.ctx, tuple(self.ctx.mul(c, x) for x in self.coeffs))

    def __pow__(self, e: int) -> FieldPoly:
        out = FieldPoly(self.ctx, (1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod(self, other: FieldPoly) -> tuple[FieldPoly, FieldPoly]:
        """Quotient and remainder with deg r < deg b."""
        other = self._check(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        ctx = self.ctx
        db = other.degree
        lead_inv = ctx.inv(other.coeffs[-1])
        rem = list(self.coeffs)
        quo = [0] * max(0, len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            factor = ctx.mul(c, lead_inv)
            quo[k - db] = factor
            for j, bj in enumerate(other.coeffs):
                rem[k - db + j] = ctx.sub(rem[k - db + j], ctx.mul(factor, bj))
        return FieldPoly(ctx, tuple(quo)), FieldPoly(ctx, tuple(rem))

    def __mod__(self, other: FieldPoly) -> FieldPoly:
        return self.divmod(other)[1]

    def __floordiv__(self, other: FieldPoly) -> FieldPoly:
        return self.divmod(other)[0]

    def monic(self) -> FieldPoly:
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.coeffs[-1]))

    def gcd(self, other: FieldPoly) -> FieldPoly:
        other = self._check(other)
        if self.is_zero() and other.is_zero():
            raise BothZero("gcd(0, 0) is undefined")
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def shift(self, k: int) -> FieldPoly:
        """Multiply by x**k."""
        if self.is_zero():
            return self
        return FieldPoly(self.ctx, (0,) * k + self.coeffs)

    def __repr__(self):
        ctx = self.ctx
        terms = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            cs = ctx.elem_str(c)
            if "+" in cs:
                cs = f"({cs})"
            if e == 0:
                terms.append(cs)
            else:
                var = "x" if e == 1 else f"x^{e}"
                terms.append(var if cs == "1" else f"{cs}*{var}")
        return "+".join(terms) if terms else "0"


def poly_ext_gcd(a: FieldPoly, b: FieldPoly) -> tuple[FieldPoly, FieldPoly, FieldPoly]:
    """Monic g = gcd(a, b) together with x, y such that a*x + b*y = g."""
    ctx = a.ctx
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    r0, r1 = a, b
    x0, x1 = ctx.poly([1]), ctx.poly([])
    y0, y1 = ctx.poly([]), ctx.poly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    lead_inv = ctx.inv(r0.coeffs[-1])
    return r0.scale(lead_inv), x0.scale(lead_inv), y0.scale(lead_inv)


def poly_inv_mod(a: FieldPoly, modulus: FieldPoly) -> FieldPoly:
    """Inverse of a modulo the given polynomial; requires gcd(a, modulus)=1."""
    g, x, _ = poly_ext_gcd(a, modulus)
    if g.degree != 0:
        raise DivisionByZero("element is not invertible modulo the modulus")
    return x % modulus


def is_irreducible(f: FieldPoly) -> bool:
    """Exhaustive trial division up to degree deg(f)/2."""
    if f.is_zero() or f.degree == 0:
        raise ConstantPolynomial("irreducibility needs degree >= 1")
    for d in range(1, f.degree // 2 + 1):
        for cand in monic_polys(f.ctx, d):
            if (f % cand).is_zero():
                return False
    return True


def monic_polys(ctx: FieldCtx, degree: int) -> Iterable[FieldPoly]:
    """Monic polynomials of exact degree, lex by low-to-high coefficients."""
    for low in product(range(ctx.q), repeat=degree):
        yield FieldPoly(ctx, low + (1,))


@dataclass(frozen=True)
class Factorization:
    """Complete factorization ``unit * prod(v_i ** n_i)`` with distinct monic
    irreducible v_i, ordered by (degree, coefficient tuple)."""

    unit: FieldElement
    factors: tuple[tuple[FieldPoly, int], ...]

    def expand(self) -> FieldPoly:
        out = FieldPoly(self.unit.ctx, (self.unit.val,))
        for base, mult in self.factors:
            out = out * base**mult
        return out


def factor(f: FieldPoly) -> Factorization:
    """Factor by trial division over monic irreducibles in increasing degree.

    Deterministic: candidates are tried by degree, then lex low-to-high, so
    the factor list order is reproducible.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if f.degree > FACTOR_DEGREE_CAP:
        raise FactorDegreeCapExceeded(
            f"degree {f.degree} exceeds the trial-division cap {FACTOR_DEGREE_CAP}"
        )
    ctx = f.ctx
    unit = FieldElement(ctx, f.coeffs[-1])
    rest = f.monic()
    factors: list[tuple[FieldPoly, int]] = []
    d = 1
    while rest.degree is not None and rest.degree > 0:
        if d > rest.degree // 2:
            # no factor of degree <= deg/2 remains, so the tail is irreducible
            factors.append((rest, 1))
            break
        for cand in monic_polys(ctx, d):
            if rest.degree is None or rest.degree < d:
                break
            mult = 0
            quo, rem = rest.divmod(cand)
            while rem.is_zero():
                mult += 1
                rest = quo
                if rest.degree is None or rest.degree < d:
                    break
                quo, rem = rest.divmod(cand)
            if mult:
                factors.append((cand, mult))
        d += 1
    return Factorization(unit, tuple(factors))


class RtElement:
    """Element of R^t = F_{p^m}[u]/(u^t) as a length-t vector of u-parts."""

    __slots__ = ("field", "t", "parts")

    def __init__(self, field: FieldCtx, t: int, parts: Sequence[int]):
        parts = tuple(parts)
        if len(parts) != t:
            raise DegreeMismatch("u-part vector must have length t")
        self.field = field
        self.t = t
        self.parts = parts

    def _check(self, other: RtElement) -> RtElement:
        if not isinstance(other, RtElement):
            raise TypeError("expected an RtElement")
        if other.field != self.field or other.t != self.t:
            raise ContextMismatch("RtElements from different rings")
        return other

    def __eq__(self, other):
        return (
            isinstance(other, RtElement)
            and self.field == other.field
            and self.t == other.t
            and self.parts == other.parts
        )

    def __hash__(self):
        return hash((self.field, self.t, self.parts))

    def is_zero(self) -> bool:
        return not any(self.parts)

    def __add__(self, other):
        other = self._check(other)
        k = self.field
        return RtElement(k, self.t, [k.add(a, b) for a, b in zip(self.parts, other.parts)])

    def __sub__(self, other):
        other = self._check(other)
        k = self.field
        return RtElement(k, self.t, [k.sub(a, b) for a, b in zip(self.parts, other.parts)])

    def __neg__(self):
        k = self.field
        return RtElement(k, self.t, [k.neg(a) for a in self.parts])

    def __mul__(self, other):
        """Product with truncation at u^t."""
        other = self._check(other)
        k = self.field
        out = [0] * self.t
        for i, ai in enumerate(self.parts):
            if not ai:
                continue
            for j in range(self.t - i):
                bj = other.parts[j]
                if bj:
                    out[i + j] = k.add(out[i + j], k.mul(ai, bj))
        return RtElement(k, self.t, out)

    def u_valuation(self) -> int:
        """Smallest l with a nonzero u^l part; t for the zero element."""
        for l, part in enumerate(self.parts):
            if part:
                return l
        return self.t

    def is_unit(self) -> bool:
        return self.parts[0] != 0

    def inv(self) -> RtElement:
        """Inverse of a unit, by lifting the residue inverse through u-levels."""
        if not self.is_unit():
            raise DivisionByZero("not a unit in R^t")
        k = self.field
        inv0 = k.inv(self.parts[0])
        out = RtElement(k, self.t, [inv0] + [0] * (self.t - 1))
        one = RtElement(k, self.t, [1] + [0] * (self.t - 1))
        for _ in range(self.t):
            err = one - self * out
            if err.is_zero():
                break
            out = out + RtElement(k, self.t, [k.mul(inv0, c) for c in err.parts])
        return out

    def __repr__(self):
        terms = []
        for l, part in enumerate(self.parts):
            if not part:
                continue
            cs = self.field.elem_str(part)
            if "+" in cs:
                cs = f"({cs})"
            if l == 0:
                terms.append(cs)
            else:
                var = "u" if l == 1 else f"u^{l}"
                terms.append(var if cs == "1" else f"{cs}*{var}")
        return "+".join(terms) if terms else "0"


def rt_from_field(field: FieldCtx, t: int, val: int, level: int = 0) -> RtElement:
    parts = [0] * t
    if level < t:
        parts[level] = val
    return RtElement(field, t, parts)


class RtPoly:
    """Dense polynomial over R^t, low-to-high; trailing zeros stripped."""

    __slots__ = ("field", "t", "coeffs")

    def __init__(self, field: FieldCtx, t: int, coeffs: Sequence[RtElement]):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.field = field
        self.t = t
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_field_poly(cls, poly: FieldPoly, t: int) -> RtPoly:
        field = poly.ctx
        return cls(field, t, [rt_from_field(field, t, c) for c in poly.coeffs])

    @property
    def degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def _zero(self) -> RtElement:
        return RtElement(self.field, self.t, [0] * self.t)

    def coeff(self, k: int) -> RtElement:
        return self.coeffs[k] if k < len(self.coeffs) else self._zero()

    def _check(self, other: RtPoly) -> RtPoly:
        if other.field != self.field or other.t != self.t:
            raise ContextMismatch("polynomials over different coefficient rings")
        return other

    def __eq__(self, other):
        return (
            isinstance(other, RtPoly)
            and self.field == other.field
            and self.t == other.t
            and self.coeffs == other.coeffs
        )

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RtPoly(self.field, self.t, [self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RtPoly(self.field, self.t, [self.coeff(k) - other.coeff(k) for k in range(n)])

    def __mul__(self, other):
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return RtPoly(self.field, self.t, [])
        out = [self._zero() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, ai in enumerate(self.coeffs):
            if ai.is_zero():
                continue
            for j, bj in enumerate(other.coeffs):
                out[i + j] = out[i + j] + ai * bj
        return RtPoly(self.field, self.t, out)

    def divmod(self, other: RtPoly) -> tuple[RtPoly, RtPoly]:
        """Division with remainder; the divisor must have a unit leading
        coefficient (then the division algorithm over R^t is exact)."""
        other = self._check(other)
        if other.is_zero():
            raise DivisionByZero("division by zero polynomial")
        if not other.coeffs[-1].is_unit():
            raise DivisionByZero("divisor leading coefficient is not a unit")
        lead_inv = other.coeffs[-1].inv()
        db = other.degree
        rem = list(self.coeffs)
        quo = [self._zero() for _ in range(max(0, len(rem) - db))]
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            f = c * lead_inv
            quo[k - db] = f
            for j, bj in enumerate(other.coeffs):
                rem[k - db + j] = rem[k - db + j] - f * bj
        return RtPoly(self.field, self.t, quo), RtPoly(self.field, self.t, rem)

    def mod_u_power(self, k: int) -> RtPoly:
        """Truncate every coefficient to its first k u-parts (image in R^k[x])."""
        return RtPoly(
            self.field,
            k,
            [RtElement(self.field, k, c.parts[:k]) for c in self.coeffs],
        )

    def residue(self) -> FieldPoly:
        """Image modulo u, as a field polynomial."""
        return FieldPoly(self.field, tuple(c.parts[0] for c in self.coeffs))

    def __repr__(self):
        terms = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c.is_zero():
                continue
            cs = repr(c)
            if "+" in cs:
                cs = f"({cs})"
            if e == 0:
                terms.append(cs)
            else:
                var = "x" if e == 1 else f"x^{e}"
                terms.append(var if cs == "1" else f"{cs}*{var}")
        return "+".join(terms) if terms else "0"
