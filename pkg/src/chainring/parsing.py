"""Recursive-descent parser for polynomial literals.

Grammar (whitespace insignificant, exponents are non-negative decimals):

    expr   := term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := base ("^" nat)?
    base   := nat | "a" | "u" | "x" | "(" expr ")" | "-" factor

Integers reduce mod p, ``a`` is the extension-field generator (rejected over
prime fields), ``u`` the nilpotent coefficient, ``x`` the ring variable.
Parses build an exact (u-level, x-degree) -> coefficient map, so round
trips with the canonical printer are the identity on ring elements.
"""

from __future__ import annotations

from .algebra import FieldCtx, FieldPoly, RtElement, RtPoly
from .errors import ExponentOverflow, PolyParseError, UnknownSymbol
from .quotient import QuotElem, RingCtx

EXPONENT_CAP = 512


class _SymPoly:
    """Polynomial in u and x over the field, as {(ulevel, xdeg): coeff}."""

    __slots__ = ("field", "t", "terms")

    def __init__(self, field: FieldCtx, t: int, terms=None):
        self.field = field
        self.t = t
        self.terms = dict(terms or {})

    @classmethod
    def const(cls, field, t, val):
        return cls(field, t, {(0, 0): val} if val else {})

    def _put(self, key, val):
        if val:
            self.terms[key] = val
        else:
            self.terms.pop(key, None)

    def add(self, other):
        out = _SymPoly(self.field, self.t, self.terms)
        for key, val in other.terms.items():
            out._put(key, self.field.add(out.terms.get(key, 0), val))
        return out

    def neg(self):
        return _SymPoly(
            self.field, self.t, {k: self.field.neg(v) for k, v in self.terms.items()}
        )

    def sub(self, other):
        return self.add(other.neg())

    def mul(self, other):
        out = _SymPoly(self.field, self.t)
        for (l1, k1), v1 in self.terms.items():
            for (l2, k2), v2 in other.terms.items():
                if l1 + l2 >= self.t:
                    continue
                key = (l1 + l2, k1 + k2)
                out._put(key, self.field.add(out.terms.get(key, 0), self.field.mul(v1, v2)))
        return out

    def pow(self, e):
        out = _SymPoly.const(self.field, self.t, 1)
        base = self
        while e:
            if e & 1:
                out = out.mul(base)
            base = base.mul(base)
            e >>= 1
        return out

    def max_xdeg(self):
        return max((k for (_, k) in self.terms), default=0)

    def to_rt_poly(self) -> RtPoly:
        deg = self.max_xdeg()
        coeffs = []
        for k in range(deg + 1):
            parts = [self.terms.get((l, k), 0) for l in range(self.t)]
            coeffs.append(RtElement(self.field, self.t, parts))
        return RtPoly(self.field, self.t, coeffs)

    def to_field_poly(self) -> FieldPoly:
        if any(l for (l, _) in self.terms):
            raise UnknownSymbol("literal must not involve u here", 0)
        deg = self.max_xdeg()
        return FieldPoly(self.field, tuple(self.terms.get((0, k), 0) for k in range(deg + 1)))


class _Parser:
    def __init__(self, text: str, field: FieldCtx, t: int, allow_u: bool = True):
        self.text = text
        self.pos = 0
        self.field = field
        self.t = t
        self.allow_u = allow_u

    def error(self, message, cls=PolyParseError):
        raise cls(message, self.pos)

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def nat(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        value = int(self.text[start : self.pos])
        if value > EXPONENT_CAP:
            self.pos = start
            self.error(f"number exceeds the cap {EXPONENT_CAP}", ExponentOverflow)
        return value

    def expr(self) -> _SymPoly:
        out = self.term()
        while True:
            if self.take("+"):
                out = out.add(self.term())
            elif self.take("-"):
                out = out.sub(self.term())
            else:
                return out

    def term(self) -> _SymPoly:
        out = self.factor()
        while self.take("*"):
            out = out.mul(self.factor())
        return out

    def factor(self) -> _SymPoly:
        base = self.base()
        if self.take("^"):
            return base.pow(self.nat())
        return base

    def base(self) -> _SymPoly:
        ch = self.peek()
        if ch.isdigit():
            return _SymPoly.const(self.field, self.t, self.field.elem(self.nat() % self.field.p).val)
        if ch == "a":
            if self.field.m == 1:
                self.error("symbol a needs an extension field", UnknownSymbol)
            self.pos += 1
            return _SymPoly(self.field, self.t, {(0, 0): self.field.gen.val})
        if ch == "u":
            if not self.allow_u:
                self.error("symbol u is not allowed in this literal", UnknownSymbol)
            self.pos += 1
            return _SymPoly(self.field, self.t, {(1, 0): 1} if self.t > 1 else {})
        if ch == "x":
            self.pos += 1
            return _SymPoly(self.field, self.t, {(0, 1): 1})
        if ch == "(":
            self.pos += 1
            out = self.expr()
            if not self.take(")"):
                self.error("expected )")
            return out
        if ch == "-":
            self.pos += 1
            return self.factor().neg()
        if ch == "":
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}", UnknownSymbol)

    def parse(self) -> _SymPoly:
        out = self.expr()
        self._skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return out


def parse_rt_poly(text: str, field: FieldCtx, t: int) -> RtPoly:
    """Parse a literal into a polynomial over F_{p^m}[u]/(u^t)."""
    return _Parser(text, field, t).parse().to_rt_poly()


def parse_field_poly(text: str, field: FieldCtx) -> FieldPoly:
    """Parse a u-free literal into a polynomial over the field."""
    return _Parser(text, field, 1, allow_u=False).parse().to_field_poly()


def parse_element(text: str, ctx: RingCtx) -> QuotElem:
    """Parse a literal and reduce it into the quotient ring."""
    return ctx.from_rt_poly(parse_rt_poly(text, ctx.field, ctx.t))


def parse_field_scalar(text: str, field: FieldCtx):
    """Parse a constant literal (no u, no x) into a field element."""
    poly = parse_field_poly(text, field)
    if poly.degree is not None and poly.degree > 0:
        raise UnknownSymbol("literal must be constant here", 0)
    return field.elem(poly.coeffs[0] if poly.coeffs else 0)
