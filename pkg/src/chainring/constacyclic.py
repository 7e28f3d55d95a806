"""Transfer between the cyclic ambient and a twisted-shift ambient.

For a nonzero field scalar lambda, substituting x -> lambda0*x with
lambda0 = lambda**(-p**(m-r)) (s = mq + r) carries (x-1)**(p**s) into a
scalar multiple of x**(p**s) - lambda, giving a ring isomorphism between the
two quotients.  Ideals map to ideals and cardinalities are preserved, so the
classification over the cyclic ambient answers the twisted case for free.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .algebra import FieldCtx, FieldElement
from .code import Code
from .errors import ContextMismatch, InternalInvariantError, ZeroLambda
from .quotient import QuotElem, RingCtx


def twist_unit(field: FieldCtx, lam: FieldElement, s: int) -> FieldElement:
    """The substitution scalar lambda0 with lambda0**(p**s) = lambda**(-1)."""
    if not isinstance(lam, FieldElement):
        lam = field.elem(lam)
    if lam.is_zero():
        raise ZeroLambda("the shift constant must be a nonzero field element")
    r = s % field.m
    lam0 = lam.inv() ** (field.p ** (field.m - r))
    if (lam0 ** (field.p**s)) * lam != field.one:
        raise InternalInvariantError("twist unit failed its defining identity")
    return lam0


class SigmaMap:
    """The substitution isomorphism from R^{t,(x-1)^(p^s)} to R^{t,x^(p^s)-lambda}."""

    def __init__(self, field: FieldCtx, t: int, s: int, lam):
        lam = field.elem(lam) if not isinstance(lam, FieldElement) else lam
        self.field = field
        self.s = s
        self.lam = lam
        self.lam0 = twist_unit(field, lam, s)
        ps = field.p**s
        x = field.poly_x()
        one = field.poly([1])
        self.source = RingCtx(field, t, (x - one) ** ps)
        target_poly = field.poly([field.neg(lam.val)] + [0] * (ps - 1) + [1])
        self.target = RingCtx(field, t, target_poly)
        self._fwd = self._scale_vector(self.lam0)
        self._bwd = self._scale_vector(self.lam0.inv())

    def _scale_vector(self, unit: FieldElement) -> np.ndarray:
        """Per-coordinate scale factors unit**k for the column u^l x^k."""
        N, t = self.source.N, self.source.t
        powers = np.zeros(N, dtype=linalg.DTYPE)
        acc = self.field.one
        for k in range(N):
            powers[k] = acc.val
            acc = acc * unit
        return np.tile(powers, t)

    def apply(self, c: QuotElem) -> QuotElem:
        if c.ctx != self.source:
            raise ContextMismatch("element does not live in the source ring")
        return QuotElem(self.target, self.field.tables.mul[self._fwd, c.vec])

    def apply_inverse(self, c: QuotElem) -> QuotElem:
        if c.ctx != self.target:
            raise ContextMismatch("element does not live in the target ring")
        return QuotElem(self.source, self.field.tables.mul[self._bwd, c.vec])

    def transfer(self, code: Code) -> Code:
        """Image ideal in the target ring; rank is preserved."""
        if code.ctx != self.source:
            raise ContextMismatch("code does not live in the source ring")
        rows = self.field.tables.mul[self._fwd[None, :], code.basis]
        out = Code.from_span_rows(self.target, rows, gens=tuple(self.apply(g) for g in code.gens))
        if out.rank != code.rank:
            raise InternalInvariantError("substitution must preserve dimensions")
        return out
