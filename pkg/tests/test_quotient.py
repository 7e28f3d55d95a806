"""Quotient-ring contexts, residues, the f-power coordinate system."""

import itertools

import pytest

from chainring import QuotElem, RingCtx, RtElement, RtPoly
from chainring.errors import (
    BadLevel,
    DegreeMismatch,
    NonUnitLeadingCoefficient,
    NotSpecialCase,
)

from conftest import ring_f_power


def all_elements(ctx):
    return [ctx.element_at(i) for i in range(ctx.element_count())]


class TestRingNew:
    def test_special_detection(self, F2):
        R = ring_f_power(F2, 4, 1)
        f, d, s = R.special
        assert repr(f) == "x+1" and d == 1 and s == 1

    def test_u_coefficient_breaks_special(self, F2):
        # x^2 + u x + 1 has a u-level coefficient, so no f^(p^s) shape
        omega = RtPoly(
            F2,
            2,
            [
                RtElement(F2, 2, [1, 0]),
                RtElement(F2, 2, [0, 1]),
                RtElement(F2, 2, [1, 0]),
            ],
        )
        R = RingCtx(F2, 2, omega)
        assert R.special is None
        with pytest.raises(NotSpecialCase):
            R.f

    def test_two_factor_residue_is_general(self, F3):
        x, one = F3.poly_x(), F3.poly([1])
        R = RingCtx(F3, 1, x * x - one)
        assert R.special is None
        assert len(R.omega0_factorization.factors) == 2

    def test_multiplicity_not_p_power_is_general(self, F2):
        x, one = F2.poly_x(), F2.poly([1])
        assert RingCtx(F2, 3, (x - one) ** 3).special is None

    def test_non_unit_leading_coefficient(self, F2):
        omega = RtPoly(F2, 2, [RtElement(F2, 2, [1, 0]), RtElement(F2, 2, [0, 1])])
        with pytest.raises(NonUnitLeadingCoefficient):
            RingCtx(F2, 2, omega)

    def test_unit_lead_normalized_to_monic(self, F3):
        x, one = F3.poly_x(), F3.poly([1])
        R = RingCtx(F3, 2, (x - one).scale(2))
        assert R.omega.coeffs[-1].parts[0] == 1

    def test_degree_zero_rejected(self, F2):
        with pytest.raises(DegreeMismatch):
            RingCtx(F2, 2, F2.poly([1]))


class TestArithmetic:
    def test_multiplicative_identity(self, R4s1):
        for i in range(0, R4s1.element_count(), 17):
            c = R4s1.element_at(i)
            assert R4s1.one() * c == c

    def test_nilpotent_generator(self, R4s1):
        f = R4s1.monomial(0, 1) + R4s1.one()
        assert (f * f).is_zero()

    def test_reduction_with_u_coefficient(self, F2):
        # in R^{2, x^2}: (x + u) * x = ux
        x2 = RtPoly(
            F2, 2, [RtElement(F2, 2, [0, 0]), RtElement(F2, 2, [0, 0]), RtElement(F2, 2, [1, 0])]
        )
        R = RingCtx(F2, 2, x2)
        lhs = (R.monomial(0, 1) + R.monomial(1, 0)) * R.monomial(0, 1)
        assert lhs == R.monomial(1, 1)

    def test_assoc_comm_exhaustive_16(self, R2s1):
        els = all_elements(R2s1)
        for a, b in itertools.product(els, els):
            assert a * b == b * a
        for a, b, c in itertools.product(els[:8], els[:8], els):
            assert (a * b) * c == a * (b * c)

    def test_unit_iff_invertible_exhaustive(self, R2s1, F3):
        y = F3.poly_x() - F3.poly([1])
        for ctx in (R2s1, RingCtx(F3, 2, y**2)):
            els = all_elements(ctx)
            one = ctx.one()
            for e in els:
                assert any(e * b == one for b in els) == e.is_unit()

    def test_unit_iff_mul_matrix_invertible(self, F2, F3, F4):
        from chainring import linalg

        rings = [
            ring_f_power(F3, 2, 1, shift=1),
            ring_f_power(F4, 2, 1),
            RingCtx(F2, 2, F2.poly([1, 1, 1]) ** 2),  # d = 2
        ]
        for ctx in rings:
            for e in all_elements(ctx):
                basis, _ = linalg.rref(ctx.mul_matrix(e.vec), ctx.tb)
                assert (basis.shape[0] == ctx.n) == e.is_unit()
                if ctx.is_special:
                    assert e._is_unit_special() == e._is_unit_general()

    def test_x_is_unit_in_nilpotent_f_ring(self, R4s2):
        assert R4s2.monomial(0, 1).is_unit()
        assert not R4s2.monomial(1, 0).is_unit()


class TestReduceModU:
    def test_identity_at_t(self, R4s1):
        e = R4s1.monomial(2, 1) + R4s1.one()
        assert e.reduce_mod_u(R4s1.t) is e

    def test_residue_kills_u(self, R4s1):
        g = R4s1.monomial(1, 1) + R4s1.monomial(3, 0)
        e = R4s1.one() + g * R4s1.monomial(1, 0)
        mu = e.reduce_mod_u(1)
        assert mu == R4s1.residue_ring.one()

    def test_one_step_kernel(self, R4s1):
        c = R4s1.monomial(0, 1) + R4s1.one()
        top = c * R4s1.monomial(R4s1.t - 1, 0)
        assert top.reduce_mod_u(R4s1.t - 1).is_zero()

    def test_hom_property_samples(self, R4s1):
        els = [R4s1.element_at(i) for i in range(0, R4s1.element_count(), 31)]
        for k in (1, 2, 3):
            target_one = R4s1.reduced_ring(k).one()
            assert R4s1.one().reduce_mod_u(k) == target_one
            for a, b in itertools.product(els[:12], els[:12]):
                assert (a + b).reduce_mod_u(k) == a.reduce_mod_u(k) + b.reduce_mod_u(k)
                assert (a * b).reduce_mod_u(k) == a.reduce_mod_u(k) * b.reduce_mod_u(k)

    def test_bad_level(self, R4s1):
        with pytest.raises(BadLevel):
            R4s1.one().reduce_mod_u(0)


class TestFBasis:
    def test_f_square_coords(self, R4s2):
        e = R4s2.shifted_f_power(0, 2)
        coords = e.to_f_basis()
        assert coords.coeff(0, 2, 0) == 1
        assert coords.array.sum() == 1

    def test_roundtrip_exhaustive(self, F2, F3, F4):
        rings = [
            ring_f_power(F2, 2, 1),
            ring_f_power(F2, 4, 1),
            ring_f_power(F3, 2, 1),
            ring_f_power(F4, 2, 1),
            RingCtx(F2, 2, F2.poly([1, 1, 1]) ** 2),
        ]
        for ctx in rings:
            for e in all_elements(ctx):
                assert QuotElem.from_f_basis(e.to_f_basis()) == e

    def test_change_of_basis_char3(self, F3):
        # x = 1 + (x - 1)
        ctx = ring_f_power(F3, 1, 1)
        coords = ctx.monomial(0, 1).to_f_basis()
        assert coords.coeff(0, 0, 0) == 1 and coords.coeff(0, 1, 0) == 1

    def test_not_special(self, F3):
        x, one = F3.poly_x(), F3.poly([1])
        ctx = RingCtx(F3, 1, x * x - one)
        with pytest.raises(NotSpecialCase):
            ctx.one().to_f_basis()


class TestValF:
    def test_powers(self, R4s2):
        for k in range(R4s2.ps + 1):
            assert R4s2.val_f(R4s2.f_power(k)) == min(k, R4s2.ps)

    def test_zero_sentinel(self, R4s2):
        assert R4s2.val_f(R4s2.field.poly([])) == R4s2.ps

    def test_char2_square(self, R4s2):
        x, one = R4s2.field.poly_x(), R4s2.field.poly([1])
        assert R4s2.val_f(x * x + one) == 2

    def test_superadditive(self, R4s2):
        res = R4s2.residue_ring
        els = [res.element_at(i) for i in range(res.element_count())]
        for a, b in itertools.product(els[:10], els[:10]):
            va, vb = R4s2.val_f(a), R4s2.val_f(b)
            vab = R4s2.val_f(a * b)
            assert vab >= min(va + vb, R4s2.ps)
            if va + vb < R4s2.ps:
                assert vab == va + vb


def test_canonical_str_examples(R4s2, F4):
    e = R4s2.shifted_f_power(3, 2)
    assert e.canonical_str() == "u^3*x^2+u^3"
    assert R4s2.zero().canonical_str() == "0"
    assert R4s2.one().canonical_str() == "1"
    ctx4 = ring_f_power(F4, 2, 1)
    mixed = ctx4.monomial(0, 1, coeff=F4.gen.val) + ctx4.monomial(1, 0)
    assert mixed.canonical_str() == "a*x+u"
