"""The substitution isomorphism into twisted-shift ambients."""

import itertools

import pytest

from chainring import Code
from chainring.constacyclic import SigmaMap, twist_unit
from chainring.errors import ZeroLambda
from chainring.oracle import enumerate_ideals


class TestTwistUnit:
    def test_identity(self, F3):
        assert twist_unit(F3, F3.one, 1) == F3.one

    def test_negacyclic_char3(self, F3):
        lam = F3.elem(2)  # -1
        lam0 = twist_unit(F3, lam, 1)
        assert lam0 == F3.elem(2)
        assert lam0**3 == lam.inv()

    def test_extension_field(self, F4):
        a = F4.gen
        lam0 = twist_unit(F4, a, 1)
        assert lam0 == (a.inv()) ** 2
        assert lam0**2 == a.inv()

    def test_zero_rejected(self, F3):
        with pytest.raises(ZeroLambda):
            twist_unit(F3, F3.zero, 1)

    def test_defining_identity_grid(self, F3, F4, F9):
        for field in (F3, F4, F9):
            for s in (1, 2):
                for lam in field.elements():
                    if lam.is_zero():
                        continue
                    lam0 = twist_unit(field, lam, s)
                    assert (lam0 ** (field.p**s)) * lam == field.one


@pytest.fixture(scope="module")
def sigma(F3):
    return SigmaMap(F3, t=2, s=1, lam=F3.elem(2))


class TestSigmaMap:
    def test_constants_fixed(self, sigma):
        assert sigma.apply(sigma.source.one()) == sigma.target.one()
        assert sigma.apply(sigma.source.zero()) == sigma.target.zero()

    def test_x_scales(self, sigma):
        got = sigma.apply(sigma.source.monomial(0, 1))
        assert got == sigma.target.monomial(0, 1, coeff=sigma.lam0.val)

    def test_shift_root_becomes_zero_divisor(self, sigma):
        # sigma(x - 1) = lam0*x - 1 = 2x - 1 = 2(x + 1) in the target
        src = sigma.source
        img = sigma.apply(src.monomial(0, 1) - src.one())
        assert img.canonical_str() == "2*x+2"
        tgt = sigma.target
        other = (tgt.monomial(0, 1) + tgt.one()) ** 2
        assert not img.is_unit()
        assert (img * other * other).is_zero() or not (img * other).is_unit()

    def test_ring_homomorphism_exhaustive_small(self, F3):
        sig = SigmaMap(F3, t=1, s=1, lam=F3.elem(2))
        els = [sig.source.element_at(i) for i in range(sig.source.element_count())]
        for x, y in itertools.product(els, els):
            assert sig.apply(x * y) == sig.apply(x) * sig.apply(y)
            assert sig.apply(x + y) == sig.apply(x) + sig.apply(y)

    def test_roundtrip_exhaustive(self, sigma):
        for i in range(sigma.source.element_count()):
            e = sigma.source.element_at(i)
            assert sigma.apply_inverse(sigma.apply(e)) == e

    def test_transfer_trivial(self, sigma):
        assert sigma.transfer(Code.zero(sigma.source)).is_zero()
        assert sigma.transfer(Code.unit(sigma.source)).is_unit_ideal()

    def test_transfer_bijection_with_cardinalities(self, sigma):
        source_ideals = enumerate_ideals(sigma.source)
        target_ideals = enumerate_ideals(sigma.target)
        images = {}
        for C in source_ideals:
            img = sigma.transfer(C)
            assert img.is_closed_under_ring()
            assert img.log_cardinality() == C.log_cardinality()
            images[img.key()] = img
        assert len(images) == len(source_ideals) == len(target_ideals)
        assert set(images) == {c.key() for c in target_ideals}
