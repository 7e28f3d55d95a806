"""Ideal construction, colon ideals, torsion, canonical generators."""

import pytest

from chainring import Code
from chainring.errors import BadIndex, ContextMismatch, TrivialIdeal


def u(ctx, j=1):
    return ctx.monomial(j, 0)


class TestSpan:
    def test_zero_and_unit(self, R4s1):
        assert Code.from_gens(R4s1, [R4s1.zero()]).rank == 0
        assert Code.from_gens(R4s1, [R4s1.one()]).rank == R4s1.n

    def test_rank_one_span(self, R4s1):
        C = Code.from_gens(R4s1, [R4s1.shifted_f_power(3, 1)])
        assert C.rank == 1

    def test_contains_basics(self, R4s1):
        g = R4s1.shifted_f_power(2, 1)
        C = Code.from_gens(R4s1, [g])
        assert C.contains(R4s1.zero())
        assert C.contains(g)
        assert Code.unit(R4s1).contains(R4s1.one())
        assert not C.contains(R4s1.one())

    def test_context_mismatch(self, R4s1, R4s2):
        with pytest.raises(ContextMismatch):
            Code.from_gens(R4s1, [R4s2.one()])

    def test_closure_property(self, R4s2):
        C = Code.from_gens(R4s2, [R4s2.shifted_f_power(1, 2) + R4s2.shifted_f_power(2, 1)])
        assert C.is_closed_under_ring()


class TestIdealArithmetic:
    def test_sum_identities(self, R4s1):
        C = Code.from_gens(R4s1, [R4s1.shifted_f_power(2, 1)])
        Z = Code.zero(R4s1)
        assert C + Z == C
        assert C + C == C

    def test_nilpotent_multiple(self, R4s1):
        top = Code.from_gens(R4s1, [u(R4s1, R4s1.t - 1)])
        assert top.mul_elem(u(R4s1)).is_zero()

    def test_colon_identity(self, R4s1):
        C = Code.from_gens(R4s1, [R4s1.shifted_f_power(1, 1)])
        assert C.colon(R4s1.one()) == C

    def test_colon_annihilator(self, R4s1):
        assert Code.zero(R4s1).colon(u(R4s1)) == Code.from_gens(R4s1, [u(R4s1, 3)])

    def test_colon_u_square_exhaustive(self, R4s1):
        # solve u*x in <u^2> by scanning the whole 256-element ring
        C2 = Code.from_gens(R4s1, [u(R4s1, 2)])
        got = C2.colon(u(R4s1))
        uu = u(R4s1)
        members = [
            R4s1.element_at(i)
            for i in range(R4s1.element_count())
            if C2.contains(uu * R4s1.element_at(i))
        ]
        assert got == Code.from_gens(R4s1, members)
        assert got == Code.from_gens(R4s1, [u(R4s1)])


class TestDecompose:
    def test_zero_ideal(self, R2s1):
        lifts, rem = Code.zero(R2s1).decompose(u(R2s1))
        assert lifts == [] and rem.is_zero()

    def test_unit_ideal(self, R2s1):
        C = Code.unit(R2s1)
        lifts, rem = C.decompose(u(R2s1))
        assert len(lifts) == 1 and lifts[0].residue_poly().degree == 0
        assert rem <= C
        assert Code.from_gens(R2s1, lifts) + rem == C

    def test_u_ideal(self, R2s1):
        C = Code.from_gens(R2s1, [u(R2s1)])
        lifts, rem = C.decompose(u(R2s1))
        assert lifts == []
        assert rem == C

    def test_one_step_level(self, R4s1):
        C = Code.from_gens(R4s1, [R4s1.shifted_f_power(0, 1) + u(R4s1, 1)])
        lifts, rem = C.decompose(u(R4s1, 3))
        assert Code.from_gens(R4s1, lifts) + rem == C

    def test_reconstruction_all_ideals_16(self, R2s1):
        from chainring.oracle import enumerate_ideals

        for C in enumerate_ideals(R2s1):
            lifts, rem = C.decompose(u(R2s1))
            assert Code.from_gens(R2s1, lifts) + rem == C


class TestTorsion:
    def test_zero_and_unit(self, R4s1):
        Z, U = Code.zero(R4s1), Code.unit(R4s1)
        for i in range(4):
            assert Z.torsion(i).rank == 0
            assert U.torsion(i).rank == R4s1.N
        assert Z.torsion_profile() == (2, 2, 2, 2)
        assert U.torsion_profile() == (0, 0, 0, 0)

    def test_top_level_principal(self, R4s2):
        # Tor_3 of <u^3 f^a> is <f^a>
        res = R4s2.residue_ring
        for a in range(R4s2.ps):
            C = Code.from_gens(R4s2, [R4s2.shifted_f_power(3, a)])
            want = Code.from_gens(res, [res.from_field_poly(R4s2.f_power(a))])
            assert C.torsion(3) == want

    def test_residue_is_torsion_zero(self, R4s1):
        g = R4s1.shifted_f_power(0, 1) + u(R4s1, 2)
        C = Code.from_gens(R4s1, [g])
        tor0 = C.torsion(0)
        res = R4s1.residue_ring
        assert tor0 == Code.from_gens(res, [res.from_field_poly(R4s1.f_power(1))])

    def test_profile_example(self, R4s1):
        C = Code.from_gens(R4s1, [R4s1.shifted_f_power(3, 1)])
        assert C.torsion_profile() == (2, 2, 2, 1)
        assert C.log_cardinality() == 1

    def test_bad_index(self, R4s1):
        with pytest.raises(BadIndex):
            Code.zero(R4s1).torsion(4)

    def test_chain_and_product_small(self, R33_F3):
        from chainring.oracle import enumerate_ideals

        ctx = R33_F3
        dm = ctx.d * ctx.field.m
        for C in enumerate_ideals(ctx)[:40]:
            tors = [C.torsion(i) for i in range(3)]
            assert tors[0] <= tors[1] <= tors[2]
            assert C.rank == sum(t.rank for t in tors)
            profile = C.torsion_profile()
            assert C.log_cardinality() == dm * (ctx.t * ctx.ps - sum(profile))

    def test_upper_bound_on_new_levels(self, R4s2):
        # members u^i (f^l + u g) force l >= T_i
        g = R4s2.shifted_f_power(1, 2) + R4s2.shifted_f_power(2, 1)
        C = Code.from_gens(R4s2, [g])
        profile = C.torsion_profile()
        for i in range(4):
            for l in range(R4s2.ps):
                probe = R4s2.shifted_f_power(i, l)
                for z in [R4s2.zero(), R4s2.shifted_f_power(min(i + 1, 3), 0)]:
                    if C.contains(probe + z * u(R4s2)):
                        assert l >= profile[i]


class TestMinTopExponent:
    def test_unit_ideal_all_shifts(self, R4s2):
        U = Code.unit(R4s2)
        for j in range(4):
            assert U.min_top_exponent(j) == 0

    def test_zero_ideal(self, R4s2):
        assert Code.zero(R4s2).min_top_exponent(0) == R4s2.ps

    def test_level2_generator_formula(self, R4s2):
        ps = R4s2.ps
        for a in range(ps):
            for tau in range(a):
                g = R4s2.shifted_f_power(2, a) + R4s2.shifted_f_power(3, tau)
                L = Code.from_gens(R4s2, [g]).min_top_exponent(0)
                assert L == min(a, ps - a + tau)

    def test_bad_shift(self, R4s2):
        with pytest.raises(BadIndex):
            Code.unit(R4s2).min_top_exponent(4)


class TestCanonicalGenerators:
    def test_principal_top_level(self, R4s2):
        C = Code.from_gens(R4s2, [R4s2.shifted_f_power(3, 2)])
        gens = C.canonical_generators()
        assert gens == [R4s2.shifted_f_power(3, 2)]
        assert C.type_signature() == frozenset({3})

    def test_level0_witness_shape(self, R4s2):
        g = R4s2.shifted_f_power(0, 3) + R4s2.shifted_f_power(1, 1)
        C = Code.from_gens(R4s2, [g])
        gens = C.canonical_generators()
        lead = gens[0]
        assert lead.u_valuation() == 0
        assert lead.residue_poly() == R4s2.f_power(3)
        assert Code.from_gens(R4s2, gens) == C

    def test_trivial_raises(self, R4s2):
        with pytest.raises(TrivialIdeal):
            Code.zero(R4s2).canonical_generators()
        with pytest.raises(TrivialIdeal):
            Code.unit(R4s2).canonical_generators()

    def test_roundtrip_all_ideals(self, R33_F3):
        from chainring.oracle import enumerate_ideals

        for C in enumerate_ideals(R33_F3):
            if C.is_zero() or C.is_unit_ideal():
                continue
            gens = C.canonical_generators()
            assert len(gens) <= R33_F3.t
            assert Code.from_gens(R33_F3, gens) == C

    def test_signatures(self, R4s1):
        assert Code.zero(R4s1).type_signature() == frozenset()
        assert Code.unit(R4s1).type_signature() == frozenset({0})
