"""Diagonal hermitian forms: signatures, equivalence, verdicts, seed pairs."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latcert import local
from latcert.errors import InvalidInputError
from latcert.hermitian import (
    FAIL,
    ISOMORPHIC,
    NOT_ISOMORPHIC,
    PASS,
    UNKNOWN,
    HermitianForm,
    compose_permutations,
    forms_equivalent,
    global_invariant,
    group_isomorphism_verdict,
    indefinite_places,
    seed_pair_check,
    signature_pattern,
    twist_pattern,
)
from latcert.number_field import CMExtension, NumberField
from latcert.polynomials import Polynomial

F = NumberField(Polynomial((1, -3, -1, 1)))
ALPHA = F.generator()
EXT = CMExtension(F, F.from_rational(-1))
H1 = HermitianForm(EXT, (-ALPHA, -ALPHA, F.from_rational(-1)))
H2 = HermitianForm(EXT, (2 - ALPHA * ALPHA, 2 - ALPHA * ALPHA, F.from_rational(-1)))
TAU = (1, 0, 2)
UNIT_GENS = (ALPHA, ALPHA * ALPHA - 2)


class TestForms:
    def test_rejects_zero_entry(self):
        with pytest.raises(InvalidInputError):
            HermitianForm(EXT, (ALPHA, F.zero(), ALPHA))

    def test_rejects_empty_diagonal(self):
        with pytest.raises(InvalidInputError):
            HermitianForm(EXT, ())

    def test_coerces_rational_entries(self):
        h = HermitianForm(EXT, (1, Fraction(-2, 3), 5))
        assert h.rank == 3 and all(not a.is_zero() for a in h.diag)

    def test_rejects_foreign_entries(self):
        other = NumberField(Polynomial((-2, 0, 1)))
        with pytest.raises(InvalidInputError):
            HermitianForm(EXT, (other.generator(),))

    def test_scale_by_zero(self):
        with pytest.raises(InvalidInputError):
            H1.scale(0)


class TestSignatures:
    def test_first_form_pattern(self):
        assert signature_pattern(H1) == ((2, 1), (0, 3), (0, 3))

    def test_second_form_pattern(self):
        assert signature_pattern(H2) == ((0, 3), (2, 1), (0, 3))

    def test_identity_form_pattern(self):
        ones = HermitianForm(EXT, (1, 1, 1))
        assert signature_pattern(ones) == ((3, 0), (3, 0), (3, 0))

    def test_indefinite_places_differ(self):
        assert indefinite_places(H1) == (0,)
        assert indefinite_places(H2) == (1,)

    def test_pattern_entries_sum_to_rank(self):
        for h in (H1, H2):
            assert all(p + q == h.rank for p, q in signature_pattern(h))

    def test_scaling_flips_but_preserves_gap(self):
        # |pos - neg| per place is invariant under any nonzero scaling
        for lam in (ALPHA, -ALPHA, ALPHA * ALPHA - 2, F.from_rational(-7)):
            scaled = H1.scale(lam)
            for (p1, q1), (p2, q2) in zip(signature_pattern(H1), signature_pattern(scaled)):
                assert abs(p1 - q1) == abs(p2 - q2)

    def test_permutation_of_entries_preserves_pattern(self):
        a, b, c = ALPHA, ALPHA + 1, F.from_rational(-1)
        assert signature_pattern(HermitianForm(EXT, (a, b, c))) == signature_pattern(
            HermitianForm(EXT, (b, a, c))
        )


class TestGlobalInvariant:
    def test_discriminant_of_first_form(self):
        inv = global_invariant(H1)
        assert inv.rank == 3
        assert inv.disc == -(ALPHA * ALPHA)

    def test_definite_form_invariant(self):
        inv = global_invariant(HermitianForm(EXT, (-1, -1, -1)))
        assert inv.disc == F.from_rational(-1)
        assert inv.signatures == ((0, 3), (0, 3), (0, 3))

    def test_scaling_multiplies_disc_by_lambda_cubed(self):
        lam = ALPHA + 2
        assert global_invariant(H1.scale(lam)).disc == lam**3 * global_invariant(H1).disc


class TestEquivalence:
    def test_reflexive(self):
        assert forms_equivalent(H1, H1)
        assert forms_equivalent(H2, H2)

    def test_reference_pair_not_equivalent(self):
        assert not forms_equivalent(H1, H2)

    def test_entry_permutation_equivalent(self):
        a, b, c = ALPHA, ALPHA + 1, F.from_rational(-1)
        assert forms_equivalent(
            HermitianForm(EXT, (a, b, c)), HermitianForm(EXT, (b, a, c))
        )

    def test_square_scaled_twin(self):
        # (alpha - alpha^2) and (2 - alpha^2) have matching signs everywhere
        # and square discriminant ratio
        twin = HermitianForm(EXT, (ALPHA - ALPHA * ALPHA, ALPHA - ALPHA * ALPHA, -1))
        assert forms_equivalent(H2, twin)

    def test_rank_mismatch(self):
        assert not forms_equivalent(H1, HermitianForm(EXT, (ALPHA,)))

    def test_different_extensions_rejected(self):
        other = CMExtension(F, F.from_rational(-2))
        with pytest.raises(InvalidInputError):
            forms_equivalent(H1, HermitianForm(other, (ALPHA, ALPHA, -1)))

    def test_symmetric(self):
        twin = HermitianForm(EXT, (ALPHA - ALPHA * ALPHA, ALPHA - ALPHA * ALPHA, -1))
        assert forms_equivalent(twin, H2)

    @given(st.integers(-4, 4), st.integers(-4, 4))
    @settings(max_examples=25, deadline=None)
    def test_scaling_by_nonzero_rational_square(self, n, d):
        if n == 0 or d == 0:
            return
        lam = Fraction(n * n, d * d)
        # odd rank: disc changes by lam^3 ~ lam mod squares, and a rational
        # square is a norm, so equivalence with the original must hold
        assert forms_equivalent(H1.scale(lam), H1)


class TestVerdict:
    def test_reference_pair_not_isomorphic(self):
        v = group_isomorphism_verdict(H1, H2)
        assert v.status == NOT_ISOMORPHIC
        assert v.witness_place == 0

    def test_self_isomorphic_with_identity_scaling(self):
        v = group_isomorphism_verdict(H1, H1)
        assert v.status == ISOMORPHIC
        assert v.scaling == F.one()

    def test_negated_form_isomorphic(self):
        v = group_isomorphism_verdict(H1, -H1)
        assert v.status == ISOMORPHIC
        assert v.scaling == F.from_rational(-1)

    def test_unit_scaled_form_found_by_search(self):
        scaled = H1.scale(ALPHA * ALPHA - 2)
        v = group_isomorphism_verdict(scaled, H1, unit_gens=UNIT_GENS)
        assert v.status == ISOMORPHIC
        assert forms_equivalent(scaled.scale(v.scaling), H1)

    def test_even_rank_rejected(self):
        pair = HermitianForm(EXT, (ALPHA, -1))
        with pytest.raises(InvalidInputError):
            group_isomorphism_verdict(pair, pair)

    def test_rank_mismatch_rejected(self):
        with pytest.raises(InvalidInputError):
            group_isomorphism_verdict(H1, HermitianForm(EXT, (ALPHA,)))

    def test_unknown_when_search_exhausted(self):
        # same archimedean data but discriminant classes differ by a
        # non-norm; no scaling in a tiny pool can reconcile them
        a = HermitianForm(EXT, (1, 1, 1))
        b = HermitianForm(EXT, (1, 1, ALPHA * ALPHA + 2 * ALPHA + 3))
        v = group_isomorphism_verdict(a, b, height=0)
        assert v.status in (ISOMORPHIC, UNKNOWN)


class TestTwist:
    def test_identity(self):
        s = signature_pattern(H1)
        assert twist_pattern(s, (0, 1, 2)) == s

    def test_reference_transposition(self):
        assert twist_pattern(signature_pattern(H1), TAU) == signature_pattern(H2)

    def test_involution(self):
        s = signature_pattern(H1)
        assert twist_pattern(twist_pattern(s, TAU), TAU) == s

    def test_size_mismatch(self):
        with pytest.raises(InvalidInputError):
            twist_pattern(signature_pattern(H1), (1, 0))

    def test_non_permutation(self):
        with pytest.raises(InvalidInputError):
            twist_pattern(signature_pattern(H1), (0, 0, 2))

    @given(st.permutations(range(3)), st.permutations(range(3)))
    @settings(max_examples=36, deadline=None)
    def test_group_action(self, t1, t2):
        s = signature_pattern(H1)
        lhs = twist_pattern(twist_pattern(s, t1), t2)
        rhs = twist_pattern(s, compose_permutations(t2, t1))
        assert lhs == rhs


class TestSeedPair:
    def probe(self):
        return local.factor_prime(F, 5)[0]

    def test_reference_seed_passes_all_components(self):
        v = seed_pair_check(
            H1, H2, TAU, probe_place=self.probe(), unit_gens=UNIT_GENS
        )
        assert v.status == PASS
        assert [c.status for c in v.components] == [PASS, PASS, PASS, PASS]
        names = [c.name for c in v.components]
        assert names == [
            "standing-assumption",
            "non-isomorphism",
            "twist-match",
            "local-rule",
        ]

    def test_self_pair_fails_non_isomorphism(self):
        v = seed_pair_check(H1, H1, (0, 1, 2), unit_gens=UNIT_GENS)
        assert v.status == FAIL
        assert v.component("non-isomorphism").status == FAIL
        assert v.component("standing-assumption").status == PASS

    def test_definite_partner_fails_standing_assumption(self):
        v = seed_pair_check(H1, HermitianForm(EXT, (1, 1, 1)), TAU)
        assert v.status == FAIL
        assert v.component("standing-assumption").status == FAIL

    def test_wrong_twist_fails(self):
        v = seed_pair_check(H1, H2, (0, 1, 2), unit_gens=UNIT_GENS)
        assert v.component("twist-match").status == FAIL

    def test_even_rank_rejected(self):
        pair = HermitianForm(EXT, (ALPHA, -1))
        with pytest.raises(InvalidInputError):
            seed_pair_check(pair, pair, (0, 1, 2))

    def test_result_string_mentions_components(self):
        v = seed_pair_check(H1, H2, TAU, unit_gens=UNIT_GENS)
        assert "twist-match" in str(v)
