"""Local arithmetic: places, valuations, splitting, norm tests, symbols.

The running example field is Q[x]/(x^3 - x^2 - 3x + 1) with delta = -1; the
degree-1 field recovers classical imaginary-quadratic facts, which serve as
an independent check on the dyadic enumeration machinery.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latcert import local
from latcert.errors import InconclusiveError, InvalidInputError, UnsupportedPlaceError
from latcert.intfactor import prime_factors
from latcert.local import (
    FinitePlace,
    factor_prime,
    hilbert_product_check,
    hilbert_symbol_qq,
    local_group_isomorphic,
    local_norm_test,
    residue_field,
    residue_image,
    splitting_in_E,
    valuation,
)
from latcert.number_field import CMExtension, NumberField, RealPlace
from latcert.polynomials import Polynomial

F = NumberField(Polynomial((1, -3, -1, 1)))
ALPHA = F.generator()
EXT = CMExtension(F, F.from_rational(-1))
RATIONALS = NumberField(Polynomial((0, 1)))  # degree-1 field, i.e. Q itself


def place_above(field, ell, index=0):
    return factor_prime(field, ell)[index]


class TestFactorPrime:
    def test_totally_ramified_dyadic_place(self):
        places = factor_prime(F, 2)
        assert len(places) == 1
        v = places[0]
        assert (v.factor, v.ramification, v.residue_degree) == ((1, 1), 3, 1)

    def test_inert_prime(self):
        (v,) = factor_prime(F, 3)
        assert v.residue_degree == 3 and v.ramification == 1

    def test_split_structure_at_5(self):
        places = factor_prime(F, 5)
        assert [(v.factor, v.ramification) for v in places] == [
            ((2, 1), 1),
            ((3, 2, 1), 1),
        ]

    def test_ramified_structure_at_37(self):
        places = factor_prime(F, 37)
        assert [(v.factor, v.ramification) for v in places] == [
            ((7, 1), 1),
            ((33, 1), 2),
        ]

    def test_sum_of_e_times_f(self):
        for ell in (2, 3, 5, 13, 19, 37, 101):
            places = factor_prime(F, ell)
            assert sum(v.ramification * v.residue_degree for v in places) == 3

    def test_dedekind_refusal(self):
        # 2 divides the index of Z[x]/(x^3 - x^2 - 2x - 8) in its maximal order
        field = NumberField(Polynomial((-8, -2, -1, 1)))
        with pytest.raises(UnsupportedPlaceError):
            factor_prime(field, 2)

    def test_rejects_composite_modulus(self):
        with pytest.raises(InvalidInputError):
            factor_prime(F, 6)

    def test_residue_field_orders(self):
        assert residue_field(place_above(F, 2)).order == 2
        assert residue_field(place_above(F, 3)).order == 27
        assert residue_field(place_above(F, 5, 1)).order == 25


class TestValuation:
    def test_uniformizer_order_at_dyadic_place(self):
        assert valuation(place_above(F, 2), F.from_rational(2)) == 3

    def test_units_have_valuation_zero(self):
        v = place_above(F, 2)
        assert valuation(v, ALPHA) == 0
        assert valuation(v, ALPHA * ALPHA - 2) == 0

    def test_norm_two_element(self):
        # N(alpha + 1) = -2, so alpha + 1 carries the full dyadic valuation once
        assert valuation(place_above(F, 2), ALPHA + 1) == 1

    def test_ramified_place_at_37(self):
        unram, ram = factor_prime(F, 37)
        assert valuation(unram, ALPHA - 4) == 0
        assert valuation(ram, ALPHA - 4) == 1

    def test_denominators_count_negatively(self):
        v = place_above(F, 2)
        assert valuation(v, F.from_rational(Fraction(3, 4))) == -6
        assert valuation(v, (ALPHA + 1) / 2) == -2

    def test_zero_rejected(self):
        with pytest.raises(InvalidInputError):
            valuation(place_above(F, 2), F.zero())

    def test_wrong_field_rejected(self):
        with pytest.raises(InvalidInputError):
            valuation(place_above(F, 2), RATIONALS.one())

    @given(st.tuples(*[st.integers(-6, 6)] * 3), st.tuples(*[st.integers(-6, 6)] * 3))
    @settings(max_examples=40, deadline=None)
    def test_valuation_is_additive(self, xs, ys):
        x, y = F.element(xs), F.element(ys)
        if x.is_zero() or y.is_zero():
            return
        for v in (place_above(F, 2), place_above(F, 37, 1)):
            assert valuation(v, x * y) == valuation(v, x) + valuation(v, y)


class TestResidueImage:
    def test_generator_image_at_dyadic_place(self):
        v = place_above(F, 2)
        assert residue_image(v, ALPHA) == (1,)

    def test_image_satisfies_factor(self):
        v = place_above(F, 5, 1)
        k = residue_field(v)
        image = residue_image(v, ALPHA)
        assert k.embed(tuple(c for c in v.factor)) == ()  # factor vanishes at x
        assert image == (0, 1)

    def test_rational_denominator_inverts(self):
        v = place_above(F, 5)
        assert residue_image(v, F.from_rational(Fraction(1, 2))) == (3,)

    def test_blocked_denominator(self):
        with pytest.raises(InvalidInputError):
            residue_image(place_above(F, 2), F.from_rational(Fraction(1, 2)))


class TestHilbertSymbolQQ:
    FROZEN = [
        ((-1, -1, 2), -1),
        ((-1, 2, 2), 1),
        ((2, 2, 2), 1),
        ((5, 2, 2), -1),
        ((-1, -37, 2), -1),
        ((2, 3, 3), -1),
        ((3, 3, 3), -1),
        ((-1, 3, 3), -1),
        ((5, 5, 5), 1),
        ((3, 5, 5), -1),
        ((-1, -1, None), -1),
        ((-1, 5, None), 1),
        ((Fraction(-3, 4), Fraction(7, 2), 2), -1),
    ]

    @pytest.mark.parametrize("args,expected", FROZEN)
    def test_frozen_values(self, args, expected):
        a, b, prime = args
        assert hilbert_symbol_qq(a, b, prime) == expected

    def test_zero_rejected(self):
        with pytest.raises(InvalidInputError):
            hilbert_symbol_qq(0, 3, 2)

    def test_composite_place_rejected(self):
        with pytest.raises(InvalidInputError):
            hilbert_symbol_qq(3, 5, 15)

    def test_squares_are_always_norms(self):
        for prime in (None, 2, 3, 5, 7):
            assert hilbert_symbol_qq(Fraction(9, 4), -7, prime) == 1

    @given(
        st.fractions(min_value=-50, max_value=50, max_denominator=30),
        st.fractions(min_value=-50, max_value=50, max_denominator=30),
    )
    @settings(max_examples=150, deadline=None)
    def test_global_product_formula(self, a, b):
        if a == 0 or b == 0:
            return
        primes = {2}
        for x in (a, b):
            primes |= set(prime_factors(x.numerator))
            primes |= set(prime_factors(x.denominator))
        product = hilbert_symbol_qq(a, b, None)
        for ell in sorted(primes):
            product *= hilbert_symbol_qq(a, b, ell)
        assert product == 1

    @given(
        st.fractions(min_value=-30, max_value=30, max_denominator=20),
        st.fractions(min_value=-30, max_value=30, max_denominator=20),
        st.fractions(min_value=-30, max_value=30, max_denominator=20),
        st.sampled_from([None, 2, 3, 5, 7, 11]),
    )
    @settings(max_examples=120, deadline=None)
    def test_bimultiplicative(self, a, b, c, prime):
        if 0 in (a, b, c):
            return
        lhs = hilbert_symbol_qq(a, b * c, prime)
        rhs = hilbert_symbol_qq(a, b, prime) * hilbert_symbol_qq(a, c, prime)
        assert lhs == rhs


class TestSplitting:
    # (prime, place index) -> expected behavior in E = F(sqrt(-1))
    TABLE = [
        (2, 0, "ramified"),
        (3, 0, "inert"),
        (5, 0, "split"),
        (5, 1, "split"),
        (13, 0, "split"),
        (13, 1, "split"),
        (19, 0, "inert"),
        (19, 1, "split"),
        (37, 0, "split"),
        (37, 1, "split"),
    ]

    @pytest.mark.parametrize("ell,idx,expected", TABLE)
    def test_gaussian_splitting_over_cubic(self, ell, idx, expected):
        assert splitting_in_E(EXT, place_above(F, ell, idx)).kind == expected

    # classical behavior of 2 in imaginary quadratic fields
    QUADRATIC = [(-7, "split"), (-15, "split"), (-1, "ramified"), (-5, "ramified"), (-3, "inert")]

    @pytest.mark.parametrize("d,expected", QUADRATIC)
    def test_imaginary_quadratic_at_two(self, d, expected):
        ext = CMExtension(RATIONALS, RATIONALS.from_rational(d))
        assert splitting_in_E(ext, place_above(RATIONALS, 2)).kind == expected

    def test_odd_delta_valuation_ramifies(self):
        ext = CMExtension(RATIONALS, RATIONALS.from_rational(-37))
        s = splitting_in_E(ext, place_above(RATIONALS, 37))
        assert s.kind == "ramified" and "odd valuation" in s.method

    def test_mismatched_base_field(self):
        with pytest.raises(InvalidInputError):
            splitting_in_E(EXT, place_above(RATIONALS, 2))


class TestLocalNormTest:
    def test_real_places_use_signs(self):
        results = [local_norm_test(EXT, ALPHA, rp) for rp in F.real_places()]
        assert [r.is_norm for r in results] == [False, True, True]
        assert all(r.method == "archimedean-sign" for r in results)

    def test_split_place_accepts_everything(self):
        r = local_norm_test(EXT, ALPHA - 4, place_above(F, 37))
        assert r.is_norm and r.method == "split"

    def test_inert_place_checks_valuation_parity(self):
        ext = CMExtension(RATIONALS, RATIONALS.from_rational(-3))
        v = place_above(RATIONALS, 2)
        assert not local_norm_test(ext, RATIONALS.from_rational(2), v)
        r = local_norm_test(ext, RATIONALS.from_rational(12), v)
        assert r.is_norm and r.method == "unramified-valuation"

    def test_ramified_dyadic_symbols(self):
        v = place_above(F, 2)
        expected = {  # frozen symbols of (-1, u) at the dyadic place
            "alpha": False,
            "alpha^2-2": False,
            "two": True,
            "alpha-4": False,
        }
        elements = {
            "alpha": ALPHA,
            "alpha^2-2": ALPHA * ALPHA - 2,
            "two": F.from_rational(2),
            "alpha-4": ALPHA - 4,
        }
        for name, u in elements.items():
            r = local_norm_test(EXT, u, v)
            assert r.is_norm == expected[name], name
            assert r.method == "hensel-lift"

    def test_tame_ramified_quadratic(self):
        ext = CMExtension(RATIONALS, RATIONALS.from_rational(-37))
        v = place_above(RATIONALS, 37)
        assert local_norm_test(ext, RATIONALS.from_rational(-1), v).is_norm
        assert not local_norm_test(ext, RATIONALS.from_rational(2), v).is_norm

    def test_rational_arguments_coerce(self):
        assert local_norm_test(EXT, 2, place_above(F, 2)).is_norm

    def test_zero_rejected(self):
        with pytest.raises(InvalidInputError):
            local_norm_test(EXT, 0, place_above(F, 2))

    def test_result_is_truthy(self):
        assert bool(local_norm_test(EXT, 2, place_above(F, 2)))


class TestHilbertProductCheck:
    FROZEN_MINUS = [
        ("alpha", 2),
        ("alpha^2-2", 2),
        ("two", 0),
        ("alpha-4", 4),
    ]

    @staticmethod
    def element(name):
        return {
            "alpha": ALPHA,
            "alpha^2-2": ALPHA * ALPHA - 2,
            "two": F.from_rational(2),
            "alpha-4": ALPHA - 4,
        }[name]

    @pytest.mark.parametrize("name,minus", FROZEN_MINUS)
    def test_frozen_minus_counts(self, name, minus):
        report = hilbert_product_check(EXT, self.element(name))
        assert report.conclusive
        assert report.minus_count == minus
        assert report.minus_count_even is True
        assert report.product_is_one is True

    def test_real_places_always_reported(self):
        report = hilbert_product_check(EXT, ALPHA)
        labels = [e.label for e in report.entries]
        assert labels[:3] == ["real place 0", "real place 1", "real place 2"]
        assert "2#0" in labels

    def test_norm_of_cm_element_is_everywhere_local_norm(self):
        z = EXT.element(ALPHA, ALPHA * ALPHA - 2)
        report = hilbert_product_check(EXT, z.norm_to_base())
        assert report.conclusive and report.minus_count == 0

    def test_zero_rejected(self):
        with pytest.raises(InvalidInputError):
            hilbert_product_check(EXT, 0)

    @given(st.tuples(*[st.integers(-9, 9)] * 3))
    @settings(max_examples=60, deadline=None)
    def test_product_formula_over_the_cubic(self, coords):
        u = F.element(coords)
        if u.is_zero():
            return
        report = hilbert_product_check(EXT, u)
        assert report.conclusive
        assert report.minus_count % 2 == 0

    def test_random_rational_coordinates(self):
        rng = random.Random(99)
        for _ in range(25):
            coords = tuple(
                Fraction(rng.randint(-12, 12), rng.randint(1, 9)) for _ in range(3)
            )
            u = F.element(coords)
            if u.is_zero():
                continue
            report = hilbert_product_check(EXT, u)
            assert report.conclusive and report.minus_count % 2 == 0


class TestLocalGroup:
    def test_split_place_gives_linear_family(self):
        r = local_group_isomorphic(EXT, place_above(F, 5), 3)
        assert r.isomorphic and r.family == "SL"

    def test_inert_place_gives_unitary_family(self):
        r = local_group_isomorphic(EXT, place_above(F, 3), 3)
        assert r.isomorphic and r.family == "SU"

    def test_ramified_place_gives_unitary_family(self):
        r = local_group_isomorphic(EXT, place_above(F, 2), 3)
        assert r.isomorphic and r.family == "SU"
        assert bool(r)

    def test_even_rank_rejected(self):
        with pytest.raises(InvalidInputError):
            local_group_isomorphic(EXT, place_above(F, 5), 2)

    def test_nonpositive_rank_rejected(self):
        with pytest.raises(InvalidInputError):
            local_group_isomorphic(EXT, place_above(F, 5), 0)
