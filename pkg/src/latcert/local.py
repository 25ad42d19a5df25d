"""Exact local arithmetic at finite places of a number field.

A finite place of F = Q[x]/(p) above a rational prime l is an irreducible
factor of p mod l. Places exist here only when l passes the maximal-order
criterion (the Dedekind test); otherwise factor_prime refuses loudly, since
every valuation formula below would silently be wrong.

The completion F_v is never built as a power-series tower. Instead the factor
block of p belonging to v is Hensel-lifted to Z/l^M for adaptive M, and
valuations and norm square-classes are read off integer resultants against
the lifted block: ord_l Res(P_v, z) = f * v(z) for l-integral z. When l has a
single place the block is p itself and everything is exact outright.

Norm tests for a CM extension E = F(sqrt(delta)) reduce, at ramified places
with rational delta, to classical Hilbert symbols over Q_l through the
projection formula (delta, u)_{F_v} = (delta, N_{F_v/Q_l}(u))_{Q_l}. The few
corners this leaves open (non-rational delta at a ramified place with a
non-unit argument, and similar dyadic cases) raise InconclusiveError rather
than guessing; callers report them as UNKNOWN.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Optional, Union

from . import modular
from .errors import (
    InconclusiveError,
    InvalidInputError,
    UnsupportedPlaceError,
)
from .intfactor import is_prime, prime_factors
from .modular import FiniteField
from .number_field import (
    CMExtension,
    FieldElement,
    NumberField,
    RealPlace,
)
from .polynomials import Polynomial, resultant

_MAX_LIFT_PRECISION = 8192
_DYADIC_ENUMERATION_CAP = 2_000_000


@dataclass(frozen=True)
class FinitePlace:
    """A prime of F above l: one irreducible factor of min_poly mod l."""

    field: NumberField
    prime: int
    factor: tuple[int, ...]  # monic irreducible mod l, constant term first
    ramification: int
    index: int  # position in the canonical (degree, coefficients) ordering

    @property
    def residue_degree(self) -> int:
        return len(self.factor) - 1

    def label(self) -> str:
        return f"{self.prime}#{self.index}"

    def __str__(self) -> str:
        e, f = self.ramification, self.residue_degree
        return f"place {self.label()} (e={e}, f={f})"


Place = Union[FinitePlace, RealPlace]


@lru_cache(maxsize=None)
def factor_prime(field: NumberField, ell: int) -> tuple[FinitePlace, ...]:
    """All places of the field above l, canonically ordered.

    Raises UnsupportedPlaceError when l divides the index of Z[x]/(p) in the
    maximal order (Dedekind criterion), because local data computed from the
    polynomial order would then be unreliable.
    """
    if not is_prime(ell):
        raise InvalidInputError(f"{ell} is not prime")
    p_ints = field.min_poly.int_coeffs()
    factors = modular.factor_monic(p_ints, ell)

    gbar: tuple[int, ...] = (1,)
    hbar: tuple[int, ...] = (1,)
    for g, e in factors:
        gbar = modular.mul(gbar, g, ell)
        for _ in range(e - 1):
            hbar = modular.mul(hbar, g, ell)
    lifted = Polynomial(gbar) * Polynomial(hbar) - field.min_poly
    correction = lifted * Fraction(1, ell)
    cbar = modular.normalize(correction.int_coeffs(), ell)
    common = modular.gcd_poly(modular.gcd_poly(cbar, gbar, ell), hbar, ell)
    if modular.degree(common) > 0:
        raise UnsupportedPlaceError(
            f"prime {ell} divides the index of the polynomial order "
            f"(common factor of degree {modular.degree(common)})"
        )
    return tuple(
        FinitePlace(field, ell, g, e, idx) for idx, (g, e) in enumerate(factors)
    )


@lru_cache(maxsize=None)
def residue_field(place: FinitePlace) -> FiniteField:
    return FiniteField(place.prime, place.factor)


def _clear_denominators(elem: FieldElement) -> tuple[tuple[int, ...], int]:
    m = lcm(*(c.denominator for c in elem.coords))
    z = tuple(int(c * m) for c in elem.coords)
    return z, m


def _ord_int(n: int, ell: int) -> int:
    if n == 0:
        raise InvalidInputError("valuation of zero")
    o = 0
    n = abs(n)
    while n % ell == 0:
        n //= ell
        o += 1
    return o


# Lifted blocks per (field, prime, precision); each entry is one int-tuple
# factor per place, in place order, with product = min_poly mod l^M.
_BLOCK_CACHE: dict[tuple, list[tuple[int, ...]]] = {}


def _block_resultant(place: FinitePlace, z: tuple[int, ...], precision: int) -> tuple[int, bool]:
    """Res(P_v-lift, z) as an integer, and whether it is exact.

    With a single place above l the block is min_poly itself, making the
    resultant exact at any precision; otherwise it is correct mod l^precision.
    """
    field, ell = place.field, place.prime
    places = factor_prime(field, ell)
    if len(places) == 1:
        r = resultant_int(field.min_poly, Polynomial(z))
        return r, True
    key = (field.min_poly.coeffs, ell, precision)
    blocks = _BLOCK_CACHE.get(key)
    if blocks is None:
        raw = []
        for v in places:
            b: tuple[int, ...] = (1,)
            for _ in range(v.ramification):
                b = modular.mul(b, v.factor, ell)
            raw.append(b)
        blocks = modular.hensel_lift_blocks(
            field.min_poly.int_coeffs(), raw, ell, precision
        )
        _BLOCK_CACHE[key] = blocks
    r = resultant_int(Polynomial(blocks[place.index]), Polynomial(z))
    return r, False


def resultant_int(a: Polynomial, b: Polynomial) -> int:
    value = resultant(a, b)
    assert value.denominator == 1, "integer polynomials have integer resultants"
    return value.numerator


def _norm_ord_and_unit(place: FinitePlace, z: tuple[int, ...], unit_mod: int) -> tuple[int, int]:
    """(ord_l, unit residue mod unit_mod) of Res(P_v, z) for l-integral z.

    Adaptive precision: the answer is accepted once the l-order sits far
    enough below the lifting precision for both the order and the residue to
    be stable.
    """
    ell = place.prime
    precision = 16
    while True:
        r, exact = _block_resultant(place, z, precision)
        if r != 0:
            o = _ord_int(r, ell)
            if exact or o + 4 <= precision:
                unit = (r // ell**o) % unit_mod
                return o, unit
        elif exact:
            raise AssertionError("nonzero element has nonzero exact resultant")
        precision *= 2
        if precision > _MAX_LIFT_PRECISION:
            raise InconclusiveError(
                f"p-adic precision exceeded {_MAX_LIFT_PRECISION} digits at {place}"
            )


def valuation(place: FinitePlace, elem: FieldElement) -> int:
    """Exact normalized valuation v(elem) at the place (v(uniformizer) = 1)."""
    if elem.field != place.field:
        raise InvalidInputError("element belongs to a different field")
    if elem.is_zero():
        raise InvalidInputError("the zero element has no finite valuation")
    z, m = _clear_denominators(elem)
    f = place.residue_degree
    o, _ = _norm_ord_and_unit(place, z, 2)
    assert o % f == 0, "norm order must be divisible by the residue degree"
    ell_in_m = 0
    mm = m
    while mm % place.prime == 0:
        mm //= place.prime
        ell_in_m += 1
    return o // f - place.ramification * ell_in_m


def residue_image(place: FinitePlace, elem: FieldElement) -> tuple[int, ...]:
    """Image of an l-integral element in the residue field of the place.

    Requires coordinate denominators coprime to l (then the element is
    automatically integral at every place above l).
    """
    z, m = _clear_denominators(elem)
    ell = place.prime
    if m % ell == 0:
        raise InvalidInputError(
            "coordinate denominators share a factor with the residue characteristic"
        )
    k = residue_field(place)
    zbar = k.embed(z)
    m_inv = pow(m % ell, -1, ell)
    return k.mul(zbar, k.from_int(m_inv))


# ---------------------------------------------------------------------------
# Classical Hilbert symbols over Q_l and R


def _split_prime_part(x: Fraction, ell: int) -> tuple[int, Fraction]:
    o = 0
    n, d = x.numerator, x.denominator
    while n % ell == 0:
        n //= ell
        o += 1
    while d % ell == 0:
        d //= ell
        o -= 1
    return o, Fraction(n, d)


def _legendre(u: Fraction, ell: int) -> int:
    val = u.numerator % ell * pow(u.denominator % ell, -1, ell) % ell
    assert val != 0, "unit part cannot vanish mod l"
    return 1 if pow(val, (ell - 1) // 2, ell) == 1 else -1


def _odd_residue_mod8(u: Fraction) -> int:
    # The denominator is odd, and d ≡ d^{-1} mod 8 for odd d.
    return u.numerator % 8 * (u.denominator % 8) % 8


def hilbert_symbol_qq(a, b, prime: Optional[int]) -> int:
    """Hilbert symbol (a, b) over Q_prime, or over R when prime is None.

    Exact for arbitrary nonzero rationals, by the classical closed formulas.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise InvalidInputError("Hilbert symbol arguments must be nonzero")
    if prime is None:
        return -1 if a < 0 and b < 0 else 1
    if not is_prime(prime):
        raise InvalidInputError(f"{prime} is not prime")
    alpha, s = _split_prime_part(a, prime)
    beta, t = _split_prime_part(b, prime)
    if prime == 2:
        s8, t8 = _odd_residue_mod8(s), _odd_residue_mod8(t)
        eps_s, eps_t = s8 % 4 == 3, t8 % 4 == 3
        omega_s, omega_t = s8 in (3, 5), t8 in (3, 5)
        exponent = (eps_s and eps_t) + alpha * omega_t + beta * omega_s
        return -1 if exponent % 2 else 1
    result = 1
    if alpha % 2 and beta % 2 and prime % 4 == 3:
        result = -result
    if beta % 2:
        result *= _legendre(s, prime)
    if alpha % 2:
        result *= _legendre(t, prime)
    return result


def _symbol_vs_rational(place: FinitePlace, w: Fraction, u: FieldElement) -> int:
    """(w, N_{F_v/Q_l}(u))_{Q_l} for rational w, exactly.

    The norm square-class is reconstructed from the l-order and unit residue
    of the block resultant; the residue mod 8 (mod l for odd l) pins the
    class of a unit, so the rebuilt small rational is in the right class.
    """
    ell = place.prime
    unit_mod = 8 if ell == 2 else ell
    z, m = _clear_denominators(u)
    o, r = _norm_ord_and_unit(place, z, unit_mod)
    ef = place.ramification * place.residue_degree
    mo = 0
    mm = m
    while mm % ell == 0:
        mm //= ell
        mo += 1
    beta = o - ef * mo
    r_n = r * pow(pow(mm, ef, unit_mod), -1, unit_mod) % unit_mod
    small = Fraction(ell ** (beta % 2) * r_n)
    return hilbert_symbol_qq(w, small, ell)


# ---------------------------------------------------------------------------
# Splitting of places in E = F(sqrt(delta))


@dataclass(frozen=True)
class SplittingResult:
    kind: str  # "split" | "inert" | "ramified"
    method: str

    def __str__(self) -> str:
        return f"{self.kind} ({self.method})"


def _residue_square_test(place: FinitePlace, elem: FieldElement) -> bool:
    k = residue_field(place)
    return k.is_square(residue_image(place, elem))


def _dyadic_box(place: FinitePlace) -> tuple[int, int, int]:
    # Representatives of O_v/pi^(2e+1) as integer polynomials of degree
    # < e*f with coefficients mod 2^t, t*e >= 2e+1. Congruence mod pi^(2e+1)
    # determines unit square classes (Hensel bound for x^2 - w).
    e, f = place.ramification, place.residue_degree
    target = 2 * e + 1
    t = -(-target // e)
    count = (2**t) ** (e * f)
    if count > _DYADIC_ENUMERATION_CAP:
        raise InconclusiveError(
            f"dyadic residue enumeration of size {count} exceeds the cap"
        )
    return target, t, e * f


def _dyadic_representatives(place: FinitePlace):
    _, t, width = _dyadic_box(place)
    field = place.field
    pad = field.degree - width
    for coeffs in itertools.product(range(2**t), repeat=width):
        yield field.element(tuple(Fraction(c) for c in coeffs) + (Fraction(0),) * pad)


def _dyadic_square_test(place: FinitePlace, w: Fraction) -> bool:
    """Whether the odd rational w is a square in the dyadic completion."""
    target, _, _ = _dyadic_box(place)
    w_elem = place.field.from_rational(w)
    for y in _dyadic_representatives(place):
        g = y * y - w_elem
        if g.is_zero():
            return True
        if valuation(place, g) >= target:
            return True
    return False


def _dyadic_exists_unit_non_norm(place: FinitePlace, w: Fraction) -> bool:
    # E_w/F_v is unramified exactly when every unit is a norm; units are
    # covered modulo squares by the representative box.
    for y in _dyadic_representatives(place):
        if y.is_zero() or valuation(place, y) != 0:
            continue
        if _symbol_vs_rational(place, w, y) == -1:
            return True
    return False


@lru_cache(maxsize=None)
def splitting_in_E(ext: CMExtension, place: FinitePlace) -> SplittingResult:
    """How a finite place of F behaves in E = F(sqrt(delta)).

    Decides split/inert/ramified exactly wherever the engine reaches:
    odd valuation of delta is always ramified; unit delta at odd places is a
    residue-field square test; dyadic places with rational delta are settled
    by exhaustive unit-square and unit-symbol scans at the Hensel precision
    bound. The remaining corners raise InconclusiveError.
    """
    delta = ext.delta
    if place.field != ext.base:
        raise InvalidInputError("place and extension refer to different base fields")
    ell = place.prime
    v_delta = valuation(place, delta)
    if v_delta % 2 == 1:
        return SplittingResult("ramified", "odd valuation of delta")

    if ell != 2:
        if v_delta == 0:
            _, m = _clear_denominators(delta)
            if m % ell != 0:
                square = _residue_square_test(place, delta)
                return SplittingResult(
                    "split" if square else "inert", "residue square test"
                )
        if delta.is_rational():
            c = delta.coords[0]
            k_ord, unit_part = _split_prime_part(c, ell)
            if k_ord % 2 == 0:
                k = residue_field(place)
                res = k.from_int(
                    unit_part.numerator % ell
                    * pow(unit_part.denominator % ell, -1, ell)
                )
                square = k.is_square(res)
                return SplittingResult(
                    "split" if square else "inert", "unit-part residue square test"
                )
        raise InconclusiveError(
            f"cannot classify delta's square class at {place} without a uniformizer"
        )

    # Dyadic places: rational delta with even 2-order is settled exactly.
    if delta.is_rational():
        c = delta.coords[0]
        k_ord, unit_part = _split_prime_part(c, 2)
        if k_ord % 2 == 0:
            if _dyadic_square_test(place, unit_part):
                return SplittingResult("split", "unit square enumeration")
            if _dyadic_exists_unit_non_norm(place, unit_part):
                return SplittingResult("ramified", "unit symbol scan")
            return SplittingResult("inert", "unit symbol scan")
    raise InconclusiveError(
        f"dyadic splitting with non-rational delta is out of reach at {place}"
    )


# ---------------------------------------------------------------------------
# Local norm tests


@dataclass(frozen=True)
class LocalNormResult:
    is_norm: bool
    method: str  # "split" | "unramified-valuation" | "hensel-lift" | "archimedean-sign"
    place: Place

    def __bool__(self) -> bool:
        return self.is_norm


def local_norm_test(ext: CMExtension, u, place: Place) -> LocalNormResult:
    """Whether u in F* is a local norm from E at the given place.

    Every returned verdict is exact; undecidable corners raise
    InconclusiveError instead of guessing.
    """
    if not isinstance(u, FieldElement):
        u = ext.base.from_rational(u)
    if u.field != ext.base:
        raise InvalidInputError("element must lie in the base field")
    if u.is_zero():
        raise InvalidInputError("norm test needs a nonzero element")

    if isinstance(place, RealPlace):
        # delta is totally negative: the local extension is C/R and the
        # norms are exactly the positive reals.
        return LocalNormResult(u.sign_at(place.index) > 0, "archimedean-sign", place)

    split = splitting_in_E(ext, place)
    if split.kind == "split":
        return LocalNormResult(True, "split", place)
    if split.kind == "inert":
        return LocalNormResult(valuation(place, u) % 2 == 0, "unramified-valuation", place)

    # Ramified places.
    delta = ext.delta
    if delta.is_rational():
        symbol = _symbol_vs_rational(place, delta.coords[0], u)
        return LocalNormResult(symbol == 1, "hensel-lift", place)
    if place.prime != 2 and valuation(place, u) == 0:
        # Tame ramification with a unit argument: quadratic residue character
        # of the residue of u (the symbol reduces to chi(u-bar)^v(delta),
        # v(delta) odd here).
        is_sq = _residue_square_test(place, u)
        return LocalNormResult(is_sq, "hensel-lift", place)
    raise InconclusiveError(
        f"norm test at ramified {place} with non-rational delta and non-unit argument"
    )


# ---------------------------------------------------------------------------
# Product-formula reports


@dataclass(frozen=True)
class PlaceSymbolEntry:
    label: str
    symbol: Optional[int]  # +1 / -1, or None when unknown
    method: str


@dataclass(frozen=True)
class HilbertReport:
    element: str
    entries: tuple[PlaceSymbolEntry, ...]
    unknown_labels: tuple[str, ...]
    minus_count: int

    @property
    def conclusive(self) -> bool:
        return not self.unknown_labels

    @property
    def minus_count_even(self) -> Optional[bool]:
        return self.minus_count % 2 == 0 if self.conclusive else None

    @property
    def product_is_one(self) -> Optional[bool]:
        return self.minus_count_even


def relevant_primes(ext: CMExtension, u: FieldElement) -> tuple[int, ...]:
    """Primes that can carry a nontrivial local symbol (delta, u).

    Computed from cleared-denominator norm resultants, so valuation
    cancellation inside the norm cannot hide a relevant prime; 2 is always
    included.
    """
    out = {2}
    for elem in (ext.delta, u):
        z, m = _clear_denominators(elem)
        r = resultant_int(ext.base.min_poly, Polynomial(z))
        out |= set(prime_factors(r))
        if m > 1:
            out |= set(prime_factors(m))
    return tuple(sorted(out))


def hilbert_product_check(ext: CMExtension, u) -> HilbertReport:
    """Per-place symbols of (delta, u) over every relevant place of F.

    The product over all places is 1 for any global element, so a conclusive
    report must contain an even number of -1 entries; this is the
    self-checking identity the engine is tested against.
    """
    if not isinstance(u, FieldElement):
        u = ext.base.from_rational(u)
    if u.is_zero():
        raise InvalidInputError("product check needs a nonzero element")
    entries: list[PlaceSymbolEntry] = []
    unknown: list[str] = []

    for rp in ext.base.real_places():
        res = local_norm_test(ext, u, rp)
        entries.append(
            PlaceSymbolEntry(str(rp), 1 if res.is_norm else -1, res.method)
        )

    for ell in relevant_primes(ext, u):
        try:
            places = factor_prime(ext.base, ell)
        except UnsupportedPlaceError as exc:
            label = f"prime {ell}"
            entries.append(PlaceSymbolEntry(label, None, f"unsupported: {exc}"))
            unknown.append(label)
            continue
        for place in places:
            label = place.label()
            try:
                res = local_norm_test(ext, u, place)
            except InconclusiveError as exc:
                entries.append(PlaceSymbolEntry(label, None, f"inconclusive: {exc}"))
                unknown.append(label)
                continue
            entries.append(
                PlaceSymbolEntry(label, 1 if res.is_norm else -1, res.method)
            )

    minus = sum(1 for e in entries if e.symbol == -1)
    return HilbertReport(str(u), tuple(entries), tuple(unknown), minus)


def norm_class_equal(ext: CMExtension, a: FieldElement, b: FieldElement) -> bool:
    """Whether a and b agree in F*/N(E*), i.e. a/b is a global norm from E.

    By the Hasse norm theorem for the quadratic extension E/F this is
    equivalent to being a norm at every place, which the product check
    decides; an inconclusive place raises rather than guessing.
    """
    if a.is_zero() or b.is_zero():
        raise InvalidInputError("norm classes are defined for nonzero elements")
    report = hilbert_product_check(ext, a / b)
    if not report.conclusive:
        raise InconclusiveError(
            "norm class comparison undecided at: " + ", ".join(report.unknown_labels)
        )
    return report.minus_count == 0


# ---------------------------------------------------------------------------
# Local group comparison


@dataclass(frozen=True)
class LocalGroupResult:
    isomorphic: bool
    family: str  # "SL" at split places, "SU" otherwise
    detail: str

    def __bool__(self) -> bool:
        return self.isomorphic


def local_group_isomorphic(ext: CMExtension, place: FinitePlace, rank: int) -> LocalGroupResult:
    """At a finite place, unitary groups of equal odd rank agree.

    Split places give the special linear family; non-split places give the
    quasi-split special unitary family. Either way the local isomorphism
    class does not depend on the diagonal form, which is what makes odd rank
    special; even rank is out of scope and rejected.
    """
    if rank < 1:
        raise InvalidInputError("rank must be positive")
    if rank % 2 == 0:
        raise InvalidInputError(
            "even rank is unsupported: local classes then depend on the form"
        )
    split = splitting_in_E(ext, place)
    family = "SL" if split.kind == "split" else "SU"
    return LocalGroupResult(
        True, family, f"place is {split.kind} ({split.method}), rank {rank} odd"
    )
