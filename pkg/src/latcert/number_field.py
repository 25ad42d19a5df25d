"""Number fields presented by a monic irreducible integer polynomial.

Elements are coordinate vectors in the power basis of a root. All field
arithmetic, norms, and sign evaluations at the real places are exact; the
real places themselves are the isolated real roots of the defining
polynomial in ascending order, which fixes a canonical indexing from 0.

Counting automorphisms is the one place numerics enter: for degree >= 4 an
integer-relation ladder (PSLQ, via mpmath) proposes expressions of each real
root in the power basis of the first, and every proposal is then verified
exactly over Q. Precision therefore affects completeness of the count, never
soundness; degrees up to 3 are decided purely algebraically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

import mpmath

from .errors import InconclusiveError, InvalidInputError
from .polynomials import (
    Interval,
    Polynomial,
    interval_value_range,
    is_irreducible,
    isolate_real_roots,
    refine_interval,
    resultant,
)

Scalar = Union[int, Fraction]

_LADDER_DIGITS = (60, 120, 240, 480, 960)


def is_rational_square(q: Fraction) -> bool:
    """Exact test for q being the square of a rational."""
    q = Fraction(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


@dataclass(frozen=True)
class RealPlace:
    """One real embedding, identified by its canonical (ascending) index."""

    index: int

    def __str__(self) -> str:
        return f"real place {self.index}"


@dataclass(frozen=True)
class NumberField:
    """Q[x]/(min_poly) for monic irreducible min_poly with integer coefficients."""

    min_poly: Polynomial

    def __post_init__(self):
        p = self.min_poly
        if p.degree() < 1:
            raise InvalidInputError("defining polynomial must have degree >= 1")
        if not p.is_monic():
            raise InvalidInputError("defining polynomial must be monic")
        p.int_coeffs()  # raises on fractional coefficients
        if not is_irreducible(p):
            raise InvalidInputError("defining polynomial is reducible over Q")

    @property
    def degree(self) -> int:
        return self.min_poly.degree()

    @cached_property
    def discriminant(self) -> Fraction:
        from .polynomials import discriminant

        return discriminant(self.min_poly)

    @cached_property
    def _root_intervals(self) -> list[Interval]:
        # Mutable cache: sign evaluations shrink these in place. The
        # ascending order (the canonical place indexing) never changes.
        return list(isolate_real_roots(self.min_poly))

    @property
    def real_place_count(self) -> int:
        return len(self._root_intervals)

    def real_place_intervals(self) -> tuple[Interval, ...]:
        """Current isolating interval per real place, ascending."""
        return tuple(self._root_intervals)

    def real_places(self) -> tuple[RealPlace, ...]:
        return tuple(RealPlace(j) for j in range(self.real_place_count))

    def is_totally_real(self) -> bool:
        return self.real_place_count == self.degree

    # -- element constructors ------------------------------------------------

    def element(self, coords) -> "FieldElement":
        return FieldElement(self, tuple(coords))

    def from_rational(self, c: Scalar) -> "FieldElement":
        return self.element((c,) + (0,) * (self.degree - 1))

    def from_polynomial(self, poly: Polynomial) -> "FieldElement":
        reduced = poly % self.min_poly
        coords = reduced.coeffs + (Fraction(0),) * (self.degree - len(reduced.coeffs))
        return FieldElement(self, coords)

    def zero(self) -> "FieldElement":
        return self.from_rational(0)

    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def generator(self) -> "FieldElement":
        if self.degree == 1:
            return self.from_rational(-self.min_poly.coeffs[0])
        return self.element((0, 1) + (0,) * (self.degree - 2))

    def _shrink_place(self, j: int) -> None:
        # One exact bisection step on place j's isolating interval. The
        # defining polynomial is irreducible, so for degree >= 2 a rational
        # midpoint is never a root and signs at the endpoints stay opposite.
        iv = self._root_intervals[j]
        if iv.is_point():
            return
        p = self.min_poly
        m = iv.midpoint
        if (p(iv.lo) > 0) != (p(m) > 0):
            self._root_intervals[j] = Interval(iv.lo, m)
        else:
            self._root_intervals[j] = Interval(m, iv.hi)

    def __str__(self) -> str:
        return f"Q[x]/({self.min_poly})"


@dataclass(frozen=True)
class FieldElement:
    """Element of a NumberField in power-basis coordinates."""

    field: NumberField
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != self.field.degree:
            raise InvalidInputError(
                f"expected {self.field.degree} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "coords", coords)

    # -- helpers -------------------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InvalidInputError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        raise InvalidInputError(f"cannot coerce {type(other).__name__} into the field")

    def as_polynomial(self) -> Polynomial:
        return Polynomial(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def is_integral_vector(self) -> bool:
        """All power-basis coordinates are integers."""
        return all(c.denominator == 1 for c in self.coords)

    # -- ring structure --------------------------------------------------------

    def __add__(self, other) -> "FieldElement":
        o = self._coerce(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other) -> "FieldElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FieldElement":
        return self._coerce(other) - self

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, tuple(-c for c in self.coords))

    def __mul__(self, other) -> "FieldElement":
        o = self._coerce(other)
        prod = self.as_polynomial() * o.as_polynomial()
        return self.field.from_polynomial(prod)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise InvalidInputError("inverting zero")
        # Extended Euclid in Q[x] against the (irreducible) minimal
        # polynomial: t*g = gcd = nonzero constant mod p.
        r0, r1 = self.field.min_poly, self.as_polynomial()
        t0, t1 = Polynomial(), Polynomial((1,))
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, t0 - q * t1
        assert r0.degree() == 0, "gcd with an irreducible modulus is constant"
        return self.field.from_polynomial(t0 * (1 / r0.coeffs[0]))

    def __truediv__(self, other) -> "FieldElement":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "FieldElement":
        return self._coerce(other) / self

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- arithmetic invariants ---------------------------------------------------

    def norm(self) -> Fraction:
        """Field norm to Q: the product of all conjugate values, exact."""
        return resultant(self.field.min_poly, self.as_polynomial())

    def is_unit(self) -> bool:
        """Unit of the polynomial order: integral coordinates, norm +-1."""
        if not self.is_integral_vector():
            raise InvalidInputError("unit test requires integral coordinates")
        return abs(self.norm()) == 1

    def sign_at(self, place: Union[int, RealPlace]) -> int:
        """Exact sign of this element under the place-th real embedding."""
        j = place.index if isinstance(place, RealPlace) else place
        if not 0 <= j < self.field.real_place_count:
            raise InvalidInputError(f"no real place with index {j}")
        if self.is_zero():
            return 0
        g = self.as_polynomial()
        while True:
            iv = self.field._root_intervals[j]
            if iv.is_point():
                v = g(iv.lo)
                return 0 if v == 0 else (1 if v > 0 else -1)
            lo, hi = interval_value_range(g, iv)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            # The enclosure straddles zero: tighten the root bracket. A
            # nonzero element never evaluates to zero at a root of an
            # irreducible polynomial, so this terminates.
            self.field._shrink_place(j)

    def signs(self) -> tuple[int, ...]:
        return tuple(self.sign_at(j) for j in range(self.field.real_place_count))

    def is_totally_negative(self) -> bool:
        return all(s == -1 for s in self.signs())

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


# ---------------------------------------------------------------------------
# Automorphism counting


def automorphism_count(field: NumberField, precision_cap_digits: int = 480) -> int:
    """Number of field automorphisms, as roots of min_poly inside the field.

    Degrees 1-3 are decided exactly (an irreducible cubic is Galois exactly
    when its discriminant is a rational square). Higher degrees require at
    least one real place and run the PSLQ reconstruction ladder; candidates
    are verified exactly, so any positive count is sound. A root for which
    no relation is found at the precision cap is treated as lying outside
    the field (the documented completeness caveat); a relation that exists
    but fails exact verification at the cap raises InconclusiveError.
    """
    if precision_cap_digits < 15:
        raise InvalidInputError("precision cap is too small to be meaningful")
    d = field.degree
    if d == 1:
        return 1
    if d == 2:
        return 2
    if d == 3:
        return 3 if is_rational_square(field.discriminant) else 1

    intervals = field.real_place_intervals()
    if not intervals:
        raise InconclusiveError(
            "no real embedding: root reconstruction over R does not apply"
        )
    p = field.min_poly
    ladder = sorted({min(r, precision_cap_digits) for r in _LADDER_DIGITS}
                    | {precision_cap_digits})
    resolved: dict[int, tuple[Fraction, ...]] = {}
    dirty = False
    for dps in ladder:
        dirty = False
        with mpmath.workdps(dps + 10):
            width = Fraction(1, 10 ** (dps + 15))
            roots = []
            for iv in intervals:
                tight = refine_interval(p, iv, width)
                mid = tight.midpoint
                roots.append(mpmath.mpf(mid.numerator) / mid.denominator)
            theta_powers = [roots[0] ** k for k in range(d)]
            # Keep log10(maxcoeff) well below dps/(d+1): then a spurious
            # relation cannot cancel dps digits, so anything PSLQ returns is
            # either genuine or exposed by the exact verification below.
            maxcoeff = max(10**6, 10 ** (dps // (2 * (d + 1))))
            for idx, t in enumerate(roots):
                if idx in resolved:
                    continue
                relation = mpmath.pslq(
                    [t] + theta_powers,
                    maxcoeff=maxcoeff,
                    maxsteps=100000,
                )
                if relation is None or relation[0] == 0:
                    continue
                coords = tuple(
                    Fraction(-relation[k + 1], relation[0]) for k in range(d)
                )
                candidate = field.element(coords)
                acc = field.zero()
                for c in reversed(p.coeffs):
                    acc = acc * candidate + c
                if acc.is_zero():
                    resolved[idx] = coords
                else:
                    dirty = True
        if len(resolved) == len(intervals):
            break
    if dirty:
        raise InconclusiveError(
            "integer relations found but not exactly verifiable at the precision cap"
        )
    # Distinct roots reconstruct to distinct elements; count what verified.
    return len(set(resolved.values()))


# ---------------------------------------------------------------------------
# CM extensions E = F(sqrt(delta))


@dataclass(frozen=True)
class CMExtension:
    """Totally imaginary quadratic extension of a totally real field.

    delta must be totally negative, which already forces x^2 - delta to be
    irreducible over the base (a square would be totally nonnegative).
    """

    base: NumberField
    delta: FieldElement

    def __post_init__(self):
        if self.delta.field != self.base:
            raise InvalidInputError("delta must live in the base field")
        if not self.base.is_totally_real():
            raise InvalidInputError("base field must be totally real")
        if self.delta.is_zero() or not self.delta.is_totally_negative():
            raise InvalidInputError("delta must be totally negative")

    def element(self, a, b) -> "CMElement":
        lift = self.base.from_rational
        a = a if isinstance(a, FieldElement) else lift(a)
        b = b if isinstance(b, FieldElement) else lift(b)
        return CMElement(self, a, b)

    def sqrt_delta(self) -> "CMElement":
        return self.element(self.base.zero(), self.base.one())

    def __str__(self) -> str:
        return f"{self.base}(sqrt({self.delta}))"


@dataclass(frozen=True)
class CMElement:
    """a + b*sqrt(delta) over the base field."""

    ext: CMExtension
    a: FieldElement
    b: FieldElement

    def conjugate(self) -> "CMElement":
        """The nontrivial automorphism over the base: sqrt(delta) -> -sqrt(delta)."""
        return CMElement(self.ext, self.a, -self.b)

    def __add__(self, other: "CMElement") -> "CMElement":
        return CMElement(self.ext, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "CMElement") -> "CMElement":
        return CMElement(self.ext, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "CMElement":
        return CMElement(self.ext, -self.a, -self.b)

    def __mul__(self, other: "CMElement") -> "CMElement":
        d = self.ext.delta
        return CMElement(
            self.ext,
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def norm_to_base(self) -> FieldElement:
        """Relative norm x * conj(x) = a^2 - delta b^2, an element of the base."""
        return self.a * self.a - self.ext.delta * self.b * self.b

    def inverse(self) -> "CMElement":
        if self.is_zero():
            raise InvalidInputError("inverting zero")
        n = self.norm_to_base().inverse()
        return CMElement(self.ext, self.a * n, -self.b * n)

    def __str__(self) -> str:
        return f"({self.a}) + ({self.b})*sqrt(delta)"


# ---------------------------------------------------------------------------
# Galois closure data


@dataclass(frozen=True)
class GaloisClosure:
    """A closure field plus claimed embeddings of the base generator into it."""

    base: NumberField
    closure: NumberField
    embeddings: tuple[FieldElement, ...]

    def __post_init__(self):
        if not self.embeddings:
            raise InvalidInputError("at least one embedding image is required")
        for e in self.embeddings:
            if e.field != self.closure:
                raise InvalidInputError("embedding images must live in the closure field")
        if len({e.coords for e in self.embeddings}) != len(self.embeddings):
            raise InvalidInputError("embedding images must be pairwise distinct")

    def verify_embedding(self, index: int) -> bool:
        """Exact check that base.min_poly vanishes on the index-th image."""
        if not 0 <= index < len(self.embeddings):
            raise InvalidInputError(f"no embedding with index {index}")
        image = self.embeddings[index]
        acc = self.closure.zero()
        for c in reversed(self.base.min_poly.coeffs):
            acc = acc * image + c
        return acc.is_zero()

    def verify_all(self) -> tuple[bool, ...]:
        return tuple(self.verify_embedding(j) for j in range(len(self.embeddings)))


def verify_embedding(closure: GaloisClosure, index: int) -> bool:
    return closure.verify_embedding(index)
