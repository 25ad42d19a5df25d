"""Exact univariate polynomial arithmetic over the rationals.

Everything here is Fraction-based and deterministic: resultants and
discriminants come from a sign-tracked Euclidean remainder sequence, real
roots are isolated with Sturm counts plus exact extraction of rational
roots, and irreducibility over Q is decided (degrees up to ~8) by a
rational-root test, factor-degree sieving modulo several primes, and a
Kronecker interpolation fallback. No floating point anywhere.

Coefficients are stored constant term first; the string form of
x^3 - x^2 - 3x + 1 is "1,-3,-1,1".
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from . import modular
from .errors import BudgetExceededError, InvalidInputError
from .intfactor import divisors

Scalar = Union[int, Fraction]

# Primes used for factor-degree sieving; plenty for degree <= 8 inputs.
_SIEVE_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59)
_SIEVE_GOAL = 6  # stop after this many usable primes agree
_KRONECKER_BUDGET = 4_000_000  # divisor-tuple combinations


def _coerce(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise InvalidInputError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Polynomial:
    """Immutable rational polynomial, coefficients constant-term first."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- construction ------------------------------------------------------

    @classmethod
    def from_string(cls, text: str) -> "Polynomial":
        """Parse "1,-3,-1,1" (rationals like "3/2" allowed)."""
        parts = [p.strip() for p in text.split(",")]
        if parts == [""]:
            raise InvalidInputError("empty polynomial string")
        try:
            return cls(Fraction(p) for p in parts)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"bad polynomial string {text!r}: {exc}") from exc

    def to_string(self) -> str:
        if not self.coeffs:
            return "0"
        return ",".join(str(c) for c in self.coeffs)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls((c,))

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise InvalidInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __str__(self) -> str:
        return self.to_string()

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial(
            tuple(x + y for x, y in zip(a, b)) + a[len(b):]
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise InvalidInputError("negative polynomial power")
        result = Polynomial((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise InvalidInputError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = len(other.coeffs)
        qdeg = len(rem) - dd
        if qdeg < 0:
            return Polynomial(), self
        inv = 1 / other.leading_coefficient()
        quot = [Fraction(0)] * (qdeg + 1)
        for i in range(qdeg, -1, -1):
            c = rem[i + dd - 1] * inv
            if c:
                quot[i] = c
                for j, y in enumerate(other.coeffs):
                    rem[i + j] -= c * y
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    # -- calculus and evaluation --------------------------------------------

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- normal forms --------------------------------------------------------

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise InvalidInputError("cannot make the zero polynomial monic")
        return self * (1 / self.leading_coefficient())

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def primitive_integer(self) -> "Polynomial":
        """Integer-coefficient associate with content 1, leading sign kept."""
        if self.is_zero():
            return self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        return Polynomial(tuple(Fraction(c, g) for c in ints))

    def int_coeffs(self) -> tuple[int, ...]:
        """Coefficients as plain ints; error if any is fractional."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise InvalidInputError("polynomial has non-integer coefficients")
            out.append(c.numerator)
        return tuple(out)


def polynomial_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q (gcd with zero returns the monic other operand)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def squarefree_part(p: Polynomial) -> Polynomial:
    """p with repeated roots collapsed: p / gcd(p, p').

    The gcd is monic, so the result keeps p's leading sign.
    """
    if p.is_zero():
        raise InvalidInputError("squarefree part of zero is undefined")
    if p.degree() < 1:
        return p
    g = polynomial_gcd(p, p.derivative())
    return p // g


def resultant(a: Polynomial, b: Polynomial) -> Fraction:
    """Resultant via a sign-carrying Euclidean remainder sequence.

    Res(a, b) = lc(b)^deg a when b is a nonzero constant; zero when the
    inputs share a root; Res(f, 0) = 0 by convention here (both zero is an
    error).

    >>> resultant(Polynomial((-2, 1)), Polynomial((-3, 1)))
    Fraction(-1, 1)
    """
    if a.is_zero() and b.is_zero():
        raise InvalidInputError("resultant of zero with zero")
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    acc = Fraction(1)
    while True:
        m, n = a.degree(), b.degree()
        if n == 0:
            return acc * b.leading_coefficient() ** m
        if m < n:
            if m & n & 1:
                acc = -acc
            a, b = b, a
            continue
        r = a % b
        if r.is_zero():
            return Fraction(0)
        acc *= b.leading_coefficient() ** (m - r.degree())
        if m & n & 1:
            acc = -acc
        a, b = b, r


def discriminant(p: Polynomial) -> Fraction:
    """Discriminant of p, degree >= 1, exact.

    >>> discriminant(Polynomial.from_string("1,-3,-1,1"))
    Fraction(148, 1)
    """
    n = p.degree()
    if n < 1:
        raise InvalidInputError("discriminant needs degree >= 1")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(p, p.derivative()) / p.leading_coefficient()


# ---------------------------------------------------------------------------
# Real root machinery


@dataclass(frozen=True)
class Interval:
    """Closed rational interval; degenerate (lo == hi) pins an exact root."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = _coerce(self.lo), _coerce(self.hi)
        if lo > hi:
            raise InvalidInputError(f"interval endpoints out of order: {lo} > {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Scalar) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _sturm_chain(q: Polynomial) -> list[Polynomial]:
    # q must be squarefree. Members are scaled to primitive integer form;
    # positive scaling leaves every sign evaluation unchanged.
    chain = [q.primitive_integer()]
    d = q.derivative()
    if not d.is_zero():
        chain.append(d.primitive_integer())
        while chain[-1].degree() > 0:
            r = -(chain[-2] % chain[-1])
            if r.is_zero():
                break
            chain.append(r.primitive_integer())
    return chain


def _sign_variations(chain: list[Polynomial], x: Fraction) -> int:
    signs = []
    for member in chain:
        v = member(x)
        if v:
            signs.append(v > 0)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def sturm_count(p: Polynomial, interval: Interval) -> int:
    """Number of distinct real roots of p in the half-open (lo, hi].

    Roots sitting exactly on an endpoint are handled by deflating the
    rational linear factor, so endpoint hits are counted exactly (hi in,
    lo out) rather than perturbed away.
    """
    if p.is_zero():
        raise InvalidInputError("root counting needs a nonzero polynomial")
    lo, hi = interval.lo, interval.hi
    if lo == hi:
        return 0
    q = squarefree_part(p)
    extra = 0
    if q(lo) == 0:
        q = q // Polynomial((-lo, 1))
    if q(hi) == 0:
        q = q // Polynomial((-hi, 1))
        extra = 1
    if q.degree() < 1:
        return extra
    chain = _sturm_chain(q)
    return _sign_variations(chain, lo) - _sign_variations(chain, hi) + extra


def cauchy_root_bound(p: Polynomial) -> Fraction:
    """B with every real root of p strictly inside (-B, B)."""
    if p.degree() < 1:
        raise InvalidInputError("root bound needs degree >= 1")
    lead = abs(p.leading_coefficient())
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])


def rational_roots(p: Polynomial) -> list[Fraction]:
    """Sorted distinct rational roots of nonzero p, by exact testing."""
    if p.is_zero():
        raise InvalidInputError("rational roots of the zero polynomial")
    q = squarefree_part(p).primitive_integer()
    roots: set[Fraction] = set()
    if q.degree() >= 1 and q(0) == 0:
        roots.add(Fraction(0))
        q = q // Polynomial.x()
    if q.degree() >= 1:
        ints = q.int_coeffs()
        for num in divisors(ints[0]):
            for den in divisors(ints[-1]):
                if math.gcd(num, den) != 1:
                    continue
                cand = Fraction(num, den)
                if q(cand) == 0:
                    roots.add(cand)
                if q(-cand) == 0:
                    roots.add(-cand)
    return sorted(roots)


def _bisect_cells(q: Polynomial, chain: list[Polynomial], lo: Fraction, hi: Fraction) -> list[list[Fraction]]:
    # q squarefree with no rational roots, so midpoints are never roots and
    # every Sturm count on (lo, hi] is trustworthy with untouched endpoints.
    def count(a: Fraction, b: Fraction) -> int:
        return _sign_variations(chain, a) - _sign_variations(chain, b)

    out = []
    stack = [(lo, hi, count(lo, hi))]
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            out.append([a, b])
            continue
        m = (a + b) / 2
        cl = count(a, m)
        stack.append((a, m, cl))
        stack.append((m, b, c - cl))
    return out


def _halve_toward_root(q: Polynomial, cell: list[Fraction]) -> None:
    # One bisection step keeping the sign change of q; q has exactly one
    # root strictly inside the cell and is nonzero at rational points.
    a, b = cell
    m = (a + b) / 2
    qa, qm = q(a), q(m)
    assert qm != 0, "midpoint cannot be a root: rational roots were deflated"
    if (qa > 0) != (qm > 0):
        cell[1] = m
    else:
        cell[0] = m


def isolate_real_roots(p: Polynomial) -> tuple[Interval, ...]:
    """Pairwise-disjoint closed intervals, one per distinct real root.

    Rational roots come back as exact degenerate intervals; irrational
    roots get open-interior brackets with rational endpoints that are
    never roots themselves. Sorted ascending.
    """
    if p.is_zero():
        raise InvalidInputError("cannot isolate roots of the zero polynomial")
    if p.degree() < 1:
        return ()
    q = squarefree_part(p)
    rats = rational_roots(q)
    reduced = q
    for r in rats:
        reduced = reduced // Polynomial((-r, 1))

    cells: list[list[Fraction]] = []
    if reduced.degree() >= 1:
        bound = cauchy_root_bound(reduced)
        chain = _sturm_chain(reduced)
        cells = _bisect_cells(reduced, chain, -bound, bound)
        # Shrink each bracket until it traps no rational root of p; the
        # bracketed root is irrational, so bisection always separates.
        for cell in cells:
            while any(cell[0] <= r <= cell[1] for r in rats):
                _halve_toward_root(reduced, cell)

    items: list[Interval] = [Interval(r, r) for r in rats]
    items.extend(Interval(a, b) for a, b in cells)
    items.sort(key=lambda iv: (iv.lo, iv.hi))

    # Closed intervals must be pairwise disjoint; keep halving offenders.
    done = False
    while not done:
        done = True
        for i in range(len(items) - 1):
            left, right = items[i], items[i + 1]
            if left.hi >= right.lo:
                done = False
                target = i if left.width >= right.width else i + 1
                if items[target].is_point():
                    target = i + 1 if target == i else i
                cell = [items[target].lo, items[target].hi]
                _halve_toward_root(reduced, cell)
                items[target] = Interval(cell[0], cell[1])
        items.sort(key=lambda iv: (iv.lo, iv.hi))
    return tuple(items)


def refine_interval(p: Polynomial, interval: Interval, width: Scalar) -> Interval:
    """Shrink an isolating interval for a single root of p below width.

    Exact rational bisection on the squarefree part; if the bisection ever
    lands on the root itself the degenerate exact interval is returned.
    """
    width = _coerce(width)
    if width <= 0:
        raise InvalidInputError("target width must be positive")
    if p.is_zero() or p.degree() < 1:
        raise InvalidInputError("refinement needs a nonconstant polynomial")
    if interval.is_point():
        if p(interval.lo) != 0:
            raise InvalidInputError("degenerate interval is not a root")
        return interval
    q = squarefree_part(p)
    lo, hi = interval.lo, interval.hi
    qlo, qhi = q(lo), q(hi)
    if qlo == 0:
        return Interval(lo, lo)
    if qhi == 0:
        return Interval(hi, hi)
    if (qlo > 0) == (qhi > 0):
        raise InvalidInputError("interval does not bracket a sign change of the squarefree part")
    while hi - lo > width:
        m = (lo + hi) / 2
        qm = q(m)
        if qm == 0:
            return Interval(m, m)
        if (qlo > 0) != (qm > 0):
            hi = m
        else:
            lo, qlo = m, qm
    return Interval(lo, hi)


def interval_value_range(p: Polynomial, interval: Interval) -> tuple[Fraction, Fraction]:
    """Exact interval-arithmetic enclosure of p over a closed interval."""
    lo = hi = Fraction(0)
    for c in reversed(p.coeffs):
        products = (
            lo * interval.lo,
            lo * interval.hi,
            hi * interval.lo,
            hi * interval.hi,
        )
        lo, hi = min(products) + c, max(products) + c
    return lo, hi


# ---------------------------------------------------------------------------
# Irreducibility over Q


def _proper_subset_sums(pattern: list[int], n: int) -> set[int]:
    sums = {0}
    for d in pattern:
        sums |= {s + d for s in sums}
    sums.discard(0)
    sums.discard(n)
    return sums


def _kronecker_factor(p: Polynomial, d: int) -> Polynomial | None:
    # Search for an integer factor of degree exactly d by interpolating
    # through divisor tuples of p's values at small integers. p is primitive
    # integer, has no rational roots, and degree >= 2, so no value is zero.
    points: list[int] = [0]
    step = 1
    while len(points) < d + 1:
        points.extend((step, -step))
        step += 1
    points = points[: d + 1]
    values = [int(p(x)) for x in points]
    assert all(values), "zero value would mean a rational root"

    choice_lists: list[list[int]] = []
    total = 1
    for i, v in enumerate(values):
        ds = divisors(v)
        # Global sign normalization: a factor and its negation are the same
        # discovery, so the value at the first point is kept positive.
        opts = ds if i == 0 else [s * t for t in ds for s in (1, -1)]
        choice_lists.append(opts)
        total *= len(opts)
        if total > _KRONECKER_BUDGET:
            raise BudgetExceededError(
                f"Kronecker search needs {total} divisor tuples for degree {d}"
            )

    # Lagrange basis over the fixed points, computed once.
    basis: list[Polynomial] = []
    for i, xi in enumerate(points):
        numer = Polynomial((1,))
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if i != j:
                numer = numer * Polynomial((-xj, 1))
                denom *= xi - xj
        basis.append(numer * (1 / denom))

    for combo in itertools.product(*choice_lists):
        g = Polynomial()
        for c, b in zip(combo, basis):
            g = g + b * c
        if g.degree() != d:
            continue
        if any(c.denominator != 1 for c in g.coeffs):
            continue
        if (p % g).is_zero():
            return g
    return None


def is_irreducible(p: Polynomial) -> bool:
    """Exact irreducibility over Q for degree >= 1 (intended range <= 8).

    Pipeline: rational-root test, factor-degree sieve modulo several primes,
    then a complete Kronecker interpolation search over the surviving factor
    degrees. Never probabilistic.
    """
    n = p.degree()
    if n < 1:
        raise InvalidInputError("irreducibility is about degree >= 1")
    if n == 1:
        return True
    if rational_roots(p):
        return False
    if n <= 3:
        return True  # any factorization would include a linear factor
    prim = p.primitive_integer()
    ints = prim.int_coeffs()

    possible = set(range(1, n))
    usable = 0
    for ell in _SIEVE_PRIMES:
        if ints[-1] % ell == 0:
            continue
        fbar = modular.normalize(ints, ell)
        dbar = modular.deriv(fbar, ell)
        if not dbar or modular.degree(modular.gcd_poly(fbar, dbar, ell)) > 0:
            continue
        pattern = modular.degree_pattern(modular.monic(fbar, ell), ell)
        if pattern == [n]:
            return True
        possible &= _proper_subset_sums(pattern, n)
        if not possible:
            return True
        usable += 1
        if usable >= _SIEVE_GOAL:
            break

    # A true factor of degree d forces its cofactor degree n - d to survive
    # the sieve too, so scanning d <= n // 2 loses nothing.
    for d in sorted(possible):
        if d > n // 2:
            break
        if _kronecker_factor(prim, d) is not None:
            return False
    return True
