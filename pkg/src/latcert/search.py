"""Seed search: totally real fields and hermitian form pairs that pass every
certifiable hypothesis.

The driver walks monic integer polynomials in lexicographic coefficient
order, keeps the fields with trivial automorphism group, and pairs up
single-indefinite-place diagonal forms related by a place transposition.
Every PASS becomes a full certificate, so search output is verifiable by the
same machinery as the shipped example.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Iterator, Optional

from .certificates import exact, write_certificate
from .errors import BudgetExceededError, InvalidInputError
from .finite_groups import DEFAULT_ENUMERATION_BUDGET
from .hermitian import PASS, HermitianForm, global_invariant, signature_pattern
from .intfactor import is_prime
from .local import hilbert_product_check
from .number_field import CMExtension, FieldElement, NumberField, automorphism_count
from .polynomials import Polynomial, is_irreducible, isolate_real_roots
from .runner import build_certificate


@dataclass(frozen=True)
class SearchConfig:
    degree: int = 3
    coefficient_bound: int = 3
    delta_candidates: tuple = (Fraction(-1),)
    rank: int = 3
    lambda_height_bound: int = 2
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET
    precision_cap_digits: int = 480
    output_path: Optional[str] = None
    max_certificates: Optional[int] = None

    def __post_init__(self):
        if self.degree < 2:
            raise InvalidInputError("degree must be at least 2")
        if self.rank < 3 or self.rank % 2 == 0:
            raise InvalidInputError("rank must be an odd integer >= 3")
        if self.coefficient_bound < 0:
            raise InvalidInputError("coefficient bound must be nonnegative")
        if not self.delta_candidates:
            raise InvalidInputError("at least one delta candidate is required")
        for d in self.delta_candidates:
            if Fraction(d) >= 0:
                raise InvalidInputError("delta candidates must be negative rationals")


def candidate_polynomials(degree: int, bound: int) -> Iterator[Polynomial]:
    """Monic integer polynomials, lexicographic in (a_0, ..., a_{degree-1})."""
    rng = range(-bound, bound + 1)
    for tail in itertools.product(rng, repeat=degree):
        yield Polynomial(tuple(Fraction(c) for c in tail) + (Fraction(1),))


def field_candidates(cfg: SearchConfig) -> Iterator[NumberField]:
    """Fields passing the seed filters: irreducible defining polynomial,
    totally real, no nontrivial automorphism."""
    total = (2 * cfg.coefficient_bound + 1) ** cfg.degree
    if total > cfg.enumeration_budget:
        raise BudgetExceededError(
            f"scanning {total} polynomials exceeds the budget of {cfg.enumeration_budget}"
        )
    for poly in candidate_polynomials(cfg.degree, cfg.coefficient_bound):
        if not is_irreducible(poly):
            continue
        if len(isolate_real_roots(poly)) != cfg.degree:
            continue
        field = NumberField(poly)
        if automorphism_count(field, precision_cap_digits=cfg.precision_cap_digits) != 1:
            continue
        yield field


def _entry_pool(field: NumberField) -> Iterator[FieldElement]:
    """Small elements with coordinates in {-1, 0, 1}, positive at exactly
    one real place; candidates for the repeated diagonal entry."""
    for coords in itertools.product((-1, 0, 1), repeat=field.degree):
        if all(c == 0 for c in coords):
            continue
        u = field.element(coords)
        if sum(1 for s in u.signs() if s > 0) == 1:
            yield u


def _form_class_key(h: HermitianForm):
    """Equivalence-class key: the signature pattern plus the conclusive
    local symbols of the discriminant class. Forms with equal keys and a
    fully conclusive symbol report are equivalent."""
    report = hilbert_product_check(h.ext, global_invariant(h).disc)
    if not report.conclusive:
        return None
    symbols = frozenset(e.label for e in report.entries if e.symbol == -1)
    return signature_pattern(h), symbols


def good_odd_primes(field: NumberField, delta: FieldElement, count: int) -> tuple[int, ...]:
    """Smallest odd primes with guaranteed-clean local data: coprime to the
    defining polynomial's discriminant and to delta's norm."""
    disc = Fraction(field.discriminant)
    norm = Fraction(delta.norm())
    avoid = abs(
        disc.numerator * disc.denominator * norm.numerator * norm.denominator
    )
    out = []
    p = 3
    while len(out) < count:
        if is_prime(p) and avoid % p != 0:
            out.append(p)
        p += 2
    return tuple(out)


def _transposition(i: int, j: int, size: int) -> tuple[int, ...]:
    tau = list(range(size))
    tau[i], tau[j] = tau[j], tau[i]
    return tuple(tau)


def _seed_inputs(field, delta, h1, h2, tau, probe, congruence) -> dict:
    coeffs = [exact(c) for c in field.min_poly.coeffs]
    signs = field.generator().signs()
    entries = []
    for e in dict.fromkeys(h1.diag + h2.diag):
        entries.append([exact(c) for c in e.coords])
    claimed_units = [
        [exact(c) for c in e.coords] for e in dict.fromkeys(h1.diag + h2.diag) if e.is_unit()
    ]
    return {
        "format_version": "1",
        "kind": "search-seed-input",
        "name": f"degree{field.degree}-disc{field.discriminant}",
        "field": {
            "min_poly": coeffs,
            "recorded_disc": exact(Fraction(field.discriminant)),
            "recorded_automorphism_count": "1",
            "recorded_generator_positive_count": exact(sum(1 for s in signs if s > 0)),
        },
        "extension": {"delta": [exact(c) for c in delta.coords]},
        "forms": {
            "first": [[exact(c) for c in e.coords] for e in h1.diag],
            "second": [[exact(c) for c in e.coords] for e in h2.diag],
        },
        "twist": {"tau": [exact(t) for t in tau]},
        "units": {"claimed_unit_coords": claimed_units, "lambda_generators": entries},
        "local_samples": {
            "norm_element_coords": entries,
            "norm_primes": [exact(p) for p in congruence],
            "product_element_coords": entries,
        },
        "congruence_primes": [exact(p) for p in congruence],
        "probe_prime": exact(probe),
    }


def search_seeds(cfg: SearchConfig) -> list[dict]:
    """Enumerate seed pairs and emit a certificate for every PASS.

    Pairs cover all ordered place combinations i < j, so a field supporting
    d single-indefinite-place classes yields the full pairwise family; a
    d-tuple of pairwise-distinct lattices is certified by its d(d-1)/2 pair
    certificates. Results are deterministic for a fixed config.
    """
    certificates: list[dict] = []
    for field in field_candidates(cfg):
        for delta_value in cfg.delta_candidates:
            delta = field.from_rational(Fraction(delta_value))
            ext = CMExtension(field, delta)
            neg_one = field.from_rational(-1)

            # one representative per (indefinite place, form class)
            reps: dict[int, HermitianForm] = {}
            seen_keys = set()
            for u in _entry_pool(field):
                diag = (u,) * (cfg.rank - 1) + (neg_one,)
                h = HermitianForm(ext, diag)
                pattern = signature_pattern(h)
                indefinite = [j for j, pq in enumerate(pattern) if min(pq) > 0]
                if len(indefinite) != 1:
                    continue
                key = _form_class_key(h)
                if key is None or key in seen_keys:
                    continue
                seen_keys.add(key)
                reps.setdefault(indefinite[0], h)

            places = sorted(reps)
            probe, *_ = congruence = good_odd_primes(field, delta, 2)
            for i, j in itertools.combinations(places, 2):
                h1, h2 = reps[i], reps[j]
                tau = _transposition(i, j, field.real_place_count)
                inputs = _seed_inputs(field, delta, h1, h2, tau, probe, congruence)
                payload = build_certificate(
                    inputs, precision_cap_digits=cfg.precision_cap_digits
                )
                if payload["verdict"]["overall"] != PASS:
                    continue
                certificates.append(payload)
                if cfg.output_path:
                    write_certificate(payload, cfg.output_path)
                if (
                    cfg.max_certificates is not None
                    and len(certificates) >= cfg.max_certificates
                ):
                    return certificates
    return certificates
