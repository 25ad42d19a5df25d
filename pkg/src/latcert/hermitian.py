"""Diagonal hermitian forms over a CM extension and their group verdicts.

A diagonal form diag(a_1, ..., a_n) with nonzero a_i in the totally real
base field F carries three complete equivalence invariants: rank, the
signature at each real place, and the discriminant class in F*/N(E*). Form
equivalence is decided exactly from those. Verdicts about the associated
special unitary groups are deliberately one-sided: NOT_ISOMORPHIC is only
ever emitted on an archimedean definite/indefinite mismatch, which no
scaling can repair, while ISOMORPHIC requires an explicit scalar lambda
making the forms equivalent. Everything else stays UNKNOWN.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InconclusiveError, InvalidInputError
from .local import local_group_isomorphic, norm_class_equal
from .number_field import CMExtension, FieldElement, automorphism_count

ISOMORPHIC = "ISOMORPHIC"
NOT_ISOMORPHIC = "NOT_ISOMORPHIC"
UNKNOWN = "UNKNOWN"

SignaturePattern = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class HermitianForm:
    """diag(a_1, ..., a_n) with entries in the base field of ext."""

    ext: CMExtension
    diag: tuple[FieldElement, ...]

    def __post_init__(self):
        if not self.diag:
            raise InvalidInputError("a form needs at least one diagonal entry")
        coerced = []
        for a in self.diag:
            if not isinstance(a, FieldElement):
                a = self.ext.base.from_rational(a)
            if a.field != self.ext.base:
                raise InvalidInputError("diagonal entries must lie in the base field")
            if a.is_zero():
                raise InvalidInputError("diagonal entries must be nonzero")
            coerced.append(a)
        object.__setattr__(self, "diag", tuple(coerced))

    @property
    def rank(self) -> int:
        return len(self.diag)

    def scale(self, lam) -> "HermitianForm":
        if not isinstance(lam, FieldElement):
            lam = self.ext.base.from_rational(lam)
        if lam.is_zero():
            raise InvalidInputError("scaling by zero destroys the form")
        return HermitianForm(self.ext, tuple(lam * a for a in self.diag))

    def __neg__(self) -> "HermitianForm":
        return self.scale(-1)

    def __str__(self) -> str:
        return "diag(" + ", ".join(str(a) for a in self.diag) + ")"


def signature_pattern(h: HermitianForm) -> SignaturePattern:
    """(positives, negatives) among the diagonal entries at each real place."""
    pattern = []
    for place in h.ext.base.real_places():
        signs = [a.sign_at(place) for a in h.diag]
        pattern.append((signs.count(1), signs.count(-1)))
    return tuple(pattern)


def indefinite_places(h: HermitianForm) -> tuple[int, ...]:
    return tuple(
        j for j, (p, q) in enumerate(signature_pattern(h)) if p > 0 and q > 0
    )


@dataclass(frozen=True)
class GlobalInvariant:
    rank: int
    disc: FieldElement  # product of the diagonal entries, a class rep in F*/N(E*)
    signatures: SignaturePattern


def global_invariant(h: HermitianForm) -> GlobalInvariant:
    disc = h.ext.base.one()
    for a in h.diag:
        disc = disc * a
    return GlobalInvariant(h.rank, disc, signature_pattern(h))


def forms_equivalent(h1: HermitianForm, h2: HermitianForm) -> bool:
    """Exact equivalence test: rank, signatures, and discriminant class.

    These are complete invariants for hermitian forms over a number field,
    so both answers are definitive; an undecidable discriminant comparison
    raises InconclusiveError instead of returning.
    """
    if h1.ext != h2.ext:
        raise InvalidInputError("forms live over different CM extensions")
    if h1.rank != h2.rank:
        return False
    g1, g2 = global_invariant(h1), global_invariant(h2)
    if g1.signatures != g2.signatures:
        return False
    return norm_class_equal(h1.ext, g1.disc, g2.disc)


@dataclass(frozen=True)
class IsomorphismVerdict:
    status: str  # ISOMORPHIC | NOT_ISOMORPHIC | UNKNOWN
    witness_place: Optional[int] = None  # definite/indefinite mismatch location
    scaling: Optional[FieldElement] = None  # lambda with lambda*h1 ~ h2
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.status} ({self.detail})" if self.detail else self.status


def _lambda_candidates(
    h1: HermitianForm, h2: HermitianForm, unit_gens: Sequence[FieldElement], height: int
):
    """Products of generators and diagonal entries with exponent height <= bound.

    Both signs of every product are produced; 1 and -1 always appear
    (the empty product).
    """
    base = []
    seen_coords = set()
    for g in tuple(unit_gens) + h1.diag + h2.diag:
        if not isinstance(g, FieldElement):
            g = h1.ext.base.from_rational(g)
        if g.coords in seen_coords:
            continue
        seen_coords.add(g.coords)
        base.append(g)
    emitted = set()
    for total in range(height + 1):
        for exps in _signed_exponent_vectors(len(base), total):
            lam = h1.ext.base.one()
            for g, e in zip(base, exps):
                lam = lam * g**e
            for signed in (lam, -lam):
                if signed.coords not in emitted:
                    emitted.add(signed.coords)
                    yield signed


def _signed_exponent_vectors(length: int, total: int):
    """Integer vectors with sum of |entries| equal to total, small heads first."""
    if length == 0:
        if total == 0:
            yield ()
        return
    for head in sorted(range(-total, total + 1), key=lambda x: (abs(x), x < 0)):
        for rest in _signed_exponent_vectors(length - 1, total - abs(head)):
            yield (head,) + rest


def group_isomorphism_verdict(
    h1: HermitianForm,
    h2: HermitianForm,
    unit_gens: Sequence[FieldElement] = (),
    height: int = 2,
) -> IsomorphismVerdict:
    """One-sided comparison of the special unitary groups of two forms.

    A real place where exactly one form is definite certifies
    NOT_ISOMORPHIC: |pos - neg| there is invariant under any scaling, and
    the scaled form would have to match. A scalar in the search pool making
    lambda*h1 equivalent to h2 certifies ISOMORPHIC. Anything subtler is
    reported UNKNOWN rather than guessed.
    """
    if h1.ext != h2.ext:
        raise InvalidInputError("forms live over different CM extensions")
    if h1.rank != h2.rank:
        raise InvalidInputError("verdict requires equal ranks")
    if h1.rank % 2 == 0:
        raise InvalidInputError("even rank is out of scope for group verdicts")

    sig1, sig2 = signature_pattern(h1), signature_pattern(h2)
    for j, ((p1, q1), (p2, q2)) in enumerate(zip(sig1, sig2)):
        definite1, definite2 = min(p1, q1) == 0, min(p2, q2) == 0
        if definite1 != definite2:
            return IsomorphismVerdict(
                NOT_ISOMORPHIC,
                witness_place=j,
                detail=f"real place {j}: signatures {(p1, q1)} vs {(p2, q2)}",
            )

    saw_inconclusive = False
    for lam in _lambda_candidates(h1, h2, unit_gens, height):
        try:
            if forms_equivalent(h1.scale(lam), h2):
                return IsomorphismVerdict(
                    ISOMORPHIC, scaling=lam, detail=f"lambda = {lam}"
                )
        except InconclusiveError:
            saw_inconclusive = True
    detail = "no scaling found within the height bound"
    if saw_inconclusive:
        detail += "; some candidates were undecidable"
    return IsomorphismVerdict(UNKNOWN, detail=detail)


def _validate_permutation(tau: Sequence[int], size: int) -> tuple[int, ...]:
    tau = tuple(tau)
    if sorted(tau) != list(range(size)):
        raise InvalidInputError(
            f"expected a permutation of 0..{size - 1}, got {tau}"
        )
    return tau


def twist_pattern(pattern: SignaturePattern, tau: Sequence[int]) -> SignaturePattern:
    """Pull the per-place signatures back along the place permutation.

    Entry j of the result is entry tau(j) of the input.
    """
    tau = _validate_permutation(tau, len(pattern))
    return tuple(pattern[tau[j]] for j in range(len(pattern)))


def compose_permutations(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Permutation doing a first, then b: result[i] = b[a[i]]."""
    if len(a) != len(b):
        raise InvalidInputError("permutations act on different index sets")
    a = _validate_permutation(a, len(a))
    b = _validate_permutation(b, len(b))
    return tuple(b[a[i]] for i in range(len(a)))


PASS = "PASS"
FAIL = "FAIL"


@dataclass(frozen=True)
class ComponentCheck:
    name: str
    status: str  # PASS | FAIL | UNKNOWN
    detail: str


@dataclass(frozen=True)
class SeedVerdict:
    status: str  # PASS | FAIL | UNKNOWN
    components: tuple[ComponentCheck, ...]

    def component(self, name: str) -> ComponentCheck:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self) -> str:
        parts = ", ".join(f"{c.name}={c.status}" for c in self.components)
        return f"{self.status} [{parts}]"


def _standing_assumption(h: HermitianForm) -> ComponentCheck:
    # Exactly one real place indefinite, with the extreme signature
    # {rank-1, 1}; all other places definite.
    pattern = signature_pattern(h)
    indef = [(j, pq) for j, pq in enumerate(pattern) if min(pq) > 0]
    if len(indef) != 1:
        return ComponentCheck(
            "standing-assumption", FAIL, f"{len(indef)} indefinite places in {pattern}"
        )
    j, (p, q) = indef[0]
    if sorted((p, q)) != [1, h.rank - 1]:
        return ComponentCheck(
            "standing-assumption",
            FAIL,
            f"indefinite signature {(p, q)} at place {j} is not rank-1,1",
        )
    return ComponentCheck(
        "standing-assumption", PASS, f"unique indefinite place {j} with {(p, q)}"
    )


def seed_pair_check(
    h1: HermitianForm,
    h2: HermitianForm,
    tau: Sequence[int],
    probe_place=None,
    unit_gens: Sequence[FieldElement] = (),
    height: int = 2,
) -> SeedVerdict:
    """The four computable hypotheses that make (h1, h2, tau) a seed pair.

    (a) each form satisfies the standing assumption (one indefinite place,
        signature rank-1,1 there, definite elsewhere);
    (b) the groups are non-isomorphic, which the trivial-automorphism check
        makes complete: with no nontrivial field automorphism the only
        composition to rule out is the identity one;
    (c) tau carries the signature pattern of h1 to that of h2;
    (d) the odd-rank local rule applies at the probe place (when given).
    """
    if h1.ext != h2.ext:
        raise InvalidInputError("forms live over different CM extensions")
    if h1.rank != h2.rank:
        raise InvalidInputError("seed pairs have equal ranks")
    if h1.rank % 2 == 0:
        raise InvalidInputError("even rank is out of scope for seed pairs")
    tau = _validate_permutation(tau, h1.ext.base.real_place_count)

    components: list[ComponentCheck] = []

    a1 = _standing_assumption(h1)
    a2 = _standing_assumption(h2)
    if a1.status == PASS and a2.status == PASS:
        components.append(
            ComponentCheck("standing-assumption", PASS, f"{a1.detail}; {a2.detail}")
        )
    else:
        bad = a1 if a1.status != PASS else a2
        components.append(ComponentCheck("standing-assumption", FAIL, bad.detail))

    aut = automorphism_count(h1.ext.base)
    verdict = group_isomorphism_verdict(h1, h2, unit_gens=unit_gens, height=height)
    if aut != 1:
        components.append(
            ComponentCheck(
                "non-isomorphism",
                UNKNOWN,
                f"{aut} field automorphisms; compositions not enumerated",
            )
        )
    elif verdict.status == NOT_ISOMORPHIC:
        components.append(ComponentCheck("non-isomorphism", PASS, verdict.detail))
    elif verdict.status == ISOMORPHIC:
        components.append(ComponentCheck("non-isomorphism", FAIL, verdict.detail))
    else:
        components.append(ComponentCheck("non-isomorphism", UNKNOWN, verdict.detail))

    twisted = twist_pattern(signature_pattern(h1), tau)
    if twisted == signature_pattern(h2):
        components.append(ComponentCheck("twist-match", PASS, f"tau = {tau}"))
    else:
        components.append(
            ComponentCheck(
                "twist-match",
                FAIL,
                f"twisted pattern {twisted} != {signature_pattern(h2)}",
            )
        )

    if probe_place is not None:
        try:
            local = local_group_isomorphic(h1.ext, probe_place, h1.rank)
            status = PASS if local.isomorphic else FAIL
            components.append(ComponentCheck("local-rule", status, local.detail))
        except InconclusiveError as exc:
            components.append(ComponentCheck("local-rule", UNKNOWN, str(exc)))

    if any(c.status == FAIL for c in components):
        overall = FAIL
    elif any(c.status == UNKNOWN for c in components):
        overall = UNKNOWN
    else:
        overall = PASS
    return SeedVerdict(overall, tuple(components))
