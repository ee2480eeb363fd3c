"""Principal sets, polarizations, reference forms and the actions on polarizations.
A polarization picks one of the two signature maps at each ordering. Since X(K) is finite
and discrete for a number field, every polarization is continuous and every U(x) is clopen.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Mapping

from loguru import logger
from pydantic import BaseModel, ConfigDict, field_validator

from mixwitt import (
    CoverSearchFailed,
    DegenerateReference,
    DomainMismatch,
    PartialPolarization,
    SearchBudgetExceeded,
    ZeroElement,
)
from mixwitt.core.mixed import MixedElement, SkewHermitianDiagonal, mixed_add, mixed_mul, module_action
from mixwitt.core.numberfield import FieldElement, NumberField, Ordering, real_orderings
from mixwitt.core.quat import PureQuaternion, QuaternionAlgebra
from mixwitt.core.witt import QuadraticForm, signature_q
from mixwitt.utils import ctx
from mixwitt.utils.log import traced
from .signature import (
    ReferencePolicy,
    partition_orderings,
    signature_pair,
    skew_signature_with_reference,
    square_signature,
)

class PolarizationMap(BaseModel):
    """Ordering index -> label in {+1, -1}, on a subset of X(K)."""
    model_config = ConfigDict(frozen=True)

    labels: dict[int, int] = {}

    @field_validator("labels")
    @classmethod
    def _labels_are_signs(cls, labels: dict[int, int]) -> dict[int, int]:
        for index, eta in labels.items():
            if eta not in (1, -1):
                raise ValueError(f"label at ordering {index} must be +1 or -1, got {eta}")
        return dict(sorted(labels.items()))

    @property
    def domain(self) -> set[int]:
        return set(self.labels)

    def opposite(self) -> "PolarizationMap":
        return PolarizationMap(labels={i: -eta for i, eta in self.labels.items()})

    def is_total(self, F: NumberField) -> bool:
        return self.domain == {P.index for P in real_orderings(F)}

    @classmethod
    def constant(cls, F: NumberField, eta: int = 1) -> "PolarizationMap":
        return cls(labels={P.index: eta for P in real_orderings(F)})

@dataclass(frozen=True)
class ReferenceForm:
    """A skew-hermitian form together with the orderings where its signature is nonzero."""
    form: SkewHermitianDiagonal
    nonzero_set: tuple[Ordering, ...]

    @property
    def algebra(self) -> QuaternionAlgebra:
        return self.form.algebra

    def policy(self) -> ReferencePolicy:
        """Rank-1 references normalized so that the whole form gets +2 at each ordering."""
        refs = {}
        for P in self.nonzero_set:
            entry = next((z for z in self.form.entries if square_signature(z, P) == 4), None)
            if entry is None:
                raise DegenerateReference(f"{self.form} has no nondegenerate entry at {P}", ordering=P.index)
            total = skew_signature_with_reference(self.form, P, entry)
            if total == 0:
                raise DegenerateReference(f"{self.form} has zero signature at {P}", ordering=P.index)
            refs[P.index] = entry if total > 0 else -entry
        return ReferencePolicy.from_map(refs)

def _skew_element(Q: QuaternionAlgebra, entries) -> MixedElement:
    return MixedElement(Q, QuadraticForm(Q.field), MixedElement.zero(Q).herm, SkewHermitianDiagonal(Q, tuple(entries)))

def _form_square_signature(Q: QuaternionAlgebra, entries, P: Ordering) -> int:
    x = _skew_element(Q, entries)
    return signature_q(mixed_mul(x, x).scalar, P)

def principal_set(x: MixedElement, refs: ReferencePolicy | None = None) -> tuple[Ordering, ...]:
    """U(x): orderings where the two signatures of x differ."""
    result = []
    for P in real_orderings(x.field):
        pair = signature_pair(x, P, refs)
        if pair.s_plus != pair.s_minus:
            result.append(P)
    return tuple(result)

def support_set(x: MixedElement, refs: ReferencePolicy | None = None) -> tuple[Ordering, ...]:
    """Orderings where some signature of x is nonzero."""
    result = []
    for P in real_orderings(x.field):
        pair = signature_pair(x, P, refs)
        if pair.s_plus or pair.s_minus:
            result.append(P)
    return tuple(result)

def principal_polarization(x: MixedElement, refs: ReferencePolicy | None = None) -> PolarizationMap:
    """s_x: on U(x), the label whose signature of x is the larger one."""
    labels = {}
    for P in real_orderings(x.field):
        pair = signature_pair(x, P, refs)
        if pair.s_plus != pair.s_minus:
            labels[P.index] = 1 if pair.s_plus > pair.s_minus else -1
    return PolarizationMap(labels=labels)

def total_signature(x: MixedElement, pol: PolarizationMap, refs: ReferencePolicy | None = None) -> dict[int, int]:
    """P -> the pol(P)-signature of x; pol must be total."""
    if not pol.is_total(x.field):
        raise PartialPolarization(f"polarization defined on {sorted(pol.domain)} only")
    return {
        P.index: signature_pair(x, P, refs).component(pol.labels[P.index])
        for P in real_orderings(x.field)
    }

def act_on_polarization(fn: Mapping[int, int], pol: PolarizationMap) -> PolarizationMap:
    """Pointwise product of a {+1, -1}-valued function with the labels."""
    missing = pol.domain - set(fn)
    if missing:
        raise DomainMismatch(f"function undefined at orderings {sorted(missing)}")
    return PolarizationMap(labels={i: fn[i] * eta for i, eta in pol.labels.items()})

def standard_automorphism(a: FieldElement | int | Fraction, x: MixedElement) -> MixedElement:
    """(<a>_gamma)_*: scales the hermitian and skew entries by a, leaving the scalar part.
    It swaps the two signatures exactly where a is negative."""
    a = x.field.element(a)
    if a.is_zero:
        raise ZeroElement("standard automorphisms need a nonzero scalar")
    scaled = module_action(QuadraticForm(x.field, (a,)), MixedElement(x.algebra, QuadraticForm(x.field), x.herm, x.skew))
    return MixedElement(x.algebra, x.scalar, scaled.herm, scaled.skew)

def _reference_pool(Q: QuaternionAlgebra) -> list[PureQuaternion]:
    i, j, k = Q.i, Q.j, Q.k
    return [i, j, k, Q.pure(1, 1, 0), Q.pure(1, -1, 0), Q.pure(1, 0, 1), Q.pure(1, 0, -1), Q.pure(0, 1, 1), Q.pure(0, 1, -1)]

def _candidates(Q: QuaternionAlgebra) -> Iterator[tuple[PureQuaternion, ...]]:
    """Single pool entries, then integer combinations, then pairs of pool entries."""
    pool = _reference_pool(Q)
    for z in pool:
        yield (z,)
    for coords in product(range(-2, 3), repeat=3):
        if any(coords):
            yield (Q.pure(*coords),)
    for z1, z2 in combinations(pool, 2):
        yield (z1, z2)

@traced
def find_reference(Q: QuaternionAlgebra, budget: int | None = None) -> ReferenceForm:
    """A skew-hermitian form whose signature is +-2 at every split ordering.
    Raises:
        - SearchBudgetExceeded: no candidate within the budget
    """
    budget = ctx.budget.get() if budget is None else budget
    x_plus = partition_orderings(Q).x_plus
    if not x_plus:
        logger.log("SEARCH", f"{Q} is nonsplit everywhere; the empty reference covers X_1.")
        return ReferenceForm(SkewHermitianDiagonal(Q), ())
    tried = 0
    with logger.contextualize(algebra=str(Q), budget=budget):
        for entries in _candidates(Q):
            if tried >= budget:
                break
            tried += 1
            if not all(z.is_invertible for z in entries):
                continue
            if all(_form_square_signature(Q, entries, P) == 4 for P in x_plus):
                form = SkewHermitianDiagonal(Q, entries)
                logger.log("SEARCH", f"Accepted reference {form} after {tried} candidates.")
                return ReferenceForm(form, x_plus)
    raise SearchBudgetExceeded(f"no reference for {Q} among {tried} candidates; raise the budget")

def global_polarization(Q: QuaternionAlgebra, ref_form: ReferenceForm) -> tuple[PolarizationMap, ReferencePolicy]:
    """The +1 label everywhere: the canonical one on X_-1(A) and the principal label of the
    reference form on X_1(A)."""
    partition = partition_orderings(Q)
    missing = [P for P in partition.x_plus if P not in ref_form.nonzero_set]
    if missing:
        raise DegenerateReference(f"reference form does not cover {missing[0]}", ordering=missing[0].index)
    return PolarizationMap.constant(Q.field, 1), ref_form.policy()

def _multiplier_pool(F: NumberField) -> list[FieldElement]:
    theta = F.gen
    values = [
        1, -1, 2, -2, 3, -3, Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 3), 5, -5,
        theta, -theta, 1 + theta, 1 - theta, theta - 1, -1 - theta, 2 * theta, -2 * theta,
    ]
    pool = []
    for v in values:
        v = F.element(v)
        if not v.is_zero and v not in pool:
            pool.append(v)
    return pool

@traced
def cover_union(x1: MixedElement, x2: MixedElement, refs: ReferencePolicy | None = None) -> MixedElement:
    """An element x1 + <l> x2 with U = U(x1) + U(x2), for l in a fixed pool of small elements.
    Raises:
        - CoverSearchFailed
    """
    target = set(principal_set(x1, refs)) | set(principal_set(x2, refs))
    for lam in _multiplier_pool(x1.field):
        candidate = mixed_add(x1, module_action(QuadraticForm(x1.field, (lam,)), x2))
        if set(principal_set(candidate, refs)) == target:
            logger.log("SEARCH", f"cover_union accepted multiplier {lam}")
            return candidate
    raise CoverSearchFailed(f"no multiplier in the pool yields U = {sorted(P.index for P in target)}")

logger.success("Polarization module loaded.")
