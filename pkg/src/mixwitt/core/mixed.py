"""The mixed Witt ring of a quaternion algebra with its canonical involution,
    W~(Q) = W(K) + W^1(Q) + W^-1(Q),
stored as (scalar form, hermitian diagonal, skew-hermitian diagonal), and the split model
W(K)[Z/2Z] with its augmentation. Products are computed entrywise on diagonals; no Witt
reduction is applied, so results are compared through signatures or, over Q, Witt equality.
"""
from dataclasses import dataclass
from typing import Iterable, Sequence

from loguru import logger

from mixwitt import AlgebraMismatch, FieldMismatch, NotInvertible, NotPure, SplitOp, ZeroElement
from mixwitt.core.numberfield import FieldElement, NumberField, Ordering
from mixwitt.core.quat import PureQuaternion, Quaternion, QuaternionAlgebra, symbol_slot
from mixwitt.core.witt import QuadraticForm, pfister, signature_q

@dataclass(frozen=True)
class HermitianDiagonal:
    """<a_1, ..., a_n>_gamma; the gamma-symmetric elements of Q are exactly K."""
    algebra: QuaternionAlgebra
    entries: tuple[FieldElement, ...] = ()

    def __post_init__(self):
        for a in self.entries:
            if a.field != self.algebra.field:
                raise FieldMismatch(f"entry {a} is not in {self.algebra.field}")
            if a.is_zero:
                raise ZeroElement("hermitian entries must be nonzero")

    def __str__(self) -> str:
        return "<" + ", ".join(str(a) for a in self.entries) + ">_h"

@dataclass(frozen=True)
class SkewHermitianDiagonal:
    """<z_1, ..., z_n>_gamma with invertible pure quaternions z_i."""
    algebra: QuaternionAlgebra
    entries: tuple[PureQuaternion, ...] = ()

    def __post_init__(self):
        for z in self.entries:
            if z.algebra != self.algebra:
                raise AlgebraMismatch(f"entry {z} is not in {self.algebra}")
            if not z.is_pure:
                raise NotPure(f"skew-hermitian entry {z} must be pure")
            if not z.is_invertible:
                raise NotInvertible(f"skew-hermitian entry {z} has reduced norm 0")

    def __str__(self) -> str:
        return "<" + ", ".join(str(z) for z in self.entries) + ">_s"

@dataclass(frozen=True)
class MixedElement:
    algebra: QuaternionAlgebra
    scalar: QuadraticForm
    herm: HermitianDiagonal
    skew: SkewHermitianDiagonal

    def __post_init__(self):
        if self.scalar.field != self.algebra.field:
            raise FieldMismatch(f"scalar part over {self.scalar.field}, algebra over {self.algebra.field}")
        if self.herm.algebra != self.algebra or self.skew.algebra != self.algebra:
            raise AlgebraMismatch("all parts must live over the same algebra")

    @property
    def field(self) -> NumberField:
        return self.algebra.field

    @classmethod
    def make(cls, Q: QuaternionAlgebra, scalar: Iterable = (), herm: Iterable = (), skew: Iterable[Quaternion] = ()) -> "MixedElement":
        """Coerce plain values: scalar and herm entries are field values, skew entries quaternions."""
        F = Q.field
        return cls(
            Q,
            QuadraticForm.of(F, scalar),
            HermitianDiagonal(Q, tuple(F.element(a) for a in herm)),
            SkewHermitianDiagonal(Q, tuple(z.as_pure() for z in skew)),
        )

    @classmethod
    def zero(cls, Q: QuaternionAlgebra) -> "MixedElement":
        return cls.make(Q)

    @classmethod
    def from_scalar(cls, Q: QuaternionAlgebra, q: QuadraticForm) -> "MixedElement":
        return cls.make(Q, scalar=q.entries)

    @property
    def is_scalar(self) -> bool:
        return not self.herm.entries and not self.skew.entries

    @property
    def is_zero(self) -> bool:
        return self.is_scalar and not self.scalar.entries

    def __add__(self, other: "MixedElement") -> "MixedElement":
        return mixed_add(self, other)

    def __mul__(self, other: "MixedElement") -> "MixedElement":
        return mixed_mul(self, other)

    def __str__(self) -> str:
        return f"({self.scalar}, {self.herm}, {self.skew})"

def _check_algebra(x: MixedElement, y: MixedElement):
    if x.algebra != y.algebra:
        raise AlgebraMismatch(f"elements of {x.algebra} and {y.algebra}")

def mixed_add(x: MixedElement, y: MixedElement) -> MixedElement:
    _check_algebra(x, y)
    return MixedElement(
        x.algebra,
        x.scalar + y.scalar,
        HermitianDiagonal(x.algebra, x.herm.entries + y.herm.entries),
        SkewHermitianDiagonal(x.algebra, x.skew.entries + y.skew.entries),
    )

def module_action(q: QuadraticForm, x: MixedElement) -> MixedElement:
    """The W(K)-module structure: scalars multiply every diagonal entry."""
    if q.field != x.field:
        raise FieldMismatch(f"form over {q.field} acting on an element over {x.field}")
    return MixedElement(
        x.algebra,
        q * x.scalar,
        HermitianDiagonal(x.algebra, tuple(c * h for c in q.entries for h in x.herm.entries)),
        SkewHermitianDiagonal(x.algebra, tuple(z.scale(c) for c in q.entries for z in x.skew.entries)),
    )

def norm_form_q(Q: QuaternionAlgebra) -> QuadraticForm:
    """n_Q = <<a, b>>"""
    return pfister([Q.a, Q.b])

def pfister_phi(z1: PureQuaternion, z2: PureQuaternion) -> QuadraticForm:
    """The 2-fold Pfister form <<z1^2, z2^2 c>> with c = symbol_slot(z1); its Clifford
    invariant is (z1^2, z2^2) + [Q].
    """
    if z1.algebra != z2.algebra:
        raise AlgebraMismatch(f"quaternions of {z1.algebra} and {z2.algebra}")
    for z in (z1, z2):
        if not z.is_invertible:
            raise NotInvertible(f"{z} has reduced norm 0")
    z1, z2 = z1.as_pure(), z2.as_pure()
    c = symbol_slot(z1)
    return pfister([z1.square(), z2.square() * c])

def herm_product(a: FieldElement, b: FieldElement, Q: QuaternionAlgebra) -> QuadraticForm:
    """<a>_gamma . <b>_gamma = <2ab> n_Q"""
    return norm_form_q(Q).scale(2 * a * b)

def skew_product(z1: PureQuaternion, z2: PureQuaternion) -> QuadraticForm:
    """<z1>_gamma . <z2>_gamma = <-Trd(z1 z2)> phi(z1, z2); zero when z1 and z2 anticommute."""
    trd = (z1 * z2).trd()
    if trd.is_zero:
        return QuadraticForm(z1.algebra.field)
    return pfister_phi(z1, z2).scale(-trd)

def mixed_mul(x: MixedElement, y: MixedElement) -> MixedElement:
    """Bilinear extension of the products on rank-1 entries; hermitian times skew is zero."""
    _check_algebra(x, y)
    Q = x.algebra
    scalar = x.scalar * y.scalar
    for a in x.herm.entries:
        for b in y.herm.entries:
            scalar = scalar + herm_product(a, b, Q)
    for z1 in x.skew.entries:
        for z2 in y.skew.entries:
            scalar = scalar + skew_product(z1, z2)
    xs = module_action(x.scalar, MixedElement(Q, QuadraticForm(Q.field), y.herm, y.skew))
    ys = module_action(y.scalar, MixedElement(Q, QuadraticForm(Q.field), x.herm, x.skew))
    return MixedElement(
        Q,
        scalar,
        HermitianDiagonal(Q, xs.herm.entries + ys.herm.entries),
        SkewHermitianDiagonal(Q, xs.skew.entries + ys.skew.entries),
    )

def rdim2(x: MixedElement) -> int:
    """Reduced dimension mod 2. Rank-1 hermitian and skew entries have reduced dimension 2."""
    return (x.scalar.dim + 2 * len(x.herm.entries) + 2 * len(x.skew.entries)) % 2

def trace_form(Q: QuaternionAlgebra) -> QuadraticForm:
    """The involution trace form, <1>_gamma squared: <2> n_Q."""
    one = MixedElement.make(Q, herm=[1])
    return mixed_mul(one, one).scalar

def involution_trace_form(Q: QuaternionAlgebra) -> QuadraticForm:
    """x -> Trd(gamma(x) x) on the orthogonal basis 1, i, j, k."""
    basis = (Q.quaternion(1), Q.i, Q.j, Q.k)
    return QuadraticForm(Q.field, tuple((e.conj() * e).trd() for e in basis))

# Split model W(K)[Z/2Z]

@dataclass(frozen=True)
class SplitMixedElement:
    """even + odd . g, with g the generator of Z/2Z."""
    field: NumberField
    even: QuadraticForm
    odd: QuadraticForm

    def __post_init__(self):
        if self.even.field != self.field or self.odd.field != self.field:
            raise FieldMismatch(f"both parts must lie over {self.field}")

    @classmethod
    def make(cls, F: NumberField, even: Sequence = (), odd: Sequence = ()) -> "SplitMixedElement":
        return cls(F, QuadraticForm.of(F, even), QuadraticForm.of(F, odd))

def split_model(op: SplitOp, u: SplitMixedElement, v: SplitMixedElement | None = None) -> SplitMixedElement | QuadraticForm:
    match SplitOp(op):
        case SplitOp.AUGMENT:
            return u.even + u.odd
        case SplitOp.ADD:
            _check_split(u, v)
            return SplitMixedElement(u.field, u.even + v.even, u.odd + v.odd)
        case SplitOp.MUL:
            _check_split(u, v)
            return SplitMixedElement(
                u.field,
                u.even * v.even + u.odd * v.odd,
                u.even * v.odd + u.odd * v.even,
            )

def _check_split(u: SplitMixedElement, v: SplitMixedElement):
    if u.field != v.field:
        raise FieldMismatch(f"elements over {u.field} and {v.field}")

def split_signature_pair(u: SplitMixedElement, P: Ordering) -> tuple[int, int]:
    """The two signatures of W(K)[Z/2Z] at P, sending g to +1 and to -1."""
    even, odd = signature_q(u.even, P), signature_q(u.odd, P)
    return even + odd, even - odd

logger.success("Mixed Witt ring module loaded.")
