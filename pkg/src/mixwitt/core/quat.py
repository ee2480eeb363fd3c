"""Quaternion algebras (a, b)_K with i^2 = a, j^2 = b, k = ij = -ji, and their canonical
(symplectic) involution, which negates the pure part.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from loguru import logger

from mixwitt import AlgebraMismatch, FieldMismatch, NoAnisotropicVector, NotInvertible, NotPure, QuatOp, ZeroElement
from mixwitt.core.brauer import QuaternionSymbol
from mixwitt.core.numberfield import FieldElement, NumberField

Scalar = FieldElement | int | Fraction

@dataclass(frozen=True)
class QuaternionAlgebra:
    field: NumberField
    a: FieldElement
    b: FieldElement

    def __post_init__(self):
        if self.a.field != self.field or self.b.field != self.field:
            raise FieldMismatch(f"structure constants must lie in {self.field}")
        if self.a.is_zero or self.b.is_zero:
            raise ZeroElement("structure constants must be nonzero")

    @classmethod
    def of(cls, field: NumberField, a, b) -> "QuaternionAlgebra":
        return cls(field, field.element(a), field.element(b))

    @property
    def symbol(self) -> QuaternionSymbol:
        return QuaternionSymbol(self.field, self.a, self.b)

    def quaternion(self, x0=0, x1=0, x2=0, x3=0) -> "Quaternion":
        return Quaternion(self, tuple(self.field.element(x) for x in (x0, x1, x2, x3)))

    def pure(self, x1=0, x2=0, x3=0) -> "PureQuaternion":
        return PureQuaternion(self, tuple(self.field.element(x) for x in (0, x1, x2, x3)))

    @property
    def i(self) -> "PureQuaternion":
        return self.pure(1, 0, 0)

    @property
    def j(self) -> "PureQuaternion":
        return self.pure(0, 1, 0)

    @property
    def k(self) -> "PureQuaternion":
        return self.pure(0, 0, 1)

    def __str__(self) -> str:
        return f"({self.a}, {self.b})"

@dataclass(frozen=True, eq=False)
class Quaternion:
    """x0 + x1 i + x2 j + x3 k"""
    algebra: QuaternionAlgebra
    x: tuple[FieldElement, FieldElement, FieldElement, FieldElement]

    def __post_init__(self):
        assert len(self.x) == 4, f"a quaternion has 4 coordinates, got {len(self.x)}"
        for c in self.x:
            if c.field != self.algebra.field:
                raise FieldMismatch(f"coordinate {c} is not in {self.algebra.field}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.algebra == other.algebra and self.x == other.x

    def __hash__(self) -> int:
        return hash((self.algebra, self.x))

    def _check(self, other: "Quaternion"):
        if other.algebra != self.algebra:
            raise AlgebraMismatch(f"quaternions of {self.algebra} and {other.algebra}")

    @property
    def is_pure(self) -> bool:
        return self.x[0].is_zero

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.x)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        self._check(other)
        return Quaternion(self.algebra, tuple(u + v for u, v in zip(self.x, other.x)))

    def __neg__(self) -> "Quaternion":
        return Quaternion(self.algebra, tuple(-c for c in self.x))

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return self + (-other)

    def scale(self, c: Scalar) -> "Quaternion":
        c = self.algebra.field.element(c)
        return Quaternion(self.algebra, tuple(c * u for u in self.x))

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            return self.scale(other)
        self._check(other)
        a, b = self.algebra.a, self.algebra.b
        ab = a * b
        x0, x1, x2, x3 = self.x
        y0, y1, y2, y3 = other.x
        return Quaternion(self.algebra, (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - ab * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ))

    def __rmul__(self, other):
        return self.scale(other)

    def conj(self) -> "Quaternion":
        x0, x1, x2, x3 = self.x
        return Quaternion(self.algebra, (x0, -x1, -x2, -x3))

    def trd(self) -> FieldElement:
        return 2 * self.x[0]

    def nrd(self) -> FieldElement:
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.x
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3

    @property
    def is_invertible(self) -> bool:
        return not self.nrd().is_zero

    def pure_part(self) -> "PureQuaternion":
        return PureQuaternion(self.algebra, (self.algebra.field.zero,) + tuple(self.x[1:]))

    def as_pure(self) -> "PureQuaternion":
        if not self.is_pure:
            raise NotPure(f"{self} has scalar part {self.x[0]}")
        return self.pure_part()

    def __str__(self) -> str:
        terms = [f"({c})" + unit for c, unit in zip(self.x, ("", "i", "j", "k")) if not c.is_zero]
        return " + ".join(terms) or "0"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

class PureQuaternion(Quaternion):
    """A quaternion x1 i + x2 j + x3 k; its square is the scalar -nrd."""

    def __post_init__(self):
        super().__post_init__()
        if not self.x[0].is_zero:
            raise NotPure(f"scalar part {self.x[0]} is nonzero")

    def __neg__(self) -> "PureQuaternion":
        return PureQuaternion(self.algebra, tuple(-c for c in self.x))

    def scale(self, c: Scalar) -> "PureQuaternion":
        c = self.algebra.field.element(c)
        return PureQuaternion(self.algebra, tuple(c * u for u in self.x))

    def as_quaternion(self) -> Quaternion:
        return Quaternion(self.algebra, self.x)

    def square(self) -> FieldElement:
        a, b = self.algebra.a, self.algebra.b
        _, x1, x2, x3 = self.x
        return a * x1 * x1 + b * x2 * x2 - a * b * x3 * x3

def quat_arith(op: QuatOp, x: Quaternion, y: Quaternion | None = None) -> Quaternion | FieldElement:
    match QuatOp(op):
        case QuatOp.ADD:
            return x + y
        case QuatOp.MUL:
            return x * y
        case QuatOp.CONJ:
            return x.conj()
        case QuatOp.TRD:
            return x.trd()
        case QuatOp.NRD:
            return x.nrd()
        case QuatOp.NEG:
            return -x

def pure_square(z: Quaternion) -> FieldElement:
    """z^2 = a x1^2 + b x2^2 - ab x3^2 for pure z."""
    return z.as_pure().square()

def _require_invertible(z: Quaternion):
    if not z.is_invertible:
        raise NotInvertible(f"{z} has reduced norm 0")

def anticommuting_unit(z: Quaternion) -> PureQuaternion:
    """An invertible pure z' with z z' = -z' z.
    The pure z' anticommuting with z form the kernel of the linear form
    w -> a u1 w1 + b u2 w2 - ab u3 w3, a plane; try its basis vectors, their sum, their difference.
    """
    z = z.as_pure()
    _require_invertible(z)
    Q = z.algebra
    F = Q.field
    _, u1, u2, u3 = z.x
    c = (Q.a * u1, Q.b * u2, -Q.a * Q.b * u3)
    m = next(idx for idx, cm in enumerate(c) if not cm.is_zero)
    basis = []
    for l in range(3):
        if l == m:
            continue
        w = [F.zero] * 3
        w[l] = F.one
        w[m] = -c[l] / c[m]
        basis.append(Q.pure(*w))
    v1, v2 = basis
    for candidate in (v1, v2, PureQuaternion(Q, (v1 + v2).x), PureQuaternion(Q, (v1 - v2).x)):
        if candidate.is_invertible:
            return candidate
    raise NoAnisotropicVector(f"no invertible pure quaternion anticommutes with {z}")

def symbol_slot(z: Quaternion) -> FieldElement:
    """c with [Q] = (z^2, c), namely c = z'^2 for z' = anticommuting_unit(z)."""
    return anticommuting_unit(z).square()

def pure_from_coords(Q: QuaternionAlgebra, coords: Sequence) -> PureQuaternion:
    """Three coordinates (x1, x2, x3), or four with x0 = 0."""
    if len(coords) == 4:
        return Q.quaternion(*coords).as_pure()
    return Q.pure(*coords)

logger.success("Quaternion module loaded.")
