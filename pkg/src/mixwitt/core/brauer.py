"""Quaternion symbols (a, b) and formal sums of them in the 2-torsion of the Brauer group."""
from dataclasses import dataclass
from typing import Sequence

from loguru import logger

from mixwitt import FieldMismatch, NonRationalField, ZeroElement
from mixwitt.core.numberfield import FieldElement, NumberField, Ordering, real_orderings, sign_at
from mixwitt.core.witt import Place, QuadraticForm, hilbert_symbol, pfister, relevant_places

@dataclass(frozen=True)
class QuaternionSymbol:
    field: NumberField
    a: FieldElement
    b: FieldElement

    def __post_init__(self):
        if self.a.field != self.field or self.b.field != self.field:
            raise FieldMismatch(f"symbol slots must lie in {self.field}")
        if self.a.is_zero or self.b.is_zero:
            raise ZeroElement("symbol slots must be nonzero")

    @classmethod
    def of(cls, field: NumberField, a, b) -> "QuaternionSymbol":
        return cls(field, field.element(a), field.element(b))

    def __str__(self) -> str:
        return f"({self.a}, {self.b})"

@dataclass(frozen=True)
class BrauerClass2:
    """A formal sum of quaternion symbols; every symbol has order 2."""
    field: NumberField
    symbols: tuple[QuaternionSymbol, ...] = ()

    def __post_init__(self):
        for s in self.symbols:
            if s.field != self.field:
                raise FieldMismatch(f"symbol {s} is not over {self.field}")

    def __add__(self, other: "BrauerClass2") -> "BrauerClass2":
        if other.field != self.field:
            raise FieldMismatch(f"classes over {self.field} and {other.field}")
        return BrauerClass2(self.field, self.symbols + other.symbols)

def splits_at_real(s: QuaternionSymbol, P: Ordering) -> bool:
    if s.field != P.field:
        raise FieldMismatch(f"symbol over {s.field} at an ordering of {P.field}")
    return sign_at(s.a, P) == 1 or sign_at(s.b, P) == 1

def norm_form(s: QuaternionSymbol) -> QuadraticForm:
    """<<a, b>> = <1, -a, -b, ab>"""
    return pfister([s.a, s.b])

def _require_rational(*classes: BrauerClass2):
    for c in classes:
        if not c.field.is_rational:
            raise NonRationalField(f"class over {c.field}; this operation needs Q")

def local_invariant(c: BrauerClass2, v: Place) -> int:
    """Product of the local Hilbert symbols of the class's symbols at v."""
    _require_rational(c)
    result = 1
    for s in c.symbols:
        result *= hilbert_symbol(s.a, s.b, v)
    return result

def _slots(*classes: BrauerClass2) -> list[FieldElement]:
    return [x for c in classes for s in c.symbols for x in (s.a, s.b)]

def ramified_places(c: BrauerClass2) -> list[Place]:
    """Places where the class does not split; there is always an even number of them."""
    return [v for v in relevant_places(_slots(c)) if local_invariant(c, v) == -1]

def class_equal_rational(c1: BrauerClass2, c2: BrauerClass2) -> bool:
    """Equality in Br_2(Q): the local invariants agree at every place."""
    _require_rational(c1, c2)
    if c1.field != c2.field:
        raise FieldMismatch(f"classes over {c1.field} and {c2.field}")
    places = relevant_places(_slots(c1, c2))
    return all(local_invariant(c1, v) == local_invariant(c2, v) for v in places)

def real_places_equal(c1: BrauerClass2, c2: BrauerClass2) -> bool:
    """Agreement of the local invariants at every ordering; weaker than equality in Br_2(K)."""
    if c1.field != c2.field:
        raise FieldMismatch(f"classes over {c1.field} and {c2.field}")

    def invariant(c: BrauerClass2, P: Ordering) -> int:
        result = 1
        for s in c.symbols:
            result *= 1 if splits_at_real(s, P) else -1
        return result

    return all(invariant(c1, P) == invariant(c2, P) for P in real_orderings(c1.field))

def symbols(field: NumberField, pairs: Sequence[tuple]) -> BrauerClass2:
    """Shorthand: symbols(Q, [(-1, -1), (2, 3)])."""
    return BrauerClass2(field, tuple(QuaternionSymbol.of(field, a, b) for a, b in pairs))

logger.success("Brauer module loaded.")
