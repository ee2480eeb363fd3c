"""Diagonal quadratic forms over a number field and the Witt ring W(K).
    - sum, tensor, negation, scaling, Pfister forms
    - signatures at orderings, dimension mod 2, signed discriminant
    - over Q only: Hilbert symbols, Hasse invariants, isotropy and exact Witt-class equality
"""
from dataclasses import dataclass
from fractions import Fraction
import functools
from itertools import combinations
from typing import Iterable, Sequence

from loguru import logger
from sympy import legendre_symbol, multiplicity, primefactors
from sympy.ntheory.factor_ import core

from mixwitt import FieldMismatch, FormOp, NonRationalField, WeakVerdict, ZeroArgument, ZeroElement, ZeroScale, ZeroSlot
from mixwitt.core.numberfield import FieldElement, NumberField, real_orderings, sign_at

@dataclass(frozen=True)
class QuadraticForm:
    """The diagonal form <a_1, ..., a_n>. The empty form is the zero of W(K)."""
    field: NumberField
    entries: tuple[FieldElement, ...] = ()

    def __post_init__(self):
        for a in self.entries:
            if a.field != self.field:
                raise FieldMismatch(f"entry {a} is not in {self.field}")
            if a.is_zero:
                raise ZeroElement("diagonal entries must be nonzero")

    @classmethod
    def of(cls, field: NumberField, values: Iterable) -> "QuadraticForm":
        return cls(field, tuple(field.element(v) for v in values))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return self.dim

    def _check(self, other: "QuadraticForm"):
        if other.field != self.field:
            raise FieldMismatch(f"forms over {self.field} and {other.field}")

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        self._check(other)
        return QuadraticForm(self.field, self.entries + other.entries)

    def __neg__(self) -> "QuadraticForm":
        return QuadraticForm(self.field, tuple(-a for a in self.entries))

    def __mul__(self, other: "QuadraticForm") -> "QuadraticForm":
        self._check(other)
        return QuadraticForm(self.field, tuple(a * b for a in self.entries for b in other.entries))

    def scale(self, c: FieldElement | int | Fraction) -> "QuadraticForm":
        c = self.field.element(c)
        if c.is_zero:
            raise ZeroScale("cannot scale a form by zero")
        return QuadraticForm(self.field, tuple(c * a for a in self.entries))

    def __str__(self) -> str:
        return "<" + ", ".join(str(a) for a in self.entries) + ">"

def form_combine(op: FormOp, q1: QuadraticForm, q2: QuadraticForm | FieldElement | int | Fraction | None = None) -> QuadraticForm:
    match FormOp(op):
        case FormOp.SUM:
            return q1 + q2
        case FormOp.TENSOR:
            return q1 * q2
        case FormOp.NEGATE:
            return -q1
        case FormOp.SCALE:
            return q1.scale(q2)

def pfister(slots: Sequence[FieldElement], field: NumberField | None = None) -> QuadraticForm:
    """<<a_1, ..., a_n>> = <1, -a_1> x ... x <1, -a_n>; the 0-fold form is <1>."""
    if field is None:
        assert slots, "field is required for the 0-fold Pfister form"
        field = slots[0].field
    result = QuadraticForm.of(field, [1])
    for a in slots:
        a = field.element(a)
        if a.is_zero:
            raise ZeroSlot("Pfister slots must be nonzero")
        result = result * QuadraticForm(field, (field.one, -a))
    return result

def signature_q(q: QuadraticForm, P) -> int:
    if q.field != P.field:
        raise FieldMismatch(f"form over {q.field} evaluated at an ordering of {P.field}")
    return sum(sign_at(a, P) for a in q.entries)

def total_signature_q(q: QuadraticForm) -> dict[int, int]:
    """The classical total signature, keyed by ordering index."""
    return {P.index: signature_q(q, P) for P in real_orderings(q.field)}

def signed_discriminant(q: QuadraticForm) -> FieldElement:
    n = q.dim
    disc = q.field.one
    for a in q.entries:
        disc = disc * a
    return disc if (n * (n - 1) // 2) % 2 == 0 else -disc

def invariants_q(q: QuadraticForm) -> tuple[int, FieldElement]:
    """(dim mod 2, signed discriminant)"""
    return q.dim % 2, signed_discriminant(q)

# Rational base field

@dataclass(frozen=True)
class Place:
    """A place of Q: the real place when prime is None, else the p-adic place."""
    prime: int | None = None

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def __lt__(self, other: "Place") -> bool:
        return (self.prime or 0) < (other.prime or 0)

    def __str__(self) -> str:
        return "real" if self.is_real else str(self.prime)

REAL = Place()

def _rational(x) -> Fraction:
    if isinstance(x, FieldElement):
        if not x.field.is_rational:
            raise NonRationalField(f"{x} lives in {x.field}, not Q")
        return x.to_rational()
    return Fraction(x)

def squarefree_rep(x) -> int:
    """The squarefree integer in the square class of the nonzero rational x."""
    x = _rational(x)
    if x == 0:
        raise ZeroArgument("zero has no square class")
    n = abs(x.numerator * x.denominator)
    return (1 if x > 0 else -1) * int(core(n, 2))

def is_rational_square(x) -> bool:
    return squarefree_rep(x) == 1

def _require_rational(*forms: QuadraticForm):
    for q in forms:
        if not q.field.is_rational:
            raise NonRationalField(f"form over {q.field}; this operation needs Q")

@functools.lru_cache(maxsize=65536)
def _hilbert_squarefree(a: int, b: int, p: int | None) -> int:
    if p is None:
        return -1 if (a < 0 and b < 0) else 1
    alpha, beta = multiplicity(p, abs(a)), multiplicity(p, abs(b))
    u, v = a // p ** alpha, b // p ** beta
    if p == 2:
        u8, v8 = u % 8, v % 8
        eps_u, eps_v = ((u8 - 1) // 2) % 2, ((v8 - 1) // 2) % 2
        omega_u, omega_v = ((u8 * u8 - 1) // 8) % 2, ((v8 * v8 - 1) // 8) % 2
        exponent = eps_u * eps_v + alpha * omega_v + beta * omega_u
        return -1 if exponent % 2 else 1
    sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
    if beta:
        sign *= legendre_symbol(u % p, p)
    if alpha:
        sign *= legendre_symbol(v % p, p)
    return sign

def hilbert_symbol(a, b, v: Place) -> int:
    """(a, b)_v for nonzero rationals a, b.
    Raises:
        - ZeroArgument
        - NonRationalField: a or b is a FieldElement outside Q
    """
    a, b = _rational(a), _rational(b)
    if a == 0 or b == 0:
        raise ZeroArgument("Hilbert symbol arguments must be nonzero")
    return _hilbert_squarefree(squarefree_rep(a), squarefree_rep(b), v.prime)

def relevant_places(values: Iterable) -> list[Place]:
    """The real place, 2, and every odd prime dividing a squarefree representative."""
    primes = {2}
    for x in values:
        primes.update(primefactors(abs(squarefree_rep(x))))
    return [REAL] + [Place(p) for p in sorted(primes)]

def hasse_invariant(q: QuadraticForm, v: Place) -> int:
    """Product of (a_i, a_j)_v over i < j."""
    _require_rational(q)
    reps = [squarefree_rep(a) for a in q.entries]
    result = 1
    for x, y in combinations(reps, 2):
        result *= _hilbert_squarefree(x, y, v.prime)
    return result

def _is_local_square(d: int, v: Place) -> bool:
    """d is a squarefree integer."""
    if v.is_real:
        return d > 0
    if v.prime == 2:
        return d % 8 == 1
    return d % v.prime != 0 and legendre_symbol(d % v.prime, v.prime) == 1

def _disc_rep(q: QuadraticForm) -> int:
    result = Fraction(1)
    for a in q.entries:
        result *= _rational(a)
    return squarefree_rep(result)

def is_isotropic_rational(q: QuadraticForm) -> bool:
    """Whether q represents zero nontrivially over Q, by the local-global principle."""
    _require_rational(q)
    n = q.dim
    if n <= 1:
        return False
    if n == 2:
        return squarefree_rep(-q.entries[0] * q.entries[1]) == 1
    if n >= 5:
        signs = {a.to_rational() > 0 for a in q.entries}
        return len(signs) == 2
    d = _disc_rep(q)
    places = relevant_places(q.entries)
    if n == 3:
        return all(_hilbert_squarefree(-1, -d, v.prime) == hasse_invariant(q, v) for v in places)
    return all(
        not _is_local_square(d, v) or hasse_invariant(q, v) == _hilbert_squarefree(-1, -1, v.prime)
        for v in places
    )

def _pad(q: QuadraticForm, dim: int) -> QuadraticForm:
    hyperbolic = QuadraticForm.of(q.field, [1, -1])
    while q.dim < dim:
        q = q + hyperbolic
    return q

def witt_equal_rational(q1: QuadraticForm, q2: QuadraticForm) -> bool:
    """Exact Witt-class equality over Q. After padding with hyperbolic planes to equal
    dimension, Witt equivalence is isometry, which dimension, discriminant, signature and
    the Hasse invariants at every place decide.
    """
    _require_rational(q1, q2)
    if q1.dim % 2 != q2.dim % 2:
        return False
    (P,) = real_orderings(q1.field)
    if signature_q(q1, P) != signature_q(q2, P):
        return False
    dim = max(q1.dim, q2.dim)
    q1, q2 = _pad(q1, dim), _pad(q2, dim)
    if dim == 0:
        return True
    if _disc_rep(q1) != _disc_rep(q2):
        return False
    places = relevant_places(q1.entries + q2.entries)
    equal = all(hasse_invariant(q1, v) == hasse_invariant(q2, v) for v in places)
    logger.trace(f"witt_equal_rational dim={dim} places={[str(v) for v in places]} equal={equal}")
    return equal

def weak_equivalence(q1: QuadraticForm, q2: QuadraticForm) -> WeakVerdict:
    """A necessary condition for Witt equivalence over any number field: dimension parity,
    signatures, and the signed discriminant ratio (positive everywhere, a square when K = Q).
    """
    if q1.field != q2.field:
        raise FieldMismatch(f"forms over {q1.field} and {q2.field}")
    if q1.dim % 2 != q2.dim % 2:
        return WeakVerdict.DISTINGUISHED
    ratio = signed_discriminant(q1) / signed_discriminant(q2)
    for P in real_orderings(q1.field):
        if signature_q(q1, P) != signature_q(q2, P) or sign_at(ratio, P) < 0:
            return WeakVerdict.DISTINGUISHED
    if q1.field.is_rational and not is_rational_square(ratio.to_rational()):
        return WeakVerdict.DISTINGUISHED
    return WeakVerdict.EQUIVALENT_WEAKLY

logger.success("Witt module loaded.")
