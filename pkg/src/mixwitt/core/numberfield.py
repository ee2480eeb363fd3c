"""Exact arithmetic in real number fields K = Q[t]/(f) and their orderings.
The orderings of a number field are its real embeddings, i.e. the real roots of f.
Each root is held as an isolating rational interval found with a Sturm chain, and signs
of field elements at a root are decided exactly, never numerically.
"""
from dataclasses import dataclass
from fractions import Fraction
import functools
import os
from typing import Sequence, Union

from loguru import logger
import sympy as sp

from mixwitt import (
    DegreeTooLarge,
    DivisionByZero,
    FieldMismatch,
    FieldOp,
    InvalidInputError,
    NonRationalField,
    NotMonic,
    NotSquarefree,
    ReducibleDetected,
    ZeroElement,
)
from mixwitt.utils.log import traced
from mixwitt.utils.parse import T, parse_polynomial

MAX_DEGREE = int(os.getenv("MIXWITT_MAX_DEGREE", 6))
logger.info(f"MIXWITT_MAX_DEGREE={MAX_DEGREE}")

def to_fraction(x) -> Fraction:
    """Convert ints, Fractions, sympy rationals and QQ domain elements to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, sp.Rational):
        return Fraction(int(x.p), int(x.q))
    return Fraction(int(x.numerator), int(x.denominator))

def to_sympy(x: Fraction) -> sp.Rational:
    x = to_fraction(x)
    return sp.Rational(x.numerator, x.denominator)

def poly_from_coeffs(coeffs: Sequence) -> sp.Poly:
    """Coefficients are lowest degree first."""
    if not coeffs:
        return sp.Poly(0, T, domain=sp.QQ)
    return sp.Poly.from_list([to_sympy(c) for c in reversed(coeffs)], T, domain=sp.QQ)

def coeffs_of(p: sp.Poly, n: int | None = None) -> tuple[Fraction, ...]:
    """Coefficients lowest degree first, zero padded to length n."""
    coeffs = [to_fraction(c) for c in reversed(p.all_coeffs())]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if n is not None:
        assert len(coeffs) <= n or all(c == 0 for c in coeffs[n:]), f"{p} does not fit in {n} coefficients"
        coeffs = (coeffs + [Fraction(0)] * n)[:n]
    return tuple(coeffs)

def _eval(p: sp.Poly, x: Fraction) -> Fraction:
    return to_fraction(p.eval(to_sympy(x)))

def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)

@functools.lru_cache(maxsize=1024)
def sturm_chain(p: sp.Poly) -> tuple[sp.Poly, ...]:
    return tuple(p.sturm())

def _variations(chain: Sequence[sp.Poly], x: Fraction) -> int:
    signs = [s for s in (_sign(_eval(q, x)) for q in chain) if s != 0]
    return sum(1 for s0, s1 in zip(signs, signs[1:]) if s0 != s1)

def count_roots(p: sp.Poly, left: Fraction, right: Fraction) -> int:
    """Number of distinct real roots of p in (left, right]. Constants have none."""
    if p.degree() <= 0:
        return 0
    chain = sturm_chain(p)
    return _variations(chain, left) - _variations(chain, right)

def cauchy_bound(p: sp.Poly) -> Fraction:
    """Every real root of the monic p lies strictly inside (-B, B)."""
    return 1 + max(abs(c) for c in coeffs_of(p))

@dataclass(frozen=True)
class NumberField:
    """K = Q[t]/(f). Build through make_field, which validates f."""
    coeffs: tuple[Fraction, ...]  # monic f, lowest degree first

    @functools.cached_property
    def modulus(self) -> sp.Poly:
        return poly_from_coeffs(self.coeffs)

    @property
    def minimal_polynomial(self) -> sp.Poly:
        return self.modulus

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    @property
    def gen(self) -> "FieldElement":
        """theta, the class of t."""
        return self.reduce(sp.Poly(T, T, domain=sp.QQ))

    def reduce(self, p: sp.Poly) -> "FieldElement":
        return FieldElement(self, coeffs_of(p.rem(self.modulus), self.degree))

    def element(self, value: Union[int, Fraction, str, Sequence, sp.Poly, "FieldElement"]) -> "FieldElement":
        """Coerce a scalar, a text expression in t, a coefficient list or a polynomial into K."""
        match value:
            case FieldElement():
                if value.field != self:
                    raise FieldMismatch(f"element of {value.field} used in {self}")
                return value
            case int() | Fraction():
                return self.reduce(poly_from_coeffs([value]))
            case str():
                return self.reduce(parse_polynomial(value))
            case sp.Poly():
                return self.reduce(sp.Poly(value.as_expr(), T, domain=sp.QQ))
            case _:
                return self.reduce(poly_from_coeffs([to_fraction(c) for c in value]))

    def __str__(self) -> str:
        return f"Q[t]/({self.modulus.as_expr()})"

@dataclass(frozen=True)
class FieldElement:
    field: NumberField
    coeffs: tuple[Fraction, ...]  # representative of degree < n, lowest degree first

    def __post_init__(self):
        assert len(self.coeffs) == self.field.degree, f"expected {self.field.degree} coefficients, got {len(self.coeffs)}"

    @functools.cached_property
    def poly(self) -> sp.Poly:
        return poly_from_coeffs(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational:
            raise NonRationalField(f"{self} is not a rational number")
        return self.coeffs[0]

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine elements of {self.field} and {other.field}")
            return other
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.field.degree == 1:
            return FieldElement(self.field, (self.coeffs[0] * other.coeffs[0],))
        return self.field.reduce(self.poly * other.poly)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise DivisionByZero(f"{self} has no inverse")
        if self.field.degree == 1:
            return FieldElement(self.field, (1 / self.coeffs[0],))
        return self.field.reduce(self.poly.invert(self.field.modulus))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        return str(self.poly.as_expr()).replace("**", "^")

    def __repr__(self) -> str:
        return f"FieldElement({self})"

def element_arith(op: FieldOp, a: FieldElement, b: FieldElement | int | Fraction | None = None) -> FieldElement:
    """Dispatch a FieldOp. pow takes an integer exponent as b; neg ignores b."""
    match FieldOp(op):
        case FieldOp.ADD:
            return a + a._coerce(b)
        case FieldOp.SUB:
            return a - a._coerce(b)
        case FieldOp.MUL:
            return a * a._coerce(b)
        case FieldOp.DIV:
            return a / a._coerce(b)
        case FieldOp.NEG:
            return -a
        case FieldOp.POW:
            assert isinstance(b, int), f"exponent must be an integer, got {b!r}"
            return a ** b

def as_polynomial(f: Union[sp.Poly, str, Sequence]) -> sp.Poly:
    match f:
        case sp.Poly():
            return sp.Poly(f.as_expr(), T, domain=sp.QQ)
        case str():
            return parse_polynomial(f)
        case _:
            return poly_from_coeffs([to_fraction(c) for c in f])

def _check_irreducible(p: sp.Poly):
    """Rational root test, then a full factorization for degrees 4 and up (a reducible
    quadratic or cubic always has a rational root)."""
    if p.degree() == 1:
        return
    roots = p.ground_roots()
    if roots:
        root = min(roots, key=lambda r: (abs(r), r))
        raise ReducibleDetected(f"{p.as_expr()} has the rational root {root}")
    if p.degree() >= 4:
        _, factors = p.factor_list()
        if len(factors) > 1 or factors[0][1] > 1:
            factor = factors[0][0].as_expr()
            raise ReducibleDetected(f"{p.as_expr()} has the factor {factor}")

@traced
def make_field(f: Union[sp.Poly, str, Sequence]) -> NumberField:
    """Validate f and build Q[t]/(f).
    Raises:
        - NotMonic, NotSquarefree, ReducibleDetected, DegreeTooLarge
        - ParseError if f is text that does not parse
    """
    p = as_polynomial(f)
    with logger.contextualize(poly=str(p.as_expr())):
        if p.degree() < 1:
            raise InvalidInputError(f"defining polynomial must have degree >= 1, got {p.as_expr()}")
        if p.degree() > MAX_DEGREE:
            raise DegreeTooLarge(f"degree {p.degree()} exceeds MIXWITT_MAX_DEGREE={MAX_DEGREE}")
        if p.LC() != 1:
            raise NotMonic(f"leading coefficient of {p.as_expr()} is {p.LC()}")
        if p.gcd(p.diff(T)).degree() > 0:
            raise NotSquarefree(f"{p.as_expr()} has a repeated factor")
        _check_irreducible(p)
        logger.debug("Field validated.")
    return NumberField(coeffs_of(p))

@dataclass(frozen=True, eq=False)
class Ordering:
    """A real embedding of K, held as an isolating interval (left, right) of a real root of f.
    Two orderings are the same when they share field and index, whatever their intervals.
    """
    field: NumberField
    left: Fraction
    right: Fraction
    index: int

    @property
    def root_interval(self) -> tuple[Fraction, Fraction]:
        return (self.left, self.right)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ordering):
            return NotImplemented
        return self.field == other.field and self.index == other.index

    def __hash__(self) -> int:
        return hash((self.field, self.index))

    def __str__(self) -> str:
        return f"P{self.index}"

def _isolate(f: sp.Poly, chain, left: Fraction, right: Fraction) -> list[tuple[Fraction, Fraction]]:
    n = _variations(chain, left) - _variations(chain, right)
    if n == 0:
        return []
    if n == 1:
        return [(left, right)]
    mid = (left + right) / 2
    while _eval(f, mid) == 0:
        mid = (left + mid) / 2
    return _isolate(f, chain, left, mid) + _isolate(f, chain, mid, right)

@functools.lru_cache(maxsize=128)
@traced
def real_orderings(F: NumberField) -> tuple[Ordering, ...]:
    """One Ordering per real root of f, sorted ascending by root."""
    f = F.modulus
    bound = cauchy_bound(f)
    intervals = _isolate(f, sturm_chain(f), -bound, bound)
    result = tuple(Ordering(F, l, r, i) for i, (l, r) in enumerate(intervals))
    logger.debug(f"{F} has {len(result)} orderings.")
    return result

def refine(P: Ordering) -> Ordering:
    """Halve the isolating interval; the root stays strictly inside."""
    f = P.field.modulus
    mid = (P.left + P.right) / 2
    fmid = _eval(f, mid)
    if fmid == 0:
        return Ordering(P.field, (P.left + mid) / 2, (mid + P.right) / 2, P.index)
    if _sign(_eval(f, P.left)) != _sign(fmid):
        return Ordering(P.field, P.left, mid, P.index)
    return Ordering(P.field, mid, P.right, P.index)

@functools.lru_cache(maxsize=65536)
def sign_at(a: FieldElement, P: Ordering) -> int:
    """The sign of a at the real root isolated by P.
    Raises:
        - ZeroElement: a = 0, or a vanishes at the root of P.
        - FieldMismatch
    """
    if a.field != P.field:
        raise FieldMismatch(f"element of {a.field} evaluated at an ordering of {P.field}")
    if a.is_zero:
        raise ZeroElement("sign of zero is undefined")
    g = a.poly
    if g.degree() <= 0:
        return _sign(a.coeffs[0])
    h = g.gcd(P.field.modulus)
    if h.degree() > 0 and count_roots(h, P.left, P.right) > 0:
        raise ZeroElement(f"{a} vanishes at {P}")
    Q = P
    while True:
        gl, gr = _eval(g, Q.left), _eval(g, Q.right)
        if gl != 0 and gr != 0 and count_roots(g, Q.left, Q.right) == 0:
            return _sign(gl)
        Q = refine(Q)

logger.success("Number field module loaded.")
