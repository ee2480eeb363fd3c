"""The two signature maps of the mixed Witt ring at an ordering P.
At P in X_-1(A), where Q is nonsplit, the canonical retraction fixes the label eta = +1 by
<1>_gamma -> +2. At P in X_1(A), where Q splits, there is no canonical choice; a reference,
an invertible pure quaternion r, fixes the label by <r>_gamma -> +2, and the signature of any
skew entry z follows from multiplicativity: sig(<z>) = sig_P(<r>_gamma . <z>_gamma) / 2.
"""
from dataclasses import dataclass
from typing import Mapping

from loguru import logger
from pydantic import BaseModel, ConfigDict

from mixwitt import DegenerateReference, MissingReference, NotInvertible, Stratum, WrongStratum
from mixwitt.core.brauer import splits_at_real
from mixwitt.core.mixed import HermitianDiagonal, MixedElement, SkewHermitianDiagonal, skew_product
from mixwitt.core.numberfield import Ordering, real_orderings, sign_at
from mixwitt.core.quat import PureQuaternion, Quaternion, QuaternionAlgebra
from mixwitt.core.witt import signature_q

@dataclass(frozen=True)
class OrderingPartition:
    """X(K) = X_1(A) + X_-1(A); x_plus where Q splits, x_minus where it does not."""
    x_plus: tuple[Ordering, ...]
    x_minus: tuple[Ordering, ...]

    def stratum(self, P: Ordering) -> Stratum:
        return Stratum.SPLIT if P in self.x_plus else Stratum.NONSPLIT

    def part(self, eps: int) -> tuple[Ordering, ...]:
        """X_eps(A)"""
        return self.x_plus if Stratum(eps) == Stratum.SPLIT else self.x_minus

def partition_orderings(Q: QuaternionAlgebra) -> OrderingPartition:
    x_plus, x_minus = [], []
    for P in real_orderings(Q.field):
        (x_plus if splits_at_real(Q.symbol, P) else x_minus).append(P)
    return OrderingPartition(tuple(x_plus), tuple(x_minus))

def stratum_of(Q: QuaternionAlgebra, P: Ordering) -> Stratum:
    return Stratum.SPLIT if splits_at_real(Q.symbol, P) else Stratum.NONSPLIT

class SignaturePair(BaseModel):
    """(sig^+1_P(x), sig^-1_P(x))"""
    model_config = ConfigDict(frozen=True)

    ordering: int
    s_plus: int
    s_minus: int

    def component(self, eta: int) -> int:
        return self.s_plus if eta == 1 else self.s_minus

    def __str__(self) -> str:
        return f"({self.s_plus},{self.s_minus})"

def herm_signature_nonsplit(h: HermitianDiagonal, P: Ordering) -> int:
    """2 * sum of sign_P(a_i), the canonical-retraction label at a nonsplit ordering."""
    if stratum_of(h.algebra, P) == Stratum.SPLIT:
        raise WrongStratum(f"{P} is split for {h.algebra}; hermitian forms have no signature there")
    return 2 * sum(sign_at(a, P) for a in h.entries)

def square_signature(z: PureQuaternion, P: Ordering) -> int:
    """sig_P(<z>_gamma . <z>_gamma), which is 4 or 0."""
    return signature_q(skew_product(z, z), P)

def _check_reference(ref: Quaternion, P: Ordering):
    if not ref.is_invertible:
        raise NotInvertible(f"reference {ref} has reduced norm 0")
    if square_signature(ref.as_pure(), P) != 4:
        raise DegenerateReference(f"reference {ref} has zero signature at {P}", ordering=P.index)

def skew_signature_with_reference(s: SkewHermitianDiagonal, P: Ordering, ref: PureQuaternion) -> int:
    """The skew signature at a split ordering for the label that sends <ref>_gamma to +2."""
    if stratum_of(s.algebra, P) == Stratum.NONSPLIT:
        raise WrongStratum(f"{P} is nonsplit for {s.algebra}; skew-hermitian forms have no signature there")
    ref = ref.as_pure()
    _check_reference(ref, P)
    total = 0
    for z in s.entries:
        value = signature_q(skew_product(ref, z), P)
        assert value in (-4, 0, 4), f"rank-1 product signature {value} at {P}"
        total += value // 2
    return total

@dataclass(frozen=True)
class ReferencePolicy:
    """Rank-1 references, one per split ordering index."""
    refs: tuple[tuple[int, PureQuaternion], ...] = ()
    default: PureQuaternion | None = None  # used where no index-specific reference is set

    @classmethod
    def uniform(cls, ref: Quaternion) -> "ReferencePolicy":
        return cls(default=ref.as_pure())

    @classmethod
    def from_map(cls, refs: Mapping[int, Quaternion]) -> "ReferencePolicy":
        return cls(tuple(sorted((int(i), z.as_pure()) for i, z in refs.items())))

    def at(self, P: Ordering) -> PureQuaternion | None:
        for index, z in self.refs:
            if index == P.index:
                return z
        return self.default

    def negated(self) -> "ReferencePolicy":
        default = -self.default if self.default is not None else None
        return ReferencePolicy(tuple((i, -z) for i, z in self.refs), default)

NO_REFERENCE = ReferencePolicy()

def _as_policy(ref: "PureQuaternion | ReferencePolicy | None") -> ReferencePolicy:
    if ref is None:
        return NO_REFERENCE
    if isinstance(ref, ReferencePolicy):
        return ref
    return ReferencePolicy.uniform(ref)

def signature_pair(x: MixedElement, P: Ordering, ref: "PureQuaternion | ReferencePolicy | None" = None) -> SignaturePair:
    """Both signatures of x at P. The two maps agree on the scalar part and are opposite on
    the part that lives at P's stratum; the other part contributes nothing.
    Raises:
        - MissingReference: P is split, x has skew entries and no reference is given for P
        - DegenerateReference
    """
    scalar = signature_q(x.scalar, P)
    if stratum_of(x.algebra, P) == Stratum.NONSPLIT:
        extra = herm_signature_nonsplit(x.herm, P)
    elif x.skew.entries:
        r = _as_policy(ref).at(P)
        if r is None:
            raise MissingReference(f"{P} is split and {x.skew} needs a reference there", ordering=P.index)
        extra = skew_signature_with_reference(x.skew, P, r)
    else:
        extra = 0
    return SignaturePair(ordering=P.index, s_plus=scalar + extra, s_minus=scalar - extra)

def signature_pairs(x: MixedElement, ref: "PureQuaternion | ReferencePolicy | None" = None) -> list[SignaturePair]:
    return [signature_pair(x, P, ref) for P in real_orderings(x.field)]

def involution_signature(Q: QuaternionAlgebra, P: Ordering) -> int:
    """sig^+1_P(<1>_gamma): 2 at nonsplit orderings, 0 at split ones. Its square is the
    signature of the involution trace form."""
    return signature_pair(MixedElement.make(Q, herm=[1]), P).s_plus

def reference_relative_sign(r1: Quaternion, r2: Quaternion, P: Ordering) -> int:
    """+1 when r1 and r2 select the same skew signature map at P, -1 when they select opposite ones."""
    r1, r2 = r1.as_pure(), r2.as_pure()
    for r in (r1, r2):
        _check_reference(r, P)
    return signature_q(skew_product(r1, r2), P) // 4

logger.success("Signature module loaded.")
