"""Prime ideals of the mixed Witt ring. Besides the fundamental ideal I(A) = Ker(rdim2),
every prime is the kernel of one signature map reduced modulo p, labeled (P, p, eta) with p
zero or an odd prime. Above each I_{P,p}(K) of W(K) sit two primes, above I(K) only one.
"""
from typing import Iterable, Literal

from loguru import logger
from pydantic import BaseModel, ConfigDict
from sympy import isprime

from mixwitt import InvalidLabel, Stratum, VersionedModel
from mixwitt.core.mixed import MixedElement, rdim2
from mixwitt.core.numberfield import Ordering, real_orderings
from mixwitt.core.quat import QuaternionAlgebra
from mixwitt.utils.log import traced
from .signature import ReferencePolicy, partition_orderings, signature_pair

class SpectrumLabel(BaseModel):
    """kind "fundamental" is I(A); kind "signature" is Ker(sig^eta_P mod p).
    eta is None in subrings where the two maps at P coincide."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["fundamental", "signature"] = "signature"
    ordering: int | None = None
    p: int | None = None
    eta: int | None = None

    @classmethod
    def fundamental(cls) -> "SpectrumLabel":
        return cls(kind="fundamental")

    @classmethod
    def at(cls, P: Ordering | int, p: int, eta: int | None) -> "SpectrumLabel":
        index = P.index if isinstance(P, Ordering) else P
        return check_label(cls(ordering=index, p=p, eta=eta))

    def __str__(self) -> str:
        if self.kind == "fundamental":
            return "I"
        eta = "" if self.eta is None else f",{self.eta:+d}"
        return f"I(P{self.ordering},{self.p}{eta})"

def check_prime(p: int) -> int:
    if p != 0 and (p == 2 or not isprime(p)):
        raise InvalidLabel(f"p must be 0 or an odd prime, got {p}")
    return p

def check_label(label: SpectrumLabel) -> SpectrumLabel:
    if label.kind == "fundamental":
        return label
    if label.ordering is None or label.p is None:
        raise InvalidLabel(f"{label!r} needs an ordering and p")
    check_prime(label.p)
    if label.eta not in (1, -1, None):
        raise InvalidLabel(f"eta must be +1 or -1, got {label.eta}")
    return label

def ideal_membership(x: MixedElement, label: SpectrumLabel, refs: ReferencePolicy | None = None) -> bool:
    """Whether x lies in the prime ideal named by label."""
    check_label(label)
    if label.kind == "fundamental":
        return rdim2(x) == 0
    P = next((P for P in real_orderings(x.field) if P.index == label.ordering), None)
    if P is None:
        raise InvalidLabel(f"{x.field} has no ordering {label.ordering}")
    value = signature_pair(x, P, refs).component(label.eta if label.eta is not None else 1)
    return value == 0 if label.p == 0 else value % label.p == 0

class Fiber(BaseModel):
    """The primes of W~ above one prime of W(K)."""
    ordering: int | None = None
    p: int | None = None
    size: int

class XTildePoint(BaseModel):
    """A point of the double cover: a signature map (P, eta)."""
    ordering: int
    eta: int
    stratum: Stratum

class SpectrumReport(VersionedModel):
    field: str
    algebra: str
    primes: list[int]
    labels: list[SpectrumLabel]
    fibers: list[Fiber]
    x_tilde: list[XTildePoint]
    x_tilde_size: int
    finite_discrete: bool = True  # X(K) is finite: polarizations are continuous, U(x) clopen

    @property
    def n_labels(self) -> int:
        return len(self.labels)

def _primes(primes: Iterable[int]) -> list[int]:
    result = sorted(set(int(p) for p in primes))
    for p in result:
        if p == 0:
            raise InvalidLabel("0 is always included; pass odd primes only")
        check_prime(p)
    return result

@traced
def spectrum_report(Q: QuaternionAlgebra, primes: Iterable[int] = ()) -> SpectrumReport:
    """1 + 2 |X(K)| (1 + |primes|) labels, and the double cover X~ with 2 |X(K)| points."""
    primes = _primes(primes)
    partition = partition_orderings(Q)
    labels = [SpectrumLabel.fundamental()]
    fibers = [Fiber(size=1)]
    x_tilde = []
    for P in real_orderings(Q.field):
        for p in [0] + primes:
            labels.extend(SpectrumLabel.at(P, p, eta) for eta in (1, -1))
            fibers.append(Fiber(ordering=P.index, p=p, size=2))
        x_tilde.extend(XTildePoint(ordering=P.index, eta=eta, stratum=partition.stratum(P)) for eta in (1, -1))
    logger.debug(f"spectrum of {Q}: {len(labels)} labels, |X~|={len(x_tilde)}")
    return SpectrumReport(
        field=str(Q.field), algebra=str(Q), primes=primes,
        labels=labels, fibers=fibers, x_tilde=x_tilde, x_tilde_size=len(x_tilde),
    )

@traced
def subring_spectrum_report(Q: QuaternionAlgebra, eps: int, primes: Iterable[int] = ()) -> SpectrumReport:
    """Spectrum of W(K) + W_eps: two primes above I_{P,p}(K) for P in X_eps(A), one for P in X_-eps(A).
    W_+1 is the skew-hermitian part, W_-1 the hermitian part."""
    eps = Stratum(eps)
    primes = _primes(primes)
    partition = partition_orderings(Q)
    labels = [SpectrumLabel.fundamental()]
    fibers = [Fiber(size=1)]
    x_tilde = []
    for P in real_orderings(Q.field):
        etas = (1, -1) if partition.stratum(P) == eps else (None,)
        for p in [0] + primes:
            labels.extend(SpectrumLabel.at(P, p, eta) for eta in etas)
            fibers.append(Fiber(ordering=P.index, p=p, size=len(etas)))
        x_tilde.extend(XTildePoint(ordering=P.index, eta=eta or 1, stratum=partition.stratum(P)) for eta in etas)
    return SpectrumReport(
        field=str(Q.field), algebra=str(Q), primes=primes,
        labels=labels, fibers=fibers, x_tilde=x_tilde, x_tilde_size=len(x_tilde),
    )

logger.success("Spectrum module loaded.")
