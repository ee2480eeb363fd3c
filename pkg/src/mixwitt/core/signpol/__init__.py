from enum import Enum
from typing import Mapping

from loguru import logger
from pydantic import ValidationError

from mixwitt import InvalidLabel, ParseError, UnknownName
from mixwitt.core.quat import PureQuaternion, QuaternionAlgebra
from mixwitt.utils.parse import split_list
from .signature import (
    OrderingPartition,
    ReferencePolicy,
    SignaturePair,
    herm_signature_nonsplit,
    involution_signature,
    partition_orderings,
    reference_relative_sign,
    signature_pair,
    signature_pairs,
    skew_signature_with_reference,
    square_signature,
    stratum_of,
)
from .polarization import (
    PolarizationMap,
    ReferenceForm,
    act_on_polarization,
    cover_union,
    find_reference,
    global_polarization,
    principal_polarization,
    principal_set,
    standard_automorphism,
    support_set,
    total_signature,
)
from .spectrum import SpectrumLabel, SpectrumReport, ideal_membership, spectrum_report, subring_spectrum_report

def default_policy(references: Mapping[str, PureQuaternion]) -> ReferencePolicy | None:
    """The reference named first in sort order, used wherever none is chosen explicitly."""
    return ReferencePolicy.uniform(references[min(references)]) if references else None

class PolarizationKind(str, Enum):
    PAIR = "pair"  # no polarization, report both signatures
    REF = "ref"  # a named reference quaternion fixes the label at split orderings
    LABELS = "labels"  # explicit labels, e.g. labels:0=1,1=-1
    GLOBAL = "global"  # +1 everywhere, with a searched reference form

def new(
    spec: str,
    Q: QuaternionAlgebra,
    references: Mapping[str, PureQuaternion] | None = None,
    polarizations: Mapping[str, PolarizationMap] | None = None,
) -> tuple[PolarizationMap | None, ReferencePolicy | None]:
    """Resolve a polarization spec `pair`, `ref:<name>`, `labels:<i>=<eta>,...`, `global`, or the
    name of a stored polarization, into (polarization, references). `pair` yields no polarization."""
    references = references or {}
    polarizations = polarizations or {}
    kind, _, arg = spec.partition(":")
    if kind == PolarizationKind.PAIR.value:
        return None, default_policy(references)
    if kind == PolarizationKind.REF.value:
        if arg not in references:
            raise UnknownName(f"no reference named '{arg}', have {sorted(references)}")
        return PolarizationMap.constant(Q.field, 1), ReferencePolicy.uniform(references[arg])
    if kind == PolarizationKind.LABELS.value:
        labels = {}
        for item in split_list(arg):
            index, _, eta = item.partition("=")
            try:
                labels[int(index)] = int(eta)
            except ValueError as e:
                raise ParseError(f"expected <index>=<+1|-1>, got {item!r}", spec.find(item)) from e
        try:
            return PolarizationMap(labels=labels), default_policy(references)
        except ValidationError as e:
            raise InvalidLabel(f"labels must be +1 or -1: {arg}") from e
    if kind == PolarizationKind.GLOBAL.value:
        return global_polarization(Q, find_reference(Q))
    if spec in polarizations:
        return polarizations[spec], default_policy(references)
    raise UnknownName(f"unknown polarization '{spec}', must be one of {[m.value for m in PolarizationKind]} or a stored name")

logger.success("Signature and polarization package loaded.")
