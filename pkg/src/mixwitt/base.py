""" Base types. """
from enum import Enum

from pydantic import BaseModel, ConfigDict

from mixwitt import __version__ as mixwitt_version

class VersionedModel(BaseModel):
    """Every JSON report carries the library version; no timestamps, so output stays byte-deterministic."""
    model_config = ConfigDict(frozen=True)

    mixwitt_version: str = mixwitt_version

class FieldOp(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"
    NEG = "neg"
    POW = "pow"

class FormOp(str, Enum):
    SUM = "sum"
    TENSOR = "tensor"
    NEGATE = "negate"
    SCALE = "scale"

class QuatOp(str, Enum):
    ADD = "add"
    MUL = "mul"
    CONJ = "conj"
    TRD = "trd"
    NRD = "nrd"
    NEG = "neg"

class SplitOp(str, Enum):
    MUL = "mul"
    ADD = "add"
    AUGMENT = "augment"

class Stratum(int, Enum):
    """Which part of the ordering partition a point lies in.
    SPLIT orderings make up X_1(A), NONSPLIT ones X_-1(A).
    """

    SPLIT = 1
    NONSPLIT = -1

class WeakVerdict(str, Enum):
    EQUIVALENT_WEAKLY = "equivalent-weakly"
    DISTINGUISHED = "distinguished"
