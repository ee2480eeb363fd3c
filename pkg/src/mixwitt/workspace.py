"""Load workspaces and encode values as JSON.
A workspace is a declarative JSON file naming a field, an optional quaternion algebra, mixed
elements, reference quaternions and polarizations:
    {"field": "t^2-2", "algebra": {"a": -1, "b": "t"},
     "forms": {"h": {"scalar": {"entries": []}, "herm": [1], "skew": []}},
     "references": {"i": {"x": [0, 1, 0, 0]}},
     "polarizations": {"plus": {"labels": {"0": 1, "1": 1}}}}
Field elements are integers, expressions in t, or {"coeffs": [[num, den], ...]} lowest degree first.
"""
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
import json
from pathlib import Path
from typing import Union

from loguru import logger
from pydantic import BaseModel, ValidationError

from mixwitt import InvalidInputError, ParseError, UnknownName
from mixwitt.core.mixed import MixedElement
from mixwitt.core.numberfield import FieldElement, NumberField, make_field
from mixwitt.core.quat import PureQuaternion, Quaternion, QuaternionAlgebra, pure_from_coords
from mixwitt.core.signpol import PolarizationMap
from mixwitt.core.witt import QuadraticForm
from mixwitt.utils.log import traced

class CoeffsJSON(BaseModel):
    coeffs: list[tuple[int, int]]

class PolyJSON(BaseModel):
    poly: list[tuple[int, int]]

ElementJSON = Union[int, str, CoeffsJSON]

class AlgebraJSON(BaseModel):
    a: ElementJSON
    b: ElementJSON

class FormJSON(BaseModel):
    entries: list[ElementJSON] = []

class QuatJSON(BaseModel):
    x: list[ElementJSON]

class MixedJSON(BaseModel):
    scalar: FormJSON = FormJSON()
    herm: list[ElementJSON] = []
    skew: list[QuatJSON] = []

class WorkspaceJSON(BaseModel):
    field: Union[str, PolyJSON]
    algebra: AlgebraJSON | None = None
    forms: dict[str, MixedJSON] = {}
    references: dict[str, QuatJSON] = {}
    polarizations: dict[str, PolarizationMap] = {}

def _fractions(pairs: list[tuple[int, int]]) -> list[Fraction]:
    try:
        return [Fraction(n, d) for n, d in pairs]
    except ZeroDivisionError as e:
        raise ParseError(f"zero denominator in {pairs}") from e

def decode_element(F: NumberField, data: ElementJSON) -> FieldElement:
    match data:
        case CoeffsJSON():
            return F.element(_fractions(data.coeffs))
        case dict():
            return decode_element(F, CoeffsJSON.model_validate(data))
        case _:
            return F.element(data)

def decode_field(data: Union[str, PolyJSON, dict]) -> NumberField:
    match data:
        case str():
            return make_field(data)
        case PolyJSON():
            return make_field(_fractions(data.poly))
        case _:
            return decode_field(PolyJSON.model_validate(data))

def decode_quaternion(Q: QuaternionAlgebra, data: QuatJSON) -> Quaternion:
    if len(data.x) not in (3, 4):
        raise ParseError(f"a quaternion needs 4 coordinates (or 3 for a pure one), got {len(data.x)}")
    coords = [decode_element(Q.field, c) for c in data.x]
    if len(coords) == 3:
        return Q.pure(*coords)
    return Q.quaternion(*coords)

def decode_mixed(Q: QuaternionAlgebra, data: MixedJSON) -> MixedElement:
    F = Q.field
    return MixedElement.make(
        Q,
        scalar=[decode_element(F, e) for e in data.scalar.entries],
        herm=[decode_element(F, e) for e in data.herm],
        skew=[decode_quaternion(Q, z) for z in data.skew],
    )

def encode_element(a: FieldElement) -> dict:
    return {"coeffs": [[c.numerator, c.denominator] for c in a.coeffs]}

def encode_field(F: NumberField) -> dict:
    return {"poly": [[c.numerator, c.denominator] for c in F.coeffs]}

def encode_form(q: QuadraticForm) -> dict:
    return {"entries": [encode_element(a) for a in q.entries]}

def encode_quaternion(z: Quaternion) -> dict:
    return {"x": [encode_element(c) for c in z.x]}

def encode_mixed(x: MixedElement) -> dict:
    return {
        "scalar": encode_form(x.scalar),
        "herm": [encode_element(a) for a in x.herm.entries],
        "skew": [encode_quaternion(z) for z in x.skew.entries],
    }

@dataclass
class Workspace:
    field: NumberField
    algebra: QuaternionAlgebra | None = None
    forms: dict[str, MixedElement] = dc_field(default_factory=dict)
    references: dict[str, PureQuaternion] = dc_field(default_factory=dict)
    polarizations: dict[str, PolarizationMap] = dc_field(default_factory=dict)

    def require_algebra(self) -> QuaternionAlgebra:
        if self.algebra is None:
            raise UnknownName("workspace defines no algebra")
        return self.algebra

    def form(self, name: str) -> MixedElement:
        try:
            return self.forms[name]
        except KeyError:
            raise UnknownName(f"no form named '{name}', have {sorted(self.forms)}")

    def reference(self, name: str) -> PureQuaternion:
        try:
            return self.references[name]
        except KeyError:
            raise UnknownName(f"no reference named '{name}', have {sorted(self.references)}")

def parse_workspace(data: dict) -> Workspace:
    """Validate the JSON schema, then build every value over the workspace field.
    Raises:
        - ParseError: schema violations
        - InvalidInputError subclasses: invalid field, algebra or entries
    """
    try:
        spec = WorkspaceJSON.model_validate(data)
    except ValidationError as e:
        raise ParseError(f"workspace does not match the schema: {e.errors()[0]['msg']} at {e.errors()[0]['loc']}") from e
    F = decode_field(spec.field)
    ws = Workspace(field=F, polarizations=dict(spec.polarizations))
    if spec.algebra is not None:
        ws.algebra = QuaternionAlgebra(F, decode_element(F, spec.algebra.a), decode_element(F, spec.algebra.b))
    elif spec.forms or spec.references:
        raise InvalidInputError("forms and references need an algebra")
    for name, form in spec.forms.items():
        with logger.contextualize(form=name):
            ws.forms[name] = decode_mixed(ws.algebra, form)
    for name, ref in spec.references.items():
        with logger.contextualize(reference=name):
            ws.references[name] = pure_from_coords(ws.algebra, decode_quaternion(ws.algebra, ref).x)
    logger.debug(f"workspace: field={F} algebra={ws.algebra} forms={sorted(ws.forms)} references={sorted(ws.references)}")
    return ws

@traced
def load_workspace(path: str | Path) -> Workspace:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise UnknownName(f"cannot read workspace {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in {path}: {e.msg}", e.pos) from e
    return parse_workspace(data)

logger.success("Workspace module loaded.")
