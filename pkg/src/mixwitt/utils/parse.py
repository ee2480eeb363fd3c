"""Text syntax shared by the CLI and the workspace loader:
    - polynomials and field elements as expressions in `t`, e.g. `t^2-2`, `(1+t)/2`
    - comma separated lists, e.g. `1,-1,t`
    - prime lists, e.g. `3,5`
Only integer and rational coefficients are accepted; there is no floating point.
"""
import re

from loguru import logger
import sympy as sp
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from mixwitt import ParseError

T = sp.Symbol("t")

_ALLOWED = re.compile(r"[0-9t+\-*/^() ]")
_TRANSFORMS = standard_transformations + (convert_xor, implicit_multiplication_application)

def parse_polynomial(text: str) -> sp.Poly:
    """Parse an expression in t into a polynomial over QQ.
    Raises:
        ParseError: with the 0-based position of the first offending character when known.
    """
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    for pos, ch in enumerate(text):
        if not _ALLOWED.match(ch):
            raise ParseError(f"unexpected character {ch!r} in {text!r}", pos)
    try:
        expr = parse_expr(text, local_dict={"t": T}, transformations=_TRANSFORMS)
    except Exception as exc:
        offset = getattr(exc, "offset", None)
        pos = offset - 1 if isinstance(offset, int) and offset > 0 else len(text)
        raise ParseError(f"malformed expression {text!r}", pos) from exc
    try:
        return sp.Poly(expr, T, domain=sp.QQ)
    except Exception as exc:
        raise ParseError(f"not a polynomial in t: {text!r}", 0) from exc

def split_list(text: str) -> list[str]:
    """Split on commas that are not inside parentheses. Empty text is the empty list."""
    if not text.strip():
        return []
    items, depth, start = [], 0, 0
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parenthesis in {text!r}", pos)
        elif ch == "," and depth == 0:
            items.append(text[start:pos])
            start = pos + 1
    items.append(text[start:])
    for item in items:
        if not item.strip():
            raise ParseError(f"empty item in list {text!r}", text.find(",,") + 1 if ",," in text else len(text))
    return [item.strip() for item in items]

def parse_integers(text: str) -> list[int]:
    """Parse `3,5,7` into integers."""
    result = []
    offset = 0
    for item in text.split(","):
        stripped = item.strip()
        if not re.fullmatch(r"-?[0-9]+", stripped):
            raise ParseError(f"not an integer: {item!r}", offset)
        result.append(int(stripped))
        offset += len(item) + 1
    logger.trace(f"parsed integers: {result}")
    return result
