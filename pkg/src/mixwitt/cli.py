"""Command line front end. Every command prints one report on stdout, JSON by default or a
plain table with --table, and exits 0; errors print `error: <Name>: <message>` on stderr and
exit 2 (invalid input), 3 (search budget exceeded) or 4 (parse error).
"""
import argparse
from fractions import Fraction
import json
import sys
from typing import Callable, Sequence

from loguru import logger

from mixwitt import (
    InvalidInputError,
    MissingReference,
    DegenerateReference,
    MixwittError,
    ParseError,
    SearchBudgetExceeded,
    __version__,
)
from mixwitt.core import signpol
from mixwitt.core.mixed import MixedElement, mixed_mul, rdim2
from mixwitt.core.numberfield import NumberField, make_field, real_orderings
from mixwitt.core.quat import QuaternionAlgebra, anticommuting_unit, pure_from_coords
from mixwitt.core.witt import (
    QuadraticForm,
    invariants_q,
    pfister,
    total_signature_q,
    weak_equivalence,
    witt_equal_rational,
)
from mixwitt.utils import ctx
from mixwitt.utils.log import traced
from mixwitt.utils.parse import parse_integers, split_list
from mixwitt.workspace import Workspace, encode_mixed, encode_quaternion, load_workspace

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_PARSE = 4

Report = tuple[dict, list[list[str]]]  # JSON payload, table rows (first row is the header)

def _frac(x: Fraction) -> str:
    return str(x)

def _field(args) -> NumberField:
    return make_field(args.poly)

def _algebra(args) -> tuple[QuaternionAlgebra, Workspace | None]:
    """From --workspace, or from --poly and --symbol."""
    if args.workspace:
        ws = load_workspace(args.workspace)
        return ws.require_algebra(), ws
    if not args.symbol:
        raise InvalidInputError("give --workspace FILE or --symbol a,b")
    F = _field(args)
    a, b = _elements(F, args.symbol, expected=2)
    return QuaternionAlgebra(F, a, b), None

def _elements(F: NumberField, text: str, expected: int | None = None) -> list:
    items = split_list(text)
    if expected is not None and len(items) != expected:
        raise ParseError(f"expected {expected} comma separated values, got {len(items)} in {text!r}")
    return [F.element(item) for item in items]

def _form(F: NumberField, text: str) -> QuadraticForm:
    return QuadraticForm(F, tuple(_elements(F, text)))

def _workspace(args) -> Workspace:
    if not args.workspace:
        raise InvalidInputError("--workspace FILE is required")
    return load_workspace(args.workspace)

def _form_names(args, ws: Workspace) -> list[str]:
    if not args.forms:
        return sorted(ws.forms)
    return [name.strip() for name in args.forms.split(",")]

def cmd_orderings(args) -> Report:
    F = _field(args)
    orderings = real_orderings(F)
    payload = {
        "field": str(F),
        "degree": F.degree,
        "count": len(orderings),
        "orderings": [{"index": P.index, "left": _frac(P.left), "right": _frac(P.right)} for P in orderings],
    }
    rows = [["index", "left", "right"]] + [[str(P.index), _frac(P.left), _frac(P.right)] for P in orderings]
    return payload, rows

def cmd_partition(args) -> Report:
    Q, _ = _algebra(args)
    partition = signpol.partition_orderings(Q)
    payload = {
        "algebra": str(Q),
        "field": str(Q.field),
        "x_plus": [P.index for P in partition.x_plus],
        "x_minus": [P.index for P in partition.x_minus],
    }
    rows = [["index", "stratum"]] + [
        [str(P.index), partition.stratum(P).name.lower()] for P in real_orderings(Q.field)
    ]
    return payload, rows

def cmd_witt_sig(args) -> Report:
    F = _field(args)
    q = _form(F, args.form)
    dim2, disc = invariants_q(q)
    signatures = total_signature_q(q)
    payload = {"form": str(q), "dim_mod2": dim2, "signed_disc": str(disc), "signatures": signatures}
    rows = [["ordering", "signature"]] + [[str(i), str(s)] for i, s in signatures.items()]
    return payload, rows

def cmd_witt_equal(args) -> Report:
    F = _field(args)
    q1, q2 = _form(F, args.form), _form(F, args.other)
    if F.is_rational:
        equal = witt_equal_rational(q1, q2)
        payload = {"form": str(q1), "other": str(q2), "method": "witt-equal-rational", "equal": equal}
        rows = [["method", "result"], ["witt-equal-rational", str(equal).lower()]]
    else:
        verdict = weak_equivalence(q1, q2)
        payload = {"form": str(q1), "other": str(q2), "method": "weak-equivalence", "verdict": verdict.value}
        rows = [["method", "result"], ["weak-equivalence", verdict.value]]
    return payload, rows

def cmd_witt_pfister(args) -> Report:
    F = _field(args)
    q = pfister(_elements(F, args.slots), field=F)
    signatures = total_signature_q(q)
    payload = {"form": str(q), "dim": q.dim, "signatures": signatures}
    rows = [["ordering", "signature"]] + [[str(i), str(s)] for i, s in signatures.items()]
    return payload, rows

def cmd_quat_mul(args) -> Report:
    Q, _ = _algebra(args)
    x = Q.quaternion(*_elements(Q.field, args.x, expected=4))
    y = Q.quaternion(*_elements(Q.field, args.y, expected=4))
    product = x * y
    payload = {"algebra": str(Q), "product": str(product), "json": encode_quaternion(product)}
    return payload, [["product"], [str(product)]]

def cmd_quat_slot(args) -> Report:
    Q, _ = _algebra(args)
    z = pure_from_coords(Q, _elements(Q.field, args.z))
    w = anticommuting_unit(z)
    payload = {
        "algebra": str(Q),
        "z": str(z),
        "z_square": str(z.square()),
        "anticommuting_unit": str(w),
        "slot": str(w.square()),
    }
    return payload, [["z^2", "z'", "slot"], [str(z.square()), str(w), str(w.square())]]

def cmd_mixed_mul(args) -> Report:
    ws = _workspace(args)
    names = _form_names(args, ws)
    if len(names) < 2:
        raise InvalidInputError("mixed mul needs at least two forms")
    result = ws.form(names[0])
    for name in names[1:]:
        result = mixed_mul(result, ws.form(name))
    payload = {"forms": names, "product": str(result), "json": encode_mixed(result), "rdim2": rdim2(result)}
    return payload, [["product", "rdim2"], [str(result), str(rdim2(result))]]

def cmd_mixed_rdim2(args) -> Report:
    ws = _workspace(args)
    names = _form_names(args, ws)
    values = {name: rdim2(ws.form(name)) for name in names}
    return {"rdim2": values}, [["form", "rdim2"]] + [[n, str(v)] for n, v in values.items()]

def cmd_sign_table(args) -> Report:
    ws = _workspace(args)
    Q = ws.require_algebra()
    names = _form_names(args, ws)
    pol, refs = signpol.new(args.polarization, Q, ws.references, ws.polarizations)
    orderings = real_orderings(Q.field)
    header = ["form"] + [str(P) for P in orderings]
    rows, table = [], [header]
    for name in names:
        x = ws.form(name)
        with logger.contextualize(form=name):
            if pol is None:
                pairs = [signpol.signature_pair(x, P, refs) for P in orderings]
                rows.append({"form": name, "pairs": [[p.s_plus, p.s_minus] for p in pairs]})
                table.append([name] + [str(p) for p in pairs])
            else:
                values = signpol.total_signature(x, pol, refs)
                rows.append({"form": name, "values": [values[P.index] for P in orderings]})
                table.append([name] + [str(values[P.index]) for P in orderings])
    payload = {"orderings": [P.index for P in orderings], "polarization": args.polarization, "rows": rows}
    if pol is not None:
        payload["labels"] = pol.labels
    return payload, table

def cmd_reference_find(args) -> Report:
    Q, _ = _algebra(args)
    ref = signpol.find_reference(Q)
    payload = {
        "algebra": str(Q),
        "form": [encode_quaternion(z) for z in ref.form.entries],
        "text": str(ref.form),
        "nonzero_set": [P.index for P in ref.nonzero_set],
    }
    return payload, [["reference", "orderings"], [str(ref.form), ",".join(str(P.index) for P in ref.nonzero_set)]]

def cmd_polarize_principal(args) -> Report:
    ws = _workspace(args)
    Q = ws.require_algebra()
    refs = signpol.default_policy(ws.references)
    result, table = {}, [["form", "labels"]]
    for name in _form_names(args, ws):
        pol = signpol.principal_polarization(ws.form(name), refs)
        result[name] = pol.model_dump(mode="json")
        table.append([name, ",".join(f"{i}={eta:+d}" for i, eta in pol.labels.items())])
    return {"algebra": str(Q), "principal": result}, table

def cmd_spectrum(args) -> Report:
    Q, _ = _algebra(args)
    primes = parse_integers(args.primes) if args.primes else []
    report = signpol.spectrum_report(Q, primes)
    payload = report.model_dump(mode="json")
    table = [["label"]] + [[str(label)] for label in report.labels]
    return payload, table

def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON report (default)")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table", help="plain table")
    common.add_argument("--poly", default="t", help="defining polynomial in t, e.g. 't^2-2' (default: t, i.e. Q)")
    common.add_argument("--symbol", help="quaternion algebra a,b")
    common.add_argument("--workspace", help="workspace JSON file")
    common.add_argument("--budget", type=int, help="candidate budget for reference searches")
    return common

def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="mixwitt", description="Mixed Witt rings of quaternion algebras over real number fields.")
    parser.add_argument("--version", action="version", version=f"mixwitt {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subparsers, name: str, handler: Callable, help: str) -> argparse.ArgumentParser:
        p = subparsers.add_parser(name, parents=[common], help=help)
        p.set_defaults(handler=handler)
        return p

    leaf(sub, "orderings", cmd_orderings, "real orderings of Q[t]/(f)")
    leaf(sub, "partition", cmd_partition, "split / nonsplit orderings of an algebra")

    witt = sub.add_parser("witt", help="quadratic forms").add_subparsers(dest="witt_command", required=True)
    p = leaf(witt, "sig", cmd_witt_sig, "total signature of a form")
    p.add_argument("--form", required=True, help="entries, e.g. 1,-1,t")
    p = leaf(witt, "equal", cmd_witt_equal, "Witt equality over Q, weak equivalence elsewhere")
    p.add_argument("--form", required=True)
    p.add_argument("--other", required=True)
    p = leaf(witt, "pfister", cmd_witt_pfister, "Pfister form <<a_1, ..., a_n>>")
    p.add_argument("--slots", required=True)

    quat = sub.add_parser("quat", help="quaternion arithmetic").add_subparsers(dest="quat_command", required=True)
    p = leaf(quat, "mul", cmd_quat_mul, "product of two quaternions")
    p.add_argument("--x", required=True, help="x0,x1,x2,x3")
    p.add_argument("--y", required=True, help="y0,y1,y2,y3")
    p = leaf(quat, "slot", cmd_quat_slot, "slot c with [Q] = (z^2, c)")
    p.add_argument("--z", required=True, help="pure quaternion x1,x2,x3")

    mixed = sub.add_parser("mixed", help="mixed Witt ring").add_subparsers(dest="mixed_command", required=True)
    p = leaf(mixed, "mul", cmd_mixed_mul, "product of workspace forms")
    p.add_argument("--forms", required=True, help="A,B")
    p = leaf(mixed, "rdim2", cmd_mixed_rdim2, "reduced dimension mod 2")
    p.add_argument("--forms")

    p = leaf(sub, "sign-table", cmd_sign_table, "signatures of workspace forms at every ordering")
    p.add_argument("--forms")
    p.add_argument("--polarization", default="pair", help="pair | ref:<name> | labels:0=1,1=-1 | global | <stored name>")

    reference = sub.add_parser("reference", help="reference forms").add_subparsers(dest="reference_command", required=True)
    leaf(reference, "find", cmd_reference_find, "search a reference form covering X_1(A)")

    polarize = sub.add_parser("polarize", help="polarizations").add_subparsers(dest="polarize_command", required=True)
    p = leaf(polarize, "principal", cmd_polarize_principal, "principal polarizations of workspace forms")
    p.add_argument("--forms")

    p = leaf(sub, "spectrum", cmd_spectrum, "prime spectrum of residual characteristic 0 and odd p")
    p.add_argument("--primes", help="odd primes, e.g. 3,5")
    return parser

def _render(payload: dict, table: list[list[str]], fmt: str) -> str:
    if fmt == "table":
        widths = [max(len(row[i]) for row in table if i < len(row)) for i in range(len(table[0]))]
        return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table)
    return json.dumps(payload, indent=2, sort_keys=True, default=str)

def _exit_code(e: MixwittError) -> int:
    if isinstance(e, ParseError):
        return EXIT_PARSE
    if isinstance(e, SearchBudgetExceeded):
        return EXIT_BUDGET
    return EXIT_INVALID

@traced
def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    token = ctx.budget.set(args.budget) if args.budget is not None else None
    try:
        with logger.contextualize(command=args.command):
            payload, table = args.handler(args)
        print(_render(payload, table, args.fmt or "json"))
        return EXIT_OK
    except MixwittError as e:
        logger.error(f"{type(e).__name__}: {e}")
        message = f"error: {type(e).__name__}: {e}"
        if isinstance(e, (MissingReference, DegenerateReference)) and e.ordering is not None:
            message += f" (ordering {e.ordering})"
        print(message, file=sys.stderr)
        return _exit_code(e)
    finally:
        if token is not None:
            ctx.budget.reset(token)

if __name__ == "__main__":
    sys.exit(main())
