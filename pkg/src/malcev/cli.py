"""Command-line surface: identity checks, decomposition reports, constructors,
morphism verification and Pluecker scans over interchange JSON files.

Exit codes: 0 pass, 1 mathematical failure, 2 input error. All output is
deterministic: byte-identical across repeated runs and worker counts.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import constructions as cons
from .core import Algebra, Element, LinearMap, find_unit, load_algebra
from .errors import MalcevError, SchemaError
from .identities import IdentityReport, check_anticommutative, check_identity
from .iso import AlgebraMorphism, phi_map, t2_parameter, verify_morphism
from .linalg import Matrix, to_fraction
from .sl2 import (
    PairingForm,
    coordinatize,
    decompose,
    extract_pairing,
    verify_sl2,
    zero_pairing,
)

_IDENTITY_FLAGS = {
    "anticommutative": "anticommutative",
    "malcev": "malcev",
    "lie": "lie",
    "variety-h": "variety_h",
}


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _report_lines(report: IdentityReport, basis_names=None) -> list[str]:
    lines = [
        f"identity: {report.identity}",
        f"passed: {str(report.passed).lower()}",
        f"tuples_checked: {report.tuples_checked}",
    ]
    if report.first_failure is not None:
        where = list(report.first_failure)
        lines.append(f"first_failure: {where}")
        if basis_names and all(i < len(basis_names) for i in where):
            lines.append("witness: (" + ", ".join(basis_names[i] for i in where) + ")")
        if report.failure_value is not None:
            lines.append(f"failure_value: {report.failure_value!r}")
    return lines


def _emit_report(report: IdentityReport, fmt: str, basis_names=None) -> None:
    if fmt == "json":
        _emit_json(report.to_dict())
    else:
        sys.stdout.write("\n".join(_report_lines(report, basis_names)) + "\n")


def _load_algebra_file(path: str) -> Algebra:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from None
    return load_algebra(doc)


def _load_json_file(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from None


def _scalar_algebra_from_file(path: str) -> cons.CommutativeScalarAlgebra:
    algebra = _load_algebra_file(path)
    unit = find_unit(algebra)
    if unit is None:
        raise cons.ScalarAlgebraError(f"{path}: base algebra has no unit")
    return cons.verify_scalar_algebra(algebra, unit)


_TERM = re.compile(r"[+-]?[^+-]+")


def _parse_element(b: cons.CommutativeScalarAlgebra, text: str) -> Element:
    """Element expressions over the base: rationals scale the unit, basis names
    stand for themselves, terms like 3/2*t combine, e.g. "1+2*t" or "-3/4"."""
    compact = text.replace(" ", "")
    if not compact:
        raise SchemaError("empty element expression")
    tokens = _TERM.findall(compact)
    if "".join(tokens) != compact:
        raise SchemaError(f"cannot parse element expression {text!r}")
    total = b.algebra.zero()
    for token in tokens:
        sign = -1 if token.startswith("-") else 1
        body = token.lstrip("+-")
        if not body:
            raise SchemaError(f"cannot parse element expression {text!r}")
        if "*" in body:
            coeff_text, name = body.split("*", 1)
            coeff = to_fraction(coeff_text)
            part = coeff * b.algebra.basis_element(b.algebra.index_of(name))
        elif body in b.algebra.basis_names:
            part = b.algebra.basis_element(b.algebra.index_of(body))
        else:
            part = to_fraction(body) * b.unit
        total = total + (sign * part)
    return total


def _pairing_entry(b: cons.CommutativeScalarAlgebra, raw) -> Element:
    if isinstance(raw, str):
        return to_fraction(raw) * b.unit
    if isinstance(raw, dict):
        return b.algebra.element_from_dict(raw)
    raise SchemaError("pairing entries must be \"p/q\" strings or coordinate objects")


def _pairing_from_file(b: cons.CommutativeScalarAlgebra, path: str) -> PairingForm:
    doc = _load_json_file(path)
    if not isinstance(doc, dict) or "entries" not in doc:
        raise SchemaError("pairing file needs an \"entries\" grid")
    grid = doc["entries"]
    entries = tuple(tuple(_pairing_entry(b, v) for v in row) for row in grid)
    return PairingForm(b.algebra, entries)


# ------------------------------------------------------------------- commands

def _cmd_check(args) -> int:
    if args.workers is not None and args.workers < 1:
        raise SchemaError("--workers must be a positive integer")
    algebra = _load_algebra_file(args.file)
    which = _IDENTITY_FLAGS[args.identity]
    if which == "anticommutative":
        report = check_anticommutative(algebra)
    else:
        report = check_identity(algebra, which, workers=args.workers)
    _emit_report(report, args.format, algebra.basis_names)
    return 0 if report.passed else 1


def _cmd_decompose(args) -> int:
    algebra = _load_algebra_file(args.file)
    names = args.sl2.split(",")
    if len(names) != 3:
        raise SchemaError("--sl2 needs three comma-separated basis names E,H,F")
    e, h, f = (algebra.basis_element(algebra.index_of(n.strip())) for n in names)
    emb = verify_sl2(algebra, e, h, f)
    dec = decompose(algebra, emb)
    payload = dec.to_dict()
    coord = None
    if args.coordinatize or args.pairing:
        coord = coordinatize(algebra, emb, dec)
    if args.coordinatize:
        payload["coordinatization"] = {
            "u_algebra": coord.u_algebra.to_document(),
            "unit": coord.unit_coords.coords_dict(),
        }
    if args.pairing:
        pairing = extract_pairing(algebra, emb, dec, coord)
        payload["pairing"] = pairing.to_dict()
    if args.format == "json":
        _emit_json(payload)
    else:
        dims = payload["dims"]
        lines = [f"dims: ann={dims['ann']} n_part={dims['n_part']} j_part={dims['j_part']}"]
        for key in ("ann", "n_part", "j_part", "v1", "v2"):
            for row in payload[key]:
                lines.append(f"{key} basis: [{', '.join(row)}]")
        if args.coordinatize:
            u_doc = payload["coordinatization"]["u_algebra"]
            lines.append(f"recovered scalars: dim {u_doc['dim']}, unit {payload['coordinatization']['unit']}")
            for product in u_doc["products"]:
                lines.append(
                    f"  {product['left']} * {product['right']} = {product['result']}"
                )
        if args.pairing:
            lines.append(f"pairing rank: {payload['pairing']['rank']}")
            for row in payload["pairing"]["entries"]:
                lines.append("pairing row: " + json.dumps(row, sort_keys=True))
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _cmd_construct(args) -> int:
    kind = args.kind
    if kind == "m5":
        algebra = cons.m5()
    elif kind == "m7-scalar":
        algebra = cons.m7_scalar(to_fraction(args.lam))
    elif kind in ("sl2-of", "m7-of", "m-tilde", "extension"):
        if not args.base:
            raise SchemaError(f"construct {kind} needs --base")
        base = _scalar_algebra_from_file(args.base)
        if kind == "sl2-of":
            algebra = cons.sl2_of(base)
        elif kind == "m7-of":
            algebra = cons.m7_of(base)
        elif kind == "m-tilde":
            if args.alpha is None:
                raise SchemaError("construct m-tilde needs --alpha")
            algebra = cons.m_tilde(base, _parse_element(base, args.alpha))
        else:
            if args.pairing:
                pairing = _pairing_from_file(base, args.pairing)
                if args.rank is not None and args.rank != pairing.v_rank:
                    raise SchemaError("--rank disagrees with the pairing grid size")
            else:
                if args.rank is None:
                    raise SchemaError("construct extension needs --rank or --pairing")
                pairing = zero_pairing(base.algebra, args.rank)
            algebra = cons.build_extension(base, pairing)
    else:  # pragma: no cover - argparse restricts choices
        raise SchemaError(f"unknown construction {kind!r}")

    text = algebra.to_json()
    reloaded = load_algebra(json.loads(text))
    report = check_identity(reloaded, "malcev", workers=args.workers)
    if not report.passed:
        sys.stderr.write("constructed document fails the malcev check\n")
        return 1
    Path(args.output).write_text(text, encoding="utf-8")
    sys.stdout.write(f"wrote {args.output}: dim {algebra.dim}, malcev pass\n")
    return 0


def _cmd_iso(args) -> int:
    if args.theorem_t2:
        if not args.base or args.alpha is None:
            raise SchemaError("--theorem-t2 needs --base and --alpha")
        base = _scalar_algebra_from_file(args.base)
        alpha = _parse_element(base, args.alpha)
        pairing = cons.det_pairing(base, alpha)
        left = cons.build_extension(base, pairing)
        right = cons.m_tilde(base, alpha)
        morphism = phi_map(base, alpha, left, right)
        report = verify_morphism(morphism)
        payload = report.to_dict()
        payload["parameter"] = t2_parameter(pairing).coords_dict()
        payload["parameter_expected"] = alpha.coords_dict()
        if args.format == "json":
            _emit_json(payload)
        else:
            _emit_report(report, args.format)
            sys.stdout.write(
                f"parameter: {json.dumps(payload['parameter'], sort_keys=True)}\n"
            )
        if not report.passed or payload["parameter"] != payload["parameter_expected"]:
            return 1
        return 0
    if not (args.left and args.right and args.map):
        raise SchemaError("iso needs either --theorem-t2 or all of --left/--right/--map")
    left = _load_algebra_file(args.left)
    right = _load_algebra_file(args.right)
    doc = _load_json_file(args.map)
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise SchemaError("map file needs a \"matrix\" grid of \"p/q\" strings")
    if doc.get("domain", left.name) != left.name or doc.get("codomain", right.name) != right.name:
        raise SchemaError("map file names a different domain/codomain pair")
    matrix = Matrix([[to_fraction(v) for v in row] for row in doc["matrix"]], cols=left.dim)
    report = verify_morphism(AlgebraMorphism(LinearMap(left, right, matrix)))
    _emit_report(report, args.format, left.basis_names)
    return 0 if report.passed else 1


def _cmd_plucker(args) -> int:
    if args.n is not None:
        if args.n < 2:
            raise SchemaError("--n must be at least 2")
        report = cons.det_plucker_generators(args.n)
        _emit_report(report, args.format)
        return 0 if report.passed else 1
    if not args.grid:
        raise SchemaError("plucker needs --n or --grid")
    doc = _load_json_file(args.grid)
    if not isinstance(doc, dict) or "entries" not in doc:
        raise SchemaError("grid file needs an \"entries\" grid")
    if "base" in doc:
        base_algebra = load_algebra(doc["base"])
        unit = find_unit(base_algebra)
        if unit is None:
            raise cons.ScalarAlgebraError("grid base algebra has no unit")
        base = cons.verify_scalar_algebra(base_algebra, unit)
    else:
        base = cons.rational_scalars()
    grid = [[_pairing_entry(base, v) for v in row] for row in doc["entries"]]
    report = cons.plucker_check(grid)
    _emit_report(report, args.format)
    return 0 if report.passed else 1


# --------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="malcev",
        description="Exact identity checking and decomposition of structure-constant algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_check = sub.add_parser("check", help="scan a defining identity over all basis tuples")
    p_check.add_argument("file")
    p_check.add_argument("--identity", required=True, choices=sorted(_IDENTITY_FLAGS))
    p_check.add_argument("--workers", type=int, default=None)
    add_format(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_dec = sub.add_parser("decompose", help="annihilator/Lie/non-Lie split along an sl2 triple")
    p_dec.add_argument("file")
    p_dec.add_argument("--sl2", required=True, metavar="E,H,F")
    p_dec.add_argument("--coordinatize", action="store_true")
    p_dec.add_argument("--pairing", action="store_true")
    add_format(p_dec)
    p_dec.set_defaults(func=_cmd_decompose)

    p_con = sub.add_parser("construct", help="build an algebra and write its document")
    p_con.add_argument(
        "kind", choices=("m5", "m7-scalar", "sl2-of", "m7-of", "m-tilde", "extension")
    )
    p_con.add_argument("--base", help="base algebra document (JSON)")
    p_con.add_argument("--alpha", help="element expression over the base, e.g. 't' or '1+2*t'")
    p_con.add_argument("--lambda", dest="lam", default="1", help="scalar pairing value for m7-scalar")
    p_con.add_argument("--rank", type=int, default=None)
    p_con.add_argument("--pairing", help="pairing grid file (JSON)")
    p_con.add_argument("--workers", type=int, default=None)
    p_con.add_argument("-o", "--output", required=True)
    p_con.set_defaults(func=_cmd_construct)

    p_iso = sub.add_parser("iso", help="verify an algebra morphism")
    p_iso.add_argument("--left")
    p_iso.add_argument("--right")
    p_iso.add_argument("--map")
    p_iso.add_argument("--theorem-t2", action="store_true")
    p_iso.add_argument("--base")
    p_iso.add_argument("--alpha")
    add_format(p_iso)
    p_iso.set_defaults(func=_cmd_iso)

    p_pl = sub.add_parser("plucker", help="three-term determinant relations")
    p_pl.add_argument("--n", type=int, default=None)
    p_pl.add_argument("--grid")
    add_format(p_pl)
    p_pl.set_defaults(func=_cmd_plucker)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which matches the input-error contract
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SchemaError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except MalcevError as exc:
        sys.stderr.write(f"failure: {exc}\n")
        return 1


def run() -> None:
    raise SystemExit(main())
