"""Command-line interface.

Exit codes: 0 = all requested checks passed / construction verified,
1 = a check failed (the JSON report on stdout carries the witness),
2 = usage, parse, or parameter error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import codec
from .catalog import catalog_build, catalog_entry, catalog_ids
from .cohomology import cohomology, tstar_extension, central_extension
from .constructions import (
    centroid_basis,
    centroid_twist,
    commutator_algebra,
    power_twist,
    semidirect_product,
    tensor_product_algebra,
    twist_by_weak_morphism,
    twist_quadratic,
)
from .core import ColorHomAlgebra, GradedLinearMap, GradedSpace, standard_checks
from .errors import BadParams, ParseError, QchlError, UnknownEntry
from .faulkner import faulkner_leibniz, faulkner_map
from .grading import rat
from .linalg import RatMatrix
from .representations import Representation, coadjoint_rep, trivial_rep

USAGE_ERROR = 2
CHECK_FAILED = 1
OK = 0


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return codec.loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _load_algebra(path: str) -> ColorHomAlgebra:
    obj = codec.parse_algebra(_read_json(path))
    return obj


def _load_representation(path: str) -> Representation:
    return codec.parse_representation(_read_json(path))


def _load_map(path: str, space: GradedSpace) -> GradedLinearMap:
    doc = _read_json(path)
    matrix = doc["matrix"] if isinstance(doc, dict) and "matrix" in doc else doc
    return GradedLinearMap(
        space,
        space,
        space.zero_degree(),
        RatMatrix.from_rows(
            [[rat(x) for x in row] for row in matrix], ncols=space.dim
        ),
    )


def _write_algebra(alg: ColorHomAlgebra, out: str | None) -> None:
    text = codec.serialize_algebra(alg)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_degree(text: str | None, group):
    if not text:
        return group.zero()
    return group.element([int(x) for x in text.replace(" ", "").split(",")])


def _cmd_verify(args) -> int:
    alg = _load_algebra(args.file)
    if args.kind:
        alg = alg.with_kind(args.kind)
    report = standard_checks(
        alg,
        quadratic=args.quadratic,
        multiplicative=args.multiplicative,
        commutative=args.commutative,
    )
    _emit({"ok": report.passed, "kind": alg.kind, "report": report.to_dict()})
    return OK if report.passed else CHECK_FAILED


def _cmd_construct(args) -> int:
    kind = args.what
    if kind == "twist":
        alg = _load_algebra(args.file)
        beta = _load_map(args.map, alg.space)
        out = twist_by_weak_morphism(alg, beta)
    elif kind == "twist-quadratic":
        alg = _load_algebra(args.file)
        beta = _load_map(args.map, alg.space)
        out = twist_quadratic(alg, beta)
    elif kind == "power":
        alg = _load_algebra(args.file)
        out = power_twist(alg, args.n)
    elif kind == "centroid":
        alg = _load_algebra(args.file)
        if args.theta:
            theta_map = _load_map(args.theta, alg.space)
            from .constructions import CentroidElement, check_centroid

            report = check_centroid(alg, theta_map)
            if not report.passed:
                raise QchlError(f"theta is not a centroid element: {report.detail}")
            theta = CentroidElement(theta_map, certified=True)
        else:
            elements = centroid_basis(alg)
            if not elements:
                raise QchlError("the even centroid is trivial; supply --theta")
            theta = elements[args.theta_index]
        out = centroid_twist(alg, theta, bracket=args.bracket, twist_order=args.order)
    elif kind == "commutator":
        out = commutator_algebra(_load_algebra(args.file))
    elif kind == "tensor":
        out = tensor_product_algebra(
            _load_algebra(args.file), _load_algebra(args.second)
        )
    elif kind == "semidirect":
        alg = _load_algebra(args.file)
        rep = _load_representation(args.second)
        out = semidirect_product(alg, rep)
    elif kind == "central":
        alg = _load_algebra(args.file)
        doc = _read_json(args.cocycle)
        line = GradedSpace(alg.space.bc, (("z", alg.space.bc.group.zero()),))
        rep = trivial_rep(alg, line)
        psi = codec.parse_cochain(doc, rep)
        out = central_extension(alg, line, psi)
    elif kind == "tstar":
        alg = _load_algebra(args.file)
        omega = None
        if args.cocycle:
            pi, condition = coadjoint_rep(alg)
            if not condition.passed:
                raise QchlError("coadjoint representation does not exist")
            omega = codec.parse_cochain(_read_json(args.cocycle), pi)
        out = tstar_extension(alg, omega)
    elif kind == "faulkner":
        alg = _load_algebra(args.file)
        rep = _load_representation(args.second)
        fd = faulkner_map(alg, rep)
        out = faulkner_leibniz(fd)
    else:  # pragma: no cover - argparse restricts choices
        raise ParseError(f"unknown construction {kind!r}")
    _write_algebra(out, args.output)
    return OK


def _cmd_cohomology(args) -> int:
    alg = _load_algebra(args.file)
    if args.coefficients == "trivial":
        module = trivial_rep(alg)
    else:
        module, condition = coadjoint_rep(alg)
        if not condition.passed:
            _emit(
                {
                    "ok": False,
                    "error": "coadjoint representation does not exist",
                    "witness": list(condition.witness or ()),
                }
            )
            return CHECK_FAILED
    degree = _parse_degree(args.degree, alg.space.bc.group)
    result = cohomology(alg, module, degree, with_h1=args.h1)
    doc = {"ok": True, **result.to_dict()}
    doc["representatives"] = [codec.cochain_doc(c) for c in result.representatives]
    _emit(doc)
    return OK


def _cmd_catalog(args) -> int:
    if args.action == "list":
        entries = []
        for cid in catalog_ids():
            entry = catalog_entry(cid)
            entries.append(
                {
                    "id": cid,
                    "defaults": {
                        k: str(v) for k, v in sorted(entry.defaults.items())
                    },
                    "description": entry.description,
                }
            )
        _emit({"ok": True, "entries": entries})
        return OK
    if not args.id:
        raise ParseError("catalog emit needs an entry id")
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise ParseError(f"--param expects k=v, got {item!r}")
        key, value = item.split("=", 1)
        try:
            params[key] = Fraction(value)
        except (ValueError, ZeroDivisionError):
            params[key] = value
    alg = catalog_build(args.id, params)
    _write_algebra(alg, args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qchl",
        description="Exact verification and constructions for color Hom-Lie algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the axioms announced by a file")
    p_verify.add_argument("file")
    p_verify.add_argument("--kind", choices=("lie", "associative", "leibniz"))
    p_verify.add_argument("--quadratic", action="store_true")
    p_verify.add_argument("--multiplicative", action="store_true")
    p_verify.add_argument("--commutative", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)

    p_con = sub.add_parser("construct", help="build a derived algebra")
    p_con.add_argument(
        "what",
        choices=(
            "twist",
            "twist-quadratic",
            "power",
            "centroid",
            "commutator",
            "tensor",
            "semidirect",
            "central",
            "tstar",
            "faulkner",
        ),
    )
    p_con.add_argument("file", help="input algebra JSON")
    p_con.add_argument("second", nargs="?", help="second input file where needed")
    p_con.add_argument("--map", help="matrix JSON for twist maps")
    p_con.add_argument("--theta", help="matrix JSON for a centroid element")
    p_con.add_argument("--theta-index", type=int, default=0)
    p_con.add_argument("--bracket", choices=("orig", "b1", "b2"), default="orig")
    p_con.add_argument(
        "--order", choices=("theta_alpha", "alpha_theta"), default="theta_alpha"
    )
    p_con.add_argument("--n", type=int, default=1, help="power for 'power'")
    p_con.add_argument("--cocycle", help="cochain JSON for central/tstar")
    p_con.add_argument("-o", "--output")
    p_con.set_defaults(func=_cmd_construct)

    p_coh = sub.add_parser("cohomology", help="dim Z^2 / B^2 / H^2 in one degree")
    p_coh.add_argument("file")
    p_coh.add_argument(
        "--coefficients", choices=("trivial", "coadjoint"), default="trivial"
    )
    p_coh.add_argument("--degree", help="comma-separated degree vector")
    p_coh.add_argument("--h1", action="store_true")
    p_coh.set_defaults(func=_cmd_cohomology)

    p_cat = sub.add_parser("catalog", help="list or emit built-in examples")
    p_cat.add_argument("action", choices=("list", "emit"))
    p_cat.add_argument("id", nargs="?")
    p_cat.add_argument("--param", action="append")
    p_cat.add_argument("-o", "--output")
    p_cat.set_defaults(func=_cmd_catalog)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else OK
    try:
        return args.func(args)
    except (ParseError, BadParams, UnknownEntry) as exc:
        _emit({"ok": False, "error": str(exc)})
        return USAGE_ERROR
    except QchlError as exc:
        doc = {"ok": False, "error": str(exc)}
        if exc.witness is not None:
            doc["witness"] = list(exc.witness)
        _emit(doc)
        return CHECK_FAILED


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
