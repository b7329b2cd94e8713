"""JSON codec for algebras, representations and cochain payloads.

Canonical form: rationals are serialized as "p" or "p/q" in lowest terms
with a positive denominator (exactly ``str(Fraction)``), documents are
dumped with sorted keys and two-space indentation, and parsing then
re-serializing any valid document reproduces it byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cohomology import Cochain
from .core import (
    BilinearForm,
    ColorHomAlgebra,
    GradedLinearMap,
    GradedSpace,
    StructureConstants,
    check_graded,
)
from .errors import GradingViolation, ParseError
from .grading import Bicharacter, GradingGroup, make_bicharacter
from .linalg import RatMatrix
from .representations import Representation

ALGEBRA_SCHEMA = "qchl-algebra/1"
REPRESENTATION_SCHEMA = "qchl-representation/1"
COCHAIN_SCHEMA = "qchl-cochain/1"


def rational_str(x: Fraction) -> str:
    return str(Fraction(x))


def _parse_rational(s, where: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad rational {s!r} in {where}: {exc}") from None


def _matrix_doc(m: RatMatrix) -> list[list[str]]:
    return [[rational_str(x) for x in row] for row in m.entries]


def _parse_matrix(doc, where: str, rows: int, cols: int) -> RatMatrix:
    if not isinstance(doc, list) or len(doc) != rows:
        raise ParseError(f"{where}: expected {rows} rows")
    data = []
    for r, row in enumerate(doc):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"{where}: row {r} must have {cols} entries")
        data.append([_parse_rational(x, f"{where}[{r}]") for x in row])
    return RatMatrix.from_rows(data, ncols=cols)


# ---------------------------------------------------------------------------
# group / bicharacter / space fragments


def group_doc(group: GradingGroup) -> dict:
    return {"free_rank": group.free_rank, "torsion": list(group.torsion_orders)}


def parse_group(doc) -> GradingGroup:
    try:
        return GradingGroup(int(doc["free_rank"]), tuple(int(n) for n in doc["torsion"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad group fragment: {exc}") from None


def bicharacter_doc(bc: Bicharacter) -> list[list[str]]:
    return [[rational_str(x) for x in row] for row in bc.gen_table]


def parse_bicharacter(group: GradingGroup, doc) -> Bicharacter:
    m = group.num_generators
    if not isinstance(doc, list) or len(doc) != m:
        raise ParseError(f"bicharacter table must be {m}x{m}")
    table = []
    for r, row in enumerate(doc):
        if not isinstance(row, list) or len(row) != m:
            raise ParseError(f"bicharacter table must be {m}x{m}")
        table.append([_parse_rational(x, f"bicharacter[{r}]") for x in row])
    return make_bicharacter(group, table)


def space_doc(space: GradedSpace) -> list[dict]:
    return [
        {"name": name, "degree": list(deg.coords)} for name, deg in space.basis
    ]


def parse_space(bc: Bicharacter, doc) -> GradedSpace:
    if not isinstance(doc, list) or not doc:
        raise ParseError("basis must be a non-empty list")
    basis = []
    for item in doc:
        try:
            basis.append((str(item["name"]), bc.group.element(item["degree"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad basis entry {item!r}: {exc}") from None
    return GradedSpace(bc, tuple(basis))


# ---------------------------------------------------------------------------
# algebras


def algebra_doc(alg: ColorHomAlgebra) -> dict:
    bracket = {}
    for (i, j), entry in sorted(alg.bracket.table.items()):
        bracket[f"{i},{j}"] = [
            {"k": k, "c": rational_str(c)} for k, c in sorted(entry.items())
        ]
    doc = {
        "schema": ALGEBRA_SCHEMA,
        "group": group_doc(alg.space.bc.group),
        "bicharacter": bicharacter_doc(alg.space.bc),
        "basis": space_doc(alg.space),
        "kind": alg.kind,
        "bracket": bracket,
        "alpha": _matrix_doc(alg.alpha.matrix),
    }
    if alg.form is not None:
        doc["form"] = _matrix_doc(alg.form.matrix)
    return doc


def parse_algebra(doc) -> ColorHomAlgebra:
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be an object")
    if doc.get("schema", ALGEBRA_SCHEMA) != ALGEBRA_SCHEMA:
        raise ParseError(f"unsupported schema {doc.get('schema')!r}")
    for key in ("group", "bicharacter", "basis", "bracket", "alpha"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    group = parse_group(doc["group"])
    bc = parse_bicharacter(group, doc["bicharacter"])
    space = parse_space(bc, doc["basis"])
    n = space.dim
    kind = doc.get("kind", "lie")
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    if not isinstance(doc["bracket"], dict):
        raise ParseError("bracket must be an object keyed by 'i,j'")
    for key, entries in doc["bracket"].items():
        try:
            i_s, j_s = key.split(",")
            i, j = int(i_s), int(j_s)
        except ValueError:
            raise ParseError(f"bad bracket key {key!r}") from None
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"bracket key {key!r} out of range")
        for item in entries:
            try:
                k = int(item["k"])
                c = _parse_rational(item["c"], f"bracket[{key}]")
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"bad bracket entry {item!r}: {exc}") from None
            if not 0 <= k < n:
                raise ParseError(f"bracket target {k} out of range in {key!r}")
            table.setdefault((i, j), {})[k] = c
    bracket = StructureConstants(space, table)
    graded = check_graded(bracket)
    if not graded.passed:
        raise GradingViolation(
            f"bracket violates degree additivity: {graded.detail}",
            witness=graded.witness,
        )
    alpha = GradedLinearMap(
        space, space, space.zero_degree(), _parse_matrix(doc["alpha"], "alpha", n, n)
    )
    form = None
    if "form" in doc and doc["form"] is not None:
        form = BilinearForm(space, _parse_matrix(doc["form"], "form", n, n))
    return ColorHomAlgebra(space, bracket, alpha, form=form, kind=kind)


# ---------------------------------------------------------------------------
# representations


def representation_doc(rep: Representation) -> dict:
    return {
        "schema": REPRESENTATION_SCHEMA,
        "algebra": algebra_doc(rep.algebra),
        "module_basis": space_doc(rep.module_space),
        "beta": _matrix_doc(rep.beta.matrix),
        "rho": [_matrix_doc(r.matrix) for r in rep.rho],
    }


def parse_representation(doc) -> Representation:
    if not isinstance(doc, dict):
        raise ParseError("representation document must be an object")
    if doc.get("schema", REPRESENTATION_SCHEMA) != REPRESENTATION_SCHEMA:
        raise ParseError(f"unsupported schema {doc.get('schema')!r}")
    for key in ("algebra", "module_basis", "beta", "rho"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    alg = parse_algebra(doc["algebra"])
    module = parse_space(alg.space.bc, doc["module_basis"])
    nm = module.dim
    beta = GradedLinearMap(
        module, module, module.zero_degree(), _parse_matrix(doc["beta"], "beta", nm, nm)
    )
    if len(doc["rho"]) != alg.dim:
        raise ParseError("rho must hold one matrix per algebra basis vector")
    rho = tuple(
        GradedLinearMap(
            module,
            module,
            alg.space.degree(i),
            _parse_matrix(mdoc, f"rho[{i}]", nm, nm),
        )
        for i, mdoc in enumerate(doc["rho"])
    )
    return Representation(alg, module, beta, rho)


# ---------------------------------------------------------------------------
# cochain payloads (values in a caller-supplied module)


def cochain_doc(phi: Cochain) -> dict:
    values = {}
    for t, vec in sorted(phi.values.items()):
        key = ",".join(str(i) for i in t)
        values[key] = [
            rational_str(vec.get(m, Fraction(0))) for m in range(phi.rep.dim)
        ]
    return {
        "schema": COCHAIN_SCHEMA,
        "n": phi.n,
        "degree": list(phi.degree.coords),
        "values": values,
    }


def parse_cochain(doc, rep: Representation) -> Cochain:
    if not isinstance(doc, dict):
        raise ParseError("cochain document must be an object")
    try:
        n = int(doc.get("n", 2))
        degree = rep.algebra.space.bc.group.element(doc.get("degree", ()))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad cochain header: {exc}") from None
    values = {}
    for key, arr in doc.get("values", {}).items():
        try:
            t = tuple(int(x) for x in key.split(","))
        except ValueError:
            raise ParseError(f"bad cochain key {key!r}") from None
        if len(arr) != rep.dim:
            raise ParseError(f"cochain value at {key!r} must have {rep.dim} coordinates")
        vec = {
            m: _parse_rational(c, f"values[{key}]")
            for m, c in enumerate(arr)
            if _parse_rational(c, f"values[{key}]") != 0
        }
        if vec:
            values[t] = vec
    try:
        return Cochain(n, degree, rep, values)
    except GradingViolation as exc:
        raise ParseError(f"cochain violates homogeneity: {exc}") from None


# ---------------------------------------------------------------------------
# text form


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def serialize_algebra(alg: ColorHomAlgebra) -> str:
    return dumps(algebra_doc(alg))


def serialize_representation(rep: Representation) -> str:
    return dumps(representation_doc(rep))


def parse(text: str):
    """Parse an algebra or representation file, dispatching on its schema."""
    doc = loads(text)
    schema = doc.get("schema") if isinstance(doc, dict) else None
    if schema == REPRESENTATION_SCHEMA:
        return parse_representation(doc)
    return parse_algebra(doc)
