"""JSON wire formats for every library object.

Rationals travel as strings "p/q" (or "p"); floats are rejected.  All
indices are 1-based on the wire and 0-based internally.  Omitted
triples, pairs and coefficients default to zero.  Every top-level
document carries "format": 1.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .cochains import Cochain, PairCochain, ordered_pairs
from .cohomology import CohomologyReport
from .core import (
    DerModule,
    LieDerPair,
    Representation,
    ThreeLieAlgebra,
    ValidationReport,
    Violation,
)
from .deformations import Deformation, FormalIso
from .errors import InputError
from .extensions import CentralExtension
from .linalg import QMatrix
from .rationals import format_scalar, parse_scalar

FORMAT_VERSION = 1


def dump_document(body: dict) -> str:
    doc = {"format": FORMAT_VERSION}
    doc.update(body)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    if doc.get("format") != FORMAT_VERSION:
        raise InputError('document is missing "format": 1')
    return doc


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise InputError(f"{where}: missing field {key!r}")
    return doc[key]


def _int_field(doc: dict, key: str, where: str) -> int:
    value = _require(doc, key, where)
    if not isinstance(value, int) or isinstance(value, bool):
        raise InputError(f"{where}.{key}: expected an integer")
    return value


# -- vectors of coefficients ("l": "p/q" maps, 1-based keys) -----------


def _vec_to_json(vec) -> dict:
    return {str(i + 1): format_scalar(v) for i, v in enumerate(vec) if v}


def _vec_from_json(obj, length: int, where: str) -> tuple[Fraction, ...]:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object of index -> rational")
    out = [Fraction(0)] * length
    for key, raw in obj.items():
        try:
            idx = int(key)
        except ValueError as exc:
            raise InputError(f"{where}: bad index {key!r}") from exc
        if not 1 <= idx <= length:
            raise InputError(f"{where}: index {idx} out of range 1..{length}")
        out[idx - 1] = parse_scalar(raw)
    return tuple(out)


# -- algebras -----------------------------------------------------------


def algebra_to_json(alg: ThreeLieAlgebra) -> dict:
    brackets = []
    for (i, j, k) in sorted(alg.constants):
        brackets.append({
            "triple": [i + 1, j + 1, k + 1],
            "value": _vec_to_json(alg.constants[(i, j, k)]),
        })
    return {"dim": alg.dim, "brackets": brackets}


def algebra_from_json(doc: dict, where: str = "algebra") -> ThreeLieAlgebra:
    dim = _int_field(doc, "dim", where)
    constants = {}
    for pos, item in enumerate(doc.get("brackets", [])):
        spot = f"{where}.brackets[{pos}]"
        triple = _require(item, "triple", spot)
        if (not isinstance(triple, list) or len(triple) != 3
                or not all(isinstance(t, int) for t in triple)):
            raise InputError(f"{spot}.triple: expected three integers")
        key = tuple(t - 1 for t in triple)
        constants[key] = _vec_from_json(_require(item, "value", spot), dim,
                                        f"{spot}.value")
    return ThreeLieAlgebra(dim, constants)


# -- linear maps ---------------------------------------------------------


def matrix_to_json(m: QMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[format_scalar(m.entry(r, c)) for c in range(m.cols)]
                    for r in range(m.rows)],
    }


def matrix_from_json(doc: dict, where: str = "matrix") -> QMatrix:
    rows = _int_field(doc, "rows", where)
    cols = _int_field(doc, "cols", where)
    entries = _require(doc, "entries", where)
    if not isinstance(entries, list) or len(entries) != rows:
        raise InputError(f"{where}.entries: expected {rows} rows")
    data = {}
    for r, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise InputError(f"{where}.entries[{r}]: expected {cols} columns")
        for c, raw in enumerate(row):
            v = parse_scalar(raw)
            if v:
                data[(r, c)] = v
    return QMatrix(rows, cols, data)


# -- representations and modules ------------------------------------------


def representation_to_json(rep: Representation) -> dict:
    rho = []
    for (i, j) in sorted(rep.rho):
        rho.append({
            "pair": [i + 1, j + 1],
            "matrix": [[format_scalar(rep.rho[(i, j)].entry(r, c))
                        for c in range(rep.mod_dim)]
                       for r in range(rep.mod_dim)],
        })
    return {"algDim": rep.alg_dim, "modDim": rep.mod_dim, "rho": rho}


def representation_from_json(doc: dict, where: str = "representation") -> Representation:
    alg_dim = _int_field(doc, "algDim", where)
    mod_dim = _int_field(doc, "modDim", where)
    rho = {}
    for pos, item in enumerate(doc.get("rho", [])):
        spot = f"{where}.rho[{pos}]"
        pair = _require(item, "pair", spot)
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(t, int) for t in pair)):
            raise InputError(f"{spot}.pair: expected two integers")
        matrix = _require(item, "matrix", spot)
        data = {}
        if not isinstance(matrix, list) or len(matrix) != mod_dim:
            raise InputError(f"{spot}.matrix: expected {mod_dim} rows")
        for r, row in enumerate(matrix):
            if not isinstance(row, list) or len(row) != mod_dim:
                raise InputError(f"{spot}.matrix[{r}]: expected {mod_dim} columns")
            for c, raw in enumerate(row):
                v = parse_scalar(raw)
                if v:
                    data[(r, c)] = v
        rho[(pair[0] - 1, pair[1] - 1)] = QMatrix(mod_dim, mod_dim, data)
    return Representation(alg_dim, mod_dim, rho)


def pair_to_json(pair: LieDerPair) -> dict:
    return {"algebra": algebra_to_json(pair.algebra), "phi": matrix_to_json(pair.phi)}


def pair_from_json(doc: dict, where: str = "pair") -> LieDerPair:
    return LieDerPair(
        algebra_from_json(_require(doc, "algebra", where), f"{where}.algebra"),
        matrix_from_json(_require(doc, "phi", where), f"{where}.phi"),
    )


def dermod_to_json(dermod: DerModule) -> dict:
    return {
        "rep": representation_to_json(dermod.rep),
        "phim": matrix_to_json(dermod.phi_m),
    }


def dermod_from_json(doc: dict, where: str = "dermod") -> DerModule:
    return DerModule(
        representation_from_json(_require(doc, "rep", where), f"{where}.rep"),
        matrix_from_json(_require(doc, "phim", where), f"{where}.phim"),
    )


# -- cochains --------------------------------------------------------------


def cochain_to_json(f: Cochain) -> dict:
    pairs = ordered_pairs(f.alg_dim)
    entries = []
    for tup, last in f.index_tuples():
        vec = f.coeff(tup, last)
        if any(vec):
            entries.append({
                "pairs": [[pairs[p][0] + 1, pairs[p][1] + 1] for p in tup],
                "last": last + 1,
                "value": _vec_to_json(vec),
            })
    return {
        "degree": f.degree,
        "algDim": f.alg_dim,
        "modDim": f.mod_dim,
        "entries": entries,
    }


def cochain_from_json(doc: dict, where: str = "cochain") -> Cochain:
    degree = _int_field(doc, "degree", where)
    alg_dim = _int_field(doc, "algDim", where)
    mod_dim = _int_field(doc, "modDim", where)
    if degree < 1:
        raise InputError(f"{where}.degree: must be >= 1")
    ranks = {p: c for c, p in enumerate(ordered_pairs(alg_dim))}
    entries = {}
    for pos, item in enumerate(doc.get("entries", [])):
        spot = f"{where}.entries[{pos}]"
        raw_pairs = _require(item, "pairs", spot)
        if not isinstance(raw_pairs, list) or len(raw_pairs) != degree - 1:
            raise InputError(f"{spot}.pairs: expected {degree - 1} pairs")
        codes = []
        for q, rp in enumerate(raw_pairs):
            if (not isinstance(rp, list) or len(rp) != 2
                    or not all(isinstance(t, int) for t in rp)):
                raise InputError(f"{spot}.pairs[{q}]: expected two integers")
            key = (rp[0] - 1, rp[1] - 1)
            if key not in ranks:
                raise InputError(f"{spot}.pairs[{q}]: pair must be strictly increasing")
            codes.append(ranks[key])
        last = _int_field(item, "last", spot)
        if not 1 <= last <= alg_dim:
            raise InputError(f"{spot}.last: index out of range")
        vec = _vec_from_json(_require(item, "value", spot), mod_dim, f"{spot}.value")
        entries[(tuple(codes), last - 1)] = vec
    return Cochain.from_entries(degree, alg_dim, mod_dim, entries)


def pair_cochain_to_json(pc: PairCochain) -> dict:
    body = {"f": cochain_to_json(pc.f)}
    if pc.fbar is not None:
        body["fbar"] = cochain_to_json(pc.fbar)
    return body


def pair_cochain_from_json(doc: dict, where: str = "pairCochain") -> PairCochain:
    f = cochain_from_json(_require(doc, "f", where), f"{where}.f")
    if "fbar" in doc and doc["fbar"] is not None:
        return PairCochain(f, cochain_from_json(doc["fbar"], f"{where}.fbar"))
    return PairCochain(f)


# -- extensions -------------------------------------------------------------


def extension_to_json(ext: CentralExtension, section: Optional[QMatrix] = None) -> dict:
    body = {
        "base": pair_to_json(ext.base),
        "fiber": dermod_to_json(ext.fiber),
        "total": pair_to_json(ext.total),
        "i": matrix_to_json(ext.incl),
        "p": matrix_to_json(ext.proj),
    }
    if section is not None:
        body["s"] = matrix_to_json(section)
    return body


def extension_from_json(doc: dict, where: str = "extension") -> CentralExtension:
    return CentralExtension(
        base=pair_from_json(_require(doc, "base", where), f"{where}.base"),
        fiber=dermod_from_json(_require(doc, "fiber", where), f"{where}.fiber"),
        total=pair_from_json(_require(doc, "total", where), f"{where}.total"),
        incl=matrix_from_json(_require(doc, "i", where), f"{where}.i"),
        proj=matrix_from_json(_require(doc, "p", where), f"{where}.p"),
    )


# -- deformations ------------------------------------------------------------


def deformation_to_json(defm: Deformation) -> dict:
    return {
        "order": defm.order,
        "mu": [cochain_to_json(m) for m in defm.mu],
        "phi": [matrix_to_json(p) for p in defm.phi],
    }


def deformation_from_json(doc: dict, base: LieDerPair,
                          where: str = "deformation") -> Deformation:
    order = _int_field(doc, "order", where)
    raw_mu = _require(doc, "mu", where)
    raw_phi = _require(doc, "phi", where)
    if not isinstance(raw_mu, list) or not isinstance(raw_phi, list):
        raise InputError(f"{where}: mu and phi must be lists")
    mu = tuple(cochain_from_json(m, f"{where}.mu[{i}]") for i, m in enumerate(raw_mu))
    phi = tuple(matrix_from_json(p, f"{where}.phi[{i}]") for i, p in enumerate(raw_phi))
    return Deformation(base, order, mu, phi)


def formal_iso_to_json(iso: FormalIso) -> dict:
    return {"order": iso.order, "maps": [matrix_to_json(m) for m in iso.maps]}


def formal_iso_from_json(doc: dict, where: str = "iso") -> FormalIso:
    order = _int_field(doc, "order", where)
    raw = _require(doc, "maps", where)
    if not isinstance(raw, list):
        raise InputError(f"{where}.maps: expected a list")
    return FormalIso(order, tuple(
        matrix_from_json(m, f"{where}.maps[{i}]") for i, m in enumerate(raw)))


# -- reports -----------------------------------------------------------------


def violation_to_json(v: Violation) -> dict:
    return {"identity": v.identity, "at": list(v.at), "detail": v.detail}


def validation_report_to_json(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "checked": report.checked,
        "violations": [violation_to_json(v) for v in report.violations],
        "truncated": report.truncated,
    }


def cohomology_report_to_json(report: CohomologyReport) -> dict:
    body = {
        "degree": report.degree,
        "dimC": report.dim_c,
        "dimNext": report.dim_next,
        "rankPrev": report.rank_prev,
        "rankCurr": report.rank_curr,
        "betti": report.betti,
    }
    if report.representatives is not None:
        body["representatives"] = [pair_cochain_to_json(pc)
                                   for pc in report.representatives]
    return body
