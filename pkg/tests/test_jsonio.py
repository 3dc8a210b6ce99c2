import json
from fractions import Fraction

import pytest

from helpers import (
    algebra_d4,
    constrained_cocycle_basis,
    diag,
    pair_d3,
    pair_d4_diag,
    rand_alternating,
    rand_cochain,
    rand_matrix,
    rand_pair_cochain,
    sample_cocycle,
    trivial_module,
)
from trider import jsonio
from trider.cochains import Cochain, PairCochain
from trider.core import DerModule, adjoint_module, adjoint_rep, trivial_rep
from trider.deformations import Deformation, FormalIso
from trider.errors import InputError
from trider.extensions import build_central_extension
from trider.linalg import QMatrix


def test_document_wrapper_requires_format_field():
    assert json.loads(jsonio.dump_document({"x": 1}))["format"] == 1
    with pytest.raises(InputError):
        jsonio.load_document(json.dumps({"x": 1}))
    with pytest.raises(InputError):
        jsonio.load_document("not json at all {")
    with pytest.raises(InputError):
        jsonio.load_document(json.dumps([1, 2]))


def test_algebra_round_trip_and_defaults():
    alg = algebra_d4()
    doc = jsonio.algebra_to_json(alg)
    assert doc["brackets"][0]["triple"] == [1, 2, 3]
    assert doc["brackets"][0]["value"] == {"4": "1"}
    back = jsonio.algebra_from_json(doc)
    assert back == alg
    # omitted brackets and coefficients default to zero
    assert jsonio.algebra_from_json({"dim": 3}) == type(alg).abelian(3)


def test_algebra_schema_violations_name_the_field():
    with pytest.raises(InputError, match="dim"):
        jsonio.algebra_from_json({})
    with pytest.raises(InputError, match="triple"):
        jsonio.algebra_from_json({"dim": 3, "brackets": [{"value": {}}]})
    with pytest.raises(InputError, match="value"):
        jsonio.algebra_from_json({"dim": 3, "brackets": [
            {"triple": [1, 2, 3], "value": {"9": "1"}}]})
    with pytest.raises(InputError, match="rational"):
        jsonio.algebra_from_json({"dim": 3, "brackets": [
            {"triple": [1, 2, 3], "value": {"1": 1.5}}]})


def test_matrix_round_trip(rng):
    m = rand_matrix(rng, 3, 5)
    assert jsonio.matrix_from_json(jsonio.matrix_to_json(m)) == m


def test_representation_round_trip():
    rep = adjoint_rep(algebra_d4())
    back = jsonio.representation_from_json(jsonio.representation_to_json(rep))
    assert back == rep
    triv = trivial_rep(4, 2)
    assert jsonio.representation_from_json(
        jsonio.representation_to_json(triv)) == triv


def test_pair_and_dermod_round_trip():
    pair = pair_d4_diag()
    assert jsonio.pair_from_json(jsonio.pair_to_json(pair)) == pair
    dermod = trivial_module(pair, 2, diag(1, 2))
    assert jsonio.dermod_from_json(jsonio.dermod_to_json(dermod)) == dermod


def test_cochain_round_trip(rng):
    for degree in (1, 2, 3):
        f = rand_cochain(rng, degree, 3, 2)
        assert jsonio.cochain_from_json(jsonio.cochain_to_json(f)) == f


def test_pair_cochain_round_trip(rng):
    for degree in (1, 2):
        pc = rand_pair_cochain(rng, degree, 3, 2)
        back = jsonio.pair_cochain_from_json(jsonio.pair_cochain_to_json(pc))
        assert back.f == pc.f and back.fbar == pc.fbar


def test_cochain_rejects_unsorted_pairs():
    with pytest.raises(InputError, match="strictly increasing"):
        jsonio.cochain_from_json({
            "degree": 2, "algDim": 3, "modDim": 1,
            "entries": [{"pairs": [[2, 1]], "last": 1, "value": {"1": "1"}}],
        })


def test_extension_round_trip(rng):
    pair = pair_d3()
    fiber = trivial_module(pair, 1, diag(2))
    basis = constrained_cocycle_basis(pair, fiber)
    pc = sample_cocycle(rng, basis, 3, 1)
    ext = build_central_extension(pair, fiber, pc.f, pc.fbar.to_linear_map())
    doc = jsonio.extension_to_json(ext, section=ext.canonical_section())
    back = jsonio.extension_from_json(doc)
    assert back == ext


def test_deformation_round_trip(rng):
    pair = pair_d3()
    mu1 = rand_alternating(rng, 3, 3)
    defm = Deformation(pair, 2, (mu1, Cochain.zero(2, 3, 3)),
                       (rand_matrix(rng, 3, 3), QMatrix.zero(3, 3)))
    doc = jsonio.deformation_to_json(defm)
    back = jsonio.deformation_from_json(doc, pair)
    assert back.mu == defm.mu and back.phi == defm.phi


def test_formal_iso_round_trip(rng):
    iso = FormalIso(2, (rand_matrix(rng, 3, 3), rand_matrix(rng, 3, 3)))
    assert jsonio.formal_iso_from_json(jsonio.formal_iso_to_json(iso)) == iso


def test_emitted_documents_are_deterministic(rng):
    pair = pair_d4_diag()
    doc1 = jsonio.dump_document(jsonio.pair_to_json(pair))
    doc2 = jsonio.dump_document(jsonio.pair_to_json(pair_d4_diag()))
    assert doc1 == doc2
