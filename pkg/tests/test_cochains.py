import itertools
import random
from fractions import Fraction

import pytest

from helpers import (
    abelian,
    algebra_d3,
    algebra_d4,
    algebra_invalid4,
    algebra_simple4,
    diag,
    pair_d3,
    pair_d4_diag,
    pair_d4_zero,
    rand_alternating,
    rand_cochain,
    rand_fraction,
    rand_matrix,
    rand_pair_cochain,
    trivial_module,
)
from oracles import oracle_d1_adjoint, oracle_d2_adjoint
from trider.cochains import (
    Cochain,
    PairCochain,
    alternating_table,
    bracket,
    bracket_cochain,
    circ,
    d,
    delta,
    is_fully_antisymmetric,
    ordered_pairs,
    pair_d,
    pair_rank,
)
from trider.core import (
    DerModule,
    LieDerPair,
    adjoint_module,
    adjoint_rep,
    trivial_rep,
    validate_3lie,
)
from trider.errors import InputError
from trider.linalg import QMatrix

MINUS = Fraction(-1)


# -- evaluation ---------------------------------------------------------------


def test_zero_cochain_evaluates_to_zero(rng):
    f = Cochain.zero(2, 4, 2)
    x = tuple(rand_fraction(rng) for _ in range(4))
    y = tuple(rand_fraction(rng) for _ in range(4))
    z = tuple(rand_fraction(rng) for _ in range(4))
    assert f.eval([(x, y)], z) == (0, 0)


def test_basis_evaluation_returns_stored_coefficient(rng):
    f = rand_cochain(rng, 2, 4, 2)
    ranks = pair_rank(4)
    for (i, j), code in ranks.items():
        for ell in range(4):
            ei = tuple(Fraction(int(a == i)) for a in range(4))
            ej = tuple(Fraction(int(a == j)) for a in range(4))
            el = tuple(Fraction(int(a == ell)) for a in range(4))
            assert f.eval([(ei, ej)], el) == f.coeff((code,), ell)


def test_repeated_vector_in_pair_slot_gives_zero(rng):
    f = rand_cochain(rng, 3, 3, 1)
    x = tuple(rand_fraction(rng) for _ in range(3))
    y = tuple(rand_fraction(rng) for _ in range(3))
    z = tuple(rand_fraction(rng) for _ in range(3))
    assert f.eval([(x, x), (y, z)], z) == (Fraction(0),)


def test_eval_arity_mismatch_is_input_error(rng):
    f = rand_cochain(rng, 2, 3, 1)
    with pytest.raises(InputError):
        f.eval([], (Fraction(1),) * 3)


def test_full_antisymmetry_detection(rng):
    good = rand_alternating(rng, 4, 2)
    assert is_fully_antisymmetric(good)
    bad = rand_cochain(rng, 2, 4, 2)
    # a generic pair-antisymmetric table is not alternating
    assert not is_fully_antisymmetric(bad)
    rebuilt = Cochain.from_alternating(4, 2, alternating_table(good))
    assert rebuilt == good


# -- coboundary d ---------------------------------------------------------------


def test_d_of_zero_cochain_is_zero():
    alg = algebra_d4()
    rep = adjoint_rep(alg)
    assert d(alg, rep, Cochain.zero(2, 4, 4)).is_zero()


def test_trivial_rep_degree1_coboundary_is_minus_composition(rng):
    alg = algebra_d4()
    rep = trivial_rep(4, 2)
    chi = rand_matrix(rng, 2, 4)
    df = d(alg, rep, Cochain.from_linear_map(chi))
    ranks = pair_rank(4)
    for (i, j), code in ranks.items():
        for ell in range(4):
            expected = tuple(-v for v in chi.apply(alg.bracket_basis(i, j, ell)))
            assert df.coeff((code,), ell) == expected


def test_d_squared_vanishes_on_random_cochains(rng):
    cases = [
        (algebra_d4(), adjoint_rep(algebra_d4())),
        (algebra_d4(), trivial_rep(4, 2)),
        (algebra_d3(), adjoint_rep(algebra_d3())),
        (algebra_simple4(), adjoint_rep(algebra_simple4())),
    ]
    for alg, rep in cases:
        for degree in (1, 2):
            f = rand_cochain(rng, degree, alg.dim, rep.mod_dim)
            assert d(alg, rep, d(alg, rep, f)).is_zero()


def test_d_matches_handwritten_adjoint_d1(rng):
    for alg in (algebra_d4(), algebra_simple4()):
        n = alg.dim
        mat = rand_matrix(rng, n, n)
        f = Cochain.from_linear_map(mat)
        df = d(alg, adjoint_rep(alg), f)
        fmap = {i: mat.column(i) for i in range(n)}
        oracle = oracle_d1_adjoint(alg, fmap)
        ranks = pair_rank(n)
        for (i, j), code in ranks.items():
            for ell in range(n):
                assert df.coeff((code,), ell) == oracle[(i, j, ell)]


def test_d_matches_handwritten_adjoint_d2(rng):
    for alg in (algebra_d4(), algebra_d3()):
        n = alg.dim
        f = rand_cochain(rng, 2, n, n)

        def f2(x, y, z, _f=f):
            return _f.eval([(x, y)], z)

        df = d(alg, adjoint_rep(alg), f)
        oracle = oracle_d2_adjoint(alg, f2)
        pairs = ordered_pairs(n)
        ranks = pair_rank(n)
        for (a, b) in pairs:
            for (c, dd) in pairs:
                for ee in range(n):
                    got = df.coeff((ranks[(a, b)], ranks[(c, dd)]), ee)
                    assert got == oracle[(a, b, c, dd, ee)]


# -- derivation twist delta -------------------------------------------------------


def test_delta_degree1_is_twisted_commutator(rng):
    pair = pair_d4_diag()
    dermod = trivial_module(pair, 2, diag(1, 2))
    mat = rand_matrix(rng, 2, 4)
    tw = delta(pair, dermod, Cochain.from_linear_map(mat))
    expected = mat @ pair.phi - dermod.phi_m @ mat
    assert tw.to_linear_map() == expected


def test_delta_vanishes_for_zero_derivations(rng):
    pair = pair_d4_zero()
    dermod = trivial_module(pair, 1)
    f = rand_cochain(rng, 2, 4, 1)
    assert delta(pair, dermod, f).is_zero()


def test_d_and_delta_commute(rng):
    cases = [
        (pair_d4_diag(), adjoint_module(pair_d4_diag())),
        (pair_d4_diag(), trivial_module(pair_d4_diag(), 2, diag(1, 2))),
        (pair_d3(), adjoint_module(pair_d3())),
    ]
    for pair, dermod in cases:
        alg, rep = pair.algebra, dermod.rep
        for degree in (1, 2):
            f = rand_cochain(rng, degree, alg.dim, rep.mod_dim)
            assert d(alg, rep, delta(pair, dermod, f)) == \
                delta(pair, dermod, d(alg, rep, f))


# -- pair differential -------------------------------------------------------------


def test_pair_d_of_zero_is_zero():
    pair = pair_d4_diag()
    dermod = adjoint_module(pair)
    assert pair_d(pair, dermod, PairCochain.zero(2, 4, 4)).is_zero()


def test_pair_d_squared_vanishes(rng):
    cases = [
        (pair_d4_diag(), adjoint_module(pair_d4_diag())),
        (pair_d4_diag(), trivial_module(pair_d4_diag(), 1, diag(3))),
        (pair_d3(), adjoint_module(pair_d3())),
    ]
    for pair, dermod in cases:
        for degree in (1, 2):
            pc = rand_pair_cochain(rng, degree, pair.algebra.dim,
                                   dermod.rep.mod_dim)
            assert pair_d(pair, dermod, pair_d(pair, dermod, pc)).is_zero()


def test_degree1_rule_is_d_and_minus_delta(rng):
    pair = pair_d3()
    dermod = adjoint_module(pair)
    f = rand_cochain(rng, 1, 3, 3)
    out = pair_d(pair, dermod, PairCochain(f))
    assert out.f == d(pair.algebra, dermod.rep, f)
    assert out.fbar == delta(pair, dermod, f).scale(MINUS)


# -- graded bracket ------------------------------------------------------------------


def test_circ_with_zero_is_zero(rng):
    f = rand_cochain(rng, 2, 3, 3)
    z = Cochain.zero(2, 3, 3)
    assert circ(f, z).is_zero()
    assert circ(z, f).is_zero()


def test_circ_requires_self_coefficients(rng):
    f = rand_cochain(rng, 2, 3, 2)
    with pytest.raises(InputError):
        circ(f, f)


def test_maurer_cartan_iff_fundamental_identity(rng):
    valid = [abelian(3), algebra_d4(), algebra_d3(), algebra_simple4()]
    for alg in valid:
        mu = bracket_cochain(alg)
        assert bracket(mu, mu).is_zero()
    bad = algebra_invalid4()
    mu = bracket_cochain(bad)
    assert not validate_3lie(bad.constants, bad.dim).ok
    assert not bracket(mu, mu).is_zero()


def test_d_is_signed_bracket_with_mu(rng):
    for alg in (algebra_d4(), algebra_d3()):
        rep = adjoint_rep(alg)
        mu = bracket_cochain(alg)
        for degree in (1, 2, 3):
            f = rand_cochain(rng, degree, alg.dim, alg.dim)
            expected = bracket(mu, f)
            if degree % 2 == 1:
                expected = expected.scale(MINUS)
            assert d(alg, rep, f) == expected


def test_bracket_of_degree2_with_itself_is_twice_circ(rng):
    f = rand_cochain(rng, 2, 3, 3)
    assert bracket(f, f) == circ(f, f) + circ(f, f)


def test_graded_antisymmetry(rng):
    for deg_f, deg_g in ((1, 2), (2, 2), (2, 3), (1, 3)):
        f = rand_cochain(rng, deg_f, 3, 3)
        g = rand_cochain(rng, deg_g, 3, 3)
        m, n = deg_f - 1, deg_g - 1
        lhs = bracket(f, g)
        rhs = bracket(g, f)
        if (m * n) % 2 == 0:
            rhs = rhs.scale(MINUS)
        assert lhs == rhs


def test_graded_jacobi_on_small_degrees(rng):
    cases = [(1, 1, 2), (1, 2, 2), (2, 2, 2)]
    for deg_f, deg_g, deg_h in cases:
        f = rand_cochain(rng, deg_f, 3, 3, span=2)
        g = rand_cochain(rng, deg_g, 3, 3, span=2)
        h = rand_cochain(rng, deg_h, 3, 3, span=2)
        m, n = deg_f - 1, deg_g - 1
        lhs = bracket(f, bracket(g, h))
        rhs = bracket(bracket(f, g), h)
        tail = bracket(g, bracket(f, h))
        if (m * n) % 2 == 1:
            tail = tail.scale(MINUS)
        assert lhs == rhs + tail


def test_delta_is_bracket_with_phi_for_self_coefficients(rng):
    # The achievable sign: delta f = +[phi, f].  The opposite sign would
    # contradict d f = (-1)^n [mu, f], which the acceptance suite pins.
    pair = pair_d4_diag()
    dermod = adjoint_module(pair)
    phi_c = Cochain.from_linear_map(pair.phi)
    for degree in (1, 2, 3):
        f = rand_cochain(rng, degree, 4, 4)
        assert delta(pair, dermod, f) == bracket(phi_c, f)


def test_degree_cap_is_enforced(rng):
    alg = abelian(2)
    rep = adjoint_rep(alg)
    f5 = Cochain.zero(5, 2, 2)
    with pytest.raises(InputError):
        d(alg, rep, f5)
    with pytest.raises(InputError):
        circ(rand_cochain(rng, 4, 2, 2), rand_cochain(rng, 3, 2, 2))
