"""Shared fixtures and randomized-data generators for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache

from trider.cochains import Cochain, PairCochain, bracket_cochain, ordered_pairs
from trider.cohomology import (
    matrix_of_pair_d,
    kernel_basis,
    pair_cochain_to_vec,
    pair_dim,
    vec_to_pair_cochain,
)
from trider.core import (
    DerModule,
    LieDerPair,
    ThreeLieAlgebra,
    adjoint_module,
    trivial_rep,
)
from trider.linalg import QMatrix

ZERO = Fraction(0)
ONE = Fraction(1)


# -- fixture algebras ------------------------------------------------------


def abelian(n: int) -> ThreeLieAlgebra:
    return ThreeLieAlgebra.abelian(n)


def algebra_d4() -> ThreeLieAlgebra:
    """dim 4, single bracket [e1,e2,e3] = e4."""
    return ThreeLieAlgebra(4, {(0, 1, 2): (0, 0, 0, 1)})


def algebra_d3() -> ThreeLieAlgebra:
    """dim 3, [e1,e2,e3] = e1."""
    return ThreeLieAlgebra(3, {(0, 1, 2): (1, 0, 0)})


def algebra_simple4() -> ThreeLieAlgebra:
    """The euclidean cross-product 3-fold on dim 4."""
    return ThreeLieAlgebra(4, {
        (0, 1, 2): (0, 0, 0, 1),
        (0, 1, 3): (0, 0, -1, 0),
        (0, 2, 3): (0, 1, 0, 0),
        (1, 2, 3): (-1, 0, 0, 0),
    })


def algebra_invalid4() -> ThreeLieAlgebra:
    """dim 4 table failing the fundamental identity (oracle-certified):
    [e1,e2,e3] = e4 and [e1,e2,e4] = e1."""
    return ThreeLieAlgebra(4, {(0, 1, 2): (0, 0, 0, 1), (0, 1, 3): (1, 0, 0, 0)})


def diag(*values) -> QMatrix:
    return QMatrix(len(values), len(values),
                   {(i, i): Fraction(v) for i, v in enumerate(values) if v})


def pair_d4_diag() -> LieDerPair:
    return LieDerPair(algebra_d4(), diag(1, 1, 1, 3))


def pair_d4_zero() -> LieDerPair:
    return LieDerPair(algebra_d4(), QMatrix.zero(4, 4))


def pair_d3() -> LieDerPair:
    return LieDerPair(algebra_d3(), diag(0, 1, -1))


def pair_ab2() -> LieDerPair:
    return LieDerPair(abelian(2), QMatrix.zero(2, 2))


def pair_ab2_diag() -> LieDerPair:
    return LieDerPair(abelian(2), diag(1, 2))


def pair_ab3() -> LieDerPair:
    return LieDerPair(abelian(3), QMatrix.zero(3, 3))


def pair_ab4() -> LieDerPair:
    return LieDerPair(abelian(4), QMatrix.zero(4, 4))


def pair_simple4() -> LieDerPair:
    """Simple algebra with the inner derivation ad(e1, e2)."""
    return LieDerPair(algebra_simple4(),
                      QMatrix.from_rows([[0, 0, 0, 0], [0, 0, 0, 0],
                                         [0, 0, 0, -1], [0, 0, 1, 0]]))


def acceptance_pairs() -> list[tuple[str, LieDerPair]]:
    """The named desk-scale fixtures."""
    return [
        ("abelian2", pair_ab2()),
        ("abelian3", pair_ab3()),
        ("abelian4", pair_ab4()),
        ("d4-diag", pair_d4_diag()),
        ("d4-zero", pair_d4_zero()),
        ("abelian2-diag", pair_ab2_diag()),
        ("d3-diag", pair_d3()),
        ("simple4-inner", pair_simple4()),
    ]


def trivial_module(pair: LieDerPair, mod_dim: int = 1,
                   phi_m: QMatrix | None = None) -> DerModule:
    if phi_m is None:
        phi_m = QMatrix.zero(mod_dim, mod_dim)
    return DerModule(trivial_rep(pair.algebra.dim, mod_dim), phi_m)


def coefficient_systems(pair: LieDerPair) -> list[tuple[str, DerModule]]:
    """Trivial (two flavours) and adjoint coefficients for a pair."""
    return [
        ("trivial-m1", trivial_module(pair, 1)),
        ("trivial-m1-scaled", trivial_module(pair, 1, diag(3))),
        ("trivial-m2", trivial_module(pair, 2, diag(1, 2))),
        ("adjoint", adjoint_module(pair)),
    ]


# -- randomized data --------------------------------------------------------


def rand_fraction(rng: random.Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice((1, 1, 2)))


def rand_matrix(rng: random.Random, rows: int, cols: int, span: int = 3) -> QMatrix:
    data = {}
    for r in range(rows):
        for c in range(cols):
            v = rand_fraction(rng, span)
            if v:
                data[(r, c)] = v
    return QMatrix(rows, cols, data)


def rand_invertible(rng: random.Random, n: int) -> QMatrix:
    """Unit lower-triangular times unit upper-triangular: det = 1."""
    low = {(i, i): ONE for i in range(n)}
    up = {(i, i): ONE for i in range(n)}
    for i in range(n):
        for j in range(i):
            v = rand_fraction(rng, 2)
            if v:
                low[(i, j)] = v
            w = rand_fraction(rng, 2)
            if w:
                up[(j, i)] = w
    return QMatrix(n, n, low) @ QMatrix(n, n, up)


def rand_cochain(rng: random.Random, degree: int, alg_dim: int, mod_dim: int,
                 span: int = 3) -> Cochain:
    D = len(ordered_pairs(alg_dim))
    size = (D ** (degree - 1)) * alg_dim
    table = tuple(
        tuple(rand_fraction(rng, span) for _ in range(mod_dim))
        for _ in range(size))
    return Cochain(degree, alg_dim, mod_dim, table)


def rand_alternating(rng: random.Random, alg_dim: int, mod_dim: int,
                     span: int = 3) -> Cochain:
    table = {}
    for triple in itertools.combinations(range(alg_dim), 3):
        vec = tuple(rand_fraction(rng, span) for _ in range(mod_dim))
        if any(vec):
            table[triple] = vec
    return Cochain.from_alternating(alg_dim, mod_dim, table)


def rand_pair_cochain(rng: random.Random, degree: int, alg_dim: int,
                      mod_dim: int) -> PairCochain:
    if degree == 1:
        return PairCochain(rand_cochain(rng, 1, alg_dim, mod_dim))
    return PairCochain(rand_cochain(rng, degree, alg_dim, mod_dim),
                       rand_cochain(rng, degree - 1, alg_dim, mod_dim))


def transported_algebra(rng: random.Random, alg: ThreeLieAlgebra) -> ThreeLieAlgebra:
    """Push the bracket through a random basis change (stays valid)."""
    n = alg.dim
    t = rand_invertible(rng, n)
    tinv_rows = []
    from trider.linalg import solve
    for k in range(n):
        unit = [ONE if i == k else ZERO for i in range(n)]
        tinv_rows.append(list(solve(t, unit)))
    # columns of t_inv are the solutions
    tinv = QMatrix(n, n, {(r, c): tinv_rows[c][r]
                          for c in range(n) for r in range(n)})
    cols = [t.column(i) for i in range(n)]
    constants = {}
    for i, j, k in itertools.combinations(range(n), 3):
        vec = tinv.apply(alg.bracket(cols[i], cols[j], cols[k]))
        if any(vec):
            constants[(i, j, k)] = vec
    return ThreeLieAlgebra(n, constants)


# -- cocycle samplers ---------------------------------------------------------


def alternating_units(alg_dim: int, mod_dim: int) -> list[PairCochain]:
    """Unit pair cochains with alternating f-part and zero fbar, followed
    by unit fbar (linear-map) cochains."""
    units = []
    for triple in itertools.combinations(range(alg_dim), 3):
        for a in range(mod_dim):
            vec = tuple(ONE if r == a else ZERO for r in range(mod_dim))
            units.append(PairCochain(
                Cochain.from_alternating(alg_dim, mod_dim, {triple: vec})))
    for a in range(mod_dim):
        for b in range(alg_dim):
            units.append(PairCochain(
                Cochain.zero(2, alg_dim, mod_dim),
                Cochain.from_linear_map(QMatrix(mod_dim, alg_dim, {(a, b): ONE}))))
    return units


def constrained_cocycle_basis(pair: LieDerPair, dermod: DerModule):
    """Basis (as PairCochains) of degree-2 pair cocycles whose f-part is
    totally antisymmetric."""
    n, m = pair.algebra.dim, dermod.rep.mod_dim
    d2 = matrix_of_pair_d(pair, dermod, 2)
    units = alternating_units(n, m)
    cols = [d2.apply(pair_cochain_to_vec(u)) for u in units]
    system = QMatrix(d2.rows, len(cols),
                     {(r, c): v for c, col in enumerate(cols)
                      for r, v in enumerate(col) if v})
    basis = []
    for vec in kernel_basis(system):
        acc = PairCochain.zero(2, n, m)
        for coeff, u in zip(vec, units):
            if coeff:
                acc = acc + u.scale(coeff)
        basis.append(acc)
    return basis


def sample_cocycle(rng: random.Random, basis: list[PairCochain],
                   alg_dim: int, mod_dim: int, span: int = 2) -> PairCochain:
    acc = PairCochain.zero(2, alg_dim, mod_dim)
    for element in basis:
        c = Fraction(rng.randint(-span, span))
        if c:
            acc = acc + element.scale(c)
    return acc
