"""Differentials as exact rational matrices; kernels, ranks, cohomology
dimensions, cocycle and coboundary tests.

Coefficient vectors follow the canonical basis order of the cochain
tables: flat tuple index (pair codes lexicographic, then final basis
index) times the module coordinate.  A pair cochain is the f-block
followed by the fbar-block.  The pair complex starts at
C^1 = Hom(L, M) with C^0 = 0, so the degree-0 differential is the zero
map from the zero space and H^1 is the kernel of the degree-1 matrix.

The plain 3-Lie complex (f-block only, no derivation twist) is exposed
separately; central-extension theory lives in the pair complex while
the derivation-extension obstructions live in the plain one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cochains import (
    DEGREE_CAP,
    Cochain,
    PairCochain,
    _d_contributions,
    _delta_contributions,
    d,
    delta,
    ordered_pairs,
    pair_d,
    pair_rank,
)
from .core import DerModule, LieDerPair, Representation, ThreeLieAlgebra
from .errors import InputError
from .linalg import QMatrix, kernel_basis, rank, solve  # noqa: F401  (re-exported)
from .linalg import RowSpace, block
from .rationals import ONE, ZERO


def cochain_dim(alg_dim: int, mod_dim: int, degree: int) -> int:
    """Dimension of C^degree; degree 0 is the zero space."""
    if degree <= 0:
        return 0
    D = len(ordered_pairs(alg_dim))
    return (D ** (degree - 1)) * alg_dim * mod_dim


def pair_dim(alg_dim: int, mod_dim: int, degree: int) -> int:
    """Dimension of the degree-n group of the pair complex."""
    if degree <= 0:
        return 0
    if degree == 1:
        return cochain_dim(alg_dim, mod_dim, 1)
    return cochain_dim(alg_dim, mod_dim, degree) + cochain_dim(alg_dim, mod_dim, degree - 1)


# -- coefficient vectors ------------------------------------------------


def cochain_to_vec(f: Cochain) -> tuple[Fraction, ...]:
    return tuple(v for vec in f.coeffs for v in vec)


def vec_to_cochain(degree: int, alg_dim: int, mod_dim: int,
                   vec: Sequence[Fraction]) -> Cochain:
    size = cochain_dim(alg_dim, mod_dim, degree)
    if len(vec) != size:
        raise InputError(f"coefficient vector has length {len(vec)}, expected {size}")
    it = iter(vec)
    table = tuple(tuple(next(it) for _ in range(mod_dim))
                  for _ in range(size // mod_dim))
    return Cochain(degree, alg_dim, mod_dim, table)


def pair_cochain_to_vec(pc: PairCochain) -> tuple[Fraction, ...]:
    head = cochain_to_vec(pc.f)
    if pc.fbar is None:
        return head
    return head + cochain_to_vec(pc.fbar)


def vec_to_pair_cochain(degree: int, alg_dim: int, mod_dim: int,
                        vec: Sequence[Fraction]) -> PairCochain:
    size = pair_dim(alg_dim, mod_dim, degree)
    if len(vec) != size:
        raise InputError(f"pair coefficient vector has length {len(vec)}, expected {size}")
    head = cochain_dim(alg_dim, mod_dim, degree)
    f = vec_to_cochain(degree, alg_dim, mod_dim, vec[:head])
    if degree == 1:
        return PairCochain(f)
    fbar = vec_to_cochain(degree - 1, alg_dim, mod_dim, vec[head:])
    return PairCochain(f, fbar)


# -- matrices of the differentials ---------------------------------------


def _check_matrix_degree(degree: int) -> None:
    if not 1 <= degree <= DEGREE_CAP:
        raise InputError(f"degree out of range: {degree} (supported 1..{DEGREE_CAP})")


def matrix_of_d(alg: ThreeLieAlgebra, rep: Representation, degree: int) -> QMatrix:
    """Matrix of d: C^degree -> C^(degree+1) in the canonical bases."""
    _check_matrix_degree(degree)
    n_alg, m = alg.dim, rep.mod_dim
    rows = cochain_dim(n_alg, m, degree + 1)
    cols = cochain_dim(n_alg, m, degree)
    pairs = ordered_pairs(n_alg)
    ranks = pair_rank(n_alg)
    D = len(pairs)
    data: dict[tuple[int, int], Fraction] = {}
    row_tuple = 0
    for out_pairs in itertools.product(range(D), repeat=degree):
        for out_last in range(n_alg):
            base_row = row_tuple * m
            for in_pairs, in_last, w, rho in _d_contributions(
                    alg, rep, degree, out_pairs, out_last, pairs, ranks):
                flat = 0
                for p in in_pairs:
                    flat = flat * D + p
                base_col = (flat * n_alg + in_last) * m
                if rho is None:
                    for a in range(m):
                        key = (base_row + a, base_col + a)
                        val = data.get(key, ZERO) + w
                        if val:
                            data[key] = val
                        elif key in data:
                            del data[key]
                else:
                    for (a, b), rv in rho.data.items():
                        key = (base_row + a, base_col + b)
                        val = data.get(key, ZERO) + w * rv
                        if val:
                            data[key] = val
                        elif key in data:
                            del data[key]
            row_tuple += 1
    return QMatrix(rows, cols, data)


def matrix_of_delta(pair: LieDerPair, dermod: DerModule, degree: int) -> QMatrix:
    """Matrix of the derivation twist on C^degree (square)."""
    _check_matrix_degree(degree)
    alg = pair.algebra
    n_alg, m = alg.dim, dermod.rep.mod_dim
    size = cochain_dim(n_alg, m, degree)
    pairs = ordered_pairs(n_alg)
    ranks = pair_rank(n_alg)
    D = len(pairs)
    phi, phi_m = pair.phi, dermod.phi_m
    data: dict[tuple[int, int], Fraction] = {}
    row_tuple = 0
    for out_pairs in itertools.product(range(D), repeat=degree - 1):
        for out_last in range(n_alg):
            base_row = row_tuple * m
            for in_pairs, in_last, w in _delta_contributions(
                    phi, degree, out_pairs, out_last, pairs, ranks):
                flat = 0
                for p in in_pairs:
                    flat = flat * D + p
                base_col = (flat * n_alg + in_last) * m
                for a in range(m):
                    key = (base_row + a, base_col + a)
                    val = data.get(key, ZERO) + w
                    if val:
                        data[key] = val
                    elif key in data:
                        del data[key]
            # -phi_M applied after f
            for (a, b), v in phi_m.data.items():
                key = (base_row + a, row_tuple * m + b)
                val = data.get(key, ZERO) - v
                if val:
                    data[key] = val
                elif key in data:
                    del data[key]
            row_tuple += 1
    return QMatrix(size, size, data)


def matrix_of_pair_d(pair: LieDerPair, dermod: DerModule, degree: int) -> QMatrix:
    """Matrix of the pair differential C^n_pair -> C^(n+1)_pair.

    Block structure (column order: f-block then fbar-block):

        [ d_n        0      ]
        [ (-1)^n dl  d_(n-1) ]
    """
    _check_matrix_degree(degree)
    alg, rep = pair.algebra, dermod.rep
    n_alg, m = alg.dim, rep.mod_dim
    d_n = matrix_of_d(alg, rep, degree)
    dl = matrix_of_delta(pair, dermod, degree)
    if degree % 2 == 1:
        dl = -dl
    dim_f = cochain_dim(n_alg, m, degree)
    dim_fbar = cochain_dim(n_alg, m, degree - 1)
    if degree == 1:
        return block([[d_n], [dl]], [d_n.rows, dl.rows], [dim_f])
    d_prev = matrix_of_d(alg, rep, degree - 1)
    return block(
        [[d_n, None], [dl, d_prev]],
        [d_n.rows, dl.rows],
        [dim_f, dim_fbar],
    )


# -- reports -------------------------------------------------------------


@dataclass(frozen=True)
class CohomologyReport:
    degree: int
    dim_c: int
    dim_next: int
    rank_prev: int
    rank_curr: int
    betti: int
    representatives: Optional[tuple[PairCochain, ...]] = None


def betti(pair: LieDerPair, dermod: DerModule, degree: int,
          representatives: bool = False) -> CohomologyReport:
    """dim H^degree of the pair complex (and optional representatives).

    betti = nullity(d^n) - rank(d^(n-1)) with the degree-0 differential
    the zero map from the zero space.  Representatives span a complement
    of the coboundaries inside the cocycles; no canonical form is
    claimed.
    """
    _check_matrix_degree(degree)
    alg, rep = pair.algebra, dermod.rep
    n_alg, m = alg.dim, rep.mod_dim
    curr = matrix_of_pair_d(pair, dermod, degree)
    dim_c = pair_dim(n_alg, m, degree)
    prev = matrix_of_pair_d(pair, dermod, degree - 1) if degree >= 2 else None
    rank_prev = rank(prev) if prev is not None else 0
    kernel = kernel_basis(curr)
    value = len(kernel) - rank_prev
    reps: Optional[tuple[PairCochain, ...]] = None
    if representatives:
        space = RowSpace(dim_c)
        if prev is not None:
            for c in range(prev.cols):
                space.insert(prev.column(c))
        chosen = []
        for vec in kernel:
            if space.insert(vec):
                chosen.append(vec_to_pair_cochain(degree, n_alg, m, vec))
        if len(chosen) != value:
            raise AssertionError("representative extraction disagrees with betti")
        reps = tuple(chosen)
    return CohomologyReport(
        degree=degree,
        dim_c=dim_c,
        dim_next=pair_dim(n_alg, m, degree + 1),
        rank_prev=rank_prev,
        rank_curr=rank(curr),
        betti=value,
        representatives=reps,
    )


# -- cocycles and coboundaries --------------------------------------------


def is_cocycle(pair: LieDerPair, dermod: DerModule, pc: PairCochain) -> bool:
    return pair_d(pair, dermod, pc).is_zero()


def is_coboundary(pair: LieDerPair, dermod: DerModule,
                  pc: PairCochain) -> Optional[PairCochain]:
    """A preimage under the pair differential, or None.

    Degree-1 cochains are never coboundaries (the complex starts at 0),
    so degree >= 2 is required.
    """
    if pc.degree < 2:
        raise InputError("degree out of range: coboundaries start at degree 2")
    _check_matrix_degree(pc.degree - 1)
    alg, rep = pair.algebra, dermod.rep
    if pc.alg_dim != alg.dim or pc.mod_dim != rep.mod_dim:
        raise InputError("cochain does not match pair/module dimensions")
    m = matrix_of_pair_d(pair, dermod, pc.degree - 1)
    sol = solve(m, pair_cochain_to_vec(pc))
    if sol is None:
        return None
    return vec_to_pair_cochain(pc.degree - 1, alg.dim, rep.mod_dim, sol)


def cohomologous(pair: LieDerPair, dermod: DerModule, pc1: PairCochain,
                 pc2: PairCochain) -> Optional[PairCochain]:
    """Witness v with pc1 - pc2 = d v, or None."""
    return is_coboundary(pair, dermod, pc1 - pc2)


# -- plain 3-Lie complex ---------------------------------------------------


def plain_is_cocycle(alg: ThreeLieAlgebra, rep: Representation, f: Cochain) -> bool:
    return d(alg, rep, f).is_zero()


def plain_is_coboundary(alg: ThreeLieAlgebra, rep: Representation,
                        f: Cochain) -> Optional[Cochain]:
    """Preimage under d in the plain complex (degree >= 2), or None."""
    if f.degree < 2:
        raise InputError("degree out of range: coboundaries start at degree 2")
    _check_matrix_degree(f.degree - 1)
    m = matrix_of_d(alg, rep, f.degree - 1)
    sol = solve(m, cochain_to_vec(f))
    if sol is None:
        return None
    return vec_to_cochain(f.degree - 1, alg.dim, rep.mod_dim, sol)


def plain_betti(alg: ThreeLieAlgebra, rep: Representation, degree: int) -> int:
    """dim H^degree of the plain complex (C^0 = 0)."""
    _check_matrix_degree(degree)
    curr = matrix_of_d(alg, rep, degree)
    nullity = cochain_dim(alg.dim, rep.mod_dim, degree) - rank(curr)
    rank_prev = rank(matrix_of_d(alg, rep, degree - 1)) if degree >= 2 else 0
    return nullity - rank_prev


def apply_pair_matrix(m: QMatrix, pc: PairCochain, out_degree: int) -> PairCochain:
    """Apply a pair-differential matrix to a pair cochain (test helper)."""
    vec = m.apply(pair_cochain_to_vec(pc))
    return vec_to_pair_cochain(out_degree, pc.alg_dim, pc.mod_dim, vec)
