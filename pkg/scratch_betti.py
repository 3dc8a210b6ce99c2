"""Dev scratch: corrupted-MC equivalence and the betti(2) self-coefficient scan."""
import random
from fractions import Fraction

from trider.core import (LieDerPair, DerModule, ThreeLieAlgebra, adjoint_rep,
                         adjoint_module, trivial_rep, validate_3lie, is_derivation,
                         derivation_space)
from trider.cochains import bracket, bracket_cochain
from trider.cohomology import betti, matrix_of_pair_d, rank
from trider.linalg import QMatrix

# corrupted: [e1,e2,e3]=e4 and [e1,e2,e4]=e4
bad = ThreeLieAlgebra(4, {(0, 1, 2): (0, 0, 0, 1), (0, 1, 3): (0, 0, 0, 1)})
rep = validate_3lie(bad.constants, 4)
print("bad valid:", rep.ok, "| first violation:", rep.violations[0].at if rep.violations else None)
print("bad [mu,mu]==0:", bracket(bracket_cochain(bad), bracket_cochain(bad)).is_zero())

# betti(2) self-coefficient scan over candidate fixtures
def pairs():
    ab2 = ThreeLieAlgebra.abelian(2)
    ab3 = ThreeLieAlgebra.abelian(3)
    ab4 = ThreeLieAlgebra.abelian(4)
    d4 = ThreeLieAlgebra(4, {(0, 1, 2): (0, 0, 0, 1)})
    d3 = ThreeLieAlgebra(3, {(0, 1, 2): (1, 0, 0)})
    simple4 = ThreeLieAlgebra(4, {
        (0, 1, 2): (0, 0, 0, 1), (0, 1, 3): (0, 0, -1, 0),
        (0, 2, 3): (0, 1, 0, 0), (1, 2, 3): (-1, 0, 0, 0)})
    yield "ab2 phi=0", LieDerPair(ab2, QMatrix.zero(2, 2))
    yield "ab2 phi=E12", LieDerPair(ab2, QMatrix.from_rows([[0, 1], [0, 0]]))
    yield "ab2 phi=diag(1,2)", LieDerPair(ab2, QMatrix.from_rows([[1, 0], [0, 2]]))
    yield "ab3 phi=0", LieDerPair(ab3, QMatrix.zero(3, 3))
    yield "ab4 phi=0", LieDerPair(ab4, QMatrix.zero(4, 4))
    yield "d4 phi=0", LieDerPair(d4, QMatrix.zero(4, 4))
    yield "d4 phi=diag(1,1,1,3)", LieDerPair(d4, QMatrix.from_rows(
        [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,3]]))
    yield "d3 phi=diag(0,1,-1)", LieDerPair(d3, QMatrix.from_rows(
        [[0,0,0],[0,1,0],[0,0,-1]]))
    yield "d3 phi=diag(2,1,-1)", LieDerPair(d3, QMatrix.from_rows(
        [[2,0,0],[0,1,0],[0,0,-1]]))
    yield "simple4 phi=ad(e1,e2)", LieDerPair(simple4, QMatrix.from_rows(
        [[0,0,0,0],[0,0,0,0],[0,0,0,-1],[0,0,1,0]]))
    # a nilpotent derivation of d3: e2 -> e1 (check below)
    yield "d3 phi=E12", LieDerPair(d3, QMatrix.from_rows([[0,1,0],[0,0,0],[0,0,0]]))

import time
for name, p in pairs():
    ok_alg = validate_3lie(p.algebra.constants, p.algebra.dim).ok
    ok_phi = is_derivation(p.algebra, p.phi)
    if not (ok_alg and ok_phi):
        print(f"{name}: INVALID pair ({ok_alg}, {ok_phi})")
        continue
    t0 = time.time()
    dm = adjoint_module(p)
    rep2 = betti(p, dm, 2)
    print(f"{name}: betti2={rep2.betti} (dimC={rep2.dim_c}, rp={rep2.rank_prev}, rc={rep2.rank_curr})"
          f"  [{time.time()-t0:.2f}s]")

# trivial coefficients betti(2) for the d4/diag fixture (regression freeze)
d4 = ThreeLieAlgebra(4, {(0, 1, 2): (0, 0, 0, 1)})
pair = LieDerPair(d4, QMatrix.from_rows([[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,3]]))
dm_triv = DerModule(trivial_rep(4, 1), QMatrix.zero(1, 1))
r = betti(pair, dm_triv, 2)
print("d4 diag trivial-M betti2:", r.betti, (r.dim_c, r.rank_prev, r.rank_curr))
