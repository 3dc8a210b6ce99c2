"""Dev scratch: numeric verification of the sign conventions."""
import itertools
import random
from fractions import Fraction

from trider.core import (LieDerPair, DerModule, ThreeLieAlgebra, adjoint_rep,
                         adjoint_module, trivial_rep, validate_3lie, is_derivation)
from trider.cochains import (Cochain, PairCochain, bracket, bracket_cochain,
                             circ, d, delta, pair_d, ordered_pairs)
from trider.linalg import QMatrix

rng = random.Random(12345)

def rand_frac():
    return Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2]))

def rand_cochain(degree, n, m):
    D = len(ordered_pairs(n))
    size = (D ** (degree - 1)) * n
    table = tuple(tuple(rand_frac() for _ in range(m)) for _ in range(size))
    return Cochain(degree, n, m, table)

# dim-4 algebra [e1,e2,e3] = e4
d4 = ThreeLieAlgebra(4, {(0, 1, 2): (0, 0, 0, 1)})
print("d4 valid:", validate_3lie(d4.constants, 4).ok)

# the 4-dim simple algebra
simple4 = ThreeLieAlgebra(4, {
    (0, 1, 2): (0, 0, 0, 1),
    (0, 1, 3): (0, 0, -1, 0),
    (0, 2, 3): (0, 1, 0, 0),
    (1, 2, 3): (-1, 0, 0, 0),
})
print("simple4 valid:", validate_3lie(simple4.constants, 4).ok)

d3 = ThreeLieAlgebra(3, {(0, 1, 2): (1, 0, 0)})
print("d3 valid:", validate_3lie(d3.constants, 3).ok)

for alg in (d4, simple4, d3):
    n = alg.dim
    rep = adjoint_rep(alg)
    mu = bracket_cochain(alg)
    # MC: [mu, mu] == 0
    mc = bracket(mu, mu)
    print(f"dim{n}: [mu,mu]==0:", mc.is_zero())
    # d f = (-1)^deg [mu, f] for degrees 1..3
    for deg in (1, 2, 3):
        f = rand_cochain(deg, n, n)
        lhs = d(alg, rep, f)
        br = bracket(mu, f)
        rhs = br if deg % 2 == 0 else br.scale(Fraction(-1))
        print(f"  deg {deg}: d f == (-1)^n [mu,f]:", lhs == rhs)
    # d d f == 0 for degrees 1..2 (cochain-level)
    for deg in (1, 2):
        f = rand_cochain(deg, n, n)
        print(f"  deg {deg}: d(d f)==0:", d(alg, rep, d(alg, rep, f)).is_zero())

# delta f == [phi, f] for self coefficients, and Lemma 2.6
phi_d4 = QMatrix.from_rows([[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,3]])
print("phi diag(1,1,1,3) derivation of d4:", is_derivation(d4, phi_d4))
pair = LieDerPair(d4, phi_d4)
dm = adjoint_module(pair)
phi_c = Cochain.from_linear_map(phi_d4)
for deg in (1, 2, 3):
    f = rand_cochain(deg, 4, 4)
    lhs = delta(pair, dm, f)
    rhs = bracket(phi_c, f)
    print(f"deg {deg}: delta f == [phi,f]:", lhs == rhs,
          "| == -[phi,f]:", lhs == rhs.scale(Fraction(-1)))
    # Lemma 2.6: d delta = delta d
    print(f"   d(delta f) == delta(d f):",
          d(d4, dm.rep, lhs) == delta(pair, dm, d(d4, dm.rep, f)))

# pair_d squared == 0
for deg in (1, 2):
    f = rand_cochain(deg, 4, 4)
    fb = rand_cochain(deg - 1, 4, 4) if deg >= 2 else None
    pc = PairCochain(f, fb)
    print(f"pair deg {deg}: dd == 0:", pair_d(pair, dm, pair_d(pair, dm, pc)).is_zero())

# graded antisymmetry + Jacobi (Leibniz form) on small degrees
f1 = rand_cochain(1, 3, 3); g2 = rand_cochain(2, 3, 3); h2 = rand_cochain(2, 3, 3)
def gr_anti(f, g):
    m, n = f.degree - 1, g.degree - 1
    lhs = bracket(f, g)
    rhs = bracket(g, f).scale(Fraction(-1) if (m * n) % 2 == 0 else Fraction(1))
    return lhs == rhs
print("antisym (1,2):", gr_anti(f1, g2), "(2,2):", gr_anti(g2, h2))

def jacobi(f, g, h):
    m, n = f.degree - 1, g.degree - 1
    lhs = bracket(f, bracket(g, h))
    rhs = bracket(bracket(f, g), h)
    t = bracket(g, bracket(f, h))
    rhs = rhs + (t if (m * n) % 2 == 0 else t.scale(Fraction(-1)))
    return lhs == rhs
print("jacobi (1,2,2):", jacobi(f1, g2, h2))
g2b = rand_cochain(2, 3, 3)
print("jacobi (2,2,2):", jacobi(g2, g2b, h2))
