"""Central extensions of derivation pairs, and extensibility of a pair
of derivations over a fixed central extension of 3-Lie algebras.

Two complexes are in play and the API keeps them distinct: central
extensions of a pair (L, phi_L) by an abelian fiber (M, phi_M) are
governed by the pair complex with trivial coefficients, while the
obstruction to extending derivations over a fixed algebra extension
lives in the plain 3-Lie complex with trivial coefficients.

The canonical section of a built extension is s(x) = (x, 0) in the
L + M coordinates, which makes extract(build(psi, chi)) the identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cochains import (
    Cochain,
    PairCochain,
    alternating_table,
    bracket_cochain,
    is_fully_antisymmetric,
    pair_d,
    pair_rank,
)
from .cohomology import (
    cohomologous,
    is_cocycle,
    matrix_of_d,
    plain_is_cocycle,
    solve,
    cochain_to_vec,
    vec_to_cochain,
)
from .core import (
    DerModule,
    LieDerPair,
    ThreeLieAlgebra,
    ValidationReport,
    Violation,
    _Collector,
    is_derivation,
    trivial_rep,
    validate_3lie,
)
from .errors import InputError
from .linalg import QMatrix, block, left_inverse, rank
from .rationals import ONE, ZERO


class CocycleViolation(Exception):
    """A pair 2-cochain failed a cocycle identity; carries the first
    failing instance (identity name and 1-based basis tuple)."""

    def __init__(self, identity: str, at: tuple[int, ...]):
        self.identity = identity
        self.at = at
        super().__init__(f"not a 2-cocycle: {identity} fails at basis tuple {at}")


@dataclass(frozen=True)
class CentralExtension:
    """0 -> (M, phi_M) -> (total, phi_total) -> (L, phi_L) -> 0 with
    central fiber."""

    base: LieDerPair
    fiber: DerModule
    total: LieDerPair
    incl: QMatrix
    proj: QMatrix

    def __post_init__(self):
        n = self.base.algebra.dim
        m = self.fiber.rep.mod_dim
        t = self.total.algebra.dim
        if t != n + m:
            raise InputError(f"total dimension {t} != base {n} + fiber {m}")
        if (self.incl.rows, self.incl.cols) != (t, m):
            raise InputError("inclusion matrix has wrong shape")
        if (self.proj.rows, self.proj.cols) != (n, t):
            raise InputError("projection matrix has wrong shape")

    def canonical_section(self) -> QMatrix:
        """A right inverse of proj; solves proj @ s = I column by column."""
        n = self.base.algebra.dim
        cols = []
        for k in range(n):
            unit = [ONE if i == k else ZERO for i in range(n)]
            sol = solve(self.proj, unit)
            if sol is None:
                raise InputError("projection is not surjective")
            cols.append(sol)
        t = self.total.algebra.dim
        return QMatrix(t, n, {(r, c): cols[c][r] for c in range(n) for r in range(t)})

    def algebra_part(self) -> "AlgebraExtension":
        return AlgebraExtension(
            base=self.base.algebra,
            fiber_dim=self.fiber.rep.mod_dim,
            total=self.total.algebra,
            incl=self.incl,
            proj=self.proj,
        )


@dataclass(frozen=True)
class AlgebraExtension:
    """A central extension of 3-Lie algebras only (no derivations)."""

    base: ThreeLieAlgebra
    fiber_dim: int
    total: ThreeLieAlgebra
    incl: QMatrix
    proj: QMatrix

    def __post_init__(self):
        n, m, t = self.base.dim, self.fiber_dim, self.total.dim
        if t != n + m:
            raise InputError(f"total dimension {t} != base {n} + fiber {m}")
        if (self.incl.rows, self.incl.cols) != (t, m):
            raise InputError("inclusion matrix has wrong shape")
        if (self.proj.rows, self.proj.cols) != (n, t):
            raise InputError("projection matrix has wrong shape")


def _check_section(proj: QMatrix, section: QMatrix) -> None:
    if (section.rows, section.cols) != (proj.cols, proj.rows):
        raise InputError("section has wrong shape")
    if proj @ section != QMatrix.identity(proj.rows):
        raise InputError("not a section: proj o s != id")


def validate_central_extension(ext: CentralExtension,
                               max_violations: int = 10) -> ValidationReport:
    """Exactness, centrality and derivation compatibility, checked exactly."""
    out = _Collector(max_violations)
    n = ext.base.algebra.dim
    m = ext.fiber.rep.mod_dim
    t = ext.total.algebra.dim
    out.checked += 5
    if rank(ext.incl) != m:
        out.add(Violation("exactness", (), "inclusion is not injective"))
    if rank(ext.proj) != n:
        out.add(Violation("exactness", (), "projection is not surjective"))
    if not (ext.proj @ ext.incl).is_zero():
        out.add(Violation("exactness", (), "proj o incl != 0"))
    # im(incl) = ker(proj) follows from the rank conditions by dimension count.
    phi_tot = ext.total.phi
    if phi_tot @ ext.incl != ext.incl @ ext.fiber.phi_m:
        out.add(Violation("derivation-compatibility", (),
                          "phi_total o incl != incl o phi_M"))
    if ext.proj @ phi_tot != ext.base.phi @ ext.proj:
        out.add(Violation("derivation-compatibility", (),
                          "proj o phi_total != phi_L o proj"))
    # centrality: [incl(m), x, y] = 0 for every fiber and total basis pair
    alg = ext.total.algebra
    for a in range(m):
        col = ext.incl.column(a)
        for x, y in itertools.combinations(range(t), 2):
            out.checked += 1
            vals = [ZERO] * t
            for ell, c in enumerate(col):
                if c:
                    term = alg.bracket_basis(ell, x, y)
                    for r, v in enumerate(term):
                        if v:
                            vals[r] = vals[r] + c * v
            if any(vals):
                out.add(Violation("centrality", (a + 1, x + 1, y + 1),
                                  "[i(m), x, y] != 0"))
    return out.report()


def _fiber_as_coefficients(pair: LieDerPair, fiber: DerModule) -> DerModule:
    if fiber.rep.alg_dim != pair.algebra.dim:
        raise InputError("fiber is not a module over the base algebra")
    if fiber.rep.rho:
        raise InputError("central extensions need a trivial fiber action")
    return fiber


def build_central_extension(pair: LieDerPair, fiber: DerModule, psi: Cochain,
                            chi: QMatrix) -> CentralExtension:
    """Total pair on L + M from a pair 2-cochain (psi, chi).

    Succeeds exactly when (psi, chi) is a 2-cocycle of the pair complex
    with trivial coefficients; otherwise raises CocycleViolation naming
    the first failing identity instance.  psi must be a totally
    antisymmetric trilinear map (a map on wedge^3 L).
    """
    fiber = _fiber_as_coefficients(pair, fiber)
    alg = pair.algebra
    n, m = alg.dim, fiber.rep.mod_dim
    if psi.degree != 2 or psi.alg_dim != n or psi.mod_dim != m:
        raise InputError("psi must be a degree-2 cochain L^3 -> M")
    if not is_fully_antisymmetric(psi):
        raise InputError("psi must be totally antisymmetric")
    if (chi.rows, chi.cols) != (m, n):
        raise InputError(f"chi must be {m}x{n}")

    defect = pair_d(pair, fiber, PairCochain(psi, Cochain.from_linear_map(chi)))
    if not defect.f.is_zero():
        for (pairs, ell) in defect.f.index_tuples():
            if any(defect.f.coeff(pairs, ell)):
                ps = [list(itertools.combinations(range(n), 2))[p] for p in pairs]
                at = tuple(i + 1 for ij in ps for i in ij) + (ell + 1,)
                raise CocycleViolation("fundamental", at)
    if not defect.fbar.is_zero():
        for (pairs, ell) in defect.fbar.index_tuples():
            if any(defect.fbar.coeff(pairs, ell)):
                ps = [list(itertools.combinations(range(n), 2))[p] for p in pairs]
                at = tuple(i + 1 for ij in ps for i in ij) + (ell + 1,)
                raise CocycleViolation("derivation", at)

    total_alg = _assemble_total_algebra(alg, psi, m)
    phi_tot = block([[pair.phi, None], [chi, fiber.phi_m]], [n, m], [n, m])
    total = LieDerPair(total_alg, phi_tot)
    incl = block([[QMatrix.zero(n, m)], [QMatrix.identity(m)]], [n, m], [m])
    proj = block([[QMatrix.identity(n), QMatrix.zero(n, m)]], [n], [n, m])
    ext = CentralExtension(pair, fiber, total, incl, proj)

    # Prop 3.3: for a cocycle the construction must pass every validator.
    if not validate_3lie(total_alg.constants, total_alg.dim, max_violations=1).ok:
        raise AssertionError("cocycle input produced an invalid total algebra")
    if not is_derivation(total_alg, phi_tot):
        raise AssertionError("cocycle input produced an invalid total derivation")
    return ext


def _assemble_total_algebra(alg: ThreeLieAlgebra, psi: Cochain, m: int) -> ThreeLieAlgebra:
    """[(x,a),(y,b),(z,c)] = ([x,y,z], psi(x,y,z)): L-triples only."""
    n = alg.dim
    ranks = pair_rank(n)
    constants = {}
    table = alternating_table(psi)
    for i, j, k in itertools.combinations(range(n), 3):
        head = alg.constants.get((i, j, k), (ZERO,) * n)
        tail = table.get((i, j, k), (ZERO,) * m)
        vec = tuple(head) + tuple(tail)
        if any(vec):
            constants[(i, j, k)] = vec
    return ThreeLieAlgebra(n + m, constants)


def extract_cocycle(ext: CentralExtension, section: QMatrix) -> PairCochain:
    """(psi, chi) of a central extension relative to a section.

    psi(x,y,z) = [s x, s y, s z] - s[x, y, z],
    chi(x)     = phi_total(s x) - s(phi_L x);
    both land in the fiber and are returned in fiber coordinates.
    """
    _check_section(ext.proj, section)
    alg = ext.total.algebra
    base = ext.base.algebra
    n = base.dim
    m = ext.fiber.rep.mod_dim
    linv = left_inverse(ext.incl)

    def to_fiber(vec, where: str):
        coords = linv.apply(vec)
        if ext.incl.apply(coords) != tuple(vec):
            raise InputError(f"{where} does not land in the fiber image")
        return coords

    cols = [section.column(x) for x in range(n)]
    table = {}
    for i, j, k in itertools.combinations(range(n), 3):
        br = alg.bracket(cols[i], cols[j], cols[k])
        sb = section.apply(base.bracket_basis(i, j, k))
        vec = tuple(a - b for a, b in zip(br, sb))
        coords = to_fiber(vec, "psi value")
        if any(coords):
            table[(i, j, k)] = coords
    psi = Cochain.from_alternating(n, m, table)

    chi_data = {}
    for x in range(n):
        vec = tuple(a - b for a, b in zip(
            ext.total.phi.apply(cols[x]),
            section.apply(ext.base.phi.column(x))))
        coords = to_fiber(vec, "chi value")
        for a, v in enumerate(coords):
            if v:
                chi_data[(a, x)] = v
    chi = QMatrix(m, n, chi_data)
    return PairCochain(psi, Cochain.from_linear_map(chi))


def classify_extensions(pair: LieDerPair, fiber: DerModule, pc1: PairCochain,
                        pc2: PairCochain) -> tuple[bool, Optional[QMatrix]]:
    """Equivalence of the extensions defined by two 2-cocycles.

    Returns (equivalent, witness v) with (psi1, chi1) - (psi2, chi2) = d v
    when equivalent; eta(x, a) = (x, a + v x) is then checked to be an
    isomorphism of pairs commuting with the inclusion and projection.
    """
    fiber = _fiber_as_coefficients(pair, fiber)
    for pc in (pc1, pc2):
        if pc.degree != 2:
            raise InputError("classification needs degree-2 pair cochains")
        if not is_cocycle(pair, fiber, pc):
            raise CocycleViolation("cocycle", ())
    witness = cohomologous(pair, fiber, pc1, pc2)
    if witness is None:
        return False, None
    v = witness.f.to_linear_map()
    _check_eta_isomorphism(pair, fiber, pc1, pc2, v)
    return True, v


def _check_eta_isomorphism(pair: LieDerPair, fiber: DerModule, pc1: PairCochain,
                           pc2: PairCochain, v: QMatrix) -> None:
    """eta(x, a) = (x, a + v x) transports extension 1 onto extension 2."""
    ext1 = build_central_extension(pair, fiber, pc1.f, pc1.fbar.to_linear_map())
    ext2 = build_central_extension(pair, fiber, pc2.f, pc2.fbar.to_linear_map())
    n = pair.algebra.dim
    m = fiber.rep.mod_dim
    eta = block([[QMatrix.identity(n), None], [v, QMatrix.identity(m)]],
                [n, m], [n, m])
    tot1, tot2 = ext1.total.algebra, ext2.total.algebra
    t = tot1.dim
    cols = [eta.column(x) for x in range(t)]
    for i, j, k in itertools.combinations(range(t), 3):
        lhs = eta.apply(tot1.bracket_basis(i, j, k))
        rhs = tot2.bracket(cols[i], cols[j], cols[k])
        if lhs != rhs:
            raise AssertionError("witness does not transport the bracket")
    if eta @ ext1.total.phi != ext2.total.phi @ eta:
        raise AssertionError("witness does not intertwine the derivations")
    if eta @ ext1.incl != ext2.incl or ext2.proj @ eta != ext1.proj:
        raise AssertionError("witness does not commute with the extension maps")


# ---------------------------------------------------------------------
# Extending a pair of derivations over a fixed algebra extension
# ---------------------------------------------------------------------


def _extension_psi(ext: AlgebraExtension, section: QMatrix) -> Cochain:
    """The fiber-valued 2-cochain of the algebra extension w.r.t. a section."""
    _check_section(ext.proj, section)
    n, m = ext.base.dim, ext.fiber_dim
    linv = left_inverse(ext.incl)
    cols = [section.column(x) for x in range(n)]
    table = {}
    for i, j, k in itertools.combinations(range(n), 3):
        br = ext.total.bracket(cols[i], cols[j], cols[k])
        sb = section.apply(ext.base.bracket_basis(i, j, k))
        vec = tuple(a - b for a, b in zip(br, sb))
        coords = linv.apply(vec)
        if ext.incl.apply(coords) != vec:
            raise InputError("extension is not central: bracket defect leaves the fiber")
        if any(coords):
            table[(i, j, k)] = coords
    return Cochain.from_alternating(n, m, table)


def _check_derivation_inputs(ext: AlgebraExtension, phi_l: QMatrix,
                             phi_m: QMatrix) -> None:
    n, m = ext.base.dim, ext.fiber_dim
    if (phi_l.rows, phi_l.cols) != (n, n):
        raise InputError(f"phi_L must be {n}x{n}")
    if (phi_m.rows, phi_m.cols) != (m, m):
        raise InputError(f"phi_M must be {m}x{m}")
    if not is_derivation(ext.base, phi_l):
        raise InputError("phi_L is not a derivation of the base algebra")
    # The fiber is abelian, so every linear map is a derivation of it.


def derivation_obstruction(ext: AlgebraExtension, phi_l: QMatrix, phi_m: QMatrix,
                           section: QMatrix) -> Cochain:
    """Obstruction 2-cochain to extending (phi_L, phi_M) over the extension.

    Ob(x,y,z) = phi_M(psi(x,y,z)) - psi(phi_L x,y,z) - psi(x,phi_L y,z)
                - psi(x,y,phi_L z), a 2-cocycle of the plain 3-Lie
    complex with trivial coefficients in the fiber.
    """
    _check_derivation_inputs(ext, phi_l, phi_m)
    psi = _extension_psi(ext, section)
    n, m = ext.base.dim, ext.fiber_dim
    basis = [ext.base.basis_vector(x) for x in range(n)]
    table = {}
    for i, j, k in itertools.combinations(range(n), 3):
        val = list(phi_m.apply(psi.eval3(basis[i], basis[j], basis[k])))
        for spot, idx in enumerate((i, j, k)):
            args = [basis[i], basis[j], basis[k]]
            args[spot] = phi_l.column(idx)
            term = psi.eval3(*args)
            for a, v in enumerate(term):
                val[a] -= v
        if any(val):
            table[(i, j, k)] = tuple(val)
    ob = Cochain.from_alternating(n, m, table)
    if not plain_is_cocycle(ext.base, trivial_rep(n, m), ob):
        raise AssertionError("obstruction is not a plain 2-cocycle")
    return ob


def extend_derivation_pair(ext: AlgebraExtension, phi_l: QMatrix, phi_m: QMatrix,
                           section: QMatrix) -> Optional[tuple[QMatrix, QMatrix]]:
    """(lambda, phi_total) extending the pair, or None when obstructed.

    Solves d(lambda) = Ob in the plain complex with trivial coefficients;
    phi_total(s x + i a) = s(phi_L x) + i(lambda x) + i(phi_M a), and the
    result is verified to be a derivation compatible with incl and proj.
    """
    ob = derivation_obstruction(ext, phi_l, phi_m, section)
    n, m = ext.base.dim, ext.fiber_dim
    rep = trivial_rep(n, m)
    sol = solve(matrix_of_d(ext.base, rep, 1), cochain_to_vec(ob))
    if sol is None:
        return None
    lam = vec_to_cochain(1, n, m, sol).to_linear_map()
    linv = left_inverse(ext.incl)
    t = ext.total.dim
    proj_fiber = QMatrix.identity(t) - section @ ext.proj
    phi_total = (
        section @ phi_l @ ext.proj
        + ext.incl @ lam @ ext.proj
        + ext.incl @ phi_m @ linv @ proj_fiber
    )
    if not is_derivation(ext.total, phi_total):
        raise AssertionError("assembled phi_total is not a derivation")
    if phi_total @ ext.incl != ext.incl @ phi_m:
        raise AssertionError("phi_total does not restrict to phi_M")
    if ext.proj @ phi_total != phi_l @ ext.proj:
        raise AssertionError("phi_total does not project to phi_L")
    return lam, phi_total
