"""3-Lie algebras with a distinguished derivation, their representations,
and the compatible module data.

A 3-Lie algebra is a vector space with a totally antisymmetric trilinear
bracket satisfying the fundamental identity

    [x, y, [u, v, w]] = [[x, y, u], v, w] + [u, [x, y, v], w] + [u, v, [x, y, w]].

Structure constants are stored only for strictly increasing basis
triples; evaluation applies the permutation sign on the fly, so total
antisymmetry holds by construction.  All indices are 0-based internally
and 1-based in reports and on the wire.

All values are immutable after construction and safe to share between
threads; validators are pure functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError
from .linalg import QMatrix, block, kernel_basis
from .rationals import ONE, ZERO

DEFAULT_VIOLATION_CAP = 10


def sort_with_sign(indices: Sequence[int]) -> tuple[Optional[tuple[int, ...]], int]:
    """Sort a basis multi-index; returns (sorted tuple, permutation sign).

    A repeated index yields (None, 0): the antisymmetric evaluation is zero.
    """
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return None, 0
    return tuple(idx), sign


@dataclass(frozen=True)
class Violation:
    """One failed instance of a defining identity, 1-based basis tuple."""

    identity: str
    at: tuple[int, ...]
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    checked: int
    violations: tuple[Violation, ...]
    truncated: bool = False

    def __bool__(self) -> bool:  # pragma: no cover - convenience only
        return self.ok


class _Collector:
    def __init__(self, cap: int):
        self.cap = cap
        self.items: list[Violation] = []
        self.total = 0
        self.checked = 0

    def add(self, violation: Violation) -> None:
        self.total += 1
        if len(self.items) < self.cap:
            self.items.append(violation)

    def report(self) -> ValidationReport:
        return ValidationReport(
            ok=self.total == 0,
            checked=self.checked,
            violations=tuple(self.items),
            truncated=self.total > len(self.items),
        )


@dataclass(frozen=True)
class ThreeLieAlgebra:
    """Finite-dimensional 3-Lie algebra over Q.

    ``constants`` maps strictly increasing 0-based triples (i, j, k) to
    the coefficient vector of [e_i, e_j, e_k]; missing triples are zero.
    The constructor checks shapes only; the fundamental identity is the
    business of :func:`validate_3lie`.
    """

    dim: int
    constants: dict[tuple[int, int, int], tuple[Fraction, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise InputError(f"algebra dimension must be positive, got {self.dim}")
        clean = {}
        for key, vec in self.constants.items():
            if len(key) != 3 or not all(isinstance(i, int) for i in key):
                raise InputError(f"bad triple key {key!r}")
            i, j, k = key
            if not (0 <= i < j < k < self.dim):
                raise InputError(
                    f"triple {tuple(x + 1 for x in key)} not strictly increasing in range"
                )
            if len(vec) != self.dim:
                raise InputError(f"coefficient vector for {key} has length {len(vec)}")
            tup = tuple(v if isinstance(v, Fraction) else Fraction(v) for v in vec)
            if any(tup):
                clean[(i, j, k)] = tup
        object.__setattr__(self, "constants", clean)

    @classmethod
    def abelian(cls, dim: int) -> "ThreeLieAlgebra":
        return cls(dim, {})

    def is_abelian(self) -> bool:
        return not self.constants

    def zero_vector(self) -> tuple[Fraction, ...]:
        return (ZERO,) * self.dim

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        return tuple(ONE if a == i else ZERO for a in range(self.dim))

    def bracket_basis(self, i: int, j: int, k: int) -> tuple[Fraction, ...]:
        """[e_i, e_j, e_k] for arbitrary (possibly unordered) indices."""
        key, sign = sort_with_sign((i, j, k))
        if key is None:
            return self.zero_vector()
        vec = self.constants.get(key)
        if vec is None:
            return self.zero_vector()
        if sign == 1:
            return vec
        return tuple(-v for v in vec)

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction],
                z: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Trilinear extension of the bracket to arbitrary vectors."""
        out = [ZERO] * self.dim
        for (i, j, k), vec in self.constants.items():
            minor = (
                x[i] * (y[j] * z[k] - y[k] * z[j])
                - x[j] * (y[i] * z[k] - y[k] * z[i])
                + x[k] * (y[i] * z[j] - y[j] * z[i])
            )
            if minor:
                for a, v in enumerate(vec):
                    if v:
                        out[a] = out[a] + minor * v
        return tuple(out)

    def bracket_basis2_vec(self, i: int, j: int,
                           w: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """[e_i, e_j, w] for a vector w."""
        out = [ZERO] * self.dim
        for ell, c in enumerate(w):
            if c:
                term = self.bracket_basis(i, j, ell)
                for a, v in enumerate(term):
                    if v:
                        out[a] = out[a] + c * v
        return tuple(out)


def validate_3lie(constants: dict, dim: int,
                  max_violations: int = DEFAULT_VIOLATION_CAP) -> ValidationReport:
    """Check the fundamental identity on all basis 5-tuples.

    Both sides are antisymmetric in (a, b) and in (u, v, w), so the
    sweep over a<b and u<v<w is exhaustive up to symmetry.  Malformed
    structure constants raise InputError; identity failures are
    reported, 1-based.
    """
    alg = ThreeLieAlgebra(dim, constants)
    out = _Collector(max_violations)
    n = alg.dim
    for a, b in itertools.combinations(range(n), 2):
        for u, v, w in itertools.combinations(range(n), 3):
            out.checked += 1
            lhs = alg.bracket_basis2_vec(a, b, alg.bracket_basis(u, v, w))
            rhs = [ZERO] * n
            for term in (
                _bracket_vec_right(alg, alg.bracket_basis(a, b, u), v, w),
                _bracket_vec_mid(alg, u, alg.bracket_basis(a, b, v), w),
                alg.bracket_basis2_vec(u, v, alg.bracket_basis(a, b, w)),
            ):
                for t, val in enumerate(term):
                    rhs[t] = rhs[t] + val
            if list(lhs) != rhs:
                out.add(Violation(
                    identity="fundamental",
                    at=(a + 1, b + 1, u + 1, v + 1, w + 1),
                    detail="[x,y,[u,v,w]] != [[x,y,u],v,w] + [u,[x,y,v],w] + [u,v,[x,y,w]]",
                ))
    return out.report()


def _bracket_vec_right(alg: ThreeLieAlgebra, w: Sequence[Fraction],
                       v: int, k: int) -> tuple[Fraction, ...]:
    """[w, e_v, e_k] for a vector w."""
    out = [ZERO] * alg.dim
    for ell, c in enumerate(w):
        if c:
            term = alg.bracket_basis(ell, v, k)
            for a, val in enumerate(term):
                if val:
                    out[a] = out[a] + c * val
    return tuple(out)


def _bracket_vec_mid(alg: ThreeLieAlgebra, u: int, w: Sequence[Fraction],
                     k: int) -> tuple[Fraction, ...]:
    """[e_u, w, e_k] for a vector w."""
    out = [ZERO] * alg.dim
    for ell, c in enumerate(w):
        if c:
            term = alg.bracket_basis(u, ell, k)
            for a, val in enumerate(term):
                if val:
                    out[a] = out[a] + c * val
    return tuple(out)


# ---------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------


def derivation_report(alg: ThreeLieAlgebra, phi: QMatrix,
                      max_violations: int = DEFAULT_VIOLATION_CAP) -> ValidationReport:
    """Leibniz rule on all strictly increasing basis triples."""
    if phi.rows != alg.dim or phi.cols != alg.dim:
        raise InputError(
            f"derivation must be {alg.dim}x{alg.dim}, got {phi.rows}x{phi.cols}"
        )
    out = _Collector(max_violations)
    n = alg.dim
    for i, j, k in itertools.combinations(range(n), 3):
        out.checked += 1
        lhs = phi.apply(alg.bracket_basis(i, j, k))
        rhs = [ZERO] * n
        for col, spot in ((i, 0), (j, 1), (k, 2)):
            image = phi.column(col)
            args = [i, j, k]
            for a, c in enumerate(image):
                if c:
                    args[spot] = a
                    term = alg.bracket_basis(*args)
                    for t, val in enumerate(term):
                        if val:
                            rhs[t] = rhs[t] + c * val
            args[spot] = col
        if list(lhs) != rhs:
            out.add(Violation(
                identity="leibniz",
                at=(i + 1, j + 1, k + 1),
                detail="phi[x,y,z] != [phi x,y,z] + [x,phi y,z] + [x,y,phi z]",
            ))
    return out.report()


def is_derivation(alg: ThreeLieAlgebra, phi: QMatrix) -> bool:
    return derivation_report(alg, phi, max_violations=1).ok


def first_leibniz_violation(alg: ThreeLieAlgebra,
                            phi: QMatrix) -> Optional[tuple[int, int, int]]:
    """First basis triple (1-based) violating the Leibniz rule, if any."""
    report = derivation_report(alg, phi, max_violations=1)
    if report.ok:
        return None
    return report.violations[0].at  # type: ignore[return-value]


def derivation_space(alg: ThreeLieAlgebra) -> list[QMatrix]:
    """Basis of the derivation algebra Der(L).

    Assembles the Leibniz rule as a linear system in the n^2 matrix
    entries (unknown phi[a][b], column-major flat index a*n + b) and
    returns kernel-basis matrices.
    """
    n = alg.dim
    rows: dict[tuple[int, int], Fraction] = {}
    eqs: list[dict[int, Fraction]] = []
    for i, j, k in itertools.combinations(range(n), 3):
        w = alg.bracket_basis(i, j, k)
        for r in range(n):
            eq: dict[int, Fraction] = {}

            def bump(a: int, b: int, val: Fraction) -> None:
                if val:
                    key = a * n + b
                    eq[key] = eq.get(key, ZERO) + val

            # phi(w) contributes phi[r][b] * w[b]
            for b, c in enumerate(w):
                bump(r, b, c)
            # -[phi e_i, e_j, e_k] etc. contribute -phi[a][slot] * [..e_a..]_r
            for slot, (p, q) in ((i, (j, k)), (j, (i, k)), (k, (i, j))):
                for a in range(n):
                    if slot == i:
                        term = alg.bracket_basis(a, p, q)
                    elif slot == j:
                        term = alg.bracket_basis(p, a, q)
                    else:
                        term = alg.bracket_basis(p, q, a)
                    bump(a, slot, -term[r])
            if eq:
                eqs.append(eq)
    m = QMatrix(len(eqs), n * n,
                {(r, c): v for r, eq in enumerate(eqs) for c, v in eq.items()})
    basis = []
    for vec in kernel_basis(m):
        data = {}
        for flat, v in enumerate(vec):
            if v:
                data[(flat // n, flat % n)] = v
        basis.append(QMatrix(n, n, data))
    return basis


# ---------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class Representation:
    """Action rho: L wedge L -> End(M) on ordered basis pairs i<j.

    Missing pairs act as zero; rho(e_j, e_i) = -rho(e_i, e_j) is applied
    on lookup.
    """

    alg_dim: int
    mod_dim: int
    rho: dict[tuple[int, int], QMatrix] = field(default_factory=dict)

    def __post_init__(self):
        if self.alg_dim < 1 or self.mod_dim < 1:
            raise InputError("representation dimensions must be positive")
        clean = {}
        for (i, j), mat in self.rho.items():
            if not (0 <= i < j < self.alg_dim):
                raise InputError(f"pair {(i + 1, j + 1)} not strictly increasing in range")
            if mat.rows != self.mod_dim or mat.cols != self.mod_dim:
                raise InputError(
                    f"rho{(i + 1, j + 1)} must be {self.mod_dim}x{self.mod_dim}"
                )
            if not mat.is_zero():
                clean[(i, j)] = mat
        object.__setattr__(self, "rho", clean)

    def rho_basis(self, i: int, j: int) -> QMatrix:
        """rho(e_i, e_j) for arbitrary indices (sign-adjusted)."""
        if i == j:
            return QMatrix.zero(self.mod_dim, self.mod_dim)
        if i < j:
            mat = self.rho.get((i, j))
            return mat if mat is not None else QMatrix.zero(self.mod_dim, self.mod_dim)
        mat = self.rho.get((j, i))
        return -mat if mat is not None else QMatrix.zero(self.mod_dim, self.mod_dim)

    def rho_vectors(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> QMatrix:
        """Bilinear extension rho(x, y)."""
        acc = QMatrix.zero(self.mod_dim, self.mod_dim)
        for (i, j), mat in self.rho.items():
            c = x[i] * y[j] - x[j] * y[i]
            if c:
                acc = acc + mat * c
        return acc


def trivial_rep(alg_dim: int, mod_dim: int) -> Representation:
    """The zero action of L on an m-dimensional space."""
    return Representation(alg_dim, mod_dim, {})


def adjoint_rep(alg: ThreeLieAlgebra) -> Representation:
    """rho(e_i, e_j) = [e_i, e_j, -] acting on L itself."""
    n = alg.dim
    rho = {}
    for i, j in itertools.combinations(range(n), 2):
        cols = [alg.bracket_basis(i, j, b) for b in range(n)]
        mat = QMatrix(n, n, {(r, b): cols[b][r] for b in range(n) for r in range(n)})
        if not mat.is_zero():
            rho[(i, j)] = mat
    return Representation(n, n, rho)


def _rho_phi_arg(rep: Representation, phi: QMatrix, moved: int, fixed: int,
                 moved_first: bool) -> QMatrix:
    """rho(phi e_moved, e_fixed) (or arguments swapped)."""
    acc = QMatrix.zero(rep.mod_dim, rep.mod_dim)
    for a, c in enumerate(phi.column(moved)):
        if c:
            mat = rep.rho_basis(a, fixed) if moved_first else rep.rho_basis(fixed, a)
            acc = acc + mat * c
    return acc


def validate_representation(alg: ThreeLieAlgebra, rep: Representation,
                            max_violations: int = DEFAULT_VIOLATION_CAP) -> ValidationReport:
    """Both representation axioms on basis tuples, exhaustive up to symmetry.

    Axiom 1 over x<y<z and all u; axiom 2 over x<y and z<u.
    """
    if rep.alg_dim != alg.dim:
        raise InputError(f"representation is over dim {rep.alg_dim}, algebra has {alg.dim}")
    out = _Collector(max_violations)
    n = alg.dim

    def rho_bracket(i: int, j: int, k: int, u: int) -> QMatrix:
        acc = QMatrix.zero(rep.mod_dim, rep.mod_dim)
        for ell, c in enumerate(alg.bracket_basis(i, j, k)):
            if c:
                acc = acc + rep.rho_basis(ell, u) * c
        return acc

    for x, y, z in itertools.combinations(range(n), 3):
        for u in range(n):
            out.checked += 1
            lhs = rho_bracket(x, y, z, u)
            rhs = (
                rep.rho_basis(y, z) @ rep.rho_basis(x, u)
                + rep.rho_basis(z, x) @ rep.rho_basis(y, u)
                + rep.rho_basis(x, y) @ rep.rho_basis(z, u)
            )
            if lhs != rhs:
                out.add(Violation(
                    identity="representation-1",
                    at=(x + 1, y + 1, z + 1, u + 1),
                    detail="rho([x,y,z],u) != rho(y,z)rho(x,u) + rho(z,x)rho(y,u) + rho(x,y)rho(z,u)",
                ))
    for x, y in itertools.combinations(range(n), 2):
        for z, u in itertools.combinations(range(n), 2):
            out.checked += 1
            lhs = rep.rho_basis(x, y) @ rep.rho_basis(z, u)
            rhs = (
                rep.rho_basis(z, u) @ rep.rho_basis(x, y)
                + rho_bracket(x, y, z, u)
            )
            for ell, c in enumerate(alg.bracket_basis(x, y, u)):
                if c:
                    rhs = rhs + rep.rho_basis(z, ell) * c
            if lhs != rhs:
                out.add(Violation(
                    identity="representation-2",
                    at=(x + 1, y + 1, z + 1, u + 1),
                    detail="rho(x,y)rho(z,u) != rho(z,u)rho(x,y) + rho([x,y,z],u) + rho(z,[x,y,u])",
                ))
    return out.report()


# ---------------------------------------------------------------------
# Pairs and modules
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class LieDerPair:
    """A 3-Lie algebra with a distinguished derivation (shape-checked)."""

    algebra: ThreeLieAlgebra
    phi: QMatrix

    def __post_init__(self):
        n = self.algebra.dim
        if self.phi.rows != n or self.phi.cols != n:
            raise InputError(f"phi must be {n}x{n}, got {self.phi.rows}x{self.phi.cols}")


@dataclass(frozen=True)
class DerModule:
    """A representation together with a compatible module map phi_M."""

    rep: Representation
    phi_m: QMatrix

    def __post_init__(self):
        m = self.rep.mod_dim
        if self.phi_m.rows != m or self.phi_m.cols != m:
            raise InputError(f"phi_M must be {m}x{m}, got {self.phi_m.rows}x{self.phi_m.cols}")


def validate_der_module(pair: LieDerPair, dermod: DerModule,
                        max_violations: int = DEFAULT_VIOLATION_CAP) -> ValidationReport:
    """Compatibility phi_M(rho(x,y)m) = rho(phi x,y)m + rho(x,phi y)m + rho(x,y)(phi_M m).

    Checked as a matrix identity per ordered basis pair, which covers
    every module basis vector at once.
    """
    rep = dermod.rep
    if rep.alg_dim != pair.algebra.dim:
        raise InputError("module and pair have different algebra dimensions")
    out = _Collector(max_violations)
    for i, j in itertools.combinations(range(pair.algebra.dim), 2):
        out.checked += 1
        lhs = dermod.phi_m @ rep.rho_basis(i, j)
        rhs = (
            _rho_phi_arg(rep, pair.phi, i, j, moved_first=True)
            + _rho_phi_arg(rep, pair.phi, j, i, moved_first=False)
            + rep.rho_basis(i, j) @ dermod.phi_m
        )
        if lhs != rhs:
            out.add(Violation(
                identity="module-compatibility",
                at=(i + 1, j + 1),
                detail="phi_M rho(x,y) != rho(phi x,y) + rho(x,phi y) + rho(x,y) phi_M",
            ))
    return out.report()


def adjoint_module(pair: LieDerPair) -> DerModule:
    """Self coefficients: (M, phi_M) = (L, phi_L) with the adjoint action."""
    return DerModule(adjoint_rep(pair.algebra), pair.phi)


def semidirect(pair: LieDerPair, dermod: DerModule) -> LieDerPair:
    """Semidirect product pair on L + M.

    Bracket [(x,m),(y,n),(z,p)] = ([x,y,z], rho(y,z)m + rho(z,x)n + rho(x,y)p),
    derivation phi_L + phi_M.  Inputs are fully validated first.
    """
    alg = pair.algebra
    rep = dermod.rep
    report = validate_3lie(alg.constants, alg.dim)
    if not report.ok:
        raise InputError("semidirect: algebra fails the fundamental identity")
    if not is_derivation(alg, pair.phi):
        raise InputError("semidirect: phi is not a derivation")
    if not validate_representation(alg, rep, max_violations=1).ok:
        raise InputError("semidirect: representation axioms fail")
    if not validate_der_module(pair, dermod, max_violations=1).ok:
        raise InputError("semidirect: module compatibility fails")

    n, m = alg.dim, rep.mod_dim
    total = n + m
    constants: dict[tuple[int, int, int], tuple[Fraction, ...]] = {}
    for (i, j, k), vec in alg.constants.items():
        constants[(i, j, k)] = tuple(vec) + (ZERO,) * m
    for (i, j), mat in rep.rho.items():
        for a in range(m):
            col = mat.column(a)
            if any(col):
                constants[(i, j, n + a)] = (ZERO,) * n + tuple(col)
    algebra = ThreeLieAlgebra(total, constants)
    phi = block([[pair.phi, None], [None, dermod.phi_m]], [n, m], [n, m])
    return LieDerPair(algebra, phi)
