"""Truncated formal deformations of a derivation pair.

A deformation of order N deforms both the bracket and the derivation:
mu_t = mu + t mu_1 + ... + t^N mu_N and phi_t = phi + t phi_1 + ...,
subject to the 3-Lie and Leibniz equations modulo t^(N+1).  The mu_i
must be totally antisymmetric trilinear maps (validated at intake);
they are stored as degree-2 self-coefficient cochains.

Deformation equations are checked by direct basis-tuple expansion of
the order-n identities; the graded-bracket reformulation is exercised
separately by the test suite.  The obstruction to extending an order-N
deformation is

    Ob3 = -1/2 sum_{i+j=N+1, i,j>0} [mu_i, mu_j]
    Ob2 = -   sum_{i+j=N+1, i,j>0} [phi_i, mu_j]

and extending means solving (d mu, d phi + delta mu) = (Ob3, Ob2) with
a totally antisymmetric mu part.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cochains import (
    Cochain,
    PairCochain,
    bracket,
    bracket_cochain,
    is_fully_antisymmetric,
    pair_d,
)
from .cohomology import (
    cochain_dim,
    matrix_of_pair_d,
    pair_cochain_to_vec,
    solve,
    vec_to_pair_cochain,
)
from .core import DerModule, LieDerPair, adjoint_module
from .errors import InputError
from .linalg import QMatrix
from .rationals import ONE, ZERO

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Deformation:
    """Order-N deformation data: mu holds mu_1..mu_N, phi holds
    phi_1..phi_N.  The order-0 terms always come from the base pair and
    cannot be supplied here."""

    base: LieDerPair
    order: int
    mu: tuple[Cochain, ...]
    phi: tuple[QMatrix, ...]

    def __post_init__(self):
        n = self.base.algebra.dim
        if self.order < 1:
            raise InputError("deformation order must be >= 1")
        if len(self.mu) != self.order or len(self.phi) != self.order:
            raise InputError(
                f"order-{self.order} deformation needs {self.order} mu and phi terms"
            )
        for t, m in enumerate(self.mu, start=1):
            if m.degree != 2 or m.alg_dim != n or m.mod_dim != n:
                raise InputError(f"mu_{t} must be a degree-2 self-coefficient cochain")
            if not is_fully_antisymmetric(m):
                raise InputError(f"mu_{t} is not totally antisymmetric")
        for t, p in enumerate(self.phi, start=1):
            if (p.rows, p.cols) != (n, n):
                raise InputError(f"phi_{t} must be {n}x{n}")

    def mu_term(self, i: int) -> Cochain:
        if i == 0:
            return bracket_cochain(self.base.algebra)
        return self.mu[i - 1]

    def phi_term(self, i: int) -> QMatrix:
        if i == 0:
            return self.base.phi
        return self.phi[i - 1]

    def is_constant(self) -> bool:
        return all(m.is_zero() for m in self.mu) and all(p.is_zero() for p in self.phi)

    @classmethod
    def constant(cls, base: LieDerPair, order: int) -> "Deformation":
        n = base.algebra.dim
        return cls(base, order,
                   tuple(Cochain.zero(2, n, n) for _ in range(order)),
                   tuple(QMatrix.zero(n, n) for _ in range(order)))


@dataclass(frozen=True)
class DeformationViolation:
    order: int
    family: str  # "bracket" or "derivation"
    at: tuple[int, ...]


@dataclass(frozen=True)
class DeformationReport:
    ok: bool
    checked: int
    violations: tuple[DeformationViolation, ...]
    truncated: bool = False

    def __bool__(self) -> bool:  # pragma: no cover
        return self.ok


def validate_deformation(defm: Deformation,
                         max_violations: int = 10) -> DeformationReport:
    """Order-by-order check of both deformation equation families.

    Family "bracket" is checked on x<y, z<v<w basis tuples; family
    "derivation" on x<y<z (both exhaustive up to antisymmetry).
    """
    alg = defm.base.algebra
    n = alg.dim
    basis = [alg.basis_vector(i) for i in range(n)]
    violations: list[DeformationViolation] = []
    total = 0
    checked = 0
    for order in range(1, defm.order + 1):
        terms = [(defm.mu_term(i), defm.mu_term(order - i)) for i in range(order + 1)]
        for x, y in itertools.combinations(range(n), 2):
            for z, v, w in itertools.combinations(range(n), 3):
                checked += 1
                acc = [ZERO] * n
                for mu_i, mu_j in terms:
                    inner = mu_j.eval3(basis[z], basis[v], basis[w])
                    for a, c in enumerate(mu_i.eval3(basis[x], basis[y], inner)):
                        acc[a] = acc[a] + c
                    t1 = mu_i.eval3(mu_j.eval3(basis[x], basis[y], basis[z]), basis[v], basis[w])
                    t2 = mu_i.eval3(basis[z], mu_j.eval3(basis[x], basis[y], basis[v]), basis[w])
                    t3 = mu_i.eval3(basis[z], basis[v], mu_j.eval3(basis[x], basis[y], basis[w]))
                    for a in range(n):
                        acc[a] = acc[a] - t1[a] - t2[a] - t3[a]
                if any(acc):
                    total += 1
                    if len(violations) < max_violations:
                        violations.append(DeformationViolation(
                            order, "bracket",
                            (x + 1, y + 1, z + 1, v + 1, w + 1)))
        pairs_n = [(defm.phi_term(i), defm.mu_term(order - i)) for i in range(order + 1)]
        for x, y, z in itertools.combinations(range(n), 3):
            checked += 1
            acc = [ZERO] * n
            for phi_i, mu_j in pairs_n:
                for a, c in enumerate(phi_i.apply(mu_j.eval3(basis[x], basis[y], basis[z]))):
                    acc[a] = acc[a] + c
            for mu_i, phi_j in [(defm.mu_term(i), defm.phi_term(order - i))
                                for i in range(order + 1)]:
                t1 = mu_i.eval3(phi_j.column(x), basis[y], basis[z])
                t2 = mu_i.eval3(basis[x], phi_j.column(y), basis[z])
                t3 = mu_i.eval3(basis[x], basis[y], phi_j.column(z))
                for a in range(n):
                    acc[a] = acc[a] - t1[a] - t2[a] - t3[a]
            if any(acc):
                total += 1
                if len(violations) < max_violations:
                    violations.append(DeformationViolation(
                        order, "derivation", (x + 1, y + 1, z + 1)))
    return DeformationReport(
        ok=total == 0,
        checked=checked,
        violations=tuple(violations),
        truncated=total > len(violations),
    )


def _require_valid(defm: Deformation) -> None:
    report = validate_deformation(defm, max_violations=1)
    if not report.ok:
        v = report.violations[0]
        raise InputError(
            f"deformation fails the {v.family} equation at order {v.order}, tuple {v.at}"
        )


def _pair_term(defm: Deformation, k: int) -> PairCochain:
    return PairCochain(defm.mu[k - 1], Cochain.from_linear_map(defm.phi[k - 1]))


def infinitesimal(defm: Deformation) -> Optional[tuple[int, PairCochain]]:
    """(k, (mu_k, phi_k)) for the first nonzero term, or None when constant.

    The returned pair cochain is certified to be a 2-cocycle of the pair
    complex with self coefficients.
    """
    _require_valid(defm)
    for k in range(1, defm.order + 1):
        if not (defm.mu[k - 1].is_zero() and defm.phi[k - 1].is_zero()):
            pc = _pair_term(defm, k)
            dm = adjoint_module(defm.base)
            if not pair_d(defm.base, dm, pc).is_zero():
                raise AssertionError("first nonzero term is not a 2-cocycle")
            return k, pc
    return None


# ---------------------------------------------------------------------
# Equivalence
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class FormalIso:
    """Truncated formal isomorphism Id + t Phi_1 + ... + t^N Phi_N."""

    order: int
    maps: tuple[QMatrix, ...]

    def __post_init__(self):
        if self.order < 1 or len(self.maps) != self.order:
            raise InputError("formal isomorphism needs maps Phi_1..Phi_N")
        size = self.maps[0].rows
        for m in self.maps:
            if (m.rows, m.cols) != (size, size):
                raise InputError("formal isomorphism maps must be square, equal size")

    @classmethod
    def identity(cls, dim: int, order: int) -> "FormalIso":
        return cls(order, tuple(QMatrix.zero(dim, dim) for _ in range(order)))

    @classmethod
    def single(cls, dim: int, order: int, k: int, phi: QMatrix) -> "FormalIso":
        """Id + t^k phi, truncated at the given order."""
        if not 1 <= k <= order:
            raise InputError("term index outside truncation order")
        maps = [QMatrix.zero(dim, dim) for _ in range(order)]
        maps[k - 1] = phi
        return cls(order, tuple(maps))

    def term(self, i: int) -> QMatrix:
        dim = self.maps[0].rows
        if i == 0:
            return QMatrix.identity(dim)
        return self.maps[i - 1]

    def inverse_terms(self) -> list[QMatrix]:
        """[Id, (inv)_1, ..., (inv)_N] by the series recurrence
        (inv)_k = - sum_{i=1..k} Phi_i (inv)_{k-i}."""
        dim = self.maps[0].rows
        inv: list[QMatrix] = [QMatrix.identity(dim)]
        for k in range(1, self.order + 1):
            acc = QMatrix.zero(dim, dim)
            for i in range(1, k + 1):
                acc = acc + self.term(i) @ inv[k - i]
            inv.append(-acc)
        return inv

    def compose(self, other: "FormalIso") -> "FormalIso":
        """(self o other), truncated at the common order."""
        if self.order != other.order:
            raise InputError("cannot compose isomorphisms of different orders")
        maps = []
        for t in range(1, self.order + 1):
            acc = QMatrix.zero(self.maps[0].rows, self.maps[0].cols)
            for i in range(t + 1):
                acc = acc + self.term(i) @ other.term(t - i)
            maps.append(acc)
        return FormalIso(self.order, tuple(maps))


def apply_equivalence(iso: FormalIso, defm: Deformation) -> Deformation:
    """Transport a deformation along a formal isomorphism:
    mu'_t = Phi_t o mu_t o (Phi_t^-1)x3 and phi'_t = Phi_t o phi_t o Phi_t^-1,
    truncated at the deformation order."""
    if iso.order != defm.order:
        raise InputError("isomorphism and deformation orders differ")
    alg = defm.base.algebra
    n = alg.dim
    if iso.maps[0].rows != n:
        raise InputError("isomorphism dimension does not match the algebra")
    inv = iso.inverse_terms()
    new_mu = []
    new_phi = []
    for t in range(1, defm.order + 1):
        table = {}
        for i, j, k in itertools.combinations(range(n), 3):
            val = [ZERO] * n
            for b in range(t + 1):
                mu_b = defm.mu_term(b)
                for c in range(t - b + 1):
                    xv = inv[c].column(i)
                    for dd in range(t - b - c + 1):
                        yv = inv[dd].column(j)
                        e = t - b - c - dd
                        rest = e  # weight of the last leg and outer map split
                        for a_out in range(rest + 1):
                            zv = inv[rest - a_out].column(k)
                            inner = mu_b.eval3(xv, yv, zv)
                            img = iso.term(a_out).apply(inner)
                            for r, vv in enumerate(img):
                                val[r] = val[r] + vv
            if any(val):
                table[(i, j, k)] = tuple(val)
        new_mu.append(Cochain.from_alternating(n, n, table))
        acc = QMatrix.zero(n, n)
        for a in range(t + 1):
            for b in range(t - a + 1):
                c = t - a - b
                acc = acc + iso.term(a) @ defm.phi_term(b) @ inv[c]
        new_phi.append(acc)
    return Deformation(defm.base, defm.order, tuple(new_mu), tuple(new_phi))


# ---------------------------------------------------------------------
# Obstructions and extension to the next order
# ---------------------------------------------------------------------


def obstruction(defm: Deformation) -> PairCochain:
    """(Ob3, Ob2) obstructing extension to order N+1, certified to be a
    3-cocycle of the pair complex with self coefficients."""
    _require_valid(defm)
    n = defm.base.algebra.dim
    target = defm.order + 1
    ob3 = Cochain.zero(3, n, n)
    ob2 = Cochain.zero(2, n, n)
    for i in range(1, target):
        j = target - i
        if j < 1 or j > defm.order:
            continue
        ob3 = ob3 + bracket(defm.mu[i - 1], defm.mu[j - 1])
        ob2 = ob2 + bracket(Cochain.from_linear_map(defm.phi[i - 1]), defm.mu[j - 1])
    ob3 = ob3.scale(-HALF)
    ob2 = -ob2
    pc = PairCochain(ob3, ob2)
    dm = adjoint_module(defm.base)
    if not pair_d(defm.base, dm, pc).is_zero():
        raise AssertionError("obstruction is not a 3-cocycle")
    return pc


def _alternating_basis(n: int) -> list[dict]:
    out = []
    for triple in itertools.combinations(range(n), 3):
        for a in range(n):
            vec = tuple(ONE if r == a else ZERO for r in range(n))
            out.append({triple: vec})
    return out


def extend_deformation(defm: Deformation) -> Optional[tuple[Cochain, QMatrix]]:
    """(mu_{N+1}, phi_{N+1}) solving the order-(N+1) equations, or None.

    The solve runs over the totally antisymmetric mu candidates only, so
    a successful extension is again a deformation.
    """
    ob = obstruction(defm)
    pair = defm.base
    n = pair.algebra.dim
    dm = adjoint_module(pair)
    d2 = matrix_of_pair_d(pair, dm, 2)
    columns: list[tuple[Fraction, ...]] = []
    alt_basis = _alternating_basis(n)
    for table in alt_basis:
        unit = PairCochain(Cochain.from_alternating(n, n, table))
        columns.append(d2.apply(pair_cochain_to_vec(unit)))
    for a in range(n):
        for b in range(n):
            unit_phi = QMatrix(n, n, {(a, b): ONE})
            unit = PairCochain(Cochain.zero(2, n, n),
                               Cochain.from_linear_map(unit_phi))
            columns.append(d2.apply(pair_cochain_to_vec(unit)))
    system = QMatrix(d2.rows, len(columns),
                     {(r, c): v for c, col in enumerate(columns)
                      for r, v in enumerate(col) if v})
    sol = solve(system, pair_cochain_to_vec(ob))
    if sol is None:
        return None
    table: dict = {}
    for idx, coeff in enumerate(sol[:len(alt_basis)]):
        if coeff:
            ((triple, vec),) = alt_basis[idx].items()
            acc = list(table.get(triple, (ZERO,) * n))
            for r, v in enumerate(vec):
                acc[r] = acc[r] + coeff * v
            table[triple] = tuple(acc)
    mu_next = Cochain.from_alternating(n, n, table)
    phi_data = {}
    base = len(alt_basis)
    for a in range(n):
        for b in range(n):
            v = sol[base + a * n + b]
            if v:
                phi_data[(a, b)] = v
    phi_next = QMatrix(n, n, phi_data)
    extended = Deformation(pair, defm.order + 1,
                           defm.mu + (mu_next,), defm.phi + (phi_next,))
    if not validate_deformation(extended, max_violations=1).ok:
        raise AssertionError("extension solve produced an invalid deformation")
    return mu_next, phi_next


# ---------------------------------------------------------------------
# Trivialization (constructive rigidity probe)
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class TrivializeResult:
    status: str  # "trivial" | "obstructed" | "budget"
    iso: FormalIso
    deformation: Deformation
    obstructed_order: Optional[int] = None
    steps: int = 0


def trivialize_up_to(defm: Deformation,
                     max_steps: Optional[int] = None) -> TrivializeResult:
    """Strip leading terms while they are coboundaries.

    Each step finds the first nonzero (mu_k, phi_k), solves
    (mu_k, phi_k) = (d Phi, -delta Phi) for a linear map Phi, and
    applies Id + t^k Phi.  Stops at a constant deformation, at a
    non-coboundary term ("obstructed"), or when the step budget runs
    out ("budget", partial result).
    """
    _require_valid(defm)
    if max_steps is None:
        max_steps = defm.order
    pair = defm.base
    n = pair.algebra.dim
    dm = adjoint_module(pair)
    d1 = matrix_of_pair_d(pair, dm, 1)
    current = defm
    iso_total = FormalIso.identity(n, defm.order)
    steps = 0
    while True:
        first = None
        for k in range(1, current.order + 1):
            if not (current.mu[k - 1].is_zero() and current.phi[k - 1].is_zero()):
                first = k
                break
        if first is None:
            return TrivializeResult("trivial", iso_total, current, steps=steps)
        if steps >= max_steps:
            return TrivializeResult("budget", iso_total, current,
                                    obstructed_order=None, steps=steps)
        target = pair_cochain_to_vec(_pair_term(current, first))
        sol = solve(d1, target)
        if sol is None:
            return TrivializeResult("obstructed", iso_total, current,
                                    obstructed_order=first, steps=steps)
        phi = vec_to_pair_cochain(1, n, n, sol).f.to_linear_map()
        step_iso = FormalIso.single(n, current.order, first, phi)
        current = apply_equivalence(step_iso, current)
        iso_total = step_iso.compose(iso_total)
        steps += 1
