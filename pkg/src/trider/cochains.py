"""Cochain spaces and the differentials of the derivation-pair complex.

A degree-n cochain is a multilinear map (wedge^2 L)^(n-1) tensor L -> M,
antisymmetric inside each pair slot.  Coefficients are stored densely,
indexed by ordered-pair codes (lexicographic rank of (i, j), i < j) for
the pair slots and a basis index for the final slot.

The module provides

* ``d``      - the coboundary of the 3-Lie complex with coefficients,
* ``delta``  - the derivation twist (insert phi_L into every input leg,
               subtract phi_M after the output),
* ``pair_d`` - the differential of the pair complex
               (f, fbar) |-> (d f, d fbar + (-1)^n delta f),
* ``circ`` / ``bracket`` - the degree -1 graded Lie bracket on
               self-coefficient cochains.

Sign convention for the bracket: the shuffle formula carries (-1)^sigma
in every summand group and a global minus sign, pinned by the
consistency law  d f = (-1)^n [mu, f]  against the explicit coboundary
(n the cochain degree).  With this convention a totally antisymmetric
degree-2 cochain mu satisfies [mu, mu] = 0 exactly when mu is a 3-Lie
bracket, and delta f = [phi, f] for self coefficients.

Operations accept cochain degrees 1..4 (differentials then produce
degree-5 results); beyond that the dense tables are impractical and a
clear error is raised.  All functions are pure; inputs are never
mutated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .core import DerModule, LieDerPair, Representation, ThreeLieAlgebra
from .errors import InputError
from .linalg import QMatrix
from .rationals import ONE, ZERO

DEGREE_CAP = 4


def ordered_pairs(n: int) -> list[tuple[int, int]]:
    """Ordered basis pairs (i < j) in lexicographic order."""
    return list(itertools.combinations(range(n), 2))


def pair_rank(n: int) -> dict[tuple[int, int], int]:
    return {p: c for c, p in enumerate(ordered_pairs(n))}


def norm_pair(i: int, j: int, ranks: dict) -> Optional[tuple[int, int]]:
    """(pair code, sign) for e_i wedge e_j, or None when i == j."""
    if i == j:
        return None
    if i < j:
        return ranks[(i, j)], 1
    return ranks[(j, i)], -1


def _check_degree(degree: int) -> None:
    if not 1 <= degree <= DEGREE_CAP:
        raise InputError(
            f"cochain operations accept degrees 1..{DEGREE_CAP}, got {degree}"
        )


@dataclass(frozen=True)
class Cochain:
    """Dense coefficient table of a degree-n cochain.

    ``coeffs[flat]`` is the value vector in M at the basis tuple whose
    flat index is ``flat = (((p_1*D + p_2)*D + ...))*alg_dim + last``.
    """

    degree: int
    alg_dim: int
    mod_dim: int
    coeffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.degree < 1:
            raise InputError(f"cochain degree must be >= 1, got {self.degree}")
        if self.alg_dim < 1 or self.mod_dim < 1:
            raise InputError("cochain dimensions must be positive")
        D = len(ordered_pairs(self.alg_dim))
        size = (D ** (self.degree - 1)) * self.alg_dim
        if len(self.coeffs) != size:
            raise InputError(
                f"coefficient table has {len(self.coeffs)} entries, expected {size}"
            )
        for vec in self.coeffs:
            if len(vec) != self.mod_dim:
                raise InputError("coefficient vector has wrong module dimension")

    # -- construction ---------------------------------------------------

    @classmethod
    def zero(cls, degree: int, alg_dim: int, mod_dim: int) -> "Cochain":
        D = len(ordered_pairs(alg_dim))
        size = (D ** (degree - 1)) * alg_dim
        z = (ZERO,) * mod_dim
        return cls(degree, alg_dim, mod_dim, (z,) * size)

    @classmethod
    def from_entries(cls, degree: int, alg_dim: int, mod_dim: int,
                     entries: dict) -> "Cochain":
        """Build from {(pair_codes tuple, last index): value vector}."""
        D = len(ordered_pairs(alg_dim))
        size = (D ** (degree - 1)) * alg_dim
        table = [(ZERO,) * mod_dim] * size
        for (pairs, last), vec in entries.items():
            flat = _flat_index(D, alg_dim, pairs, last)
            if flat >= size:
                raise InputError("entry index out of range")
            table[flat] = tuple(
                v if isinstance(v, Fraction) else Fraction(v) for v in vec
            )
        return cls(degree, alg_dim, mod_dim, tuple(table))

    @classmethod
    def from_linear_map(cls, mat: QMatrix) -> "Cochain":
        """Degree-1 cochain from an m x n matrix (columns are values)."""
        return cls(1, mat.cols, mat.rows,
                   tuple(mat.column(ell) for ell in range(mat.cols)))

    @classmethod
    def from_alternating(cls, alg_dim: int, mod_dim: int,
                         table: dict) -> "Cochain":
        """Degree-2 cochain from a totally antisymmetric table
        {(i<j<k): value vector}; evaluation signs are filled in."""
        z = (ZERO,) * mod_dim
        entries = {}
        ranks = pair_rank(alg_dim)
        for (i, j), code in ranks.items():
            for ell in range(alg_dim):
                if ell == i or ell == j:
                    continue
                key, sign = _sort3(i, j, ell)
                vec = table.get(key)
                if vec is None:
                    continue
                vec = tuple(v if isinstance(v, Fraction) else Fraction(v) for v in vec)
                if sign < 0:
                    vec = tuple(-v for v in vec)
                if any(vec):
                    entries[((code,), ell)] = vec
        return cls.from_entries(2, alg_dim, mod_dim, entries)

    # -- access ---------------------------------------------------------

    def flat_index(self, pairs: Sequence[int], last: int) -> int:
        D = len(ordered_pairs(self.alg_dim))
        return _flat_index(D, self.alg_dim, pairs, last)

    def coeff(self, pairs: Sequence[int], last: int) -> tuple[Fraction, ...]:
        return self.coeffs[self.flat_index(pairs, last)]

    def to_linear_map(self) -> QMatrix:
        if self.degree != 1:
            raise InputError("only degree-1 cochains are linear maps")
        data = {}
        for ell in range(self.alg_dim):
            for a, v in enumerate(self.coeffs[ell]):
                if v:
                    data[(a, ell)] = v
        return QMatrix(self.mod_dim, self.alg_dim, data)

    def index_tuples(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """All (pair codes, last) tuples in flat order."""
        D = len(ordered_pairs(self.alg_dim))
        for pairs in itertools.product(range(D), repeat=self.degree - 1):
            for ell in range(self.alg_dim):
                yield pairs, ell

    # -- linear structure -------------------------------------------------

    def _compatible(self, other: "Cochain") -> None:
        if (self.degree, self.alg_dim, self.mod_dim) != (
                other.degree, other.alg_dim, other.mod_dim):
            raise InputError("cochain shape mismatch")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.degree, self.alg_dim, self.mod_dim, tuple(
            tuple(a + b for a, b in zip(va, vb))
            for va, vb in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.degree, self.alg_dim, self.mod_dim, tuple(
            tuple(a - b for a, b in zip(va, vb))
            for va, vb in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Cochain":
        return self.scale(Fraction(-1))

    def scale(self, factor: Fraction) -> "Cochain":
        return Cochain(self.degree, self.alg_dim, self.mod_dim, tuple(
            tuple(factor * v for v in vec) for vec in self.coeffs))

    def is_zero(self) -> bool:
        return all(not v for vec in self.coeffs for v in vec)

    # -- evaluation -------------------------------------------------------

    def eval(self, pair_args: Sequence[tuple[Sequence[Fraction], Sequence[Fraction]]],
             last_arg: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Multilinear extension to arbitrary vectors.

        ``pair_args`` are (x, y) vector pairs for the wedge slots.
        """
        if len(pair_args) != self.degree - 1:
            raise InputError(
                f"degree-{self.degree} cochain takes {self.degree - 1} pair arguments"
            )
        n = self.alg_dim
        if any(len(x) != n or len(y) != n for x, y in pair_args) or len(last_arg) != n:
            raise InputError("argument dimension mismatch")
        pairs = ordered_pairs(n)
        weights = []
        for x, y in pair_args:
            slot = {}
            for c, (i, j) in enumerate(pairs):
                w = x[i] * y[j] - x[j] * y[i]
                if w:
                    slot[c] = w
            weights.append(slot)
        out = [ZERO] * self.mod_dim
        last_nz = [(ell, v) for ell, v in enumerate(last_arg) if v]
        for combo in itertools.product(*(slot.items() for slot in weights)):
            codes = tuple(c for c, _ in combo)
            w = ONE
            for _, f in combo:
                w *= f
            for ell, zv in last_nz:
                vec = self.coeff(codes, ell)
                factor = w * zv
                for a, v in enumerate(vec):
                    if v:
                        out[a] = out[a] + factor * v
        return tuple(out)

    def eval3(self, x: Sequence[Fraction], y: Sequence[Fraction],
              z: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Trilinear evaluation of a degree-2 cochain."""
        if self.degree != 2:
            raise InputError("eval3 needs a degree-2 cochain")
        return self.eval([(x, y)], z)


def _flat_index(D: int, alg_dim: int, pairs: Sequence[int], last: int) -> int:
    flat = 0
    for p in pairs:
        if not 0 <= p < D:
            raise InputError(f"pair code {p} out of range")
        flat = flat * D + p
    if not 0 <= last < alg_dim:
        raise InputError(f"final index {last} out of range")
    return flat * alg_dim + last


def _sort3(i: int, j: int, k: int) -> tuple[tuple[int, int, int], int]:
    idx = [i, j, k]
    sign = 1
    for a in range(1, 3):
        b = a
        while b and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    return (idx[0], idx[1], idx[2]), sign


def alternating_table(f: Cochain) -> dict[tuple[int, int, int], tuple[Fraction, ...]]:
    """Values of a degree-2 cochain on increasing triples."""
    if f.degree != 2:
        raise InputError("alternating_table needs a degree-2 cochain")
    ranks = pair_rank(f.alg_dim)
    out = {}
    for (i, j, k) in itertools.combinations(range(f.alg_dim), 3):
        vec = f.coeff((ranks[(i, j)],), k)
        if any(vec):
            out[(i, j, k)] = vec
    return out


def is_fully_antisymmetric(f: Cochain) -> bool:
    """True when the degree-2 cochain is alternating in all three slots."""
    rebuilt = Cochain.from_alternating(f.alg_dim, f.mod_dim, alternating_table(f))
    return rebuilt == f


def bracket_cochain(alg: ThreeLieAlgebra) -> Cochain:
    """The bracket of the algebra as a degree-2 self-coefficient cochain."""
    return Cochain.from_alternating(alg.dim, alg.dim, dict(alg.constants))


@dataclass(frozen=True)
class PairCochain:
    """Element (f, fbar) of C^n + C^(n-1); degree 1 has no fbar."""

    f: Cochain
    fbar: Optional[Cochain] = None

    def __post_init__(self):
        if self.f.degree == 1:
            if self.fbar is not None:
                raise InputError("degree-1 pair cochains have no fbar component")
            return
        fbar = self.fbar
        if fbar is None:
            fbar = Cochain.zero(self.f.degree - 1, self.f.alg_dim, self.f.mod_dim)
            object.__setattr__(self, "fbar", fbar)
        if fbar.degree != self.f.degree - 1:
            raise InputError("fbar degree must be one below f")
        if (fbar.alg_dim, fbar.mod_dim) != (self.f.alg_dim, self.f.mod_dim):
            raise InputError("pair cochain components have different dimensions")

    @property
    def degree(self) -> int:
        return self.f.degree

    @property
    def alg_dim(self) -> int:
        return self.f.alg_dim

    @property
    def mod_dim(self) -> int:
        return self.f.mod_dim

    @classmethod
    def zero(cls, degree: int, alg_dim: int, mod_dim: int) -> "PairCochain":
        if degree == 1:
            return cls(Cochain.zero(1, alg_dim, mod_dim))
        return cls(Cochain.zero(degree, alg_dim, mod_dim),
                   Cochain.zero(degree - 1, alg_dim, mod_dim))

    def __add__(self, other: "PairCochain") -> "PairCochain":
        if self.degree == 1:
            return PairCochain(self.f + other.f)
        return PairCochain(self.f + other.f, self.fbar + other.fbar)

    def __sub__(self, other: "PairCochain") -> "PairCochain":
        if self.degree == 1:
            return PairCochain(self.f - other.f)
        return PairCochain(self.f - other.f, self.fbar - other.fbar)

    def __neg__(self) -> "PairCochain":
        return self.scale(Fraction(-1))

    def scale(self, factor: Fraction) -> "PairCochain":
        if self.degree == 1:
            return PairCochain(self.f.scale(factor))
        return PairCochain(self.f.scale(factor), self.fbar.scale(factor))

    def is_zero(self) -> bool:
        return self.f.is_zero() and (self.fbar is None or self.fbar.is_zero())


# ---------------------------------------------------------------------
# Coboundary d
# ---------------------------------------------------------------------


def _d_contributions(alg: ThreeLieAlgebra, rep: Representation, degree: int,
                     out_pairs: tuple[int, ...], out_last: int,
                     pairs: list[tuple[int, int]], ranks: dict):
    """Terms of (d f)[out_pairs, out_last] as reads of f.

    Yields (in_pairs, in_last, weight, rho_matrix_or_None); a plain term
    adds weight * f[in], a rho term adds weight * rho @ f[in].
    """
    n = degree  # f has n-1 pair slots; the output tuple has n
    boundary_sign = ONE if (n + 1) % 2 == 0 else -ONE
    i_n, j_n = pairs[out_pairs[-1]]
    lead = out_pairs[:-1]
    # rho(y_n, x_{n+1}) f(X_1..X_{n-1}, x_n) and rho(x_{n+1}, x_n) f(..., y_n)
    yield lead, i_n, boundary_sign, rep.rho_basis(j_n, out_last)
    yield lead, j_n, boundary_sign, rep.rho_basis(out_last, i_n)
    for t in range(n):
        i_t, j_t = pairs[out_pairs[t]]
        rest = out_pairs[:t] + out_pairs[t + 1:]
        sign_t = ONE if t % 2 == 0 else -ONE
        # rho(x_j, y_j) f(..X^_j.., x_{n+1})
        yield rest, out_last, sign_t, rep.rho_basis(i_t, j_t)
        # -f(..X^_j.., [x_j, y_j, x_{n+1}])
        w = alg.bracket_basis(i_t, j_t, out_last)
        for b, c in enumerate(w):
            if c:
                yield rest, b, -sign_t * c, None
        # -f(..X^_j.., slot u -> [x_j,y_j,x_u] ^ y_u + x_u ^ [x_j,y_j,y_u], ..)
        for u in range(t + 1, n):
            i_u, j_u = pairs[out_pairs[u]]
            pos = u - 1  # slot index of u within `rest`
            w1 = alg.bracket_basis(i_t, j_t, i_u)
            for b, c in enumerate(w1):
                if c:
                    np_ = norm_pair(b, j_u, ranks)
                    if np_ is not None:
                        code, s = np_
                        args = rest[:pos] + (code,) + rest[pos + 1:]
                        yield args, out_last, -sign_t * c * s, None
            w2 = alg.bracket_basis(i_t, j_t, j_u)
            for b, c in enumerate(w2):
                if c:
                    np_ = norm_pair(i_u, b, ranks)
                    if np_ is not None:
                        code, s = np_
                        args = rest[:pos] + (code,) + rest[pos + 1:]
                        yield args, out_last, -sign_t * c * s, None


def d(alg: ThreeLieAlgebra, rep: Representation, f: Cochain) -> Cochain:
    """Coboundary C^n -> C^(n+1) of the 3-Lie complex with coefficients."""
    _check_degree(f.degree)
    if f.alg_dim != alg.dim or f.alg_dim != rep.alg_dim or f.mod_dim != rep.mod_dim:
        raise InputError("cochain does not match algebra/representation dimensions")
    n = f.degree
    pairs = ordered_pairs(alg.dim)
    ranks = pair_rank(alg.dim)
    D = len(pairs)
    table = []
    for out_pairs in itertools.product(range(D), repeat=n):
        for out_last in range(alg.dim):
            acc = [ZERO] * f.mod_dim
            for in_pairs, in_last, w, rho in _d_contributions(
                    alg, rep, n, out_pairs, out_last, pairs, ranks):
                vec = f.coeff(in_pairs, in_last)
                if rho is None:
                    for a, v in enumerate(vec):
                        if v:
                            acc[a] = acc[a] + w * v
                else:
                    if any(vec):
                        img = rho.apply(vec)
                        for a, v in enumerate(img):
                            if v:
                                acc[a] = acc[a] + w * v
            table.append(tuple(acc))
    return Cochain(n + 1, f.alg_dim, f.mod_dim, tuple(table))


# ---------------------------------------------------------------------
# Derivation twist delta
# ---------------------------------------------------------------------


def _delta_contributions(phi: QMatrix, degree: int,
                         out_pairs: tuple[int, ...], out_last: int,
                         pairs: list[tuple[int, int]], ranks: dict):
    """Insertion terms of (delta f)[out]; the -phi_M term is handled by
    the caller.  Yields (in_pairs, in_last, weight)."""
    for t, code in enumerate(out_pairs):
        i_t, j_t = pairs[code]
        for b, c in enumerate(phi.column(i_t)):
            if c:
                np_ = norm_pair(b, j_t, ranks)
                if np_ is not None:
                    pc, s = np_
                    yield out_pairs[:t] + (pc,) + out_pairs[t + 1:], out_last, c * s
        for b, c in enumerate(phi.column(j_t)):
            if c:
                np_ = norm_pair(i_t, b, ranks)
                if np_ is not None:
                    pc, s = np_
                    yield out_pairs[:t] + (pc,) + out_pairs[t + 1:], out_last, c * s
    for b, c in enumerate(phi.column(out_last)):
        if c:
            yield out_pairs, b, c


def delta(pair: LieDerPair, dermod: DerModule, f: Cochain) -> Cochain:
    """Derivation twist: phi_L inserted into every leg, phi_M subtracted."""
    _check_degree(f.degree)
    alg = pair.algebra
    if f.alg_dim != alg.dim or f.mod_dim != dermod.rep.mod_dim:
        raise InputError("cochain does not match pair/module dimensions")
    pairs = ordered_pairs(alg.dim)
    ranks = pair_rank(alg.dim)
    D = len(pairs)
    phi, phi_m = pair.phi, dermod.phi_m
    table = []
    for out_pairs in itertools.product(range(D), repeat=f.degree - 1):
        for out_last in range(alg.dim):
            acc = [ZERO] * f.mod_dim
            for in_pairs, in_last, w in _delta_contributions(
                    phi, f.degree, out_pairs, out_last, pairs, ranks):
                vec = f.coeff(in_pairs, in_last)
                for a, v in enumerate(vec):
                    if v:
                        acc[a] = acc[a] + w * v
            base = f.coeff(out_pairs, out_last)
            if any(base):
                img = phi_m.apply(base)
                for a, v in enumerate(img):
                    if v:
                        acc[a] = acc[a] - v
            table.append(tuple(acc))
    return Cochain(f.degree, f.alg_dim, f.mod_dim, tuple(table))


def pair_d(pair: LieDerPair, dermod: DerModule, pc: PairCochain) -> PairCochain:
    """Differential of the pair complex:
    (f, fbar) |-> (d f, d fbar + (-1)^n delta f)."""
    n = pc.degree
    _check_degree(n)
    alg, rep = pair.algebra, dermod.rep
    df = d(alg, rep, pc.f)
    twist = delta(pair, dermod, pc.f)
    if n % 2 == 1:
        twist = -twist
    if pc.fbar is None:
        return PairCochain(df, twist)
    return PairCochain(df, d(alg, rep, pc.fbar) + twist)


# ---------------------------------------------------------------------
# Graded bracket on self-coefficient cochains
# ---------------------------------------------------------------------


def _shuffles(p: int, q: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """(p, q)-shuffles of range(p + q): (first block, second block, sign)."""
    universe = range(p + q)
    for first in itertools.combinations(universe, p):
        second = tuple(x for x in universe if x not in first)
        inversions = 0
        for a in first:
            for b in second:
                if b < a:
                    inversions += 1
        yield first, second, (1 if inversions % 2 == 0 else -1)


def _require_self(f: Cochain) -> None:
    if f.mod_dim != f.alg_dim:
        raise InputError("graded bracket needs self-coefficient cochains")


def circ(f: Cochain, g: Cochain) -> Cochain:
    """Insertion product of self-coefficient cochains (degree m+n+1 for
    inputs of degrees m+1 and n+1)."""
    _require_self(f)
    _require_self(g)
    if f.alg_dim != g.alg_dim:
        raise InputError("cochains over different algebras")
    _check_degree(f.degree)
    _check_degree(g.degree)
    m = f.degree - 1
    n = g.degree - 1
    out_degree = m + n + 1
    if out_degree > DEGREE_CAP + 1:
        raise InputError(
            f"composition degree {out_degree} exceeds the supported range"
        )
    dim = f.alg_dim
    pairs = ordered_pairs(dim)
    ranks = pair_rank(dim)
    D = len(pairs)
    sign_kn = {}
    for k in range(1, m + 2):
        sign_kn[k] = ONE if ((k - 1) * n) % 2 == 0 else -ONE

    table = []
    for out_pairs in itertools.product(range(D), repeat=m + n):
        for out_last in range(dim):
            acc = [ZERO] * dim
            # pair-slot insertions, k = 1..m (1-based)
            for k in range(1, m + 1):
                anchor = k + n - 1  # 0-based position of the host pair
                i_a, j_a = pairs[out_pairs[anchor]]
                tail = out_pairs[anchor + 1:]
                for lead_pos, g_pos, sgn in _shuffles(k - 1, n):
                    lead = tuple(out_pairs[a] for a in lead_pos)
                    g_slots = tuple(out_pairs[b] for b in g_pos)
                    base = sign_kn[k] * sgn
                    # g eats the x-leg of the host pair
                    gv = g.coeff(g_slots, i_a)
                    for b, c in enumerate(gv):
                        if c:
                            np_ = norm_pair(b, j_a, ranks)
                            if np_ is not None:
                                code, s = np_
                                vec = f.coeff(lead + (code,) + tail, out_last)
                                w = base * c * s
                                for a, v in enumerate(vec):
                                    if v:
                                        acc[a] = acc[a] + w * v
                    # g eats the y-leg of the host pair
                    gv = g.coeff(g_slots, j_a)
                    for b, c in enumerate(gv):
                        if c:
                            np_ = norm_pair(i_a, b, ranks)
                            if np_ is not None:
                                code, s = np_
                                vec = f.coeff(lead + (code,) + tail, out_last)
                                w = base * c * s
                                for a, v in enumerate(vec):
                                    if v:
                                        acc[a] = acc[a] + w * v
            # final-leg insertion, k = m+1
            for lead_pos, g_pos, sgn in _shuffles(m, n):
                lead = tuple(out_pairs[a] for a in lead_pos)
                g_slots = tuple(out_pairs[b] for b in g_pos)
                base = sign_kn[m + 1] * sgn
                gv = g.coeff(g_slots, out_last)
                for b, c in enumerate(gv):
                    if c:
                        vec = f.coeff(lead, b)
                        w = base * c
                        for a, v in enumerate(vec):
                            if v:
                                acc[a] = acc[a] + w * v
            # global sign fixing d f = (-1)^n [mu, f]
            table.append(tuple(-v for v in acc))
    return Cochain(out_degree, dim, dim, tuple(table))


def bracket(f: Cochain, g: Cochain) -> Cochain:
    """Graded Lie bracket [f, g] = f o g - (-1)^{mn} g o f."""
    m = f.degree - 1
    n = g.degree - 1
    fg = circ(f, g)
    gf = circ(g, f)
    if (m * n) % 2 == 0:
        return fg - gf
    return fg + gf
