"""Exact linear algebra over Q: sparse rational matrices plus
fraction-free rank / kernel / solve.

The elimination scales each row to integers (lcm of denominators), then
runs a fraction-free sweep: the pivot for a column is the candidate row
whose entry has the smallest absolute numerator (ties broken by lowest
original row index), rows that meet the pivot column are updated by the
cross-multiplication rule ``row' = p*row - row[c]*pivrow`` and divided
by their integer content.  The pivot rule is fixed so that every result
is deterministic and independent of storage layout.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import InputError
from .rationals import ONE, ZERO


class QMatrix:
    """Sparse exact rational matrix (triplet storage).

    Also serves as the linear-map type: derivations, sections, module
    maps and degree-1 cochains are all QMatrix values.  Instances are
    treated as immutable; all operations return new matrices.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[dict] = None):
        if rows < 0 or cols < 0:
            raise InputError(f"bad matrix shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], Fraction] = {}
        for (r, c), v in (data or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise InputError(f"entry ({r},{c}) outside {rows}x{cols}")
            f = v if isinstance(v, Fraction) else Fraction(v)
            if f:
                clean[(r, c)] = f
        self.data = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def from_rows(cls, entries: Sequence[Sequence]) -> "QMatrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        data = {}
        for r, row in enumerate(entries):
            if len(row) != cols:
                raise InputError("ragged matrix rows")
            for c, v in enumerate(row):
                f = v if isinstance(v, Fraction) else Fraction(v)
                if f:
                    data[(r, c)] = f
        return cls(rows, cols, data)

    # -- access -------------------------------------------------------

    def entry(self, r: int, c: int) -> Fraction:
        return self.data.get((r, c), ZERO)

    def to_rows(self) -> list[list[Fraction]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.data.items():
            out[r][c] = v
        return out

    def column(self, c: int) -> tuple[Fraction, ...]:
        col = [ZERO] * self.rows
        for (r, cc), v in self.data.items():
            if cc == c:
                col[r] = v
        return tuple(col)

    def is_zero(self) -> bool:
        return not self.data

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        data = dict(self.data)
        for k, v in other.data.items():
            data[k] = data.get(k, ZERO) + v
        return QMatrix(self.rows, self.cols, data)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        data = dict(self.data)
        for k, v in other.data.items():
            data[k] = data.get(k, ZERO) - v
        return QMatrix(self.rows, self.cols, data)

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols, {k: -v for k, v in self.data.items()})

    def __mul__(self, scalar) -> "QMatrix":
        f = scalar if isinstance(scalar, Fraction) else Fraction(scalar)
        return QMatrix(self.rows, self.cols, {k: v * f for k, v in self.data.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise InputError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in other.data.items():
            by_row.setdefault(r, []).append((c, v))
        acc: dict[tuple[int, int], Fraction] = {}
        for (r, k), a in self.data.items():
            for c, b in by_row.get(k, ()):
                key = (r, c)
                acc[key] = acc.get(key, ZERO) + a * b
        return QMatrix(self.rows, other.cols, acc)

    def apply(self, vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise InputError(f"vector length {len(vec)} != cols {self.cols}")
        out = [ZERO] * self.rows
        for (r, c), v in self.data.items():
            x = vec[c]
            if x:
                out[r] = out[r] + v * x
        return tuple(out)

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.data.items()})

    # -- misc ---------------------------------------------------------

    def _same_shape(self, other: "QMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise InputError(
                f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.data.items())))

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols}, nnz={len(self.data)})"


def block(parts: Sequence[Sequence[Optional[QMatrix]]],
          row_sizes: Sequence[int], col_sizes: Sequence[int]) -> QMatrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    rows = sum(row_sizes)
    cols = sum(col_sizes)
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    data: dict[tuple[int, int], Fraction] = {}
    for i, row_parts in enumerate(parts):
        for j, part in enumerate(row_parts):
            if part is None:
                continue
            if part.rows != row_sizes[i] or part.cols != col_sizes[j]:
                raise InputError("block shape mismatch")
            for (r, c), v in part.data.items():
                data[(roff[i] + r, coff[j] + c)] = v
    return QMatrix(rows, cols, data)


# ---------------------------------------------------------------------
# Fraction-free elimination
# ---------------------------------------------------------------------


def _int_rows(m: QMatrix, extra: Optional[Sequence[Fraction]] = None) -> list[dict[int, int]]:
    """Integer-scaled sparse rows; ``extra`` appends one column (index m.cols)."""
    rows: list[dict[int, Fraction]] = [dict() for _ in range(m.rows)]
    for (r, c), v in m.data.items():
        rows[r][c] = v
    if extra is not None:
        if len(extra) != m.rows:
            raise InputError(f"rhs length {len(extra)} != rows {m.rows}")
        for r, v in enumerate(extra):
            if v:
                rows[r][m.cols] = v
    out = []
    for row in rows:
        if not row:
            out.append({})
            continue
        scale = lcm(*(v.denominator for v in row.values()))
        out.append({c: int(v * scale) for c, v in row.items()})
    return out


def _normalize_content(row: dict[int, int]) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for c in row:
            row[c] //= g


def _eliminate(rows: list[dict[int, int]], ncols: int):
    """Forward sweep over columns 0..ncols-1.

    Returns (echelon, free_cols, leftover) where echelon is a list of
    (pivot_row_dict, pivot_col) in pivot-column order and leftover holds
    the never-pivoted rows (used for consistency checks in solves).
    """
    active: list[tuple[int, dict[int, int]]] = [
        (i, dict(row)) for i, row in enumerate(rows) if row
    ]
    echelon: list[tuple[dict[int, int], int]] = []
    free_cols: list[int] = []
    for col in range(ncols):
        best = None
        for pos, (orig, row) in enumerate(active):
            v = row.get(col)
            if v:
                key = (abs(v), orig)
                if best is None or key < best[0]:
                    best = (key, pos)
        if best is None:
            free_cols.append(col)
            continue
        _, pos = best
        _, prow = active.pop(pos)
        pval = prow[col]
        survivors: list[tuple[int, dict[int, int]]] = []
        for orig, row in active:
            rc = row.get(col)
            if not rc:
                survivors.append((orig, row))
                continue
            new: dict[int, int] = {}
            for j, v in row.items():
                if j != col:
                    new[j] = pval * v
            for j, v in prow.items():
                if j == col:
                    continue
                w = new.get(j, 0) - rc * v
                if w:
                    new[j] = w
                elif j in new:
                    del new[j]
            if new:
                _normalize_content(new)
                survivors.append((orig, new))
        active = survivors
        echelon.append((prow, col))
    leftover = [row for _, row in active]
    return echelon, free_cols, leftover


def rank(m: QMatrix) -> int:
    """Exact rank via fraction-free elimination."""
    echelon, _, _ = _eliminate(_int_rows(m), m.cols)
    return len(echelon)


def kernel_basis(m: QMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel, one vector per free column.

    The vector for free column f has a 1 at f, zeros at other free
    columns, and back-substituted values at the pivot columns.
    """
    echelon, free_cols, _ = _eliminate(_int_rows(m), m.cols)
    basis = []
    for f in free_cols:
        x: dict[int, Fraction] = {f: ONE}
        for prow, pc in reversed(echelon):
            s = ZERO
            for j, v in prow.items():
                if j != pc:
                    xj = x.get(j)
                    if xj:
                        s += v * xj
            if s:
                x[pc] = -s / prow[pc]
        basis.append(tuple(x.get(c, ZERO) for c in range(m.cols)))
    return basis


def solve(m: QMatrix, b: Sequence[Fraction]) -> Optional[tuple[Fraction, ...]]:
    """One exact solution of m @ x = b, or None if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    bcol = m.cols
    echelon, _, leftover = _eliminate(_int_rows(m, extra=list(b)), m.cols)
    for row in leftover:
        if row.get(bcol):
            return None
    x: dict[int, Fraction] = {}
    for prow, pc in reversed(echelon):
        s = Fraction(prow.get(bcol, 0))
        for j, v in prow.items():
            if j != pc and j != bcol:
                xj = x.get(j)
                if xj:
                    s -= v * xj
        x[pc] = s / prow[pc]
    return tuple(x.get(c, ZERO) for c in range(m.cols))


def left_inverse(m: QMatrix) -> QMatrix:
    """A left inverse of an injective matrix (raises if none exists)."""
    mt = m.transpose()
    rows = []
    for k in range(m.cols):
        unit = [ONE if i == k else ZERO for i in range(m.cols)]
        sol = solve(mt, unit)
        if sol is None:
            raise InputError("matrix has no left inverse (not injective)")
        rows.append(list(sol))
    return QMatrix.from_rows(rows)


class RowSpace:
    """Incrementally built row space over Q; reports rank growth.

    Used to extend an image basis to a kernel basis when extracting
    cohomology representatives.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivots: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def insert(self, vec: Iterable[Fraction]) -> bool:
        """Add a vector; True if it enlarged the space."""
        row = {c: v for c, v in enumerate(vec) if v}
        while row:
            lead = min(row)
            piv = self._pivots.get(lead)
            if piv is None:
                scale = row[lead]
                self._pivots[lead] = {c: v / scale for c, v in row.items()}
                return True
            coef = row[lead]
            for c, v in piv.items():
                w = row.get(c, ZERO) - coef * v
                if w:
                    row[c] = w
                elif c in row:
                    del row[c]
        return False
