"""Exact dense linear algebra over K_d, plus numeric inertia of Hermitian forms.

Matrices are immutable, row-major, with every entry sharing one modulus d.
Everything except :func:`inertia` is exact; inertia embeds the matrix
numerically and is always cross-checked elsewhere against closed formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .cyclo import CycloNum, _raw_add, _raw_mul, from_strings, to_strings
from .errors import (
    AmbiguousSign,
    ModulusMismatch,
    NotAntiHermitian,
    ShapeMismatch,
    Singular,
)

Vector = tuple[CycloNum, ...]


@dataclass(frozen=True)
class CycloMatrix:
    d: int
    rows: int
    cols: int
    entries: tuple[CycloNum, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(f"{self.rows}x{self.cols} needs {self.rows * self.cols} entries")
        for e in self.entries:
            if e.d != self.d:
                raise ModulusMismatch(f"entry modulus {e.d} != {self.d}")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_rows(d: int, rows: Sequence[Sequence[CycloNum]]) -> CycloMatrix:
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ShapeMismatch("ragged rows")
        return CycloMatrix(d, r, c, tuple(x for row in rows for x in row))

    @staticmethod
    def identity(d: int, n: int) -> CycloMatrix:
        one, zero = CycloNum.one(d), CycloNum.zero(d)
        return CycloMatrix(d, n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @staticmethod
    def zeros(d: int, rows: int, cols: int) -> CycloMatrix:
        zero = CycloNum.zero(d)
        return CycloMatrix(d, rows, cols, (zero,) * (rows * cols))

    @staticmethod
    def diagonal(d: int, values: Sequence[CycloNum]) -> CycloMatrix:
        n = len(values)
        zero = CycloNum.zero(d)
        return CycloMatrix(d, n, n, tuple(values[i] if i == j else zero for i in range(n) for j in range(n)))

    # -- access -----------------------------------------------------------

    def entry(self, i: int, j: int) -> CycloNum:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list[list[CycloNum]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> CycloMatrix:
        return CycloMatrix(
            self.d,
            len(row_idx),
            len(col_idx),
            tuple(self.entry(i, j) for i in row_idx for j in col_idx),
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- exact algebra ------------------------------------------------------

    def _check(self, other: CycloMatrix) -> None:
        if self.d != other.d:
            raise ModulusMismatch(f"moduli {self.d} and {other.d}")

    def __add__(self, other: CycloMatrix) -> CycloMatrix:
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("addition shapes differ")
        return CycloMatrix(self.d, self.rows, self.cols,
                           tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: CycloMatrix) -> CycloMatrix:
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("subtraction shapes differ")
        return CycloMatrix(self.d, self.rows, self.cols,
                           tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> CycloMatrix:
        return CycloMatrix(self.d, self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: CycloNum | int | Fraction) -> CycloMatrix:
        return CycloMatrix(self.d, self.rows, self.cols, tuple(a * c for a in self.entries))

    def __matmul__(self, other: CycloMatrix) -> CycloMatrix:
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        d = self.d
        a = [(e.num, e.den) if e else None for e in self.entries]
        b = [(e.num, e.den) if e else None for e in other.entries]
        n, m, p = self.rows, self.cols, other.cols
        out: list[CycloNum] = []
        zero = CycloNum.zero(d)
        for i in range(n):
            arow = a[i * m : (i + 1) * m]
            for j in range(p):
                acc: tuple[tuple[int, ...], int] | None = None
                for l in range(m):
                    x = arow[l]
                    if x is None:
                        continue
                    y = b[l * p + j]
                    if y is None:
                        continue
                    term = _raw_mul(d, x, y)
                    acc = term if acc is None else _raw_add(acc, term)
                if acc is None or not any(acc[0]):
                    out.append(zero)
                else:
                    out.append(CycloNum(d, acc[0], acc[1]))
        return CycloMatrix(d, n, p, tuple(out))

    def apply(self, v: Vector) -> Vector:
        """Matrix times column coordinate vector."""
        if len(v) != self.cols:
            raise ShapeMismatch(f"vector length {len(v)} != cols {self.cols}")
        return tuple(
            sum((self.entry(i, j) * v[j] for j in range(self.cols) if v[j]), CycloNum.zero(self.d))
            for i in range(self.rows)
        )

    def transpose(self) -> CycloMatrix:
        return CycloMatrix(self.d, self.cols, self.rows,
                           tuple(self.entry(j, i) for i in range(self.cols) for j in range(self.rows)))

    def conj(self) -> CycloMatrix:
        return CycloMatrix(self.d, self.rows, self.cols, tuple(e.conj() for e in self.entries))

    def conj_transpose(self) -> CycloMatrix:
        return self.conj().transpose()

    def galois(self, t: int) -> CycloMatrix:
        return CycloMatrix(self.d, self.rows, self.cols, tuple(e.galois(t) for e in self.entries))

    def trace(self) -> CycloNum:
        if not self.is_square():
            raise ShapeMismatch("trace of a non-square matrix")
        acc = CycloNum.zero(self.d)
        for i in range(self.rows):
            acc = acc + self.entry(i, i)
        return acc

    def det(self) -> CycloNum:
        """Determinant by exact Gaussian elimination."""
        if not self.is_square():
            raise ShapeMismatch("determinant of a non-square matrix")
        n = self.rows
        m = self.to_lists()
        sign = 1
        det = CycloNum.one(self.d)
        for j in range(n):
            pivot = next((i for i in range(j, n) if m[i][j]), None)
            if pivot is None:
                return CycloNum.zero(self.d)
            if pivot != j:
                m[j], m[pivot] = m[pivot], m[j]
                sign = -sign
            p = m[j][j]
            det = det * p
            pinv = p.inv()
            for i in range(j + 1, n):
                f = m[i][j]
                if f:
                    f = f * pinv
                    for l in range(j, n):
                        m[i][l] = m[i][l] - f * m[j][l]
        return det if sign == 1 else -det

    def inverse(self) -> CycloMatrix:
        """Exact inverse; raises Singular when rank < size."""
        if not self.is_square():
            raise ShapeMismatch("inverse of a non-square matrix")
        n = self.rows
        m = self.to_lists()
        inv = CycloMatrix.identity(self.d, n).to_lists()
        for j in range(n):
            pivot = next((i for i in range(j, n) if m[i][j]), None)
            if pivot is None:
                raise Singular(f"rank < {n}")
            if pivot != j:
                m[j], m[pivot] = m[pivot], m[j]
                inv[j], inv[pivot] = inv[pivot], inv[j]
            pinv = m[j][j].inv()
            m[j] = [x * pinv for x in m[j]]
            inv[j] = [x * pinv for x in inv[j]]
            for i in range(n):
                if i != j and m[i][j]:
                    f = m[i][j]
                    m[i] = [x - f * y for x, y in zip(m[i], m[j])]
                    inv[i] = [x - f * y for x, y in zip(inv[i], inv[j])]
        return CycloMatrix.from_rows(self.d, inv)

    def solve(self, rhs: Vector) -> Vector:
        """Solve self @ x = rhs for a possibly rectangular, full-column-rank system.

        Raises Singular when the system is inconsistent or underdetermined.
        """
        if len(rhs) != self.rows:
            raise ShapeMismatch("rhs length != rows")
        m = [list(self.row(i)) + [rhs[i]] for i in range(self.rows)]
        n, c = self.rows, self.cols
        row = 0
        pivots = []
        for j in range(c):
            pivot = next((i for i in range(row, n) if m[i][j]), None)
            if pivot is None:
                raise Singular("column without pivot")
            m[row], m[pivot] = m[pivot], m[row]
            pinv = m[row][j].inv()
            m[row] = [x * pinv for x in m[row]]
            for i in range(n):
                if i != row and m[i][j]:
                    f = m[i][j]
                    m[i] = [x - f * y for x, y in zip(m[i], m[row])]
            pivots.append(j)
            row += 1
            if row == n:
                break
        if len(pivots) < c:
            raise Singular("underdetermined system")
        for i in range(row, n):
            if m[i][c]:
                raise Singular("inconsistent system")
        return tuple(m[i][c] for i in range(c))

    def rank(self) -> int:
        m = self.to_lists()
        n, c = self.rows, self.cols
        row = 0
        for j in range(c):
            if row == n:
                break
            pivot = next((i for i in range(row, n) if m[i][j]), None)
            if pivot is None:
                continue
            m[row], m[pivot] = m[pivot], m[row]
            pinv = m[row][j].inv()
            m[row] = [x * pinv for x in m[row]]
            for i in range(n):
                if i != row and m[i][j]:
                    f = m[i][j]
                    m[i] = [x - f * y for x, y in zip(m[i], m[row])]
            row += 1
        return row

    def kernel_basis(self) -> tuple[Vector, ...]:
        """Basis of the right kernel {v : M v = 0}, K_d-independent vectors."""
        m = self.to_lists()
        n, c = self.rows, self.cols
        row = 0
        pivot_cols: list[int] = []
        for j in range(c):
            if row == n:
                break
            pivot = next((i for i in range(row, n) if m[i][j]), None)
            if pivot is None:
                continue
            m[row], m[pivot] = m[pivot], m[row]
            pinv = m[row][j].inv()
            m[row] = [x * pinv for x in m[row]]
            for i in range(n):
                if i != row and m[i][j]:
                    f = m[i][j]
                    m[i] = [x - f * y for x, y in zip(m[i], m[row])]
            pivot_cols.append(j)
            row += 1
        free_cols = [j for j in range(c) if j not in pivot_cols]
        one, zero = CycloNum.one(self.d), CycloNum.zero(self.d)
        basis = []
        for f in free_cols:
            v = [zero] * c
            v[f] = one
            for r, pj in enumerate(pivot_cols):
                v[pj] = -m[r][f]
            basis.append(tuple(v))
        return tuple(basis)

    def is_unipotent(self) -> bool:
        """True iff (M - I)^size vanishes exactly."""
        if not self.is_square():
            raise ShapeMismatch("unipotency of a non-square matrix")
        n = self.rows
        nil = self - CycloMatrix.identity(self.d, n)
        power = nil
        for _ in range(n - 1):
            if power.is_zero():
                return True
            power = power @ nil
        return power.is_zero()

    def is_zero(self) -> bool:
        return all(not e for e in self.entries)

    def multiplicative_order(self, bound: int) -> int | None:
        """Smallest 1 <= t <= bound with M^t = I, or None if not found within bound."""
        if not self.is_square():
            raise ShapeMismatch("order of a non-square matrix")
        ident = CycloMatrix.identity(self.d, self.rows)
        power = self
        for t in range(1, bound + 1):
            if power == ident:
                return t
            power = power @ self
        return None

    # -- presentation -------------------------------------------------------

    def __str__(self) -> str:
        cells = [[str(self.entry(i, j)) for j in range(self.cols)] for i in range(self.rows)]
        widths = [max(len(cells[i][j]) for i in range(self.rows)) for j in range(self.cols)] if self.rows else []
        return "\n".join("[ " + "  ".join(cells[i][j].rjust(widths[j]) for j in range(self.cols)) + " ]"
                         for i in range(self.rows))


def sesquilinear(gram: CycloMatrix, x: Vector, y: Vector) -> CycloNum:
    """Evaluate the stored form: linear in x, conjugate-linear in y.

    With the Gram layout used throughout (gram[r][c] holds the pairing of
    basis vector c against basis vector r), this is conj(y)^T . gram . x,
    so form preservation reads M* G M = G for column-acting operators M.
    """
    if len(x) != gram.cols or len(y) != gram.rows:
        raise ShapeMismatch("vector lengths do not match the Gram matrix")
    acc = CycloNum.zero(gram.d)
    for r in range(gram.rows):
        yc = y[r].conj()
        if not yc:
            continue
        row_acc = CycloNum.zero(gram.d)
        for c in range(gram.cols):
            if x[c] and gram.entry(r, c):
                row_acc = row_acc + gram.entry(r, c) * x[c]
        acc = acc + yc * row_acc
    return acc


def rank_over_rationals(vectors: Iterable[Vector]) -> int:
    """Rank over Q of K_d vectors after realification.

    Each vector of length L maps to a rational vector of length L*phi(d) by
    concatenating the coefficient vectors of its entries.
    """
    vecs = list(vectors)
    if not vecs:
        return 0
    d = vecs[0][0].d if vecs[0] else 1
    length = len(vecs[0])
    rows = []
    for v in vecs:
        if len(v) != length:
            raise ShapeMismatch("vectors of mixed length")
        flat: list[Fraction] = []
        for e in v:
            if e.d != d:
                raise ModulusMismatch("vectors of mixed modulus")
            flat.extend(e.coeffs)
        rows.append(flat)
    return _fraction_rank(rows)


def _fraction_rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows if any(r)]
    rank = 0
    cols = len(rows[0]) if rows else 0
    used: list[list[Fraction]] = []
    for j in range(cols):
        pivot_row = None
        for r in rows:
            if r[j]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows.remove(pivot_row)
        pivot_row = [x / pivot_row[j] for x in pivot_row]
        next_rows = []
        for r in rows:
            if r[j]:
                f = r[j]
                r = [x - f * y for x, y in zip(r, pivot_row)]
            if any(r):
                next_rows.append(r)
        rows = next_rows
        used.append(pivot_row)
        rank += 1
        if not rows:
            break
    return rank


class RationalSpan:
    """Incrementally growing Q-span of realified K_d vectors.

    Keeps reduced echelon rows; ``add`` reports whether the vector enlarged
    the span.  Used for orbit rank scans and basis extraction.
    """

    def __init__(self) -> None:
        self._rows: dict[int, list[Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, v: Vector) -> bool:
        flat: list[Fraction] = []
        for e in v:
            flat.extend(e.coeffs)
        for j, row in self._rows.items():
            if flat[j]:
                f = flat[j]
                flat = [x - f * y for x, y in zip(flat, row)]
        lead = next((j for j, x in enumerate(flat) if x), None)
        if lead is None:
            return False
        self._rows[lead] = [x / flat[lead] for x in flat]
        return True


def realify(v: Vector) -> list[Fraction]:
    """Concatenate the rational coefficient vectors of a K_d vector."""
    flat: list[Fraction] = []
    for e in v:
        flat.extend(e.coeffs)
    return flat


def solve_rational(columns: list[list[Fraction]], target: list[Fraction]) -> list[Fraction] | None:
    """Solve sum_i x_i * columns[i] = target over Q; None when inconsistent."""
    n = len(target)
    k = len(columns)
    aug = [[columns[c][r] for c in range(k)] + [target[r]] for r in range(n)]
    row = 0
    pivots = []
    for j in range(k):
        pivot = next((i for i in range(row, n) if aug[i][j]), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][j]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(n):
            if i != row and aug[i][j]:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        pivots.append(j)
        row += 1
    for i in range(row, n):
        if aug[i][k]:
            return None
    sol = [Fraction(0)] * k
    for r, j in enumerate(pivots):
        sol[j] = aug[r][k]
    return sol


def inertia(gram: CycloMatrix, tol: float = 1e-7) -> tuple[int, int, int]:
    """Numeric inertia (pos, neg, zero) of the Hermitian matrix -i * embed(G).

    G must be anti-Hermitian over K_d; the associated Hermitian matrix is
    analyzed through its floating-point eigenvalues.  Eigenvalues landing in
    the band (tol/10, 10*tol) in absolute value raise AmbiguousSign rather
    than being silently rounded.
    """
    if not gram.is_square():
        raise ShapeMismatch("inertia of a non-square matrix")
    if gram.conj_transpose() != -gram:
        raise NotAntiHermitian("G* != -G")
    n = gram.rows
    if n == 0:
        return (0, 0, 0)
    h = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            h[i, j] = -1j * gram.entry(i, j).embed()
    h = (h + h.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(h)
    pos = neg = zero = 0
    for lam in eigs:
        mag = abs(lam)
        if tol / 10 < mag < tol * 10:
            raise AmbiguousSign(f"eigenvalue {lam} inside the unsafe band around {tol}")
        if mag <= tol:
            zero += 1
        elif lam > 0:
            pos += 1
        else:
            neg += 1
    return (pos, neg, zero)


# -- serialization -----------------------------------------------------------

def matrix_to_json(m: CycloMatrix) -> dict:
    return {
        "d": m.d,
        "rows": m.rows,
        "cols": m.cols,
        "entries": [to_strings(e) for e in m.entries],
    }


def matrix_from_json(doc: dict) -> CycloMatrix:
    d = int(doc["d"])
    entries = tuple(from_strings(d, item) for item in doc["entries"])
    return CycloMatrix(d, int(doc["rows"]), int(doc["cols"]), entries)
