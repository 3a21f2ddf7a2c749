"""Exact sparse matrices: products, field elimination, Smith normal form.

Matrices are immutable-by-convention sparse maps (row, col) -> nonzero
Scalar over a single ring.  Field routines (rref, kernel, solve) cover QQ
and GF(p); Smith normal form covers ZZ and ZLoc(p) with the convention
D = U*A*V, diagonal entries nonnegative (ZZ) or powers of p (ZLoc) in a
divisibility chain.  Lattice utilities (kernel, image basis, membership,
solve) are derived from the SNF.  Dense elimination is acceptable here:
the corpus never exceeds 200x200.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    LinearSolveError,
    RingMismatchError,
    ShapeError,
    SymchainError,
    UnsupportedRingError,
)
from .scalars import Ring, Scalar

__all__ = [
    "SparseMatrix",
    "SNFResult",
    "smith_normal_form",
    "matmul",
    "mat_add",
    "scale",
    "kernel_basis",
    "rref",
    "rank",
    "solve_field",
    "solve_via_units",
    "kernel_pid",
    "image_basis_pid",
    "solve_pid",
    "in_image_pid",
    "cokernel_invariants",
    "solve_exact",
    "determinant",
    "monomials_of_degree",
    "slice_matrix",
]


class SparseMatrix:
    """Sparse exact matrix over one ring; no explicit zeros are stored."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ShapeError("negative dimensions")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        clean = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ShapeError(f"entry ({i},{j}) outside {rows}x{cols}")
            s = ring.scalar(value)
            if not s.is_zero():
                clean[(i, j)] = s
        self.entries = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring, rows: int, cols: int) -> "SparseMatrix":
        return cls(ring, rows, cols, {})

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "SparseMatrix":
        one = ring.one()
        return cls(ring, n, n, {(i, i): one for i in range(n)})

    @classmethod
    def from_rows(cls, ring: Ring, rows_data) -> "SparseMatrix":
        rows_data = [list(r) for r in rows_data]
        nrows = len(rows_data)
        ncols = len(rows_data[0]) if rows_data else 0
        entries = {}
        for i, row in enumerate(rows_data):
            if len(row) != ncols:
                raise ShapeError("ragged rows")
            for j, v in enumerate(row):
                entries[(i, j)] = ring.scalar(v)
        return cls(ring, nrows, ncols, entries)

    @classmethod
    def column(cls, ring: Ring, values) -> "SparseMatrix":
        values = list(values)
        return cls(ring, len(values), 1, {(i, 0): v for i, v in enumerate(values)})

    # -- access ---------------------------------------------------------------

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries.get((i, j), self.ring.zero())

    def to_rows(self):
        zero = self.ring.zero()
        out = [[zero] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column_vector(self, j: int):
        zero = self.ring.zero()
        col = [zero] * self.rows
        for (i, jj), v in self.entries.items():
            if jj == j:
                col[i] = v
        return col

    def is_zero(self) -> bool:
        return not self.entries

    # -- arithmetic -----------------------------------------------------------

    def _check_ring(self, other: "SparseMatrix"):
        if self.ring != other.ring:
            raise RingMismatchError(f"cannot mix {self.ring} and {other.ring}")

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError(f"{self.rows}x{self.cols} + {other.rows}x{other.cols}")
        entries = dict(self.entries)
        for key, v in other.entries.items():
            s = entries.get(key)
            entries[key] = v if s is None else s + v
        return SparseMatrix(self.ring, self.rows, self.cols, entries)

    def __neg__(self) -> "SparseMatrix":
        return SparseMatrix(
            self.ring, self.rows, self.cols, {k: -v for k, v in self.entries.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_ring(other)
        if self.cols != other.rows:
            raise ShapeError(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row = {}
        for (i, k), v in self.entries.items():
            by_row.setdefault(k, []).append((i, v))
        acc = {}
        for (k, j), w in other.entries.items():
            for i, v in by_row.get(k, ()):
                key = (i, j)
                p = v * w
                s = acc.get(key)
                acc[key] = p if s is None else s + p
        return SparseMatrix(self.ring, self.rows, other.cols, acc)

    def scale(self, c) -> "SparseMatrix":
        c = self.ring.scalar(c)
        return SparseMatrix(
            self.ring, self.rows, self.cols, {k: c * v for k, v in self.entries.items()}
        )

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.ring, self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}
        )

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_ring(other)
        if self.rows != other.rows:
            raise ShapeError("hstack: row counts differ")
        entries = dict(self.entries)
        for (i, j), v in other.entries.items():
            entries[(i, j + self.cols)] = v
        return SparseMatrix(self.ring, self.rows, self.cols + other.cols, entries)

    def vstack(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_ring(other)
        if self.cols != other.cols:
            raise ShapeError("vstack: column counts differ")
        entries = dict(self.entries)
        for (i, j), v in other.entries.items():
            entries[(i + self.rows, j)] = v
        return SparseMatrix(self.ring, self.rows + other.rows, self.cols, entries)

    def submatrix_columns(self, js) -> "SparseMatrix":
        js = list(js)
        pos = {j: k for k, j in enumerate(js)}
        entries = {}
        for (i, j), v in self.entries.items():
            if j in pos:
                entries[(i, pos[j])] = v
        return SparseMatrix(self.ring, self.rows, len(js), entries)

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.ring == other.ring
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        rows = [
            "[" + ", ".join(str(v) for v in row) + "]" for row in self.to_rows()
        ]
        return f"SparseMatrix({self.ring}, {self.rows}x{self.cols}, [" + "; ".join(rows) + "])"


def matmul(A: SparseMatrix, B: SparseMatrix) -> SparseMatrix:
    return A @ B


def mat_add(A: SparseMatrix, B: SparseMatrix) -> SparseMatrix:
    return A + B


def scale(c, A: SparseMatrix) -> SparseMatrix:
    return A.scale(c)


# -- dense helpers (field elimination works on lists of Scalars) --------------


def _to_dense(A: SparseMatrix):
    return A.to_rows()


def _from_dense(ring, rows, cols, data) -> SparseMatrix:
    entries = {}
    for i in range(rows):
        for j in range(cols):
            if not data[i][j].is_zero():
                entries[(i, j)] = data[i][j]
    return SparseMatrix(ring, rows, cols, entries)


def rref(A: SparseMatrix):
    """Reduced row echelon form over a field; returns (R, pivots).

    pivots is a list of (row, col) pairs in ascending column order.
    """
    if not A.ring.is_field:
        raise UnsupportedRingError(f"rref needs a field, got {A.ring}")
    return _rref_dense(A.ring, _to_dense(A), A.rows, A.cols)


def _rref_dense(ring, data, nrows, ncols):
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not data[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        data[r], data[pivot_row] = data[pivot_row], data[r]
        inv = data[r][c].inverse()
        data[r] = [inv * v for v in data[r]]
        for i in range(nrows):
            if i != r and not data[i][c].is_zero():
                f = data[i][c]
                data[i] = [a - f * b for a, b in zip(data[i], data[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    return _from_dense(ring, nrows, ncols, data), pivots


def rank(A: SparseMatrix) -> int:
    """Rank over the fraction field (exact for ZZ/ZLoc/QQ; GF(p) as itself)."""
    if A.ring.kind == "QQ":
        return qq_rank(A)
    if A.ring.is_field:
        return len(rref(A)[1])
    if A.ring.kind in ("ZZ", "ZLoc"):
        from .scalars import QQ

        lifted = SparseMatrix(
            QQ, A.rows, A.cols,
            {k: Fraction(v.value) for k, v in A.entries.items()},
        )
        return qq_rank(lifted)
    raise UnsupportedRingError(f"rank unsupported over {A.ring}")


def qq_rank(A: SparseMatrix) -> int:
    """Rank of a rational matrix via integer elimination.

    Each row is scaled integral (row scaling does not change rank), then
    eliminated with gcd-normalized cross-multiplication on machine
    integers, which is much faster than Fraction arithmetic.
    """
    from math import gcd, lcm

    by_row = {}
    for (i, j), v in A.entries.items():
        by_row.setdefault(i, []).append((j, v.value))
    data = []
    for i, items in by_row.items():
        scale = lcm(*(f.denominator for _, f in items))
        ints = [0] * A.cols
        for j, f in items:
            ints[j] = int(f * scale)
        g = gcd(*ints)
        if g > 1:
            ints = [x // g for x in ints]
        data.append(ints)
    r = 0
    for c in range(A.cols):
        piv = None
        best = None
        for i in range(r, len(data)):
            v = abs(data[i][c])
            if v and (best is None or v < best):
                best, piv = v, i
        if piv is None:
            continue
        data[r], data[piv] = data[piv], data[r]
        p = data[r][c]
        for i in range(r + 1, len(data)):
            q = data[i][c]
            if q == 0:
                continue
            g = gcd(p, q)
            a, b = p // g, q // g
            row = [a * x - b * y for x, y in zip(data[i], data[r])]
            g2 = gcd(*row)
            if g2 > 1:
                row = [x // g2 for x in row]
            data[i] = row
        r += 1
        if r == len(data):
            break
    return r


def kernel_basis(A: SparseMatrix) -> SparseMatrix:
    """Columns spanning ker(A) over a field; count = cols - rank."""
    R, pivots = rref(A)
    pivot_cols = {c: r for r, c in pivots}
    free_cols = [c for c in range(A.cols) if c not in pivot_cols]
    entries = {}
    one = A.ring.one()
    for k, fc in enumerate(free_cols):
        entries[(fc, k)] = one
        for c, r in pivot_cols.items():
            v = R.entry(r, fc)
            if not v.is_zero():
                entries[(c, k)] = -v
    return SparseMatrix(A.ring, A.cols, len(free_cols), entries)


def solve_field(A: SparseMatrix, B: SparseMatrix) -> SparseMatrix:
    """One exact solution X of A @ X = B over a field; raises if none."""
    if not A.ring.is_field:
        raise UnsupportedRingError(f"solve_field needs a field, got {A.ring}")
    return solve_via_units(A, B)


def solve_via_units(A: SparseMatrix, B: SparseMatrix) -> SparseMatrix:
    """Solve A @ X = B by Gaussian elimination with unit pivots.

    Works over any ring as long as every needed pivot is a unit (always true
    over fields; true over polynomial rings when A column-reduces through
    constant pivots).  The result is verified exactly before returning.
    """
    A._check_ring(B)
    if A.rows != B.rows:
        raise ShapeError("solve: row counts differ")
    ring = A.ring
    aug = _to_dense(A.hstack(B))
    nrows, acols, tcols = A.rows, A.cols, B.cols
    pivots = []
    r = 0
    for c in range(acols):
        pivot_row = None
        for i in range(r, nrows):
            if aug[i][c].is_unit():
                pivot_row = i
                break
        if pivot_row is None:
            if any(not aug[i][c].is_zero() for i in range(r, nrows)):
                raise LinearSolveError("no unit pivot available")
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        inv = aug[r][c].inverse()
        aug[r] = [inv * v for v in aug[r]]
        for i in range(nrows):
            if i != r and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    for i in range(len(pivots), nrows):
        if any(not aug[i][c].is_zero() for c in range(acols, acols + tcols)):
            raise LinearSolveError("inconsistent system")
    entries = {}
    for r, c in pivots:
        for j in range(tcols):
            v = aug[r][acols + j]
            if not v.is_zero():
                entries[(c, j)] = v
    X = SparseMatrix(ring, acols, tcols, entries)
    if A @ X != B:
        raise LinearSolveError("solution verification failed")
    return X


# -- Smith normal form ---------------------------------------------------------


@dataclass
class SNFResult:
    """D = U @ A @ V with U, V invertible and diag(D) a divisibility chain."""

    U: SparseMatrix
    D: SparseMatrix
    V: SparseMatrix

    @property
    def diagonal(self):
        k = min(self.D.rows, self.D.cols)
        return [self.D.entry(i, i) for i in range(k)]

    def nonzero_diagonal(self):
        return [d for d in self.diagonal if not d.is_zero()]


def _valuation(f: Fraction, p: int) -> int:
    n = f.numerator
    if n == 0:
        raise SymchainError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def smith_normal_form(A: SparseMatrix) -> SNFResult:
    """Smith normal form over ZZ or ZLoc(p), convention D = U*A*V."""
    ring = A.ring
    if ring.kind == "ZZ":
        return _snf(A, _zz_ops())
    if ring.kind == "ZLoc":
        return _snf(A, _zloc_ops(ring.p))
    raise UnsupportedRingError(f"Smith normal form needs ZZ or ZLoc, got {ring}")


def _zz_ops():
    return {
        "key": lambda v: abs(v),
        "divides": lambda d, v: v % d == 0,
        "quot": lambda v, d: v // d,
        "normalizer": lambda v: -1 if v < 0 else 1,  # unit u with u*v canonical
    }


def _zloc_ops(p: int):
    def normalizer(v):
        # unit u with u*v = p^val(v)
        e = _valuation(v, p)
        return Fraction(p) ** e / v

    return {
        "key": lambda v: _valuation(v, p),
        "divides": lambda d, v: _valuation(v, p) >= _valuation(d, p),
        "quot": lambda v, d: v / d,
        "normalizer": normalizer,
    }


def _snf(A: SparseMatrix, ops) -> SNFResult:
    ring = A.ring
    m, n = A.rows, A.cols
    M = [[v.value for v in row] for row in A.to_rows()]
    zero = 0 if ring.kind == "ZZ" else Fraction(0)
    U = [[zero] * m for _ in range(m)]
    V = [[zero] * n for _ in range(n)]
    one = 1 if ring.kind == "ZZ" else Fraction(1)
    for i in range(m):
        U[i][i] = one
    for j in range(n):
        V[j][j] = one

    def row_op(i, k, q):  # row_i -= q * row_k, on M and U
        M[i] = [a - q * b for a, b in zip(M[i], M[k])]
        U[i] = [a - q * b for a, b in zip(U[i], U[k])]

    def col_op(j, k, q):  # col_j -= q * col_k, on M and V
        for row in M:
            row[j] -= q * row[k]
        for row in V:
            row[j] -= q * row[k]

    def swap_rows(i, k):
        M[i], M[k] = M[k], M[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in M:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def scale_row(i, u):
        M[i] = [u * a for a in M[i]]
        U[i] = [u * a for a in U[i]]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] != zero:
                    k = ops["key"](M[i][j])
                    if best is None or k < best[0]:
                        best = (k, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(bi, t)
        if bj != t:
            swap_cols(bj, t)

        while True:
            # clear the pivot column
            restart = False
            for i in range(t + 1, m):
                if M[i][t] == zero:
                    continue
                if ops["divides"](M[t][t], M[i][t]):
                    row_op(i, t, ops["quot"](M[i][t], M[t][t]))
                else:
                    q = M[i][t] // M[t][t]
                    row_op(i, t, q)
                    swap_rows(i, t)
                    restart = True
                    break
            if restart:
                continue
            # clear the pivot row
            for j in range(t + 1, n):
                if M[t][j] == zero:
                    continue
                if ops["divides"](M[t][t], M[t][j]):
                    col_op(j, t, ops["quot"](M[t][j], M[t][t]))
                else:
                    q = M[t][j] // M[t][t]
                    col_op(j, t, q)
                    swap_cols(j, t)
                    restart = True
                    break
            if restart:
                continue
            if any(M[i][t] != zero for i in range(t + 1, m)):
                continue
            # enforce that the pivot divides the remaining block
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i][j] != zero and not ops["divides"](M[t][t], M[i][j]):
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, -one)  # row_t += row_offender
        u = ops["normalizer"](M[t][t])
        if u != one:
            scale_row(t, u)
        t += 1

    def pack(data, rows, cols):
        entries = {}
        for i in range(rows):
            for j in range(cols):
                if data[i][j] != zero:
                    entries[(i, j)] = Scalar(ring, data[i][j])
        return SparseMatrix(ring, rows, cols, entries)

    return SNFResult(U=pack(U, m, m), D=pack(M, m, n), V=pack(V, n, n))


# -- lattice utilities over ZZ / ZLoc -------------------------------------------


def kernel_pid(A: SparseMatrix) -> SparseMatrix:
    """Basis of ker(A) over ZZ or ZLoc, as columns (a free, saturated lattice)."""
    snf = smith_normal_form(A)
    k = min(A.rows, A.cols)
    keep = [j for j in range(A.cols) if j >= k or snf.D.entry(j, j).is_zero()]
    return snf.V.submatrix_columns(keep)


def image_basis_pid(A: SparseMatrix) -> SparseMatrix:
    """Basis of the column lattice of A over ZZ or ZLoc."""
    snf = smith_normal_form(A)
    av = A @ snf.V
    keep = [j for j in range(min(A.rows, A.cols)) if not snf.D.entry(j, j).is_zero()]
    return av.submatrix_columns(keep)


def solve_pid(A: SparseMatrix, B: SparseMatrix):
    """Solve A @ X = B over ZZ/ZLoc; returns X or None if no integral solution."""
    A._check_ring(B)
    if A.rows != B.rows:
        raise ShapeError("solve: row counts differ")
    snf = smith_normal_form(A)
    C = snf.U @ B
    k = min(A.rows, A.cols)
    entries = {}
    for j in range(B.cols):
        for i in range(A.rows):
            c = C.entry(i, j)
            if i >= k or snf.D.entry(i, i).is_zero():
                if not c.is_zero():
                    return None
            elif not c.is_zero():
                d = snf.D.entry(i, i)
                try:
                    q = c.divide_exact(d)
                except SymchainError:
                    return None
                entries[(i, j)] = q
    Y = SparseMatrix(A.ring, A.cols, B.cols, entries)
    return snf.V @ Y


def in_image_pid(A: SparseMatrix, v: SparseMatrix) -> bool:
    return solve_pid(A, v) is not None


def cokernel_invariants(A: SparseMatrix):
    """(free_rank, invariant_factors) of coker(A) over ZZ or ZLoc.

    Factors are integers > 1 in a divisibility chain (powers of p for ZLoc).
    """
    snf = smith_normal_form(A)
    nonzero = snf.nonzero_diagonal()
    free = A.rows - len(nonzero)
    factors = [int(d.value) for d in nonzero if int(d.value) > 1]
    return free, tuple(factors)


def solve_exact(A: SparseMatrix, B: SparseMatrix) -> SparseMatrix:
    """Solve A @ X = B exactly over the matrix ring; raises LinearSolveError."""
    if A.ring.is_field:
        return solve_field(A, B)
    if A.ring.kind in ("ZZ", "ZLoc"):
        X = solve_pid(A, B)
        if X is None:
            raise LinearSolveError("no solution over the ring")
        return X
    return solve_via_units(A, B)


def determinant(A: SparseMatrix) -> Scalar:
    """Exact determinant over ZZ (Bareiss), QQ/ZLoc (fractions), or GF(p)."""
    if A.rows != A.cols:
        raise ShapeError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return A.ring.one()
    if A.ring.kind == "ZZ":
        data = [[v.value for v in row] for row in A.to_rows()]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if data[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if data[i][k] != 0), None)
                if pivot is None:
                    return A.ring.zero()
                data[k], data[pivot] = data[pivot], data[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    data[i][j] = (data[i][j] * data[k][k] - data[i][k] * data[k][j]) // prev
                data[i][k] = 0
            prev = data[k][k]
        return Scalar(A.ring, sign * data[n - 1][n - 1])
    if A.ring.kind == "GF":
        p = A.ring.p
        data = [[v.value for v in row] for row in A.to_rows()]
        det = 1
        for k in range(n):
            pivot = next((i for i in range(k, n) if data[i][k] != 0), None)
            if pivot is None:
                return A.ring.zero()
            if pivot != k:
                data[k], data[pivot] = data[pivot], data[k]
                det = -det % p
            det = det * data[k][k] % p
            inv = pow(data[k][k], p - 2, p)
            for i in range(k + 1, n):
                if data[i][k] != 0:
                    f = data[i][k] * inv % p
                    data[i] = [(a - f * b) % p for a, b in zip(data[i], data[k])]
        return Scalar(A.ring, det)
    if A.ring.kind in ("QQ", "ZLoc"):
        data = [[Fraction(v.value) for v in row] for row in A.to_rows()]
        det = Fraction(1)
        for k in range(n):
            pivot = next((i for i in range(k, n) if data[i][k] != 0), None)
            if pivot is None:
                return A.ring.zero()
            if pivot != k:
                data[k], data[pivot] = data[pivot], data[k]
                det = -det
            det *= data[k][k]
            inv = 1 / data[k][k]
            for i in range(k + 1, n):
                if data[i][k] != 0:
                    f = data[i][k] * inv
                    data[i] = [a - f * b for a, b in zip(data[i], data[k])]
        return Scalar(A.ring, det)
    raise UnsupportedRingError(f"determinant unsupported over {A.ring}")


# -- graded degree slices ---------------------------------------------------------


def monomials_of_degree(nvars: int, d: int):
    """All exponent vectors of total degree d, in descending lex order."""
    if d < 0:
        return []
    if nvars == 1:
        return [(d,)]
    out = []
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - e):
            out.append((e,) + rest)
    return out


def slice_basis(nvars: int, gen_degrees, d: int):
    """Ordered QQ-basis of the degree-d slice of a graded free module.

    Generators are listed in order; within a generator, monomials of the
    complementary degree in descending lex order.  Returns a list of
    (generator_index, exponent_vector) pairs.
    """
    basis = []
    for j, a in enumerate(gen_degrees):
        for mono in monomials_of_degree(nvars, d - a):
            basis.append((j, mono))
    return basis


def slice_matrix(M: SparseMatrix, src_degrees, tgt_degrees, d: int):
    """QQ matrix of the degree-d slice of a graded map between free modules.

    Every entry of M must be homogeneous of degree src - tgt for its
    position (the complex/chain-map validators enforce this).  Returns
    (matrix over QQ, target_basis, source_basis).
    """
    from .scalars import QQ

    ring = M.ring
    if ring.kind != "Poly":
        raise UnsupportedRingError("slice_matrix needs a graded polynomial ring")
    nvars = len(ring.variables)
    src_basis = slice_basis(nvars, src_degrees, d)
    tgt_basis = slice_basis(nvars, tgt_degrees, d)
    tgt_index = {key: r for r, key in enumerate(tgt_basis)}
    entries = {}
    for c, (j, mono) in enumerate(src_basis):
        for (i, jj), poly in M.entries.items():
            if jj != j:
                continue
            for exp, coeff in poly.value.items():
                target = tuple(a + b for a, b in zip(exp, mono))
                r = tgt_index.get((i, target))
                if r is None:
                    continue
                key = (r, c)
                prev = entries.get(key, Fraction(0))
                val = prev + coeff
                if val == 0:
                    entries.pop(key, None)
                else:
                    entries[key] = val
    mat = SparseMatrix(QQ, len(tgt_basis), len(src_basis), entries)
    return mat, tgt_basis, src_basis
