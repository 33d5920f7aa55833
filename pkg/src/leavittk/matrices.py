"""Exact integer matrices and Smith normal form.

All arithmetic uses Python's unbounded integers; nothing here ever
rounds.  Matrices are immutable value objects, so they can be shared
freely between threads and used as dict keys.
"""

from __future__ import annotations

from dataclasses import dataclass


class IntMatrix:
    """Immutable integer matrix, row-major, any shape including empty.

    >>> m = IntMatrix([[2, 4], [6, 8]])
    >>> m.rows, m.cols
    (2, 2)
    >>> (m @ IntMatrix.identity(2)) == m
    True
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows_of_entries):
        data = tuple(tuple(int(x) for x in row) for row in rows_of_entries)
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        if any(len(row) != self.cols for row in data):
            raise ValueError("ragged rows")
        self._data = data

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    @property
    def entries(self) -> tuple:
        """Row-major flattening."""
        return tuple(x for row in self._data for x in row)

    def tolists(self) -> list:
        return [list(row) for row in self._data]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self._data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)])

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-x for x in row] for row in self._data])

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix([[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self._data, other._data)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        ot = other.transpose()._data
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in ot]
                          for row in self._data])

    def __pow__(self, m: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise ValueError("matrix power needs a square matrix")
        if m < 0:
            raise ValueError("negative power")
        result = IntMatrix.identity(self.rows)
        base = self
        while m:
            if m & 1:
                result = result @ base
            base = base @ base
            m >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self._data == other._data \
            and (self.rows, self.cols) == (other.rows, other.cols)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self._data]!r})"

    def permuted(self, row_perm=None, col_perm=None) -> "IntMatrix":
        """Reindex rows/cols: new[i][j] = old[row_perm[i]][col_perm[j]]."""
        rp = row_perm if row_perm is not None else range(self.rows)
        cp = col_perm if col_perm is not None else range(self.cols)
        return IntMatrix([[self._data[i][j] for j in cp] for i in rp])

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant needs a square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self._data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """Certified factorization U @ M @ V = D.

    U, V are unimodular; D is diagonal with nonnegative entries forming a
    divisibility chain d_1 | d_2 | ... followed by zeros.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    matrix: IntMatrix

    @property
    def invariant_factors(self) -> tuple:
        """The nonzero diagonal entries d_1 | d_2 | ..."""
        ds = []
        for i in range(min(self.D.rows, self.D.cols)):
            d = self.D[i, i]
            if d != 0:
                ds.append(d)
        return tuple(ds)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def verify(self) -> bool:
        """Re-check every certificate condition from scratch."""
        if self.U @ self.matrix @ self.V != self.D:
            return False
        if abs(self.U.determinant()) != 1 or abs(self.V.determinant()) != 1:
            return False
        d = self.D
        for i in range(d.rows):
            for j in range(d.cols):
                if i != j and d[i, j] != 0:
                    return False
        diag = [d[i, i] for i in range(min(d.rows, d.cols))]
        if any(x < 0 for x in diag):
            return False
        for a, b in zip(diag, diag[1:]):
            if a == 0 and b != 0:
                return False
            if a != 0 and b % a != 0:
                return False
        return True


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, dst, src, c):
    """row[dst] += c * row[src]"""
    rs = m[src]
    rd = m[dst]
    for k in range(len(rd)):
        rd[k] += c * rs[k]


def _add_col(m, dst, src, c):
    for row in m:
        row[dst] += c * row[src]


def _scale_row(m, i, c):
    m[i] = [c * x for x in m[i]]


def smith_normal_form(matrix: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transformation certificates.

    Pivots are chosen globally in the remaining submatrix by smallest
    nonzero absolute value, ties broken by lowest row then lowest column,
    which keeps intermediate entries small and the output reproducible.

    >>> dec = smith_normal_form(IntMatrix([[2, 4], [6, 8]]))
    >>> [dec.D[i, i] for i in range(2)]
    [2, 4]
    >>> dec.verify()
    True
    """
    rows, cols = matrix.rows, matrix.cols
    d = matrix.tolists()
    u = IntMatrix.identity(rows).tolists()
    v = IntMatrix.identity(cols).tolists()

    def pivot_at(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = d[i][j]
                if x != 0 and (best is None or abs(x) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(rows, cols):
        pos = pivot_at(t)
        if pos is None:
            break
        i, j = pos
        if i != t:
            _swap_rows(d, t, i)
            _swap_rows(u, t, i)
        if j != t:
            _swap_cols(d, t, j)
            _swap_cols(v, t, j)
        # Clear column t, then row t; remainders force a smaller pivot on
        # the next pass, so this inner loop terminates.
        clean = True
        p = d[t][t]
        for i in range(t + 1, rows):
            if d[i][t]:
                q = d[i][t] // p
                _add_row(d, i, t, -q)
                _add_row(u, i, t, -q)
                if d[i][t]:
                    clean = False
        for j in range(t + 1, cols):
            if d[t][j]:
                q = d[t][j] // p
                _add_col(d, j, t, -q)
                _add_col(v, j, t, -q)
                if d[t][j]:
                    clean = False
        if clean:
            t += 1

    # Enforce the divisibility chain on the diagonal with tracked ops.
    n = min(rows, cols)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            a, b = d[i][i], d[i + 1][i + 1]
            if a != 0 and b % a != 0:
                changed = True
                j = i + 1
                _add_col(d, i, j, 1)
                _add_col(v, i, j, 1)
                # 2x2 unimodular row mix puts gcd(a, b) at (i, i).
                g, x, y = _xgcd(a, b)
                ri, rj = d[i], d[j]
                d[i], d[j] = (
                    [x * p + y * q for p, q in zip(ri, rj)],
                    [(-b // g) * p + (a // g) * q for p, q in zip(ri, rj)],
                )
                ui, uj = u[i], u[j]
                u[i], u[j] = (
                    [x * p + y * q for p, q in zip(ui, uj)],
                    [(-b // g) * p + (a // g) * q for p, q in zip(ui, uj)],
                )
                c = d[i][j] // g
                _add_col(d, j, i, -c)
                _add_col(v, j, i, -c)

    for i in range(n):
        if d[i][i] < 0:
            _scale_row(d, i, -1)
            _scale_row(u, i, -1)

    return SmithDecomposition(U=IntMatrix(u), D=IntMatrix(d), V=IntMatrix(v),
                              matrix=matrix)


def _xgcd(a: int, b: int):
    """(g, x, y) with g = gcd(a, b) = x*a + y*b, g > 0 for (a, b) != (0, 0)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def invariant_factors(matrix: IntMatrix) -> tuple:
    return smith_normal_form(matrix).invariant_factors


def matrix_rank(matrix: IntMatrix) -> int:
    return smith_normal_form(matrix).rank


__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "smith_normal_form",
    "invariant_factors",
    "matrix_rank",
]
