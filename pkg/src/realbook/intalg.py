"""Exact integer linear algebra: matrices, Smith normal form, cokernels.

Everything here works over Python ints, so entry blow-up during Smith
reduction is harmless.  Intended scale is tiny (matrices well under
100x100); nothing is asymptotically clever.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable dense integer matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        self.rows = tuple(tuple(int(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        if self.nrows:
            widths = {len(r) for r in self.rows}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            self.ncols = widths.pop()
        else:
            self.ncols = 0 if ncols is None else ncols
        if ncols is not None and self.nrows and self.ncols != ncols:
            raise ValueError("ncols mismatch")

    # -- constructors -------------------------------------------------

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(m: int, n: int) -> "IntMatrix":
        return IntMatrix([[0] * n for _ in range(m)], ncols=n)

    @staticmethod
    def diagonal(entries: Sequence[int], m: int | None = None, n: int | None = None) -> "IntMatrix":
        m = len(entries) if m is None else m
        n = len(entries) if n is None else n
        rows = [[0] * n for _ in range(m)]
        for i, d in enumerate(entries):
            rows[i][i] = int(d)
        return IntMatrix(rows, ncols=n)

    @staticmethod
    def from_columns(cols: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        return IntMatrix([[col[i] for col in cols] for i in range(nrows)], ncols=len(cols))

    # -- basics --------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        return f"IntMatrix({list(map(list, self.rows))!r})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"dimension mismatch {self.shape} @ {other.shape}")
        ot = other.transpose().rows
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.rows],
            ncols=other.ncols,
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in row] for row in self.rows], ncols=self.ncols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * x for a, x in zip(row, vec)) for row in self.rows)

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(min(self.nrows, self.ncols)))

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.nrows) and self.nrows == self.ncols

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        a = [list(row) for row in self.rows]
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

    def diag(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(min(self.nrows, self.ncols)))


@dataclass(frozen=True)
class SmithForm:
    """U @ A @ V = D with U, V unimodular and D in Smith normal form."""

    d: IntMatrix
    u: IntMatrix
    v: IntMatrix

    def check(self, a: IntMatrix) -> bool:
        if self.u @ a @ self.v != self.d:
            return False
        if abs(self.u.det()) != 1 or abs(self.v.det()) != 1:
            return False
        diag = self.d.diag()
        if any(d < 0 for d in diag):
            return False
        for prev, nxt in zip(diag, diag[1:]):
            if prev == 0:
                if nxt != 0:
                    return False
            elif nxt % prev != 0:
                return False
        # off-diagonal entries must vanish
        for i in range(self.d.nrows):
            for j in range(self.d.ncols):
                if i != j and self.d[i, j] != 0:
                    return False
        return True


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form.

    torsion entries are >= 2 and each divides the next.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for t in self.torsion:
            if t < 2:
                raise ValueError("torsion entries must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion entries must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def smith_normal_form(a: IntMatrix) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Pivoting rule: smallest nonzero absolute value in the working
    submatrix, ties broken row-major.  Deterministic, and keeps entry
    growth tolerable at this scale.
    """
    m, n = a.shape
    mat = [list(row) for row in a.rows]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        mat[i], mat[j] = mat[j], mat[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in mat:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        mat[dst] = [x + q * y for x, y in zip(mat[dst], mat[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in mat:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        mat[i] = [-x for x in mat[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    size = min(m, n)
    while t < size:
        # pick pivot: smallest |entry| != 0, row-major tie-break
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                x = mat[i][j]
                if x != 0 and (pivot is None or abs(x) < abs(mat[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])

        while True:
            # clear column t by division; leftover remainders become new,
            # strictly smaller pivots, so this terminates
            for i in range(t + 1, m):
                if mat[i][t] != 0:
                    add_row(i, t, -(mat[i][t] // mat[t][t]))
            col_dirty = [i for i in range(t + 1, m) if mat[i][t] != 0]
            if col_dirty:
                i = min(col_dirty, key=lambda k: abs(mat[k][t]))
                swap_rows(t, i)
                continue
            for j in range(t + 1, n):
                if mat[t][j] != 0:
                    add_col(j, t, -(mat[t][j] // mat[t][t]))
            row_dirty = [j for j in range(t + 1, n) if mat[t][j] != 0]
            if row_dirty:
                j = min(row_dirty, key=lambda k: abs(mat[t][k]))
                swap_cols(t, j)
                continue
            # divisibility sweep: pivot must divide the whole remaining block
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if mat[i][j] % mat[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if mat[t][t] < 0:
            negate_row(t)
        t += 1

    return SmithForm(d=IntMatrix(mat, ncols=n), u=IntMatrix(u, ncols=m), v=IntMatrix(v, ncols=n))


def cokernel(a: IntMatrix) -> AbelianGroup:
    """Z^rows(a) modulo the column span of a, in canonical form."""
    snf = smith_normal_form(a)
    diag = snf.d.diag()
    nonzero = [d for d in diag if d != 0]
    torsion = tuple(d for d in nonzero if d >= 2)
    return AbelianGroup(free_rank=a.nrows - len(nonzero), torsion=torsion)


def solve_integer(a: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One integer solution x of a @ x = b, or None if there is none."""
    if a.nrows != len(b):
        raise ValueError("rhs length mismatch")
    snf = smith_normal_form(a)
    c = snf.u.apply(b)
    y = [0] * a.ncols
    diag = snf.d.diag()
    for i in range(a.nrows):
        d = diag[i] if i < len(diag) else 0
        if i < a.ncols and d != 0:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
        elif c[i] != 0:
            return None
    return snf.v.apply(y)


def solve_integer_affine(
    a: IntMatrix, b: Sequence[int]
) -> tuple[tuple[int, ...], list[tuple[int, ...]]] | None:
    """Particular solution and a kernel basis of a @ x = b, or None."""
    if a.nrows != len(b):
        raise ValueError("rhs length mismatch")
    snf = smith_normal_form(a)
    c = snf.u.apply(b)
    diag = snf.d.diag()
    y = [0] * a.ncols
    for i in range(a.nrows):
        d = diag[i] if i < len(diag) else 0
        if i < a.ncols and d != 0:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
        elif c[i] != 0:
            return None
    x = snf.v.apply(y)
    kernel = []
    for j in range(a.ncols):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            kernel.append(tuple(snf.v[i, j] for i in range(a.ncols)))
    return tuple(x), kernel


def determinantal_divisors(a: IntMatrix) -> list[int]:
    """gcd of all k x k minors for k = 1..min shape (0 when all vanish).

    Brute-force over index subsets; this is the independent oracle for
    the Smith form (d_k = D_k / D_{k-1}), so it must not share code with
    smith_normal_form.
    """
    from itertools import combinations

    m, n = a.shape
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                sub = IntMatrix([[a[i, j] for j in cols] for i in rows])
                g = gcd(g, sub.det())
        out.append(abs(g))
    return out
