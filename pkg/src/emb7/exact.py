"""Exact integer linear algebra: Smith normal form, solving over Z and Z_d,
cokernel presentations of finitely generated abelian groups, and canonical
coset representatives.

All arithmetic uses arbitrary-precision Python integers.  Intermediate
entries in a Smith reduction can grow far past 64 bits, so nothing here
touches floating point or fixed-width machine words.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class IntMatrix:
    """Immutable dense matrix of Python ints.

    Rows and columns may be zero; an empty matrix is a legal value and all
    operations treat it by the usual conventions (empty products are
    identities, det of the 0x0 matrix is 1).
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], cols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
            if cols is not None and cols != ncols:
                raise ValueError("cols mismatch")
        else:
            ncols = 0 if cols is None else int(cols)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> "IntMatrix":
        r = len(entries) if rows is None else rows
        c = len(entries) if cols is None else cols
        return cls([[entries[i] if (i == j and i < len(entries)) else 0
                     for j in range(c)] for i in range(r)], cols=c)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls([[int(col[i]) for col in columns] for i in range(rows)],
                   cols=len(columns))

    def __getitem__(self, key) -> int:
        i, j = key
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def tolists(self) -> list:
        return [list(r) for r in self.data]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix([[self.data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], cols=self.rows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMatrix) and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        return hash((self.shape, self.data))

    def __repr__(self):
        return f"IntMatrix({self.tolists()!r})"

    def _check_same_shape(self, other: "IntMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix([[a + b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.data, other.data)], cols=self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix([[a - b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.data, other.data)], cols=self.cols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.data], cols=self.cols)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * a for a in r] for r in self.data], cols=self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in ocols]
                          for row in self.data], cols=other.cols)

    def apply(self, v: Sequence[int]) -> tuple:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} != cols {self.cols}")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.data)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.data[i][j] == self.data[j][i]
            for i in range(self.rows) for j in range(i))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("det of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(r) for r in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if pivot is None:
                    return 0
                a[k], a[pivot] = a[pivot], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    """Smith decomposition U @ A @ V == D.

    U and V are unimodular; D is diagonal, non-negative, and each diagonal
    entry divides the next (zeros come last).
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> tuple:
        r = min(self.D.rows, self.D.cols)
        return tuple(self.D[i, i] for i in range(r))


def _pivot(a, m, n, t):
    """Smallest-|entry| nonzero pivot in a[t:, t:], ties to lowest (row, col)."""
    best = None
    for i in range(t, m):
        for j in range(t, n):
            v = abs(a[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
                if v == 1:
                    return best
    return best


def smith_normal_form(A: IntMatrix) -> SNFResult:
    """Smith normal form with unimodular transforms.

    Pivoting always picks the smallest-absolute-value nonzero entry (ties by
    lowest row, then column), which keeps intermediate growth modest and
    makes the output deterministic for a fixed input.
    """
    m, n = A.rows, A.cols
    a = [list(r) for r in A.data]
    u = [list(r) for r in IntMatrix.identity(m).data]
    v = [list(r) for r in IntMatrix.identity(n).data]

    def row_sub(i, t, q):
        ai, at = a[i], a[t]
        ui, ut = u[i], u[t]
        for j in range(n):
            ai[j] -= q * at[j]
        for j in range(m):
            ui[j] -= q * ut[j]

    def col_sub(j, t, q):
        for i in range(m):
            a[i][j] -= q * a[i][t]
        for i in range(n):
            v[i][j] -= q * v[i][t]

    rank = min(m, n)
    for t in range(rank):
        while True:
            piv = _pivot(a, m, n, t)
            if piv is None:
                break
            _, pi, pj = piv
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                for row in v:
                    row[t], row[pj] = row[pj], row[t]
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    row_sub(i, t, a[i][t] // p)
            for j in range(t + 1, n):
                if a[t][j]:
                    col_sub(j, t, a[t][j] // p)
            if all(a[i][t] == 0 for i in range(t + 1, m)) and \
               all(a[t][j] == 0 for j in range(t + 1, n)):
                break
        if piv is None:
            break

    # Non-negative diagonal: absorb signs into U.
    for t in range(rank):
        if a[t][t] < 0:
            for j in range(n):
                a[t][j] = -a[t][j]
            for j in range(m):
                u[t][j] = -u[t][j]

    # Divisibility chain d_i | d_j for i < j via 2x2 gcd/lcm steps.
    for i in range(rank):
        di = a[i][i]
        for j in range(i + 1, rank):
            dj = a[j][j]
            if di == 0 or dj % di == 0:
                continue
            g, x, y = _gcdext(di, dj)
            # U2 = [[x, y], [-dj/g, di/g]], V2 = [[1, -y*dj/g], [1, x*di/g]]
            # turn diag(di, dj) into diag(g, di*dj/g).
            ui, uj = u[i], u[j]
            for k in range(m):
                ui[k], uj[k] = x * ui[k] + y * uj[k], \
                    -(dj // g) * ui[k] + (di // g) * uj[k]
            for k in range(n):
                v[k][i], v[k][j] = v[k][i] + v[k][j], \
                    -(y * dj // g) * v[k][i] + (x * di // g) * v[k][j]
            a[i][i] = g
            a[j][j] = di * dj // g
            di = g

    D = IntMatrix([[a[i][j] if i == j else 0 for j in range(n)]
                   for i in range(m)], cols=n)
    return SNFResult(U=IntMatrix(u, cols=m), D=D, V=IntMatrix(v, cols=n))


def _gcdext(a: int, b: int) -> tuple:
    """g, x, y with a*x + b*y == g == gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """A quotient Z^n / <columns of `relations`> in invariant-factor form.

    `invariant_factors` has length `ambient_rank`; factor 0 encodes an
    infinite cyclic summand.  `projection` is a unimodular matrix carrying
    ambient coordinates to factor coordinates, so membership in the relation
    subgroup is exactly "all factor coordinates vanish modulo their factor".
    """

    ambient_rank: int
    relations: IntMatrix
    invariant_factors: tuple
    projection: IntMatrix

    def order(self) -> Optional[int]:
        """Group order, or None when some factor is infinite."""
        total = 1
        for d in self.invariant_factors:
            if d == 0:
                return None
            total *= d
        return total

    def is_finite(self) -> bool:
        return self.order() is not None

    def normal_form(self, v: Sequence[int]) -> tuple:
        return coset_normal_form(self, v)


def cokernel(ambient_rank: int, relations: IntMatrix) -> AbelianGroupPresentation:
    """Present Z^ambient_rank modulo the column span of `relations`."""
    if relations.rows != ambient_rank:
        raise ValueError(
            f"relations have {relations.rows} rows, ambient rank is {ambient_rank}")
    res = smith_normal_form(relations)
    diag = res.diagonal()
    factors = tuple(diag) + (0,) * (ambient_rank - len(diag))
    return AbelianGroupPresentation(
        ambient_rank=ambient_rank,
        relations=relations,
        invariant_factors=factors,
        projection=res.U,
    )


def coset_normal_form(G: AbelianGroupPresentation, v: Sequence[int]) -> tuple:
    """Canonical factor coordinates of v + <relations>.

    Coordinates sit in [0, d) for each finite factor d and are left whole for
    infinite factors, so two vectors agree exactly when they differ by an
    element of the relation subgroup.
    """
    if len(v) != G.ambient_rank:
        raise ValueError(f"vector length {len(v)} != ambient rank {G.ambient_rank}")
    p = G.projection.apply(v)
    return tuple(x % d if d else x for x, d in zip(p, G.invariant_factors))


@dataclass(frozen=True)
class LinearSolution:
    particular: tuple
    kernel: tuple  # tuple of basis vectors


def solve_linear(A: IntMatrix, b: Sequence[int],
                 modulus: Optional[int] = None) -> Optional[LinearSolution]:
    """Solve A x = b over Z, or over Z_modulus when a modulus is given.

    Returns a particular solution and a generating set for the kernel, or
    None when no solution exists.  Results are checked by substitution
    before being returned.
    """
    if len(b) != A.rows:
        raise ValueError(f"vector length {len(b)} != rows {A.rows}")
    if modulus is not None:
        if modulus <= 0:
            raise ValueError("modulus must be positive")
        return _solve_mod(A, b, modulus)

    res = smith_normal_form(A)
    c = res.U.apply(b)
    diag = res.diagonal()
    n = A.cols
    y = [0] * n
    for i, ci in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d:
            if ci % d:
                return None
            y[i] = ci // d
        elif ci:
            return None
    x = res.V.apply(y)
    kernel = tuple(res.V.column(j) for j in range(n)
                   if j >= len(diag) or diag[j] == 0)
    assert A.apply(x) == tuple(b)
    assert all(A.apply(k) == (0,) * A.rows for k in kernel)
    return LinearSolution(particular=x, kernel=kernel)


def _solve_mod(A: IntMatrix, b: Sequence[int], m: int) -> Optional[LinearSolution]:
    # A x == b (mod m)  <=>  [A | m*I] (x, t) == b over Z.
    rows, n = A.rows, A.cols
    aug = IntMatrix([list(A.row(i)) + [m if j == i else 0 for j in range(rows)]
                     for i in range(rows)], cols=n + rows)
    sol = solve_linear(aug, b)
    if sol is None:
        return None
    x = tuple(c % m for c in sol.particular[:n])
    gens = []
    seen = set()
    for k in sol.kernel:
        g = tuple(c % m for c in k[:n])
        if any(g) and g not in seen:
            seen.add(g)
            gens.append(g)
    assert all((s - t) % m == 0 for s, t in zip(A.apply(x), b))
    return LinearSolution(particular=x, kernel=tuple(gens))


def inverse_unimodular(P: IntMatrix) -> IntMatrix:
    """Exact inverse of a square matrix with det = +-1."""
    res = smith_normal_form(P)
    if res.diagonal() != (1,) * P.rows or P.rows != P.cols:
        raise ValueError("matrix is not unimodular")
    # U P V = I  =>  P^{-1} = V U.
    return res.V @ res.U


def signature(M: IntMatrix) -> int:
    """Signature of a symmetric integer matrix, computed exactly.

    Congruence-diagonalizes over the rationals (Sylvester's law keeps the
    signature invariant) and counts diagonal signs.
    """
    if not M.is_symmetric():
        raise ValueError("signature of a non-symmetric matrix")
    n = M.rows
    a = [[Fraction(M[i, j]) for j in range(n)] for i in range(n)]
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
            else:
                other = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if other is None:
                    continue  # zero row: null direction
                for j in range(n):
                    a[k][j] += a[other][j]
                for i in range(n):
                    a[i][k] += a[i][other]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        # symmetric Schur complement: congruence, so signature is preserved
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
        for j in range(k + 1, n):
            a[k][j] = Fraction(0)
            a[j][k] = Fraction(0)
    return pos - neg


def vector_gcd(v: Sequence[int]) -> int:
    """gcd of the entries; 0 for the zero (or empty) vector."""
    return math.gcd(*(int(x) for x in v)) if v else 0
