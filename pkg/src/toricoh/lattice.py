"""Exact integer linear algebra and lattice-point enumeration.

Everything here works on Python integers; there is no floating point. Matrices
are small (at most a few hundred rows), so plain nested tuples are used rather
than numpy object arrays.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable integer matrix with an explicit shape (empty shapes allowed)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]] = (), rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if not data and cols == 0:
            data = ((),) * rows
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError("entries inconsistent with shape")
        self.rows = rows
        self.cols = cols
        self.entries = data

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(((1 if i == j else 0) for j in range(n)) for i in range(n))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(((0,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls(((col[i] for col in columns) for i in range(rows)), rows, len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> IntMatrix:
        return IntMatrix(((self.entries[i][j] for i in range(self.rows))
                          for j in range(self.cols)), self.cols, self.rows)

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = [other.column(j) for j in range(other.cols)]
            return IntMatrix(((sum(a * b for a, b in zip(row, col)) for col in ocols)
                              for row in self.entries), self.rows, other.cols)
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]!r}, rows={self.rows}, cols={self.cols})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ a @ right`` is diagonal with entries ``diag`` (length min(rows, cols))."""

    left: IntMatrix
    diag: tuple[int, ...]
    right: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)

    def diagonal_matrix(self) -> IntMatrix:
        rows, cols = self.left.rows, self.right.cols
        return IntMatrix(((self.diag[i] if i == j and i < len(self.diag) else 0
                           for j in range(cols)) for i in range(rows)), rows, cols)


def _as_matrix(a) -> IntMatrix:
    return a if isinstance(a, IntMatrix) else IntMatrix(a)


def smith_normal_form(a) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Returns ``SmithDecomposition(left, diag, right)`` with ``left @ a @ right``
    diagonal, nonnegative diagonal entries, each dividing the next.
    """
    a = _as_matrix(a)
    m, n = a.shape
    D = [list(r) for r in a.entries]
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        L[i], L[k] = L[k], L[i]

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        for row in R:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        L[dst] = [x + q * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in R:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            # a smaller remainder becomes the new pivot
            cand = None
            for i in range(t + 1, m):
                if D[i][t] and (cand is None or abs(D[i][t]) < abs(cand[2])):
                    cand = ("r", i, D[i][t])
            for j in range(t + 1, n):
                if D[t][j] and (cand is None or abs(D[t][j]) < abs(cand[2])):
                    cand = ("c", j, D[t][j])
            if cand is not None:
                if cand[0] == "r":
                    swap_rows(t, cand[1])
                else:
                    swap_cols(t, cand[1])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            L[t] = [-x for x in L[t]]

    diag = tuple(D[i][i] for i in range(min(m, n)))
    return SmithDecomposition(IntMatrix(L, m, m), diag, IntMatrix(R, n, n))


def unimodular_inverse(u: IntMatrix) -> IntMatrix:
    """Exact inverse of a square integer matrix with determinant +-1."""
    n = u.rows
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(u.entries)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [[x for x in row[n:]] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return IntMatrix(((int(x) for x in row) for row in out), n, n)


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant (Bareiss fraction-free elimination)."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix given as rows."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for i in range(r + 1, len(M)):
            if M[i][c]:
                f = M[i][c]
                row = [p * x - f * y for x, y in zip(M[i], M[r])]
                g = 0
                for x in row:
                    g = gcd(g, x)
                M[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(M):
            break
    return r


def rank_mod2(rows: Sequence[Sequence[int]]) -> int:
    """Rank over GF(2), rows packed into Python ints."""
    basis: dict[int, int] = {}
    for row in rows:
        v = 0
        for j, x in enumerate(row):
            if x & 1:
                v |= 1 << j
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


@dataclass(frozen=True)
class CokernelPresentation:
    """Presentation of ``Z^ambient / column span of a``.

    ``project`` maps an ambient integer vector to its coordinates: the free
    coordinates first, then one residue per torsion factor.
    """

    ambient_rank: int
    free_rank: int
    torsion: tuple[int, ...]
    left: IntMatrix
    matrix_rank: int
    _torsion_rows: tuple[int, ...]
    _free_rows: tuple[int, ...]

    def project(self, x: Sequence[int]) -> tuple[int, ...]:
        y = self.left @ x
        free = tuple(y[i] for i in self._free_rows)
        tors = tuple(y[i] % d for i, d in zip(self._torsion_rows, self.torsion))
        return free + tors

    def free_basis(self) -> tuple[tuple[int, ...], ...]:
        """Ambient vectors projecting to the standard basis of the free part."""
        inv = unimodular_inverse(self.left)
        return tuple(inv.column(i) for i in self._free_rows)


def cokernel_presentation(a) -> CokernelPresentation:
    """Cokernel of an integer matrix whose columns generate the relations."""
    a = _as_matrix(a)
    snf = smith_normal_form(a)
    m = a.rows
    tors_rows, tors = [], []
    for i, d in enumerate(snf.diag):
        if d > 1:
            tors_rows.append(i)
            tors.append(d)
    r = snf.rank
    free_rows = tuple(range(r, m))
    return CokernelPresentation(m, len(free_rows), tuple(tors), snf.left, r,
                                tuple(tors_rows), free_rows)


# ---------------------------------------------------------------------------
# polyhedra


@dataclass(frozen=True)
class Constraint:
    normal: tuple[int, ...]
    bound: int
    sense: str = "<="

    def __post_init__(self):
        if self.sense not in ("<=", ">="):
            raise ValueError(f"unknown sense {self.sense!r}")
        object.__setattr__(self, "normal", tuple(int(x) for x in self.normal))
        object.__setattr__(self, "bound", int(self.bound))

    def as_upper(self) -> tuple[tuple[int, ...], int]:
        if self.sense == "<=":
            return self.normal, self.bound
        return tuple(-x for x in self.normal), -self.bound

    def satisfied(self, x: Sequence[int]) -> bool:
        s = sum(a * b for a, b in zip(self.normal, x))
        return s <= self.bound if self.sense == "<=" else s >= self.bound


@dataclass(frozen=True)
class RationalPolyhedron:
    """``{x in Q^dimension : every constraint holds}``, closed integer form."""

    dimension: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            if len(c.normal) != self.dimension:
                raise ValueError("constraint normal has wrong dimension")

    def contains(self, x: Sequence[int]) -> bool:
        return all(c.satisfied(x) for c in self.constraints)

    def with_box(self, lo: Sequence[int], hi: Sequence[int]) -> RationalPolyhedron:
        extra = []
        for k in range(self.dimension):
            e = tuple(int(i == k) for i in range(self.dimension))
            extra.append(Constraint(e, hi[k], "<="))
            extra.append(Constraint(e, lo[k], ">="))
        return RationalPolyhedron(self.dimension, self.constraints + tuple(extra))


@dataclass(frozen=True)
class Bounded:
    points: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class Unbounded:
    pass


@dataclass(frozen=True)
class Empty:
    pass


LatticePoints = Bounded | Unbounded | Empty


class _Infeasible(Exception):
    pass


def _normalize(rows) -> dict[tuple[int, ...], int]:
    """Divide by content, round the bound down, keep the tightest bound per normal.

    Rounding is valid for integer points only; it may shrink the rational
    region but never loses an integer point.
    """
    out: dict[tuple[int, ...], int] = {}
    for a, b in rows:
        g = 0
        for x in a:
            g = gcd(g, x)
        if g == 0:
            if b < 0:
                raise _Infeasible
            continue
        if g > 1:
            a = tuple(x // g for x in a)
            b = b // g
        if a not in out or b < out[a]:
            out[a] = b
    return out


def _eliminate(system: dict[tuple[int, ...], int], k: int) -> dict[tuple[int, ...], int]:
    pos, neg, rows = [], [], []
    for a, b in system.items():
        if a[k] > 0:
            pos.append((a, b))
        elif a[k] < 0:
            neg.append((a, b))
        else:
            rows.append((a, b))
    for a1, b1 in pos:
        p = a1[k]
        for a2, b2 in neg:
            q = -a2[k]
            rows.append((tuple(q * x + p * y for x, y in zip(a1, a2)), q * b1 + p * b2))
    return _normalize(rows)


def _stages(dim: int, rows) -> list[dict[tuple[int, ...], int]]:
    """Fourier-Motzkin projections; ``stages[k]`` involves only x_0..x_{k-1}."""
    stages = [None] * (dim + 1)
    stages[dim] = _normalize(rows)
    for k in range(dim - 1, -1, -1):
        stages[k] = _eliminate(stages[k + 1], k)
    return stages


def _interval(system, k: int, prefix: Sequence[int]):
    lo = hi = None
    for a, b in system.items():
        c = a[k]
        if c == 0:
            continue
        rhs = b - sum(a[j] * prefix[j] for j in range(k))
        if c > 0:
            v = rhs // c
            hi = v if hi is None or v < hi else hi
        else:
            v = -(rhs // -c)  # ceil(rhs / c) for c < 0
            lo = v if lo is None or v > lo else lo
    return lo, hi


def _enumerate(stages, dim: int) -> list[tuple[int, ...]]:
    points = []
    prefix = [0] * dim

    def rec(k):
        if k == dim:
            points.append(tuple(prefix))
            return
        lo, hi = _interval(stages[k + 1], k, prefix)
        for v in range(lo, hi + 1):
            prefix[k] = v
            rec(k + 1)

    rec(0)
    return points


def _solve(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction] | None:
    """Unique solution of a square system, or None if singular."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c] / aug[c][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def _kernel_line(rows: Sequence[Sequence[int]], n: int) -> tuple[int, ...] | None:
    """Primitive integer generator of a one-dimensional kernel, else None."""
    if rank(rows) != n - 1:
        return None
    # cofactor expansion against each unit vector
    vec = []
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in rows]
        vec.append((-1) ** j * determinant(minor))
    g = 0
    for x in vec:
        g = gcd(g, x)
    return tuple(x // g for x in vec)


def _has_integer_point(dim: int, system: dict[tuple[int, ...], int]) -> bool:
    """Integer feasibility of a possibly unbounded system ``A x <= b``.

    Splits off the lineality space with a unimodular change of coordinates,
    then uses P = conv(vertices) + cone(rays): an integer point exists iff one
    exists within the vertices' box widened by the sum of the ray generators.
    """
    normals = list(system)
    bounds = [system[a] for a in normals]
    if not normals:
        return True
    snf = smith_normal_form(IntMatrix(normals, len(normals), dim))
    r = snf.rank
    A = (IntMatrix(normals, len(normals), dim) @ snf.right).entries
    A = [row[:r] for row in A]
    if r == 0:
        return all(b >= 0 for b in bounds)
    vertices = []
    for idx in itertools.combinations(range(len(A)), r):
        sol = _solve([A[i] for i in idx], [bounds[i] for i in idx])
        if sol is None:
            continue
        if all(sum(a * x for a, x in zip(row, sol)) <= b for row, b in zip(A, bounds)):
            vertices.append(sol)
    if not vertices:
        return False
    rays = set()
    for idx in itertools.combinations(range(len(A)), r - 1):
        g = _kernel_line([A[i] for i in idx], r) if r > 1 else (1,)
        if g is None:
            continue
        for s in (1, -1):
            v = tuple(s * x for x in g)
            if all(sum(a * x for a, x in zip(row, v)) <= 0 for row in A):
                rays.add(v)
    lo, hi = [], []
    for k in range(r):
        spread = sum(abs(v[k]) for v in rays)
        lo.append(math.floor(min(v[k] for v in vertices)) - spread)
        hi.append(math.ceil(max(v[k] for v in vertices)) + spread)
    rows = [(tuple(row), b) for row, b in zip(A, bounds)]
    for k in range(r):
        e = tuple(int(i == k) for i in range(r))
        rows.append((e, hi[k]))
        rows.append((tuple(-x for x in e), -lo[k]))
    try:
        stages = _stages(r, rows)
    except _Infeasible:
        return False
    return bool(_enumerate(stages, r))


def lattice_points(p: RationalPolyhedron) -> LatticePoints:
    """All integer points of ``p``, or a verdict that there are none or infinitely many."""
    dim = p.dimension
    rows = [c.as_upper() for c in p.constraints]
    try:
        stages = _stages(dim, rows)
    except _Infeasible:
        return Empty()
    bounded = all(
        any(a[k] > 0 for a in stages[k + 1]) and any(a[k] < 0 for a in stages[k + 1])
        for k in range(dim)
    )
    if not bounded:
        return Unbounded() if _has_integer_point(dim, stages[dim]) else Empty()
    pts = _enumerate(stages, dim)
    return Bounded(tuple(pts)) if pts else Empty()


def count_lattice_points(p: RationalPolyhedron) -> int:
    """Number of integer points; raises ValueError if infinite."""
    res = lattice_points(p)
    if isinstance(res, Unbounded):
        raise ValueError("polyhedron has infinitely many integer points")
    return len(res) if isinstance(res, Bounded) else 0
