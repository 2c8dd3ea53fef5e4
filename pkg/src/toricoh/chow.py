"""Integral Chow ring of the Del Pezzo varieties V^n.

The ring is Z[E_1..E_{2n+2}] modulo

* the monomials E_{i_1}..E_{i_k} E_{j_1+n+1}..E_{j_k'+n+1} (distinct indices)
  with k > n/2, k' > n/2, or {i} and {j} intersecting;
* the linear forms sum_i <m, v_i> E_i for m in the dual lattice.

Each graded piece is computed by integer row reduction of the degree-k
relations against the monomials whose support survives the first family.
Basis monomials are square-free; every other monomial has an integral
expansion in them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cohomology import DivisorClass, picard_presentation, PicardPresentation
from .fan import Fan, FanError, is_del_pezzo

Monomial = tuple[int, ...]  # sorted ray labels, repeats allowed


class ChowError(Exception):
    pass


def monomial_vanishes(fan: Fan, support: Iterable[int]) -> bool:
    """First relation family, read literally for a square-free support."""
    n = fan.dimension
    cap = n // 2
    s = set(support)
    I = {i for i in s if i <= n + 1}
    J = {j - n - 1 for j in s if j > n + 1}
    return len(I) > cap or len(J) > cap or bool(I & J)


def _monomials(labels: Sequence[int], k: int) -> list[Monomial]:
    return list(itertools.combinations_with_replacement(labels, k))


def _column_key(mono: Monomial):
    # non-square-free first so they get eliminated; among square-free ones the
    # lexicographically largest are eliminated first, leaving small ones as basis
    squarefree = len(set(mono)) == len(mono)
    return (squarefree, tuple(-x for x in mono))


def _reduce_degree(rows: list[dict[int, int]], ncols: int):
    """Fully reduced integer echelon form; pivots must be units.

    Returns {pivot column: row dict with that column's coefficient 1}.
    """
    pivots: dict[int, dict[int, int]] = {}
    active = [r for r in rows if r]
    for c in range(ncols):
        hits = [r for r in active if r.get(c)]
        if not hits:
            continue
        # Euclid across rows until a single row carries gcd in column c
        while True:
            hits.sort(key=lambda r: (abs(r[c]), len(r)))
            p = hits[0]
            rest = []
            for r in hits[1:]:
                q = r[c] // p[c]
                _axpy(r, p, -q)
                if r.get(c):
                    rest.append(r)
            if not rest:
                break
            hits = [p] + rest
        if abs(p[c]) != 1:
            raise ChowError(f"pivot {p[c]} is not a unit: chosen basis is not integral")
        if p[c] == -1:
            for key in p:
                p[key] = -p[key]
        for q in pivots.values():
            if q.get(c):
                _axpy(q, p, -q[c])
        active = [r for r in active if r is not p and r]
        for r in active:
            if r.get(c):
                _axpy(r, p, -r[c])
        pivots[c] = p
    return pivots


def _axpy(y: dict[int, int], x: dict[int, int], a: int) -> None:
    """y += a * x, dropping zeros."""
    if not a:
        return
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


@dataclass
class _Degree:
    basis: list[Monomial]
    reductions: dict[Monomial, tuple[int, ...]]


@dataclass(eq=False)
class ChowRing:
    fan: Fan
    picard: PicardPresentation
    degrees: list[_Degree] = field(repr=False)
    _products: dict = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return self.fan.dimension

    def ranks(self) -> tuple[int, ...]:
        return tuple(len(d.basis) for d in self.degrees)

    def basis(self, k: int) -> list[Monomial]:
        return list(self.degrees[k].basis)

    def reduce(self, mono: Iterable[int]) -> ChowElement:
        mono = tuple(sorted(mono))
        k = len(mono)
        if k > self.dimension:
            return self.zero()
        if monomial_vanishes(self.fan, set(mono)):
            return self.zero(k)
        coords = self.degrees[k].reductions[mono]
        return ChowElement(self, {k: coords})

    def zero(self, k: int = 0) -> ChowElement:
        return ChowElement(self, {})

    def one(self) -> ChowElement:
        return ChowElement(self, {0: (1,)})

    def generator(self, i: int) -> ChowElement:
        return self.reduce((i,))

    def divisor(self, d: DivisorClass | Sequence[int]) -> ChowElement:
        """Degree-1 element of a divisor vector or Pic class."""
        if isinstance(d, DivisorClass):
            d = self.picard.representative(d)
        if len(d) != self.fan.n_rays:
            raise ValueError("divisor length does not match ray count")
        out = self.zero()
        for i, c in enumerate(d, 1):
            if c:
                out = out + c * self.generator(i)
        return out

    def canonical(self) -> ChowElement:
        return self.divisor([-1] * self.fan.n_rays)

    @property
    def point_class(self) -> ChowElement:
        first = sorted(self.fan.max_cones, key=sorted)[0]
        return self.reduce(sorted(first))

    def degree(self, x: ChowElement) -> int | Fraction:
        """Integral of the top-degree part against the point class."""
        n = self.dimension
        top = x.part(n)
        pc = self.point_class.part(n)
        ratio = Fraction(top[0], pc[0])
        return int(ratio) if ratio.denominator == 1 else ratio

    def _product_table(self, a: int, b: int):
        key = (a, b)
        if key not in self._products:
            table = {}
            for i, mu in enumerate(self.degrees[a].basis):
                for j, nu in enumerate(self.degrees[b].basis):
                    table[i, j] = self.reduce(mu + nu).part(a + b)
            self._products[key] = table
        return self._products[key]

    def intersection_matrix(self) -> list[list[int]]:
        """Pairing of the degree-1 basis with itself on a surface."""
        if self.dimension != 2:
            raise ChowError("intersection matrix of divisors needs a surface")
        gens = [self.reduce(m) for m in self.degrees[1].basis]
        return [[self.degree(a * b) for b in gens] for a in gens]


class ChowElement:
    """Element of a ChowRing as per-degree coordinate vectors."""

    __slots__ = ("ring", "parts")

    def __init__(self, ring: ChowRing, parts: dict[int, Sequence]):
        self.ring = ring
        self.parts = {k: tuple(v) for k, v in parts.items() if any(v)}

    def part(self, k: int) -> tuple:
        if k in self.parts:
            return self.parts[k]
        if 0 <= k < len(self.ring.degrees):
            return (0,) * len(self.ring.degrees[k].basis)
        return ()

    def _check(self, other: ChowElement) -> None:
        if not isinstance(other, ChowElement):
            raise TypeError("expected a ChowElement")
        if other.ring is not self.ring:
            raise ChowError("elements belong to different rings")

    def __add__(self, other: ChowElement) -> ChowElement:
        self._check(other)
        keys = set(self.parts) | set(other.parts)
        return ChowElement(self.ring, {k: tuple(a + b for a, b in zip(self.part(k),
                                                                     other.part(k)))
                                       for k in keys})

    def __neg__(self) -> ChowElement:
        return ChowElement(self.ring, {k: tuple(-a for a in v) for k, v in self.parts.items()})

    def __sub__(self, other: ChowElement) -> ChowElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ChowElement(self.ring, {k: tuple(other * a for a in v)
                                           for k, v in self.parts.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int) -> ChowElement:
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, ChowElement) and other.ring is self.ring
                and self.parts == other.parts)

    def __hash__(self):
        return hash(tuple(sorted(self.parts.items())))

    def is_zero(self) -> bool:
        return not self.parts

    def homogeneous_degree(self) -> int | None:
        ks = list(self.parts)
        return ks[0] if len(ks) == 1 else None

    def __repr__(self):
        if not self.parts:
            return "ChowElement(0)"
        terms = []
        for k in sorted(self.parts):
            for c, mono in zip(self.parts[k], self.ring.degrees[k].basis):
                if c:
                    name = "*".join(f"E{i}" for i in mono) or "1"
                    terms.append(f"{c}*{name}")
        return "ChowElement(" + " + ".join(terms) + ")"


def multiply(a: ChowElement, b: ChowElement) -> ChowElement:
    a._check(b)
    ring = a.ring
    n = ring.dimension
    out: dict[int, list] = {}
    for ka, va in a.parts.items():
        for kb, vb in b.parts.items():
            k = ka + kb
            if k > n:
                continue
            table = ring._product_table(ka, kb)
            acc = out.setdefault(k, [0] * len(ring.degrees[k].basis))
            for i, x in enumerate(va):
                if not x:
                    continue
                for j, y in enumerate(vb):
                    if not y:
                        continue
                    for t, z in enumerate(table[i, j]):
                        if z:
                            acc[t] += x * y * z
    return ChowElement(ring, out)


def build_chow(fan: Fan) -> ChowRing:
    if not is_del_pezzo(fan):
        raise FanError("the Chow presentation is implemented for Del Pezzo fans V^n only")
    n = fan.dimension
    labels = list(fan.labels)
    # linear relations for m = e_1..e_n
    linear = [[(i, fan.ray(i)[a]) for i in labels if fan.ray(i)[a]] for a in range(n)]
    degrees = []
    for k in range(n + 1):
        monos = [m for m in _monomials(labels, k) if not monomial_vanishes(fan, set(m))]
        monos.sort(key=_column_key)
        index = {m: c for c, m in enumerate(monos)}
        rows = []
        if k >= 1:
            for mu in _monomials(labels, k - 1):
                if monomial_vanishes(fan, set(mu)):
                    continue
                for form in linear:
                    row: dict[int, int] = {}
                    for i, coef in form:
                        prod = tuple(sorted(mu + (i,)))
                        c = index.get(prod)
                        if c is not None:
                            row[c] = row.get(c, 0) + coef
                    row = {c: v for c, v in row.items() if v}
                    if row:
                        rows.append(row)
        pivots = _reduce_degree(rows, len(monos))
        free_cols = [c for c in range(len(monos)) if c not in pivots]
        basis = [monos[c] for c in free_cols]
        if any(len(set(m)) != len(m) for m in basis):
            raise ChowError(f"degree {k}: a non-square-free monomial survives as a basis element")
        pos = {c: t for t, c in enumerate(free_cols)}
        reductions = {}
        for c, m in enumerate(monos):
            vec = [0] * len(free_cols)
            if c in pos:
                vec[pos[c]] = 1
            else:
                for cc, v in pivots[c].items():
                    if cc != c:
                        vec[pos[cc]] = -v
            reductions[m] = tuple(vec)
        basis_sorted = sorted(range(len(basis)), key=lambda t: basis[t])
        basis = [basis[t] for t in basis_sorted]
        reductions = {m: tuple(v[t] for t in basis_sorted) for m, v in reductions.items()}
        degrees.append(_Degree(basis, reductions))
    ring = ChowRing(fan, picard_presentation(fan), degrees)
    top = ring.point_class.part(n)
    if len(top) != 1 or abs(top[0]) != 1:
        raise ChowError(f"top degree is not free of rank one on the point class: {top}")
    return ring


# ---------------------------------------------------------------------------
# rank-2 extension checks


def chern_pair(ring: ChowRing, x1, x2) -> tuple[ChowElement, ChowElement]:
    """(c1, c2) of an extension of line bundles with classes x1, x2."""
    a = ring.divisor(x1)
    b = ring.divisor(x2)
    return a + b, a * b


def splitting_candidates(ring: ChowRing, d1: DivisorClass | Sequence[int], box: int
                         ) -> list[DivisorClass]:
    """Classes x2 in the coordinate box with Chern classes matching (d1, -d1).

    Candidates satisfy x1 + x2 = c1 and x1 * x2 = c2 with x1 = c1 - x2, where
    c1, c2 are the Chern classes of an extension of L(-d1) by L(d1).
    """
    if not isinstance(d1, DivisorClass):
        d1 = ring.picard.class_of(d1)
    c1, c2 = chern_pair(ring, d1, -d1)
    out = []
    for coords in itertools.product(range(-box, box + 1), repeat=ring.picard.rank):
        x2 = ring.divisor(DivisorClass(coords))
        x1 = c1 - x2
        if x1 + x2 == c1 and x1 * x2 == c2:
            out.append(DivisorClass(coords))
    return out


def riemann_roch_chi(ring: ChowRing, d) -> int:
    """chi(O(D)) on a surface: 1 + (D.D - D.K) / 2."""
    if ring.dimension != 2:
        raise ChowError("surface Riemann-Roch needs the two-dimensional ring")
    D = ring.divisor(d)
    twice = ring.degree(D * D) - ring.degree(D * ring.canonical())
    if twice % 2:
        raise ChowError(f"D.(D-K) = {twice} is odd; the ring is inconsistent")
    return 1 + twice // 2


def _todd_series(n: int) -> list[Fraction]:
    """Coefficients of x / (1 - exp(-x)) up to x^n."""
    # 1/(that) = (1 - exp(-x))/x = sum_k (-1)^k x^k / (k+1)!
    inv = [Fraction((-1) ** k, math.factorial(k + 1)) for k in range(n + 1)]
    out = [Fraction(0)] * (n + 1)
    out[0] = Fraction(1)
    for k in range(1, n + 1):
        out[k] = -sum(inv[j] * out[k - j] for j in range(1, k + 1))
    return out


def hirzebruch_riemann_roch_chi(ring: ChowRing, d) -> int:
    """chi(O(D)) as the degree of ch(O(D)) * td(X)."""
    n = ring.dimension
    series = _todd_series(n)
    td = ring.one()
    for i in ring.fan.labels:
        E = ring.generator(i)
        factor = ring.one()
        power = ring.one()
        for k in range(1, n + 1):
            power = power * E
            factor = factor + series[k] * power
        td = td * factor
    D = ring.divisor(d)
    ch = ring.one()
    power = ring.one()
    for k in range(1, n + 1):
        power = power * D
        ch = ch + Fraction(1, math.factorial(k)) * power
    chi = ring.degree(ch * td)
    if isinstance(chi, Fraction):
        raise ChowError(f"Hirzebruch-Riemann-Roch gave a non-integer {chi}")
    return chi
