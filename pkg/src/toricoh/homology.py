"""Support complexes of sign patterns and their reduced simplicial homology.

Degrees follow the usual simplicial convention: a face with k+1 vertices is a
k-simplex, and the empty face sits in degree -1 so that the void complex
``{emptyset}`` has reduced homology Z in degree -1.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fan import Fan
from .lattice import rank, rank_mod2, smith_normal_form

RATIONALS = "rational"
INTEGERS = "integer"
MOD2 = "mod2"
COEFFICIENTS = (RATIONALS, INTEGERS, MOD2)


@dataclass(frozen=True)
class SignPattern:
    """Split of ray labels into r_i >= 0 (``nonneg``) and r_i <= -1 (the rest)."""

    nonneg: frozenset[int]
    n_rays: int

    def __post_init__(self):
        object.__setattr__(self, "nonneg", frozenset(self.nonneg))
        bad = [i for i in self.nonneg if not 1 <= i <= self.n_rays]
        if bad:
            raise ValueError(f"ray label {bad[0]} out of range 1..{self.n_rays}")

    @classmethod
    def of_vector(cls, r: Sequence[int]) -> SignPattern:
        return cls(frozenset(i for i, x in enumerate(r, 1) if x >= 0), len(r))

    @classmethod
    def from_negative(cls, negative: Iterable[int], n_rays: int) -> SignPattern:
        neg = frozenset(negative)
        bad = [i for i in neg if not 1 <= i <= n_rays]
        if bad:
            raise ValueError(f"ray label {bad[0]} out of range 1..{n_rays}")
        return cls(frozenset(range(1, n_rays + 1)) - neg, n_rays)

    @property
    def negative(self) -> frozenset[int]:
        return frozenset(range(1, self.n_rays + 1)) - self.nonneg


@dataclass(frozen=True)
class SupportComplex:
    """Abstract simplicial complex on ray labels, closed under subsets."""

    vertices: frozenset[int]
    faces: frozenset[frozenset[int]]
    dimension_hint: int = -1

    @classmethod
    def from_maximal_faces(cls, maximal: Iterable[Iterable[int]], dimension_hint: int = -1
                           ) -> SupportComplex:
        faces = {frozenset()}
        for f in maximal:
            items = sorted(set(f))
            for k in range(1, len(items) + 1):
                faces.update(frozenset(s) for s in itertools.combinations(items, k))
        verts = frozenset(v for f in faces for v in f)
        return cls(verts, frozenset(faces), dimension_hint)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1 if self.faces else -2

    @property
    def top_degree(self) -> int:
        return max(self.dimension, self.dimension_hint)

    def faces_of_dim(self, k: int) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(f)) for f in self.faces if len(f) == k + 1)

    @property
    def maximal_faces(self) -> list[tuple[int, ...]]:
        out = [f for f in self.faces
               if not any(f < g for g in self.faces if len(g) == len(f) + 1)]
        return sorted((tuple(sorted(f)) for f in out), key=lambda t: (len(t), t))

    def f_vector(self) -> dict[int, int]:
        counts = Counter(len(f) - 1 for f in self.faces)
        return {k: counts.get(k, 0) for k in range(-1, self.top_degree + 1)}

    def reduced_euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in self.f_vector().items())

    def __le__(self, other: SupportComplex) -> bool:
        return self.faces <= other.faces


def support_complex(fan: Fan, pattern: SignPattern) -> SupportComplex:
    """Faces: subsets of the nonnegative labels spanned inside some cone."""
    faces = frozenset(c for c in fan.cones if c <= pattern.nonneg)
    return SupportComplex(pattern.nonneg, faces, fan.dimension - 1)


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced homology ranks (and integral torsion) for degrees -1..top."""

    coeffs: str
    ranks: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def rank(self, q: int) -> int:
        i = q + 1
        return self.ranks[i] if 0 <= i < len(self.ranks) else 0

    def torsion_in(self, q: int) -> tuple[int, ...]:
        i = q + 1
        return self.torsion[i] if 0 <= i < len(self.torsion) else ()

    @property
    def degrees(self) -> range:
        return range(-1, len(self.ranks) - 1)

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * self.rank(q) for q in self.degrees)

    def is_zero(self) -> bool:
        return not any(self.ranks) and not any(self.torsion)

    def nonzero(self) -> dict[int, int]:
        return {q: self.rank(q) for q in self.degrees if self.rank(q)}


def boundary_matrix(c: SupportComplex, k: int) -> list[list[int]]:
    """Matrix of the augmented boundary C_k -> C_{k-1} (rows: (k-1)-faces)."""
    lower = c.faces_of_dim(k - 1)
    upper = c.faces_of_dim(k)
    index = {f: i for i, f in enumerate(lower)}
    M = [[0] * len(upper) for _ in lower]
    for j, f in enumerate(upper):
        for pos in range(len(f)):
            M[index[f[:pos] + f[pos + 1:]]][j] = -1 if pos % 2 else 1
    return M


def reduced_homology(c: SupportComplex, coeffs: str = RATIONALS) -> HomologyProfile:
    if coeffs not in COEFFICIENTS:
        raise ValueError(f"unknown coefficients {coeffs!r}")
    top = c.top_degree
    dims = {k: len(c.faces_of_dim(k)) for k in range(-1, top + 2)}
    brank = {}
    btors = {}
    for k in range(0, top + 2):
        if dims[k] == 0 or dims[k - 1] == 0:
            brank[k], btors[k] = 0, ()
            continue
        M = boundary_matrix(c, k)
        if coeffs == RATIONALS:
            brank[k], btors[k] = rank(M), ()
        elif coeffs == MOD2:
            brank[k], btors[k] = rank_mod2(M), ()
        else:
            diag = smith_normal_form(M).diag
            brank[k] = sum(1 for d in diag if d)
            btors[k] = tuple(d for d in diag if d > 1)
    ranks, torsion = [], []
    for q in range(-1, top + 1):
        below = brank.get(q, 0)
        above = brank.get(q + 1, 0)
        ranks.append(dims[q] - below - above)
        torsion.append(btors.get(q + 1, ()))
    return HomologyProfile(coeffs, tuple(ranks), tuple(torsion))


@dataclass(frozen=True)
class CycleCheck:
    holds: bool
    incidence: dict[tuple[int, ...], int]


def cycle_criterion(c: SupportComplex, d: int) -> CycleCheck:
    """Pseudocycle test: every (d-1)-face touched by a d-face lies in exactly two.

    ``incidence`` counts, for every (d-1)-face of the complex, the d-faces that
    contain it. With no d-faces at all the criterion fails.
    """
    if d < 1:
        raise ValueError("cycle criterion needs d >= 1")
    incidence = {f: 0 for f in c.faces_of_dim(d - 1)}
    top = c.faces_of_dim(d)
    for f in top:
        for pos in range(len(f)):
            incidence[f[:pos] + f[pos + 1:]] += 1
    holds = bool(top) and all(v == 2 for v in incidence.values() if v)
    return CycleCheck(holds, incidence)
