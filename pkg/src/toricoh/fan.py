"""Complete simplicial fans, the projective-space and Del Pezzo builders.

Ray labels are 1-based (``fan.ray(1)`` is v_1) because divisor vectors are
positional and rays are conventionally numbered from one. Cones are frozensets of
labels.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .lattice import determinant, rank


class FanError(ValueError):
    """Structural problem with a fan (bad ray, bad cone, unsupported builder)."""


@dataclass(frozen=True)
class Fan:
    dimension: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[frozenset[int], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(sorted({frozenset(int(i) for i in c) for c in self.max_cones},
                             key=lambda c: (len(c), sorted(c))))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if self.dimension < 0:
            raise FanError("dimension must be nonnegative")
        if len(set(rays)) != len(rays):
            dup = next(r for r in rays if rays.count(r) > 1)
            raise FanError(f"duplicate ray {list(dup)}")
        for i, r in enumerate(rays, 1):
            if len(r) != self.dimension:
                raise FanError(f"ray v_{i} has length {len(r)}, expected {self.dimension}")
            g = 0
            for x in r:
                g = gcd(g, x)
            if g != 1:
                raise FanError(f"ray v_{i} = {list(r)} is not primitive")
        for c in cones:
            bad = [i for i in c if not 1 <= i <= len(rays)]
            if bad:
                raise FanError(f"cone {sorted(c)} uses out-of-range ray index {bad[0]}")
            if rank([rays[i - 1] for i in c]) != len(c):
                raise FanError(f"cone {sorted(c)} is not simplicial")

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @property
    def labels(self) -> range:
        return range(1, len(self.rays) + 1)

    def ray(self, i: int) -> tuple[int, ...]:
        return self.rays[i - 1]

    @cached_property
    def cones(self) -> frozenset[frozenset[int]]:
        """Every cone of the fan, the zero cone included."""
        out = set()
        for c in self.max_cones:
            items = sorted(c)
            for k in range(len(items) + 1):
                out.update(frozenset(s) for s in itertools.combinations(items, k))
        if not out:
            out.add(frozenset())
        return frozenset(out)

    def is_cone(self, labels: Iterable[int]) -> bool:
        return frozenset(labels) in self.cones

    def pairing(self, m: Sequence[int]) -> tuple[int, ...]:
        """``(<m, v_i>)_i``: the principal divisor of the character m."""
        return tuple(sum(a * b for a, b in zip(m, r)) for r in self.rays)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "rays": [list(r) for r in self.rays],
            "max_cones": [sorted(c) for c in self.max_cones],
        }

    @classmethod
    def from_json(cls, data: dict | str, name: str = "") -> Fan:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            dim = data["dimension"]
            rays = data["rays"]
            cones = data["max_cones"]
        except (KeyError, TypeError) as exc:
            raise FanError(f"fan JSON must have dimension, rays, max_cones: {exc}") from None
        if not isinstance(dim, int) or not all(
                isinstance(r, list) and all(isinstance(x, int) for x in r) for r in rays):
            raise FanError("fan JSON has non-integer data")
        if not all(isinstance(c, list) and all(isinstance(x, int) for x in c) for c in cones):
            raise FanError("max_cones must be lists of integer ray indices")
        if any(len(set(c)) != len(c) for c in cones):
            raise FanError("cone lists a ray twice")
        return cls(dim, tuple(map(tuple, rays)), tuple(map(frozenset, cones)), name=name)


def cones_of_dimension(fan: Fan, m: int) -> list[tuple[int, ...]]:
    """Sorted list of the m-dimensional cones, each a sorted label tuple."""
    if not 0 <= m <= fan.dimension:
        raise FanError(f"cone dimension {m} out of range 0..{fan.dimension}")
    return sorted(tuple(sorted(c)) for c in fan.cones if len(c) == m)


def build_projective_fan(n: int) -> Fan:
    if n < 1:
        raise FanError("projective space needs n >= 1")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple([-1] * n))
    cones = [frozenset(c) for c in itertools.combinations(range(1, n + 2), n)]
    return Fan(n, tuple(rays), tuple(cones), name=f"pn:{n}")


def build_del_pezzo_fan(n: int) -> Fan:
    """The fan of V^n (n = 2r even): rays e_i, -sum e_i, then their negatives.

    Maximal cones pick x_i (i in I) and y_j (j in J) with I, J disjoint subsets
    of {1..n+1} and #I = #J = r, where x_i = v_i and y_j = v_{j+n+1}.
    """
    if n < 2 or n % 2:
        raise FanError(f"Del Pezzo variety V^n requires n even and >= 2 (n = 2r); got n={n}")
    r = n // 2
    xs = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    xs.append(tuple([-1] * n))
    ys = [tuple(-c for c in v) for v in xs]
    cols = range(1, n + 2)
    cones = []
    for I in itertools.combinations(cols, r):
        rest = [j for j in cols if j not in I]
        for J in itertools.combinations(rest, r):
            cones.append(frozenset(I) | frozenset(j + n + 1 for j in J))
    return Fan(n, tuple(xs + ys), tuple(cones), name=f"delpezzo:{n}")


def is_del_pezzo(fan: Fan) -> bool:
    n = fan.dimension
    if n < 2 or n % 2:
        return False
    ref = build_del_pezzo_fan(n)
    return fan.rays == ref.rays and set(fan.max_cones) == set(ref.max_cones)


@dataclass(frozen=True)
class Validation:
    smooth: bool
    complete: bool
    diagnostics: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.smooth and self.complete


def validate(fan: Fan) -> Validation:
    """Check smoothness and (combinatorial) completeness.

    Completeness: all maximal cones are full-dimensional, each facet lies in
    exactly two maximal cones whose extra rays sit on opposite sides of the
    facet's hyperplane, and the adjacency graph is connected.
    """
    n = fan.dimension
    diags: list[str] = []
    smooth = complete = True
    if not fan.max_cones:
        return Validation(False, False, ("fan has no maximal cones",))
    for c in fan.max_cones:
        if len(c) != n:
            complete = False
            diags.append(f"cone {sorted(c)} is not full-dimensional")
            continue
        det = determinant([fan.ray(i) for i in sorted(c)])
        if abs(det) != 1:
            smooth = False
            diags.append(f"cone {sorted(c)} has |determinant| {abs(det)}, not a lattice basis")
    used = set().union(*fan.max_cones)
    for i in fan.labels:
        if i not in used:
            complete = False
            diags.append(f"ray v_{i} lies in no maximal cone")
    full = [c for c in fan.max_cones if len(c) == n]
    facets = defaultdict(list)
    for c in full:
        for i in c:
            facets[c - {i}].append(c)
    for tau, owners in sorted(facets.items(), key=lambda kv: sorted(kv[0])):
        if len(owners) != 2:
            complete = False
            diags.append(f"facet {sorted(tau)} lies in {len(owners)} maximal cone(s), expected 2")
            continue
        a, = owners[0] - tau
        b, = owners[1] - tau
        base = [fan.ray(i) for i in sorted(tau)]
        sa = determinant(base + [fan.ray(a)])
        sb = determinant(base + [fan.ray(b)])
        if sa * sb >= 0:
            complete = False
            diags.append(f"maximal cones {sorted(owners[0])} and {sorted(owners[1])} "
                         f"lie on the same side of facet {sorted(tau)}")
    if full:
        adj = defaultdict(set)
        for owners in facets.values():
            if len(owners) == 2:
                adj[owners[0]].add(owners[1])
                adj[owners[1]].add(owners[0])
        seen = {full[0]}
        queue = deque([full[0]])
        while queue:
            for nb in adj[queue.popleft()]:
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        if len(seen) != len(full):
            complete = False
            diags.append(f"maximal-cone adjacency graph is disconnected "
                         f"({len(seen)} of {len(full)} cones reachable)")
    return Validation(smooth, complete, tuple(diags))


@dataclass(frozen=True)
class SymmetryReport:
    pairs: int
    order: int

    @property
    def hypothesis_met(self) -> bool:
        """At least ``order + 1`` antipodal pairs among the rays."""
        return self.pairs >= self.order + 1


def symmetry_report(fan: Fan) -> SymmetryReport:
    rays = set(fan.rays)
    paired = [r for r in fan.rays if tuple(-x for x in r) in rays]
    return SymmetryReport(pairs=len(paired) // 2, order=rank(paired))
