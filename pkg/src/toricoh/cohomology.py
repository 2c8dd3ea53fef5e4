"""Line bundle cohomology on complete smooth toric varieties.

For a divisor vector d, the representatives of its class are d + div(m) for
m in M. The support complex of a representative depends only on which
coordinates are nonnegative, so the sum over representatives becomes a finite
sum over sign patterns::

    h^p(d) = sum over patterns S of  rank H~_{n-1-p}(supp S) * #chamber(S, d)

where chamber(S, d) is the set of m with <m, v_i> >= -d_i for i in S and
<m, v_i> <= -d_i - 1 otherwise.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass
from typing import Sequence

from .fan import Fan, FanError, build_del_pezzo_fan, is_del_pezzo, validate
from .homology import (RATIONALS, HomologyProfile, SignPattern, reduced_homology,
                       support_complex)
from .lattice import (Bounded, Constraint, IntMatrix, RationalPolyhedron, Unbounded,
                      cokernel_presentation, determinant, lattice_points,
                      unimodular_inverse)

DEFAULT_MAX_RAYS = 20


class CohomologyError(Exception):
    """Base class for engine failures."""


class FanNotValidated(CohomologyError):
    pass


class UnboundedChamber(CohomologyError):
    pass


class SweepTooLarge(CohomologyError):
    pass


def _max_rays_from_env() -> int:
    raw = os.environ.get("TORICOH_MAX_RAYS")
    return int(raw) if raw else DEFAULT_MAX_RAYS


@functools.lru_cache(maxsize=32)
def _validated(fan: Fan) -> bool:
    return validate(fan).ok


def require_valid(fan: Fan) -> None:
    if not _validated(fan):
        v = validate(fan)
        raise FanNotValidated("fan is not smooth and complete: " + "; ".join(v.diagnostics))


def _check_vector(fan: Fan, d: Sequence[int]) -> tuple[int, ...]:
    d = tuple(int(x) for x in d)
    if len(d) != fan.n_rays:
        raise ValueError(f"divisor has {len(d)} entries, fan has {fan.n_rays} rays")
    return d


# ---------------------------------------------------------------------------
# Picard group


@dataclass(frozen=True)
class DivisorClass:
    """Coordinates of a line bundle class in a fixed basis of Pic."""

    coords: tuple[int, ...]

    def __add__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> DivisorClass:
        return DivisorClass(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class PicardPresentation:
    """Pic(X) for a smooth complete fan, in the basis {E_j : j not in ``anchor``}.

    ``anchor`` is a unimodular maximal cone; every class has a unique
    representative vanishing on the anchor's rays, and its remaining entries
    are the class coordinates.
    """

    fan: Fan
    anchor: tuple[int, ...]
    basis: tuple[int, ...]
    _solve: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    def normalize(self, d: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Return (m, d + div m) where the second vanishes on the anchor."""
        d = _check_vector(self.fan, d)
        m = self._solve @ tuple(-d[i - 1] for i in self.anchor)
        div = self.fan.pairing(m)
        return m, tuple(a + b for a, b in zip(d, div))

    def class_of(self, d: Sequence[int]) -> DivisorClass:
        _, r = self.normalize(d)
        return DivisorClass(tuple(r[j - 1] for j in self.basis))

    def representative(self, cls: DivisorClass | Sequence[int]) -> tuple[int, ...]:
        coords = cls.coords if isinstance(cls, DivisorClass) else tuple(cls)
        if len(coords) != self.rank:
            raise ValueError(f"class has {len(coords)} coordinates, Pic has rank {self.rank}")
        out = [0] * self.fan.n_rays
        for j, c in zip(self.basis, coords):
            out[j - 1] = c
        return tuple(out)

    def is_principal(self, d: Sequence[int]) -> bool:
        return self.class_of(d).is_zero()


def picard_presentation(fan: Fan) -> PicardPresentation:
    require_valid(fan)
    n = fan.dimension
    anchor = next(tuple(sorted(c)) for c in fan.max_cones
                  if abs(determinant([fan.ray(i) for i in sorted(c)])) == 1)
    A = IntMatrix([fan.ray(i) for i in anchor], n, n)
    basis = tuple(j for j in fan.labels if j not in anchor)
    pres = PicardPresentation(fan, anchor, basis, unimodular_inverse(A))
    coker = cokernel_presentation(IntMatrix(fan.rays, fan.n_rays, n))
    if coker.torsion or coker.free_rank != len(basis):
        raise CohomologyError(
            f"Pic rank mismatch: cokernel gives {coker.free_rank} (+torsion {coker.torsion}), "
            f"anchor basis gives {len(basis)}")
    return pres


def canonical_divisor(fan: Fan) -> tuple[int, ...]:
    return tuple([-1] * fan.n_rays)


# ---------------------------------------------------------------------------
# the pattern sweep


@functools.lru_cache(maxsize=16)
def pattern_profiles(fan: Fan, coeffs: str = RATIONALS
                     ) -> tuple[tuple[SignPattern, HomologyProfile], ...]:
    """Homology of every sign pattern's support complex, in a fixed order.

    Patterns are ordered by their negative sets as sorted tuples, shortest first.
    """
    k = fan.n_rays
    out = []
    for size in range(k + 1):
        for neg in itertools.combinations(range(1, k + 1), size):
            pat = SignPattern.from_negative(neg, k)
            out.append((pat, reduced_homology(support_complex(fan, pat), coeffs)))
    return tuple(out)


def chamber(fan: Fan, d: Sequence[int], pattern: SignPattern) -> RationalPolyhedron:
    """Characters m whose representative d + div(m) has the given sign pattern."""
    cons = []
    for i in fan.labels:
        v = fan.ray(i)
        if i in pattern.nonneg:
            cons.append(Constraint(v, -d[i - 1], ">="))
        else:
            cons.append(Constraint(v, -d[i - 1] - 1, "<="))
    return RationalPolyhedron(fan.dimension, tuple(cons))


@dataclass(frozen=True)
class PatternContribution:
    negative: tuple[int, ...]
    homology_degree: int
    cohomology_degree: int
    rank: int
    points: int

    @property
    def amount(self) -> int:
        return self.rank * self.points


@dataclass(frozen=True)
class CohomologyTable:
    h: tuple[int, ...]
    breakdown: tuple[PatternContribution, ...]

    @property
    def euler(self) -> int:
        return sum((-1) ** p * x for p, x in enumerate(self.h))

    def __getitem__(self, p: int) -> int:
        return self.h[p]

    def audit_ok(self) -> bool:
        total = [0] * len(self.h)
        for c in self.breakdown:
            total[c.cohomology_degree] += c.amount
        return tuple(total) == self.h


def cohomology(fan: Fan, d: Sequence[int], *, max_rays: int | None = None) -> CohomologyTable:
    """h^0..h^n of O(sum d_i E_i), with the per-pattern audit trail."""
    require_valid(fan)
    d = _check_vector(fan, d)
    cap = _max_rays_from_env() if max_rays is None else max_rays
    if fan.n_rays > cap:
        raise SweepTooLarge(f"{fan.n_rays} rays means 2^{fan.n_rays} sign patterns; "
                            f"cap is {cap} (set TORICOH_MAX_RAYS to raise it)")
    n = fan.dimension
    h = [0] * (n + 1)
    audit = []
    for pattern, profile in pattern_profiles(fan):
        nz = profile.nonzero()
        if not nz:
            continue
        res = lattice_points(chamber(fan, d, pattern))
        if isinstance(res, Unbounded):
            raise UnboundedChamber(
                f"chamber of pattern with negative set {sorted(pattern.negative)} "
                f"is unbounded although its support complex has homology {nz}")
        if not isinstance(res, Bounded):
            continue
        for q, rk in sorted(nz.items()):
            p = n - 1 - q
            h[p] += rk * len(res)
            audit.append(PatternContribution(tuple(sorted(pattern.negative)), q, p, rk,
                                             len(res)))
    return CohomologyTable(tuple(h), tuple(audit))


def ext_dimension(fan: Fan, l1: Sequence[int], l2: Sequence[int]) -> int:
    """dim Ext^1(L2, L1) = h^1(L1 - L2): extensions 0 -> L1 -> E -> L2 -> 0."""
    l1 = _check_vector(fan, l1)
    l2 = _check_vector(fan, l2)
    return cohomology(fan, tuple(a - b for a, b in zip(l1, l2))).h[1]


@dataclass(frozen=True)
class H1Class:
    cls: DivisorClass
    representative: tuple[int, ...]
    h1: int


def search_h1(fan: Fan, box: int) -> list[H1Class]:
    """Classes with h^1 != 0 among divisor vectors with entries in [-box, box].

    Each class is reported once, with its lexicographically smallest
    representative in the box; results are sorted by that representative.
    """
    if box < 1:
        raise ValueError("box must be >= 1")
    pic = picard_presentation(fan)
    first: dict[DivisorClass, tuple[int, ...]] = {}
    for d in itertools.product(range(-box, box + 1), repeat=fan.n_rays):
        c = pic.class_of(d)
        if c not in first:
            first[c] = d
    out = []
    for c, d in first.items():
        h1 = cohomology(fan, d).h[1] if fan.dimension >= 1 else 0
        if h1:
            out.append(H1Class(c, d, h1))
    out.sort(key=lambda x: x.representative)
    return out


def prop43_divisor(fan: Fan, i: int, coeffs: int | Sequence[int]) -> tuple[int, ...]:
    """Divisor with zeros at positions i and n+1+i and positive entries elsewhere.

    ``coeffs`` is a single positive integer used everywhere, or one positive
    integer per remaining position (2n of them, in ray order).
    """
    if not is_del_pezzo(fan):
        raise FanError("this divisor family is defined on Del Pezzo fans only")
    n = fan.dimension
    if not 1 <= i <= n + 1:
        raise ValueError(f"index i={i} out of range 1..{n + 1}")
    skip = {i, n + 1 + i}
    slots = [j for j in fan.labels if j not in skip]
    if isinstance(coeffs, int):
        coeffs = [coeffs] * len(slots)
    coeffs = [int(c) for c in coeffs]
    if len(coeffs) != len(slots):
        raise ValueError(f"expected {len(slots)} coefficients, got {len(coeffs)}")
    if any(c <= 0 for c in coeffs):
        raise ValueError("coefficients must be positive integers")
    out = [0] * fan.n_rays
    for j, c in zip(slots, coeffs):
        out[j - 1] = c
    return tuple(out)


__all__ = [
    "CohomologyError", "FanNotValidated", "UnboundedChamber", "SweepTooLarge",
    "DivisorClass", "PicardPresentation", "picard_presentation", "canonical_divisor",
    "pattern_profiles", "chamber", "PatternContribution", "CohomologyTable", "cohomology",
    "ext_dimension", "H1Class", "search_h1", "prop43_divisor", "build_del_pezzo_fan",
]
