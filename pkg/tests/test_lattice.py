import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from toricoh.lattice import (Bounded, Constraint, Empty, IntMatrix, RationalPolyhedron,
                             Unbounded, cokernel_presentation, count_lattice_points,
                             determinant, lattice_points, rank, rank_mod2,
                             smith_normal_form, unimodular_inverse)


def test_snf_identity():
    assert smith_normal_form(IntMatrix.identity(3)).diag == (1, 1, 1)


def test_snf_zero():
    assert smith_normal_form(IntMatrix.zeros(2, 2)).diag == (0, 0)


def test_snf_two_by_two():
    # d1 = gcd of entries = 2, d1 * d2 = |det| = |16 - 24| = 8
    assert smith_normal_form([[2, 4], [6, 8]]).diag == (2, 4)


@pytest.mark.parametrize("shape", [(0, 0), (3, 0), (0, 4)])
def test_snf_empty_shapes(shape):
    snf = smith_normal_form(IntMatrix.zeros(*shape))
    assert snf.diag == ()
    assert snf.left.shape == (shape[0], shape[0])
    assert snf.right.shape == (shape[1], shape[1])


def _check_snf(a: IntMatrix):
    snf = smith_normal_form(a)
    assert snf.left @ a @ snf.right == snf.diagonal_matrix()
    assert abs(determinant(snf.left.entries)) == 1
    assert abs(determinant(snf.right.entries)) == 1
    nz = [d for d in snf.diag if d]
    assert all(d > 0 for d in nz)
    assert snf.diag[:len(nz)] == tuple(nz)  # zeros trail
    for x, y in zip(nz, nz[1:]):
        assert y % x == 0
    return snf


def test_snf_reconstruction_500_random():
    rng = random.Random(20261018)
    for _ in range(500):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        a = IntMatrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        snf = _check_snf(a)
        assert snf.rank == rank(a.entries)


@given(st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                       min_size=m, max_size=m))))
def test_snf_property(rows):
    _check_snf(IntMatrix(rows))


def test_snf_product_of_diag_is_det():
    a = IntMatrix([[3, 1, 4], [1, 5, 9], [2, 6, 5]])
    snf = smith_normal_form(a)
    prod = 1
    for d in snf.diag:
        prod *= d
    assert prod == abs(determinant(a.entries))


def test_rank_mod2_differs_from_rational():
    # [[1,1],[1,-1]] has rank 2 over Q, rank 1 over GF(2)
    assert rank([[1, 1], [1, -1]]) == 2
    assert rank_mod2([[1, 1], [1, -1]]) == 1


def test_unimodular_inverse():
    u = IntMatrix([[2, 1], [1, 1]])
    assert u @ unimodular_inverse(u) == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        unimodular_inverse(IntMatrix([[2, 0], [0, 1]]))


def test_cokernel_with_torsion():
    a = IntMatrix.from_columns([(1, 0, 0), (0, 2, 0)], rows=3)
    c = cokernel_presentation(a)
    assert c.free_rank == 1
    assert c.torsion == (2,)
    assert c.free_rank + len(c.torsion) + 1 == 3  # one invariant factor equal to 1


def test_cokernel_identity():
    c = cokernel_presentation(IntMatrix.identity(3))
    assert c.free_rank == 0 and c.torsion == ()


def test_cokernel_empty_matrix():
    c = cokernel_presentation(IntMatrix.zeros(4, 0))
    assert c.free_rank == 4 and c.torsion == ()
    assert c.project((1, 2, 3, 4)) != c.project((1, 2, 3, 5))


def test_cokernel_projection_kills_exactly_column_span():
    rng = random.Random(7)
    for _ in range(50):
        m, k = rng.randint(1, 5), rng.randint(0, 4)
        cols = [tuple(rng.randint(-4, 4) for _ in range(m)) for _ in range(k)]
        c = cokernel_presentation(IntMatrix.from_columns(cols, m))
        snf = smith_normal_form(IntMatrix.from_columns(cols, m))
        assert c.free_rank + snf.rank == m
        assert c.torsion == tuple(d for d in snf.diag if d > 1)
        zero = c.project((0,) * m)
        for col in cols:
            assert c.project(col) == zero
        for coeffs in itertools.product(range(-1, 2), repeat=k):
            v = tuple(sum(cf * col[i] for cf, col in zip(coeffs, cols)) for i in range(m))
            assert c.project(v) == zero
        # anything projecting to zero really is in the span
        for _ in range(20):
            v = tuple(rng.randint(-3, 3) for _ in range(m))
            if c.project(v) != zero:
                continue
            y = c.left @ v
            for i, d in enumerate(snf.diag):
                if d:
                    assert y[i] % d == 0
            assert all(y[i] == 0 for i in range(snf.rank, m))


def _poly(dim, rows):
    return RationalPolyhedron(dim, tuple(Constraint(*r) for r in rows))


def test_unit_square():
    p = _poly(2, [((1, 0), 0, ">="), ((1, 0), 1, "<="), ((0, 1), 0, ">="), ((0, 1), 1, "<=")])
    res = lattice_points(p)
    assert isinstance(res, Bounded)
    assert sorted(res.points) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_half_line_unbounded():
    assert isinstance(lattice_points(_poly(1, [((1,), 0, ">=")])), Unbounded)


def test_triangle_six_points():
    p = _poly(2, [((1, 0), 0, ">="), ((0, 1), 0, ">="), ((1, 1), 2, "<=")])
    brute = [(x, y) for x in range(0, 3) for y in range(0, 3) if x + y <= 2]
    assert len(brute) == 6
    assert sorted(lattice_points(p).points) == brute


def test_empty_and_integer_empty():
    assert isinstance(lattice_points(_poly(1, [((1,), 1, ">="), ((1,), 0, "<=")])), Empty)
    # rationally nonempty (x = 1/2), no integer point
    assert isinstance(lattice_points(_poly(1, [((2,), 1, ">="), ((2,), 1, "<=")])), Empty)
    # unbounded line 2x - 2y = 1 has no integer points
    line = _poly(2, [((2, -2), 1, ">="), ((2, -2), 1, "<=")])
    assert isinstance(lattice_points(line), Empty)


def test_unbounded_with_lineality():
    strip = _poly(2, [((1, -1), 0, ">="), ((1, -1), 3, "<=")])
    assert isinstance(lattice_points(strip), Unbounded)
    thin = _poly(3, [((3, 3, 0), 1, ">="), ((3, 3, 0), 2, "<="), ((0, 0, 1), 0, ">=")])
    assert isinstance(lattice_points(thin), Empty)
    ray = _poly(2, [((2, -1), 0, ">="), ((2, -1), 0, "<="),
                    ((1, 0), 1, ">=")])
    assert isinstance(lattice_points(ray), Unbounded)


def test_unbounded_pointed_cone_without_points_near_apex():
    # 3x - 5y in [1, 1], x >= 0: integer solutions x = 2 + 5t, y = 1 + 3t
    p = _poly(2, [((3, -5), 1, ">="), ((3, -5), 1, "<="), ((1, 0), 0, ">=")])
    assert isinstance(lattice_points(p), Unbounded)


def test_zero_dimensional():
    assert lattice_points(RationalPolyhedron(0, ())) == Bounded(((),))


def test_count_raises_on_unbounded():
    with pytest.raises(ValueError):
        count_lattice_points(_poly(1, [((1,), 0, ">=")]))


def _brute(p, radius):
    return sorted(x for x in itertools.product(range(-radius, radius + 1), repeat=p.dimension)
                  if p.contains(x))


@st.composite
def boxed_polyhedra(draw):
    dim = draw(st.integers(1, 4))
    box = draw(st.integers(1, 3))
    rows = []
    for k in range(dim):
        e = tuple(int(i == k) for i in range(dim))
        rows.append((e, draw(st.integers(-box, box)), ">="))
        rows.append((e, draw(st.integers(-box, box)), "<="))
    for _ in range(draw(st.integers(0, 3))):
        normal = tuple(draw(st.integers(-3, 3)) for _ in range(dim))
        rows.append((normal, draw(st.integers(-6, 6)), draw(st.sampled_from(["<=", ">="]))))
    return _poly(dim, rows), box


@settings(max_examples=200, deadline=None)
@given(boxed_polyhedra())
def test_lattice_points_match_brute_force(data):
    p, box = data
    res = lattice_points(p)
    expected = _brute(p, box)
    got = sorted(res.points) if isinstance(res, Bounded) else []
    assert not isinstance(res, Unbounded)
    assert got == expected
    assert len(set(got)) == len(got)


@st.composite
def polyhedra_any(draw):
    dim = draw(st.integers(1, 2))
    rows = []
    for _ in range(draw(st.integers(1, 5))):
        normal = tuple(draw(st.integers(-3, 3)) for _ in range(dim))
        rows.append((normal, draw(st.integers(-5, 5)), draw(st.sampled_from(["<=", ">="]))))
    return _poly(dim, rows)


@settings(max_examples=150, deadline=None)
@given(polyhedra_any())
def test_unbounded_verdict_against_box_growth(p):
    res = lattice_points(p)
    if isinstance(res, Bounded):
        reach = max(abs(x) for pt in res.points for x in pt) if p.dimension else 0
        assert sorted(res.points) == _brute(p, reach + 10)
        return
    # vertices of these systems have coordinates below 5 * 3 * 2 = 30 in size
    small, big = _brute(p, 40), _brute(p, 80)
    if isinstance(res, Empty):
        assert small == [] and big == []
    else:
        # infinitely many points: the larger box reveals strictly more
        assert len(big) > len(small) > 0


def _random_unimodular(rng, n):
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            u[i] = [-x for x in u[i]]
            continue
        q = rng.randint(-2, 2)
        u[i] = [a + q * b for a, b in zip(u[i], u[j])]
    return u


def test_count_invariant_under_unimodular_change():
    rng = random.Random(11)
    for _ in range(60):
        dim = rng.randint(1, 3)
        rows = []
        for k in range(dim):
            e = tuple(int(i == k) for i in range(dim))
            rows += [(e, rng.randint(-3, 0), ">="), (e, rng.randint(0, 3), "<=")]
        rows.append((tuple(rng.randint(-2, 2) for _ in range(dim)), rng.randint(-3, 3), "<="))
        p = _poly(dim, rows)
        u = _random_unimodular(rng, dim)
        # x = U y: constraint a.x <= b becomes (a U).y <= b
        moved = _poly(dim, [(tuple(sum(a[i] * u[i][j] for i in range(dim)) for j in range(dim)),
                             b, s) for a, b, s in rows])
        assert abs(determinant(u)) == 1
        assert count_lattice_points(p) == count_lattice_points(moved)
