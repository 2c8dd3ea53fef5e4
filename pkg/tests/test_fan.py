import itertools
import json

import pytest

from toricoh.fan import (Fan, FanError, build_del_pezzo_fan, build_projective_fan,
                         cones_of_dimension, is_del_pezzo, symmetry_report, validate)
from toricoh.homology import SignPattern, reduced_homology, support_complex


@pytest.mark.parametrize("n", [1, 2, 3])
def test_projective_builder(n):
    fan = build_projective_fan(n)
    assert fan.n_rays == n + 1
    assert len(fan.max_cones) == n + 1
    assert fan.ray(n + 1) == tuple([-1] * n)
    for i in range(1, n + 1):
        assert fan.ray(i) == tuple(int(j == i - 1) for j in range(n))
    assert all(len(c) == n for c in fan.max_cones)
    assert validate(fan).ok


def test_p1_rays():
    assert build_projective_fan(1).rays == ((1,), (-1,))


def test_projective_rejects_zero():
    with pytest.raises(FanError):
        build_projective_fan(0)


@pytest.mark.parametrize("n, rays, cones", [(2, 6, 6), (4, 10, 30), (6, 14, 140)])
def test_del_pezzo_counts(n, rays, cones):
    # C(n+1, r) * C(r+1, r) choices of disjoint I, J with #I = #J = r
    fan = build_del_pezzo_fan(n)
    assert fan.n_rays == rays == 2 * n + 2
    assert len(fan.max_cones) == cones


@pytest.mark.parametrize("n", [3, 1, 0, 5])
def test_del_pezzo_rejects_odd(n):
    with pytest.raises(FanError, match="even"):
        build_del_pezzo_fan(n)


@pytest.mark.parametrize("n", [2, 4])
def test_del_pezzo_antipodal_and_rays(n):
    fan = build_del_pezzo_fan(n)
    for i in range(1, n + 1):
        assert fan.ray(i) == tuple(int(j == i - 1) for j in range(n))
    assert fan.ray(n + 1) == tuple([-1] * n)
    for i in range(1, n + 2):
        assert fan.ray(i + n + 1) == tuple(-x for x in fan.ray(i))


@pytest.mark.parametrize("n", [2, 4])
def test_no_cone_holds_x_and_y_of_same_column(n):
    fan = build_del_pezzo_fan(n)
    for c in fan.cones:
        for i in range(1, n + 2):
            assert not {i, i + n + 1} <= c


@pytest.mark.parametrize("n", [2, 4])
def test_cones_match_table_description(n):
    # every choice of at most one entry per column, at most r per row
    fan = build_del_pezzo_fan(n)
    r = n // 2
    expected = set()
    for m in range(n + 1):
        for cols in itertools.combinations(range(1, n + 2), m):
            for rows in itertools.product((0, 1), repeat=m):
                if rows.count(0) <= r and rows.count(1) <= r:
                    expected.add(frozenset(c + row * (n + 1) for c, row in zip(cols, rows)))
    assert set(fan.cones) == expected


def test_validate_examples(v2, p3):
    assert validate(v2) == validate(v2)
    assert validate(v2).smooth and validate(v2).complete
    assert validate(p3).ok


def test_del_pezzo_cone_determinants(v2):
    from toricoh.lattice import determinant
    for c in v2.max_cones:
        assert abs(determinant([v2.ray(i) for i in sorted(c)])) == 1


def test_single_cone_incomplete():
    fan = Fan(1, ((1,),), (frozenset({1}),))
    v = validate(fan)
    assert not v.complete
    assert any("facet" in d for d in v.diagnostics)


def test_non_smooth_detected():
    # weighted projective plane P(1,1,2): rays (1,0), (0,1), (-1,-2)
    fan = Fan(2, ((1, 0), (0, 1), (-1, -2)), ({1, 2}, {2, 3}, {1, 3}))
    v = validate(fan)
    assert v.complete and not v.smooth
    assert any("[1, 3]" in d and "determinant| 2" in d for d in v.diagnostics)


def test_missing_cone_incomplete(v2):
    fan = Fan(2, v2.rays, v2.max_cones[1:])
    v = validate(fan)
    assert not v.complete
    assert len(v.diagnostics) == 2


def test_folded_fan_rejected():
    # two cones on the same side of the shared ray
    fan = Fan(2, ((1, 0), (0, 1), (1, 1)), ({1, 2}, {1, 3}))
    assert not validate(fan).complete


def test_unused_ray_rejected():
    fan = Fan(2, ((1, 0), (0, 1), (-1, -1), (1, 1)), ({1, 2}, {2, 3}, {1, 3}))
    v = validate(fan)
    assert not v.complete
    assert "ray v_4 lies in no maximal cone" in v.diagnostics


def test_disconnected_fan_rejected():
    # two projective-plane fans on disjoint ray sets: a double cover of the plane
    rays = ((1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1))
    cones = ({1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6})
    v = validate(Fan(2, rays, cones))
    assert not v.complete
    assert any("disconnected" in d for d in v.diagnostics)


@pytest.mark.parametrize("rays, cones, msg", [
    (((1, 0), (1, 0)), (), "duplicate"),
    (((2, 0), (0, 1)), (), "primitive"),
    (((1, 0), (0, 1)), ({1, 3},), "out-of-range"),
    (((1, 0), (2, 1), (3, 1)), ({1, 2, 3},), "simplicial"),
    (((1, 0, 0), (0, 1)), (), "length"),
])
def test_structural_errors(rays, cones, msg):
    with pytest.raises(FanError, match=msg):
        Fan(2, rays, cones)


def test_symmetry_examples(p1, p2, v2, v4):
    s = symmetry_report(p2)
    assert (s.pairs, s.order, s.hypothesis_met) == (0, 0, False)
    s = symmetry_report(v2)
    assert (s.pairs, s.order, s.hypothesis_met) == (3, 2, True)
    s = symmetry_report(p1)
    assert (s.pairs, s.order) == (1, 1)
    s = symmetry_report(v4)
    assert (s.pairs, s.order, s.hypothesis_met) == (5, 4, True)
    for fan in (p1, p2, v2, v4):
        s = symmetry_report(fan)
        assert 0 <= s.order <= fan.dimension
        assert 2 * s.pairs <= fan.n_rays


def test_cones_of_dimension(v2, v4):
    assert len(cones_of_dimension(v2, 1)) == 6
    assert cones_of_dimension(v2, 0) == [()]
    assert len(cones_of_dimension(v4, 4)) == 30
    assert [len(cones_of_dimension(v4, m)) for m in range(5)] == [1, 10, 40, 60, 30]
    with pytest.raises(FanError):
        cones_of_dimension(v2, 3)
    with pytest.raises(FanError):
        cones_of_dimension(v2, -1)


@pytest.mark.parametrize("builder, n", [(build_projective_fan, 3), (build_del_pezzo_fan, 4)])
def test_face_closure(builder, n):
    fan = builder(n)
    cones = fan.cones
    for c in cones:
        for k in range(len(c)):
            for face in itertools.combinations(sorted(c), k):
                assert frozenset(face) in cones
    assert fan.cones is fan.cones
    assert Fan(fan.dimension, fan.rays, fan.max_cones).cones == cones


@pytest.mark.parametrize("builder, n", [(build_projective_fan, 1), (build_projective_fan, 2),
                                        (build_projective_fan, 3), (build_del_pezzo_fan, 2),
                                        (build_del_pezzo_fan, 4)])
def test_nerve_is_sphere(builder, n):
    fan = builder(n)
    c = support_complex(fan, SignPattern(frozenset(fan.labels), fan.n_rays))
    assert c.reduced_euler_characteristic() == (-1) ** (n - 1)
    prof = reduced_homology(c, "integer")
    assert prof.nonzero() == {n - 1: 1}
    assert not any(prof.torsion)


def test_json_round_trip(v4):
    data = json.loads(json.dumps(v4.to_json()))
    back = Fan.from_json(data)
    assert back == v4
    assert back.rays == v4.rays
    assert back.max_cones == v4.max_cones


def test_json_schema_errors():
    with pytest.raises(FanError):
        Fan.from_json({"rays": [[1]]})
    with pytest.raises(FanError):
        Fan.from_json({"dimension": 1, "rays": [[1.5]], "max_cones": []})
    with pytest.raises(FanError):
        Fan.from_json({"dimension": 1, "rays": [[1], [-1]], "max_cones": [[1, 1]]})


def test_is_del_pezzo(v2, p2):
    assert is_del_pezzo(v2)
    assert not is_del_pezzo(p2)
