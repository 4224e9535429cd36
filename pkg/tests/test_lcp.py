from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from lcpnash import exact as ex
from lcpnash.errors import CoveringVectorError, DimensionError, TrivialInstance
from lcpnash.lcp import (
    ExtendedInstance,
    ExtendedPoint,
    LcpInstance,
    RayType,
    SecondaryDirection,
    SecondaryRay,
    complement,
    is_extended_point,
    is_p_matrix,
    is_secondary_direction,
    is_secondary_ray,
    is_solution,
    is_vertex,
    primary_ray,
    var_name,
)
from lcpnash.oracle import enumerate_skeleton

from conftest import F, instances


def inst(M, q):
    return LcpInstance(ex.matrix(M), ex.vector(q))


@pytest.mark.parametrize(
    "M, q, z, expected",
    [
        ([[1, 0], [0, 1]], [1, 2], [0, 0], True),
        ([[1, 0], [0, 1]], [-1, -1], [1, 1], True),
        ([[-1]], [-2], [1], False),
        ([[1, 0], [0, 1]], [-1, -1], [2, 1], False),
    ],
)
def test_is_solution(M, q, z, expected):
    assert is_solution(inst(M, q), F(*z)) is expected


def test_is_solution_dimension_mismatch():
    with pytest.raises(DimensionError):
        is_solution(inst([[1]], [1]), F(0, 0))


def test_instance_validation():
    with pytest.raises(DimensionError):
        inst([[1, 2]], [1])
    with pytest.raises(CoveringVectorError):
        ExtendedInstance.build([[1]], [1], [0])


@pytest.mark.parametrize(
    "M, u0, u, expected",
    [
        ([[-1]], 1, [1], True),
        ([[0]], 0, [1], True),
        ([[3]], 0, [0], False),
        ([[0, 0], [0, 0]], 0, ["1/2", "1/2"], True),
        ([[0, 0], [0, 0]], 0, [1, 1], False),  # not normalized
    ],
)
def test_is_secondary_direction(M, u0, u, expected):
    ext = ExtendedInstance.build(M, [0] * len(M))
    assert is_secondary_direction(ext, u0, F(*u)) is expected


def _ray(ext, z0, z, u0, u):
    return SecondaryRay(ExtendedPoint.at(ext, z0, z), SecondaryDirection(u0, F(*u)))


def test_secondary_ray_of_negative_one():
    ext = ExtendedInstance.build([[-1]], [-2])
    assert is_secondary_ray(ext, _ray(ext, 2, F(0), 1, [1]))


def test_type0_secondary_ray():
    ext = ExtendedInstance.build([[0]], [-1])
    ray = _ray(ext, 1, F(0), 0, [1])
    assert is_secondary_ray(ext, ray)
    assert ray.type is RayType.TYPE0


def test_not_a_secondary_ray_when_direction_is_not_complementary():
    ext = ExtendedInstance.build([[1]], [-1])
    assert not is_secondary_ray(ext, _ray(ext, 1, F(0), 1, [1]))


def test_primary_ray_is_not_secondary():
    ext = ExtendedInstance.build([[1, 0], [0, 1]], [-1, -3])
    assert not is_secondary_ray(ext, primary_ray(ext))


@pytest.mark.parametrize(
    "q, d, z0",
    [((-1, -3), (1, 1), 3), ((-2,), (2,), 1), ((-1, -3), (1, 2), Fraction(3, 2))],
)
def test_primary_ray(q, d, z0):
    ext = ExtendedInstance.build(ex.identity(len(q)), q, d)
    ray = primary_ray(ext)
    assert ray.vertex.z0 == z0
    assert ex.is_zero(ray.vertex.z)
    assert ray.direction == SecondaryDirection(1, ex.zeros(len(q)))
    assert ray.is_primary
    assert is_vertex(ext, ray.vertex)


def test_primary_ray_trivial():
    with pytest.raises(TrivialInstance):
        primary_ray(ExtendedInstance.build(ex.identity(2), [1, 1]))


def test_direction_normalization():
    assert SecondaryDirection.normalized(Fraction(2), F(4)) == SecondaryDirection(1, F(2))
    assert SecondaryDirection.normalized(Fraction(0), F(2, 6)) == SecondaryDirection(0, F("1/4", "3/4"))
    with pytest.raises(ValueError):
        SecondaryDirection.normalized(Fraction(0), F(0, 0))


def test_variable_names_and_complements():
    assert [var_name(v, 2) for v in range(5)] == ["w1", "w2", "z1", "z2", "z0"]
    assert complement(0, 2) == 2 and complement(3, 2) == 1


def test_p_matrix():
    assert is_p_matrix(ex.matrix([[2, 1], [1, 2]]))
    assert not is_p_matrix(ex.matrix([[0, 1], [1, 0]]))
    assert not is_p_matrix(ex.matrix([[-1]]))


@given(instances(max_m=3, nontrivial=False))
def test_solution_iff_extended_point_at_z0_zero(ext):
    # every oracle vertex with z0 = 0 is a solution, and vice versa for the vertex set
    for v in enumerate_skeleton(ext).vertices:
        pt = ExtendedPoint.at(ext, 0, v.z)
        assert is_solution(ext.base, v.z) == is_extended_point(ext, pt)


@given(instances(max_m=3, covering=True))
def test_vertices_have_certificates_and_few_positive_entries(ext):
    skel = enumerate_skeleton(ext)
    for v in skel.vertices:
        assert v.positive_count() <= ext.m
        assert is_vertex(ext, v)
    for r in skel.secondary_rays:
        assert is_secondary_ray(ext, r)
        if r.direction.u0 == 0:
            assert sum(r.direction.u) == 1
