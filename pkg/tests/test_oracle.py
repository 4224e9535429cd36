from __future__ import annotations

import pytest
from hypothesis import given

from lcpnash import exact as ex
from lcpnash.corpus import spd_corpus
from lcpnash.errors import SizeError
from lcpnash.lcp import ExtendedInstance, LcpInstance, SecondaryDirection, is_solution
from lcpnash.oracle import (
    enumerate_directions,
    enumerate_rays_of_cone,
    enumerate_skeleton,
    enumerate_solutions,
    walk_from_primary,
)

from conftest import F, instances


def test_skeleton_negative_one():
    skel = enumerate_skeleton(ExtendedInstance.build([[-1]], [-2]))
    assert [v.key for v in skel.vertices] == [(2, F(0))]
    (ray,) = skel.secondary_rays
    assert ray.direction == SecondaryDirection(1, F(1))
    assert skel.edges == ()


def test_skeleton_identity_one():
    skel = enumerate_skeleton(ExtendedInstance.build([[1]], [-1]))
    assert [v.key for v in skel.vertices] == [(0, F(1)), (1, F(0))]
    assert skel.edges == (((0, F(1)), (1, F(0))),)
    assert skel.secondary_rays == ()


def test_skeleton_trivial_contains_origin():
    skel = enumerate_skeleton(ExtendedInstance.build([[1, 2], [3, 4]], [3, 4]))
    assert (0, F(0, 0)) in [v.key for v in skel.vertices]


def test_skeleton_size_cap():
    with pytest.raises(SizeError):
        enumerate_skeleton(ExtendedInstance.build(ex.identity(6), [-1] * 6))


@pytest.mark.parametrize(
    "M, q, expected, degenerate",
    [
        ([[1, 0], [0, 1]], [-1, -1], [F(1, 1)], False),
        ([[-1]], [-2], [], False),
        ([[0]], [0], [F(0)], True),
        ([[-1, 2], [2, -1]], [1, -1], [F(1, 0)], False),
    ],
)
def test_enumerate_solutions(M, q, expected, degenerate):
    sols = enumerate_solutions(LcpInstance(ex.matrix(M), ex.vector(q)))
    assert list(sols) == expected
    assert sols.degenerate is degenerate


def test_solutions_size_cap():
    with pytest.raises(SizeError):
        enumerate_solutions(LcpInstance(ex.identity(13), ex.zeros(13)))


def test_cone_requires_zero_rhs():
    with pytest.raises(ValueError):
        enumerate_rays_of_cone(LcpInstance(ex.identity(1), F(1)))


@pytest.mark.parametrize(
    "M, sd0, sd1",
    [
        ([[-1]], [], [SecondaryDirection(1, F(1))]),
        ([[0]], [SecondaryDirection(0, F(1))], []),
        ([[1, 0], [0, 1]], [], []),
    ],
)
def test_enumerate_directions(M, sd0, sd1):
    dirs = enumerate_directions(ExtendedInstance.build(M, [0] * len(M)))
    assert list(dirs.type0) == sd0
    assert list(dirs.type1) == sd1


def test_spd_matrices_have_no_secondary_directions():
    for ext in spd_corpus(21, 30):
        dirs = enumerate_directions(ext)
        assert dirs.type0 == () and dirs.type1 == ()


@given(instances(max_m=3, nontrivial=False, covering=True))
def test_every_reported_solution_solves(ext):
    for z in enumerate_solutions(ext.base):
        assert is_solution(ext.base, z)


@given(instances(max_m=3, nontrivial=False))
def test_solutions_are_the_z0_zero_vertices(ext):
    skel = enumerate_skeleton(ext)
    sols = enumerate_solutions(ext.base)
    from_skeleton = sorted(v.z for v in skel.vertices if v.z0 == 0)
    assert from_skeleton == sorted(sols.points)


def test_walk_needs_nondegenerate_skeleton():
    skel = enumerate_skeleton(ExtendedInstance.build([[0, 0], [0, 0]], [-1, -1]))
    assert not skel.nondegenerate
    with pytest.raises(ValueError):
        walk_from_primary(skel)


def test_walk_identity():
    skel = enumerate_skeleton(ExtendedInstance.build(ex.identity(2), [-1, -2]))
    assert walk_from_primary(skel) == ("solved", F(1, 2))
