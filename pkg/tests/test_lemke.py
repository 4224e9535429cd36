from __future__ import annotations

import random

import pytest
from hypothesis import given

from lcpnash import exact as ex
from lcpnash.corpus import degenerate_corpus, spd_corpus
from lcpnash.errors import PivotLimitError
from lcpnash.lcp import ExtendedInstance, SecondaryDirection, complement, is_secondary_ray, is_solution
from lcpnash.lemke import Outcome, default_pivot_cap, direction_from_unbounded_column, lemke_solve
from lcpnash.oracle import enumerate_skeleton, walk_from_primary

from conftest import F, instances


def test_identity_solved_with_hand_trace():
    out = lemke_solve(ExtendedInstance.build([[1, 0], [0, 1]], [-1, -1]))
    assert out.tag is Outcome.SOLVED
    assert out.solution == F(1, 1)
    assert [s.describe(2) for s in out.path] == ["z0 in, w2 out", "z2 in, w1 out", "z1 in, z0 out"]
    assert out.path[0].vertex_after.z0 == 1


def test_negative_one_ends_on_ray():
    ext = ExtendedInstance.build([[-1]], [-2])
    out = lemke_solve(ext)
    assert out.tag is Outcome.RAY
    assert out.ray.vertex.z0 == 2 and out.ray.vertex.z == F(0)
    assert out.ray.direction == SecondaryDirection(1, F(1))
    assert is_secondary_ray(ext, out.ray)


def test_type0_ray():
    out = lemke_solve(ExtendedInstance.build([[0]], [-1]))
    assert out.tag is Outcome.RAY
    assert out.ray.direction == SecondaryDirection(0, F(1))
    assert out.ray.vertex.z0 == 1


def test_trivial():
    out = lemke_solve(ExtendedInstance.build([[5, -3], [2, 7]], [3, 4]))
    assert out.tag is Outcome.TRIVIAL
    assert out.solution == F(0, 0)
    assert out.path == ()


def test_direction_from_blocked_column_is_a_contract_violation():
    ext = ExtendedInstance.build([[1]], [-1])
    # basis {z0}: z1 enters and is blocked by z0
    with pytest.raises(ValueError):
        direction_from_unbounded_column(ext, [2], 1)


def test_direction_from_unbounded_column():
    ext = ExtendedInstance.build([[-1]], [-2])
    assert direction_from_unbounded_column(ext, [2], 1) == SecondaryDirection(1, F(1))


def test_pivot_cap():
    assert default_pivot_cap(2) == 10
    with pytest.raises(PivotLimitError):
        lemke_solve(ExtendedInstance.build([[1, 0], [0, 1]], [-1, -1]), max_pivots=1)


def _check_path(ext, out):
    m = ext.m
    bases = [s.basis_after for s in out.path]
    assert len(set(bases)) == len(bases)
    for prev, step in zip(out.path, out.path[1:]):
        assert step.entering == complement(prev.leaving, m)
        assert len(prev.basis_after ^ step.basis_after) == 2
    for step in out.path[:-1] if out.tag is Outcome.SOLVED else out.path:
        v = step.vertex_after
        x = v.values()
        assert ex.is_nonneg(x)
        assert v.w == ext.w(v.z0, v.z)
        # exactly one complementary pair may be jointly nonbasic
        assert sum(1 for i in range(m) if x[i] * x[m + i] != 0) == 0


@given(instances(max_m=4))
def test_path_properties(ext):
    out = lemke_solve(ext)
    _check_path(ext, out)
    if out.tag is Outcome.SOLVED:
        assert is_solution(ext.base, out.solution)
        assert out.path[-1].vertex_after.z0 == 0
    else:
        assert is_secondary_ray(ext, out.ray)


@given(instances(max_m=3, covering=True))
def test_path_properties_general_covering(ext):
    out = lemke_solve(ext)
    _check_path(ext, out)
    skel = enumerate_skeleton(ext)
    for step in out.path:
        assert skel.has_vertex(step.vertex_after, step.basis_after)


@given(instances(max_m=4))
def test_matches_oracle_walk_on_nondegenerate_instances(ext):
    skel = enumerate_skeleton(ext)
    if not skel.nondegenerate:
        return
    kind, obj = walk_from_primary(skel)
    out = lemke_solve(ext)
    if out.tag is Outcome.SOLVED:
        assert kind == "solved" and obj == out.solution
    else:
        assert kind == "ray"
        assert obj.vertex.key == out.ray.vertex.key and obj.direction == out.ray.direction


def test_spd_never_ray():
    for ext in spd_corpus(11, 40):
        assert lemke_solve(ext).tag is Outcome.SOLVED


def test_degenerate_instances_do_not_cycle():
    for ext in degenerate_corpus(5, 20):
        out = lemke_solve(ext)
        _check_path(ext, out)


def test_deterministic():
    rng = random.Random(3)
    M = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
    ext = ExtendedInstance.build(M, [-1, -1, -1])
    assert lemke_solve(ext) == lemke_solve(ext)
