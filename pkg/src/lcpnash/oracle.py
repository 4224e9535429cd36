"""Brute-force ground truth for small instances.

Nothing here is clever: every basis and every complementary support is tried.
The other modules are audited against these enumerations.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact as ex
from .errors import SizeError
from .exact import Vector
from .lcp import (
    ExtendedInstance,
    ExtendedPoint,
    LcpInstance,
    SecondaryDirection,
    SecondaryRay,
)

SKELETON_MAX_M = 5
SOLUTIONS_MAX_M = 12

PointKey = tuple[Fraction, Vector]


@dataclass(frozen=True)
class SolutionSet:
    """Vertex representatives of ``SOL(q, M)``.

    ``degenerate`` is set when some complementary piece is positive
    dimensional, in which case ``points`` lists only its vertices.
    """

    points: tuple[Vector, ...]
    degenerate: bool = False

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, z: object) -> bool:
        return z in self.points


@dataclass(frozen=True)
class DirectionSet:
    type0: tuple[SecondaryDirection, ...]
    type1: tuple[SecondaryDirection, ...]
    degenerate: bool = False

    def __iter__(self) -> Iterator[SecondaryDirection]:
        return iter(self.type0 + self.type1)

    def __contains__(self, d: object) -> bool:
        return d in self.type0 or d in self.type1


@dataclass(frozen=True)
class PolyhedronSkeleton:
    """Complementary vertices, edges and rays of ``ELCP(d, q, M)``."""

    vertices: tuple[ExtendedPoint, ...]
    bases: dict[PointKey, frozenset[frozenset[int]]] = field(compare=False)
    edges: tuple[tuple[PointKey, PointKey], ...]
    rays: tuple[SecondaryRay, ...]
    nondegenerate: bool

    @property
    def secondary_rays(self) -> tuple[SecondaryRay, ...]:
        return tuple(r for r in self.rays if not r.is_primary)

    def has_vertex(self, point: ExtendedPoint, basis: frozenset[int] | None = None) -> bool:
        known = self.bases.get(point.key)
        if known is None:
            return False
        return basis is None or basis in known

    def has_ray(self, ray: SecondaryRay) -> bool:
        return any(r.vertex.key == ray.vertex.key and r.direction == ray.direction for r in self.rays)


def _check_size(m: int, cap: int) -> None:
    if m > cap:
        raise SizeError(f"m = {m} exceeds the oracle cap of {cap}")


def _complementary_on_ray(x: Vector, r: Vector, m: int) -> bool:
    """``(x + t r)`` stays complementary for every ``t`` in an open interval."""
    for i in range(m):
        wi, zi = i, m + i
        if x[wi] * x[zi] != 0 or x[wi] * r[zi] != 0 or r[wi] * x[zi] != 0 or r[wi] * r[zi] != 0:
            return False
    return True


def enumerate_skeleton(ext: ExtendedInstance) -> PolyhedronSkeleton:
    """All complementary basic feasible solutions plus the complementary
    edges and unbounded edges leaving them."""
    m = ext.m
    _check_size(m, SKELETON_MAX_M)
    nvar = 2 * m + 1
    vertices: dict[PointKey, ExtendedPoint] = {}
    bases: dict[PointKey, set[frozenset[int]]] = defaultdict(set)
    feasible: list[tuple[tuple[int, ...], Vector]] = []
    nondegenerate = True
    for basis in itertools.combinations(range(nvar), m):
        xb = ex.solve_linear(ext.basis_matrix(basis), ext.q)
        if xb is None or not ex.is_nonneg(xb):
            continue
        if any(v == 0 for v in xb):
            nondegenerate = False
        x = [ex.ZERO] * nvar
        for v, val in zip(basis, xb):
            x[v] = val
        x = tuple(x)
        if not _complementary_on_ray(x, ex.zeros(nvar), m):
            continue
        pt = ExtendedPoint(x[2 * m], x[m : 2 * m], x[:m], frozenset(basis))
        vertices.setdefault(pt.key, pt)
        bases[pt.key].add(frozenset(basis))
        feasible.append((basis, x))

    edges: set[tuple[PointKey, PointKey]] = set()
    rays: dict[tuple[PointKey, SecondaryDirection], SecondaryRay] = {}
    for basis, x in feasible:
        B = ext.basis_matrix(basis)
        key = (x[2 * m], x[m : 2 * m])
        for j in range(nvar):
            if j in basis:
                continue
            a = ex.solve_linear(B, ext.column(j))
            assert a is not None
            r = [ex.ZERO] * nvar
            r[j] = ex.ONE
            for v, av in zip(basis, a):
                r[v] = -av
            r = tuple(r)
            if not _complementary_on_ray(x, r, m):
                continue
            blocking = [x[v] / av for v, av in zip(basis, a) if av > 0]
            if not blocking:
                direction = SecondaryDirection.normalized(r[2 * m], r[m : 2 * m])
                rays.setdefault((key, direction), SecondaryRay(vertices[key], direction))
                continue
            theta = min(blocking)
            if theta == 0:
                continue
            y = ex.add(x, ex.scale(theta, r))
            other = (y[2 * m], y[m : 2 * m])
            edges.add(tuple(sorted((key, other))))

    ordered = tuple(vertices[k] for k in sorted(vertices))
    return PolyhedronSkeleton(
        vertices=ordered,
        bases={k: frozenset(v) for k, v in bases.items()},
        edges=tuple(sorted(edges)),
        rays=tuple(rays[k] for k in sorted(rays, key=lambda kd: (kd[0], kd[1].u0, kd[1].u))),
        nondegenerate=nondegenerate,
    )


def _pieces(q: Vector, M: ex.Matrix, normalize: bool) -> tuple[list[Vector], bool]:
    """Vertices of every complementary piece of ``SOL(q, M)``.

    With ``normalize`` the pieces are cut by ``e^T z = 1`` (used for the
    cone ``SOL(0, M)``).
    """
    m = len(q)
    found: dict[Vector, None] = {}
    degenerate = False
    for size in range(0, m + 1):
        for alpha in itertools.combinations(range(m), size):
            if size == 0:
                if not normalize and ex.is_nonneg(q):
                    found[ex.zeros(m)] = None
                continue
            rest = [i for i in range(m) if i not in alpha]
            A = ex.submatrix(M, alpha, alpha)
            b = tuple(-q[i] for i in alpha)
            if normalize:
                A = A + (ex.ones(size),)
                b = b + (ex.ONE,)
            sol = ex.affine_solutions(A, b)
            if sol is None:
                continue
            p, N = sol
            cons = [(ex.unit(size, k), ex.ZERO) for k in range(size)]
            cons += [(tuple(M[i][j] for j in alpha), q[i]) for i in rest]
            verts = ex.polyhedron_vertices(p, N, cons)
            if verts and N:
                degenerate = True
            for v in verts:
                z = [ex.ZERO] * m
                for k, i in enumerate(alpha):
                    z[i] = v[k]
                found[tuple(z)] = None
    return sorted(found), degenerate


def enumerate_solutions(inst: LcpInstance) -> SolutionSet:
    """``SOL(q, M)`` by exhaustive search over the ``2^m`` complementary supports."""
    _check_size(inst.m, SOLUTIONS_MAX_M)
    points, degenerate = _pieces(inst.q, inst.M, normalize=False)
    return SolutionSet(tuple(points), degenerate)


def enumerate_rays_of_cone(inst: LcpInstance) -> SolutionSet:
    """Normalized (``e^T u = 1``) vertex representatives of the cone ``SOL(0, M) \\ {0}``.

    ``inst.q`` must be zero; it is only used for its dimension.
    """
    _check_size(inst.m, SOLUTIONS_MAX_M)
    if not ex.is_zero(inst.q):
        raise ValueError("SOL(q, M) is a cone only when q = 0")
    points, degenerate = _pieces(inst.q, inst.M, normalize=True)
    return SolutionSet(tuple(points), degenerate)


def enumerate_directions(ext: ExtendedInstance) -> DirectionSet:
    """Type-0 directions from ``SOL(0, M)`` and type-1 directions from ``SOL(d, M) \\ {0}``."""
    m = ext.m
    _check_size(m, SOLUTIONS_MAX_M)
    cone = enumerate_rays_of_cone(LcpInstance(ext.M, ex.zeros(m)))
    sol_d = enumerate_solutions(LcpInstance(ext.M, ext.d))
    type0 = tuple(SecondaryDirection(0, u) for u in cone)
    type1 = tuple(SecondaryDirection(1, u) for u in sol_d if not ex.is_zero(u))
    return DirectionSet(type0, type1, cone.degenerate or sol_d.degenerate)


def walk_from_primary(skel: PolyhedronSkeleton) -> tuple[str, object]:
    """Follow the almost-complementary path of the skeleton graph from the primary ray.

    Only meaningful on nondegenerate instances, where every vertex with
    ``z0 > 0`` has exactly two exits.  Returns ``("solved", z)`` or
    ``("ray", SecondaryRay)``.
    """
    if not skel.nondegenerate:
        raise ValueError("path walking needs a nondegenerate instance")
    primary = next((r for r in skel.rays if r.is_primary), None)
    if primary is None:
        raise ValueError("skeleton has no primary ray (q >= 0?)")
    adjacency: dict[PointKey, set[PointKey]] = defaultdict(set)
    for a, b in skel.edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    rays_at: dict[PointKey, list[SecondaryRay]] = defaultdict(list)
    for r in skel.secondary_rays:
        rays_at[r.vertex.key].append(r)
    by_key = {v.key: v for v in skel.vertices}

    prev: PointKey | None = None
    cur = primary.vertex.key
    for _ in range(len(skel.vertices) + 1):
        if cur[0] == 0:
            return "solved", by_key[cur].z
        exits = [k for k in adjacency[cur] if k != prev]
        if rays_at[cur]:
            if len(rays_at[cur]) != 1 or exits:
                raise ValueError("vertex with more than two exits; instance is degenerate")
            return "ray", rays_at[cur][0]
        if len(exits) != 1:
            raise ValueError(f"path breaks at {cur}: {len(exits)} exits")
        prev, cur = cur, exits[0]
    raise RuntimeError("walk did not terminate")
