"""LCP instances, extended points, secondary directions/rays and their verifiers.

The extended system behind ``ELCP(d, q, M)`` is written in equality form

    w - d z0 - M z = q,    (w, z0, z) >= 0,

over ``2m + 1`` variables.  Variables are identified by integers: ``w_i`` is
``i``, ``z_i`` is ``m + i`` and the artificial ``z0`` is ``2m`` (all 0-based).
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact as ex
from .errors import CoveringVectorError, DimensionError, TrivialInstance
from .exact import Matrix, Vector


@dataclass(frozen=True)
class LcpInstance:
    M: Matrix
    q: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "M", ex.matrix(self.M))
        object.__setattr__(self, "q", ex.vector(self.q))
        m = len(self.q)
        if m == 0:
            raise DimensionError("empty instance")
        if ex.shape(self.M) != (m, m):
            raise DimensionError(f"M has shape {ex.shape(self.M)}, expected {(m, m)}")

    @property
    def m(self) -> int:
        return len(self.q)

    def w(self, z: Sequence[Fraction]) -> Vector:
        return ex.add(self.q, ex.matvec(self.M, z))


@dataclass(frozen=True)
class ExtendedInstance:
    base: LcpInstance
    d: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", ex.vector(self.d))
        if len(self.d) != self.base.m:
            raise DimensionError(f"covering vector has length {len(self.d)}, expected {self.base.m}")
        if any(x <= 0 for x in self.d):
            raise CoveringVectorError("covering vector must be strictly positive")

    @classmethod
    def build(cls, M: Iterable, q: Iterable, d: Iterable | None = None) -> ExtendedInstance:
        base = LcpInstance(ex.matrix(M), ex.vector(q))
        return cls(base, ex.ones(base.m) if d is None else ex.vector(d))

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def M(self) -> Matrix:
        return self.base.M

    @property
    def q(self) -> Vector:
        return self.base.q

    def w(self, z0: Fraction, z: Sequence[Fraction]) -> Vector:
        return tuple(qi + di * z0 + mz for qi, di, mz in zip(self.q, self.d, ex.matvec(self.M, z)))

    def column(self, var: int) -> Vector:
        """Column of ``[I | -M | -d]`` belonging to variable id ``var``."""
        m = self.m
        if var < m:
            return ex.unit(m, var)
        if var < 2 * m:
            return tuple(-row[var - m] for row in self.M)
        if var == 2 * m:
            return tuple(-x for x in self.d)
        raise IndexError(var)

    def basis_matrix(self, basis: Sequence[int]) -> Matrix:
        return ex.transpose(tuple(self.column(v) for v in basis))


def var_name(var: int, m: int) -> str:
    if var < m:
        return f"w{var + 1}"
    if var < 2 * m:
        return f"z{var - m + 1}"
    return "z0"


def complement(var: int, m: int) -> int:
    if var < m:
        return var + m
    if var < 2 * m:
        return var - m
    raise ValueError("z0 has no complement")


@dataclass(frozen=True)
class ExtendedPoint:
    """A point of the extended system; ``basis`` optionally certifies a vertex."""

    z0: Fraction
    z: Vector
    w: Vector
    basis: frozenset[int] | None = field(default=None, compare=False)

    @classmethod
    def at(cls, ext: ExtendedInstance, z0: object, z: Iterable, basis: Iterable[int] | None = None) -> ExtendedPoint:
        z0 = ex.frac(z0)
        z = ex.vector(z)
        return cls(z0, z, ext.w(z0, z), None if basis is None else frozenset(basis))

    @property
    def key(self) -> tuple[Fraction, Vector]:
        return self.z0, self.z

    def values(self) -> Vector:
        """All ``2m + 1`` variable values in id order."""
        return self.w + self.z + (self.z0,)

    def positive_count(self) -> int:
        return sum(1 for v in (self.z0,) + self.z + self.w if v > 0)


class RayType(enum.Enum):
    TYPE0 = 0
    TYPE1 = 1


@dataclass(frozen=True)
class SecondaryDirection:
    u0: int
    u: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", ex.vector(self.u))

    @classmethod
    def normalized(cls, u0: Fraction, u: Sequence[Fraction]) -> SecondaryDirection:
        """Scale a raw direction so ``u0 = 1``, or ``e^T u = 1`` when ``u0 = 0``."""
        if u0 < 0 or any(x < 0 for x in u):
            raise ValueError("direction has negative entries")
        if u0 > 0:
            return cls(1, ex.scale(1 / u0, u))
        s = sum(u, ex.ZERO)
        if s == 0:
            raise ValueError("zero direction")
        return cls(0, ex.scale(1 / s, u))

    @property
    def type(self) -> RayType:
        return RayType.TYPE1 if self.u0 == 1 else RayType.TYPE0


@dataclass(frozen=True)
class SecondaryRay:
    vertex: ExtendedPoint
    direction: SecondaryDirection

    @property
    def type(self) -> RayType:
        return self.direction.type

    @property
    def is_primary(self) -> bool:
        return self.direction.u0 == 1 and ex.is_zero(self.direction.u)

    def point(self, lam: Fraction) -> tuple[Fraction, Vector]:
        return (
            self.vertex.z0 + lam * self.direction.u0,
            ex.add(self.vertex.z, ex.scale(lam, self.direction.u)),
        )


def is_solution(inst: LcpInstance, z: Sequence[Fraction]) -> bool:
    if len(z) != inst.m:
        raise DimensionError(f"z has length {len(z)}, expected {inst.m}")
    w = inst.w(z)
    return ex.is_nonneg(z) and ex.is_nonneg(w) and ex.dot(z, w) == 0


def in_sol(q: Sequence[Fraction], M: Matrix, z: Sequence[Fraction]) -> bool:
    """``z in SOL(q, M)``."""
    return is_solution(LcpInstance(M, tuple(q)), z)


def is_extended_point(ext: ExtendedInstance, pt: ExtendedPoint) -> bool:
    """Membership of ``pt`` in ELCP(d, q, M) with a consistent cached ``w``."""
    if len(pt.z) != ext.m or len(pt.w) != ext.m:
        raise DimensionError("point dimension does not match the instance")
    if pt.w != ext.w(pt.z0, pt.z):
        return False
    return pt.z0 >= 0 and ex.is_nonneg(pt.z) and ex.is_nonneg(pt.w) and ex.dot(pt.z, pt.w) == 0


def is_vertex(ext: ExtendedInstance, pt: ExtendedPoint) -> bool:
    """Algebraic vertex test: the columns of the positive variables are independent.

    When ``pt`` carries a basis certificate, it must also be a nonsingular
    basis that reproduces the point with every nonbasic variable at zero.
    """
    if not is_extended_point(ext, pt):
        return False
    values = pt.values()
    support = [k for k, v in enumerate(values) if v != 0]
    if len(support) > ext.m:
        return False
    cols = ext.basis_matrix(support)
    if support and ex.rank(cols) != len(support):
        return False
    if pt.basis is not None:
        basis = sorted(pt.basis)
        if len(basis) != ext.m or not set(support) <= set(basis):
            return False
        xb = ex.solve_linear(ext.basis_matrix(basis), ext.q)
        if xb is None or any(values[v] != x for v, x in zip(basis, xb)):
            return False
    return True


def is_secondary_direction(ext: ExtendedInstance, u0: int, u: Sequence[Fraction]) -> bool:
    if len(u) != ext.m:
        raise DimensionError(f"u has length {len(u)}, expected {ext.m}")
    if u0 not in (0, 1):
        return False
    if u0 == 0 and ex.is_zero(u):
        return False
    if u0 == 0 and sum(u, ex.ZERO) != 1:
        return False
    rhs = ex.scale(ex.frac(u0), ext.d)
    return in_sol(rhs, ext.M, u)


def is_secondary_ray(ext: ExtendedInstance, ray: SecondaryRay) -> bool:
    v, dirn = ray.vertex, ray.direction
    if not is_vertex(ext, v):
        return False
    if not is_secondary_direction(ext, dirn.u0, dirn.u):
        return False
    if ray.is_primary:
        return False
    dw = tuple(di * dirn.u0 + mu for di, mu in zip(ext.d, ex.matvec(ext.M, dirn.u)))
    return ex.dot(v.z, dw) == 0 and ex.dot(dirn.u, v.w) == 0


def primary_ray(ext: ExtendedInstance) -> SecondaryRay:
    """The starting ray of Lemke(d): ``z = 0``, smallest feasible ``z0``, direction ``(1, 0)``."""
    if ex.is_nonneg(ext.q):
        raise TrivialInstance("q >= 0, z = 0 solves the instance")
    z0 = max(-qi / di for qi, di in zip(ext.q, ext.d))
    m = ext.m
    vertex = ExtendedPoint.at(ext, z0, ex.zeros(m))
    # basis: z0 replaces the w that hits zero (lexicographically last on ties)
    r = min(range(m), key=lambda i: (ext.q[i] / ext.d[i], tuple(ex.unit(m, i)[k] / ext.d[i] for k in range(m))))
    basis = frozenset([2 * m] + [i for i in range(m) if i != r])
    vertex = ExtendedPoint(vertex.z0, vertex.z, vertex.w, basis)
    return SecondaryRay(vertex, SecondaryDirection(1, ex.zeros(m)))


def complete_basis(ext: ExtendedInstance, support: Iterable[int]) -> frozenset[int]:
    """Extend an independent set of variable columns to a full basis (size m)."""
    chosen = list(support)
    for var in range(2 * ext.m + 1):
        if len(chosen) == ext.m:
            break
        if var in chosen:
            continue
        trial = chosen + [var]
        if ex.rank(ext.basis_matrix(trial)) == len(trial):
            chosen = trial
    if len(chosen) != ext.m:
        raise ValueError("support columns are dependent")
    return frozenset(chosen)


def is_p_matrix(M: Matrix) -> bool:
    """All principal minors positive (exhaustive; desk-scale only)."""
    m = len(M)
    for k in range(1, m + 1):
        for idx in itertools.combinations(range(m), k):
            if _det(ex.submatrix(M, idx, idx)) <= 0:
                return False
    return True


def _det(A: Matrix) -> Fraction:
    n = len(A)
    rows = [list(r) for r in A]
    det = ex.ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return ex.ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


determinant = _det
