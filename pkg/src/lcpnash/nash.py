"""Symmetric bimatrix games (cost convention) and exact support enumeration."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact as ex
from .errors import DimensionError, SizeError
from .exact import Matrix, Vector

DEFAULT_MAX_SIZE = 12


@dataclass(frozen=True)
class SymmetricGame:
    """Both players minimise cost; ``C`` is the row player's cost matrix."""

    C: Matrix

    def __post_init__(self) -> None:
        C = ex.matrix(self.C)
        rows, cols = ex.shape(C)
        if rows == 0 or rows != cols:
            raise DimensionError(f"cost matrix must be square, got {rows}x{cols}")
        object.__setattr__(self, "C", C)

    @property
    def n(self) -> int:
        return len(self.C)


@dataclass(frozen=True)
class MixedProfile:
    x: Vector
    value: Fraction
    # set when the profile is a vertex of a positive-dimensional equilibrium set
    in_component: bool = field(default=False, compare=False)

    @classmethod
    def of(cls, game: SymmetricGame, x: Iterable[object]) -> MixedProfile:
        x = ex.vector(x)
        if len(x) != game.n:
            raise DimensionError(f"profile has length {len(x)}, game has {game.n} strategies")
        return cls(x, ex.dot(x, ex.matvec(game.C, x)))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.x) if v != 0)


def is_sne(game: SymmetricGame, profile: MixedProfile | Sequence[Fraction]) -> bool:
    """Exact check of ``C x >= e (x^T C x)``, ``x >= 0``, ``e^T x = 1``."""
    x = profile.x if isinstance(profile, MixedProfile) else ex.vector(profile)
    if len(x) != game.n:
        raise DimensionError(f"profile has length {len(x)}, game has {game.n} strategies")
    if not ex.is_nonneg(x) or sum(x, ex.ZERO) != 1:
        return False
    Cx = ex.matvec(game.C, x)
    v = ex.dot(x, Cx)
    if isinstance(profile, MixedProfile) and profile.value != v:
        return False
    ok = all(c >= v for c in Cx)
    if ok:
        # complementary slackness is implied; a failure here is a bug
        assert all(xi * (c - v) == 0 for xi, c in zip(x, Cx))
    return ok


def _support_profiles(C: Matrix, S: tuple[int, ...]) -> tuple[list[Vector], bool]:
    """Vertices of the equilibrium polytope in which every row in ``S`` is a best reply.

    Unknowns are ``x_S`` and the value ``v``.  Returns the full-length
    profiles and whether the polytope was positive-dimensional.
    """
    n = len(C)
    s = len(S)
    others = [j for j in range(n) if j not in S]
    # C_{S,S} x_S - v = 0 ; e^T x_S = 1
    A = tuple(tuple(C[i][j] for j in S) + (-ex.ONE,) for i in S) + (ex.ones(s) + (ex.ZERO,),)
    b = ex.zeros(s) + (ex.ONE,)
    sol = ex.affine_solutions(A, b)
    if sol is None:
        return [], False
    p, N = sol
    constraints = [(ex.unit(s + 1, k), ex.ZERO) for k in range(s)]
    constraints += [(tuple(C[j][k] for k in S) + (-ex.ONE,), ex.ZERO) for j in others]
    vertices = ex.polyhedron_vertices(p, N, constraints)
    out = []
    for vert in vertices:
        x = [ex.ZERO] * n
        for k, i in enumerate(S):
            x[i] = vert[k]
        out.append(tuple(x))
    return out, bool(N)


def enumerate_sne(game: SymmetricGame, max_size: int = DEFAULT_MAX_SIZE) -> list[MixedProfile]:
    """All symmetric equilibria by support enumeration, sorted lexicographically.

    Degenerate supports contribute the vertices of their equilibrium
    polytope; such profiles carry ``in_component=True``.
    """
    n = game.n
    if n > max_size:
        raise SizeError(f"game has {n} strategies, support enumeration capped at {max_size}")
    found: dict[Vector, bool] = {}
    for size in range(1, n + 1):
        for S in itertools.combinations(range(n), size):
            profiles, degenerate = _support_profiles(game.C, S)
            for x in profiles:
                found[x] = found.get(x, False) or degenerate
    result = []
    for x in sorted(found):
        prof = MixedProfile(x, ex.dot(x, ex.matvec(game.C, x)), found[x])
        assert is_sne(game, prof)
        result.append(prof)
    return result


def symmetrize(A: Matrix, B: Matrix) -> SymmetricGame:
    """Symmetric game ``[[0, A], [B^T, 0]]`` whose symmetric equilibria encode
    the equilibria of the bimatrix game ``(A, B)``."""
    A = ex.matrix(A)
    B = ex.matrix(B)
    if ex.shape(A) != ex.shape(B):
        raise DimensionError(f"payoff shapes differ: {ex.shape(A)} vs {ex.shape(B)}")
    if any(v <= 0 for row in A + B for v in row):
        raise ValueError("both cost matrices must be strictly positive; shift them first")
    m, n = ex.shape(A)
    Bt = ex.transpose(B)
    top = tuple(ex.zeros(m) + A[i] for i in range(m))
    bottom = tuple(Bt[j] + ex.zeros(n) for j in range(n))
    return SymmetricGame(top + bottom)
