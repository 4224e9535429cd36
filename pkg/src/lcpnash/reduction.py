"""Matrix constructions that turn an LCP into a symmetric bimatrix game.

* ``build_game_basic``: the ``(m+1)``-strategy game ``[[M, q + e], [0, 1]]``.
* ``build_augmented``: border ``M`` with ``(1, -e^T)`` and ``e`` so that
  secondary rays show up as solutions; ``beta`` bounds ``e^T z`` over every
  basic point of the extended system.
* ``scale_instance``: ``q' = D^-1 q``, ``M' = D^-1 M D^-1`` moves a general
  covering vector ``d`` to ``e``.
* ``build_game_full``: all of the above composed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import exact as ex
from .errors import PositivityError
from .exact import Matrix, Vector
from .lcp import ExtendedInstance, LcpInstance, in_sol
from .nash import MixedProfile, SymmetricGame, is_sne

BETA_ENUMERATION_LIMIT = 8


@dataclass(frozen=True)
class AugmentedInstance:
    beta: Fraction
    original: LcpInstance
    q_tilde: Vector
    M_tilde: Matrix

    @property
    def instance(self) -> LcpInstance:
        return LcpInstance(self.M_tilde, self.q_tilde)


@dataclass(frozen=True)
class ScaledInstance:
    d: Vector
    original: ExtendedInstance
    scaled: LcpInstance

    @property
    def D(self) -> Matrix:
        return ex.diag_of(self.d)

    @property
    def extended(self) -> ExtendedInstance:
        """The scaled problem with covering vector ``e``."""
        return ExtendedInstance(self.scaled, ex.ones(self.scaled.m))


def build_game_basic(inst: LcpInstance) -> SymmetricGame:
    m = inst.m
    rows = tuple(inst.M[i] + (inst.q[i] + 1,) for i in range(m))
    return SymmetricGame(rows + (ex.zeros(m) + (ex.ONE,),))


def basic_points(ext: ExtendedInstance) -> list[Vector]:
    """``z``-parts of all basic solutions of ``w - d z0 - M z = q`` (feasible or not)."""
    m = ext.m
    out = []
    for basis in itertools.combinations(range(2 * m + 1), m):
        xb = ex.solve_linear(ext.basis_matrix(basis), ext.q)
        if xb is None:
            continue
        z = [ex.ZERO] * m
        for v, x in zip(basis, xb):
            if m <= v < 2 * m:
                z[v - m] = x
        out.append(tuple(z))
    return out


def hadamard_beta(inst: LcpInstance) -> Fraction:
    """Closed-form ``beta`` from a Hadamard bound on Cramer's-rule numerators."""
    m = inst.m
    L = ex.lcm_denominator([v for row in inst.M for v in row] + list(inst.q))
    # rows of L [I | -e | -M | q]; every basis determinant is a nonzero integer
    prod = 1
    for i in range(m):
        row = [L] + [L] + [L * v for v in inst.M[i]] + [L * inst.q[i]]
        prod *= sum(int(v) ** 2 for v in row)
    H = math.isqrt(prod) + 1
    return Fraction(1 + m * (m + 1) * H)


def compute_beta(inst: LcpInstance, method: str = "auto") -> Fraction:
    """``1 + max e^T z`` over all basic points of ``ELCP(e, q, M)``.

    ``method`` is ``"enumerate"``, ``"bound"`` or ``"auto"`` (enumerate up to
    ``m = 8``, Hadamard bound beyond).
    """
    if method == "auto":
        method = "enumerate" if inst.m <= BETA_ENUMERATION_LIMIT else "bound"
    if method == "bound":
        return hadamard_beta(inst)
    if method != "enumerate":
        raise ValueError(f"unknown beta method {method!r}")
    ext = ExtendedInstance(inst, ex.ones(inst.m))
    return 1 + max(sum(z, ex.ZERO) for z in basic_points(ext))


def build_augmented(inst: LcpInstance, beta: object) -> AugmentedInstance:
    beta = ex.frac(beta)
    m = inst.m
    top = (ex.ONE,) + tuple(-ex.ONE for _ in range(m))
    rows = (top,) + tuple((ex.ONE,) + inst.M[i] for i in range(m))
    return AugmentedInstance(beta, inst, (beta,) + inst.q, rows)


def scale_instance(ext: ExtendedInstance) -> ScaledInstance:
    d = ext.d
    M = tuple(tuple(ext.M[i][j] / (d[i] * d[j]) for j in range(ext.m)) for i in range(ext.m))
    q = tuple(qi / di for qi, di in zip(ext.q, d))
    return ScaledInstance(d, ext, LcpInstance(M, q))


def scale_point(s: ScaledInstance, z0: Fraction, z: Vector) -> tuple[Fraction, Vector]:
    return z0, tuple(di * zi for di, zi in zip(s.d, z))


def unscale_point(s: ScaledInstance, z0: Fraction, z_scaled: Vector) -> tuple[Fraction, Vector]:
    return z0, tuple(zi / di for di, zi in zip(s.d, z_scaled))


def build_game_full(ext: ExtendedInstance, beta: object | None = None) -> SymmetricGame:
    """Cost matrix ``[[1, -e^T, beta + 1], [e, M', q' + e], [0, 0, 1]]`` on the scaled data.

    ``beta`` defaults to :func:`compute_beta` of the scaled instance.
    """
    s = scale_instance(ext)
    if beta is None:
        beta = compute_beta(s.scaled)
    return build_game_basic(build_augmented(s.scaled, beta).instance)


def lcp_to_sne(game: SymmetricGame, z: Vector) -> MixedProfile:
    """``z in SOL(-e, C) \\ {0}`` to the equilibrium ``z / e^T z`` (requires ``C > 0``)."""
    _require_positive(game)
    z = ex.vector(z)
    total = sum(z, ex.ZERO)
    if total == 0:
        raise ValueError("z = 0 has no equilibrium image")
    if not in_sol(tuple(-ex.ONE for _ in z), game.C, z):
        raise ValueError("z is not a solution of LCP(-e, C)")
    return MixedProfile.of(game, ex.scale(1 / total, z))


def sne_to_lcp(game: SymmetricGame, profile: MixedProfile) -> Vector:
    """Equilibrium ``x`` to ``x / (x^T C x) in SOL(-e, C)`` (requires ``C > 0``)."""
    _require_positive(game)
    if not is_sne(game, profile):
        raise ValueError("profile is not a symmetric equilibrium")
    return ex.scale(1 / profile.value, profile.x)


def _require_positive(game: SymmetricGame) -> None:
    if any(v <= 0 for row in game.C for v in row):
        raise PositivityError("the cost matrix must be strictly positive")
