"""Map equilibria of the constructed games back to solutions, rays and directions."""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from . import exact as ex
from .errors import (
    DegeneracyError,
    DegenerateDirectionError,
    NotEquilibriumError,
    SizeError,
)
from .exact import Vector
from .lcp import (
    ExtendedInstance,
    ExtendedPoint,
    LcpInstance,
    SecondaryDirection,
    SecondaryRay,
    complete_basis,
    in_sol,
    is_extended_point,
    is_secondary_direction,
    is_secondary_ray,
    is_solution,
)
from .nash import MixedProfile, SymmetricGame, is_sne
from .oracle import enumerate_solutions
from .reduction import (
    AugmentedInstance,
    ScaledInstance,
    build_game_basic,
    scale_instance,
    unscale_point,
)

MAX_HALVINGS = 64


class Tag(enum.Enum):
    ORIGINAL_SOLUTION = "OriginalSolution"
    SECONDARY_RAY = "SecondaryRayFound"
    TYPE1_DIRECTION = "Type1Direction"
    TYPE0_DIRECTION = "Type0Direction"


@dataclass(frozen=True)
class EquilibriumClassification:
    tag: Tag
    payload: Vector | SecondaryRay | SecondaryDirection
    profile: MixedProfile

    def verify(self, ext: ExtendedInstance) -> bool:
        """Check the payload against the original ``(d, q, M)``."""
        if self.tag is Tag.ORIGINAL_SOLUTION:
            return is_solution(ext.base, self.payload)
        if self.tag is Tag.SECONDARY_RAY:
            return is_secondary_ray(ext, self.payload)
        return is_secondary_direction(ext, self.payload.u0, self.payload.u)


def unscale_direction(s: ScaledInstance, direction: SecondaryDirection) -> SecondaryDirection:
    u = tuple(ui / di for ui, di in zip(direction.u, s.d))
    if direction.u0 == 1:
        return SecondaryDirection(1, u)
    return SecondaryDirection.normalized(ex.ZERO, u)


def unscale_ray(s: ScaledInstance, ray: SecondaryRay) -> SecondaryRay:
    z0, z = unscale_point(s, ray.vertex.z0, ray.vertex.z)
    vertex = ExtendedPoint.at(s.original, z0, z, ray.vertex.basis)
    return SecondaryRay(vertex, unscale_direction(s, ray.direction))


def extract_ray_from_point(aug: AugmentedInstance, z0: Fraction, z: Sequence[Fraction]) -> SecondaryRay:
    """Recover the secondary ray of ``ELCP(e, q, M)`` through a point with ``z0 > 0``.

    Solutions of the augmented problem with ``z0 > 0`` are such points; any
    other point of ``ELCP(e, q, M)`` on a ray is accepted as well.

    The point must sit in the relative interior of an unbounded complementary
    edge: the columns of its positive variables have a one-dimensional null
    space spanned by a nonnegative direction.  Walking backwards along that
    direction to the first blocking variable gives the vertex.
    """
    z0 = ex.frac(z0)
    z = ex.vector(z)
    if z0 <= 0:
        raise ValueError("extract_ray_from_point needs z0 > 0")
    ext = ExtendedInstance(aug.original, ex.ones(aug.original.m))
    m = ext.m
    pt = ExtendedPoint.at(ext, z0, z)
    if not is_extended_point(ext, pt):
        raise ValueError("point is not in ELCP(e, q, M)")
    x = pt.values()
    support = [k for k, v in enumerate(x) if v != 0]
    null = ex.nullspace(ext.basis_matrix(support), len(support))
    if len(null) != 1:
        raise DegeneracyError(
            f"point spans a {len(null)}-dimensional face, not the interior of an edge (beta too small?)"
        )
    (r_s,) = null
    if any(v < 0 for v in r_s) and any(v > 0 for v in r_s):
        raise DegeneracyError("point lies on a bounded edge (beta too small?)")
    if all(v <= 0 for v in r_s):
        r_s = tuple(-v for v in r_s)
    r = [ex.ZERO] * (2 * m + 1)
    for k, v in zip(support, r_s):
        r[k] = v
    lam = min(x[k] / r[k] for k in support if r[k] > 0)
    if lam <= 0:
        raise DegeneracyError("point is itself a vertex")
    vx = ex.sub(x, ex.scale(lam, r))
    vsupport = [k for k, v in enumerate(vx) if v != 0]
    vertex = ExtendedPoint(vx[2 * m], vx[m : 2 * m], vx[:m], complete_basis(ext, vsupport))
    direction = SecondaryDirection.normalized(r[2 * m], tuple(r[m : 2 * m]))
    return SecondaryRay(vertex, direction)


def _is_nondegenerate_direction(M: ex.Matrix, d: Vector, u: Vector) -> bool:
    v = ex.add(ex.matvec(M, u), d)
    alpha = [i for i in range(len(u)) if u[i] > 0]
    covered = all(u[i] > 0 or v[i] > 0 for i in range(len(u)))
    if not covered:
        return False
    return ex.solve_linear(ex.submatrix(M, alpha, alpha), ex.zeros(len(alpha))) is not None


def resolve_type1_direction(inst: LcpInstance, u: Sequence[Fraction]) -> Vector | SecondaryRay:
    """Turn a nondegenerate ``0 != u in SOL(e, M)`` into a solution of
    ``LCP(q, M)`` or a type-1 secondary ray with direction ``(1, u)``.

    Fix ``z`` off ``alpha = supp(u)`` and ``w`` on ``alpha`` to zero, solve
    ``M_aa z_a = -q_a``; if that point is infeasible, slide along
    ``(u, M u + e)`` by the smallest step that restores feasibility.
    """
    u = ex.vector(u)
    m = inst.m
    e = ex.ones(m)
    if ex.is_zero(u) or not in_sol(e, inst.M, u):
        raise ValueError("u must be a nonzero solution of LCP(e, M)")
    v = ex.add(ex.matvec(inst.M, u), e)
    alpha = [i for i in range(m) if u[i] > 0]
    rest = [i for i in range(m) if i not in alpha]
    if any(v[i] <= 0 for i in rest):
        raise DegenerateDirectionError("u and M u + e share a zero coordinate")
    za = ex.solve_linear(ex.submatrix(inst.M, alpha, alpha), tuple(-inst.q[i] for i in alpha))
    if za is None:
        raise DegenerateDirectionError("principal submatrix on the support of u is singular")
    z_hat = [ex.ZERO] * m
    for k, i in enumerate(alpha):
        z_hat[i] = za[k]
    z_hat = tuple(z_hat)
    w_hat = inst.w(z_hat)
    if ex.is_nonneg(z_hat) and ex.is_nonneg(w_hat):
        return z_hat
    lam = max(
        [-z_hat[i] / u[i] for i in alpha if z_hat[i] < 0] + [-w_hat[i] / v[i] for i in rest if w_hat[i] < 0]
    )
    ext = ExtendedInstance(inst, e)
    z_bar = ex.add(z_hat, ex.scale(lam, u))
    pt = ExtendedPoint.at(ext, lam, z_bar)
    support = [k for k, x in enumerate(pt.values()) if x != 0]
    vertex = ExtendedPoint(pt.z0, pt.z, pt.w, complete_basis(ext, support))
    return SecondaryRay(vertex, SecondaryDirection(1, u))


def type1_directions_nondegenerate(ext: ExtendedInstance) -> bool:
    """Every nonzero member of ``SOL(d, M)`` is isolated and nondegenerate."""
    sols = enumerate_solutions(LcpInstance(ext.M, ext.d))
    if sols.degenerate:
        return False
    return all(_is_nondegenerate_direction(ext.M, ext.d, u) for u in sols if not ex.is_zero(u))


def perturb_covering(ext: ExtendedInstance, max_halvings: int = MAX_HALVINGS) -> ExtendedInstance:
    """Replace ``d`` by ``d + (eps, eps^2, ..., eps^m)`` with ``eps = 2^-k`` for the
    smallest ``k`` that makes every nonzero solution of ``LCP(d, M)`` nondegenerate."""
    if type1_directions_nondegenerate(ext):
        return ext
    for k in range(1, max_halvings + 1):
        eps = Fraction(1, 2**k)
        d_hat = tuple(di + eps ** (i + 1) for i, di in enumerate(ext.d))
        cand = ExtendedInstance(ext.base, d_hat)
        if type1_directions_nondegenerate(cand):
            return cand
    raise SizeError(f"no nondegenerate covering vector found within {max_halvings} halvings")


def classify_equilibrium(
    ext: ExtendedInstance,
    aug: AugmentedInstance | None,
    x: MixedProfile,
) -> EquilibriumClassification:
    """Classify an equilibrium of the full game (``aug`` given) or of the basic
    game (``aug is None``), both built on the scaled instance.

    The payload is mapped back to the original ``(d, q, M)``.
    """
    s = scale_instance(ext)
    m = ext.m
    if aug is None:
        game = build_game_basic(s.scaled)
    else:
        if aug.original != s.scaled:
            raise ValueError("augmented instance was not built from the scaled problem")
        game = build_game_basic(aug.instance)
    if not is_sne(game, x):
        raise NotEquilibriumError("profile is not a symmetric equilibrium of the constructed game")
    t = x.x[-1]
    tau = -x.value

    if aug is None:
        y = x.x[:m]
        if t > 0:
            _, z = unscale_point(s, ex.ZERO, ex.scale(1 / t, y))
            return EquilibriumClassification(Tag.ORIGINAL_SOLUTION, z, x)
        if tau == 0:
            return EquilibriumClassification(
                Tag.TYPE0_DIRECTION, unscale_direction(s, SecondaryDirection(0, y)), x
            )
        return EquilibriumClassification(
            Tag.TYPE1_DIRECTION, unscale_direction(s, SecondaryDirection(1, ex.scale(1 / tau, y))), x
        )

    z0, z = x.x[0], x.x[1 : m + 1]
    if t > 0:
        if z0 == 0:
            _, zz = unscale_point(s, ex.ZERO, ex.scale(1 / t, z))
            return EquilibriumClassification(Tag.ORIGINAL_SOLUTION, zz, x)
        ray = extract_ray_from_point(aug, z0 / t, ex.scale(1 / t, z))
        return EquilibriumClassification(Tag.SECONDARY_RAY, unscale_ray(s, ray), x)
    sigma = z0 + tau
    if sigma == 0:
        # unreachable for a genuine equilibrium of the bordered game
        return EquilibriumClassification(
            Tag.TYPE0_DIRECTION, unscale_direction(s, SecondaryDirection.normalized(ex.ZERO, z)), x
        )
    u_star = ex.scale(1 / sigma, z)
    return EquilibriumClassification(
        Tag.TYPE1_DIRECTION, unscale_direction(s, SecondaryDirection(1, u_star)), x
    )


def game_for(ext: ExtendedInstance, aug: AugmentedInstance | None) -> SymmetricGame:
    s = scale_instance(ext)
    return build_game_basic(s.scaled if aug is None else aug.instance)


def transfer_augmented_direction(
    M: ex.Matrix, u0_bar: Fraction, u_bar: Sequence[Fraction], tau: Fraction
) -> Vector:
    """Map a nonzero ``(u0, u)`` in ``SOL(e tau, M~)`` to ``u / (u0 + tau)`` in ``SOL(e, M)``.

    The border row forces ``u0 + tau > 0`` for any nonzero solution, so the
    division is always defined.
    """
    sigma = ex.frac(u0_bar) + ex.frac(tau)
    if sigma <= 0:
        raise ValueError("u0 + tau must be positive; the input is not a nonzero augmented solution")
    return ex.scale(1 / sigma, ex.vector(u_bar))
