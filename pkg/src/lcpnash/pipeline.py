"""End-to-end drivers: LCP -> game -> equilibria -> classified LCP objects,
and the per-instance audit that cross-checks every route against the oracle."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact as ex
from .errors import DegenerateDirectionError
from .exact import Vector
from .lcp import ExtendedInstance, SecondaryRay, is_secondary_ray, is_solution
from .lemke import LemkeOutcome, Outcome, lemke_solve
from .nash import DEFAULT_MAX_SIZE, SymmetricGame, enumerate_sne
from .oracle import (
    enumerate_directions,
    enumerate_skeleton,
    enumerate_solutions,
    walk_from_primary,
)
from .recovery import (
    EquilibriumClassification,
    Tag,
    classify_equilibrium,
    perturb_covering,
    resolve_type1_direction,
    unscale_ray,
)
from .reduction import (
    build_augmented,
    build_game_basic,
    compute_beta,
    hadamard_beta,
    scale_instance,
    scale_point,
    unscale_point,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineEntry:
    classification: EquilibriumClassification
    verified: bool
    # for Type1Direction: the solution or type-1 ray it resolves to
    resolved: Vector | SecondaryRay | None = None


@dataclass(frozen=True)
class PipelineReport:
    original: ExtendedInstance
    instance: ExtendedInstance
    trivial: bool
    beta: Fraction | None = None
    game: SymmetricGame | None = None
    entries: tuple[PipelineEntry, ...] = ()
    epsilon: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.trivial or (bool(self.entries) and all(e.verified for e in self.entries))


def _resolve(ext: ExtendedInstance, c: EquilibriumClassification) -> Vector | SecondaryRay:
    s = scale_instance(ext)
    _, u_scaled = scale_point(s, ex.ZERO, c.payload.u)
    out = resolve_type1_direction(s.scaled, u_scaled)
    if isinstance(out, SecondaryRay):
        return unscale_ray(s, out)
    return unscale_point(s, ex.ZERO, out)[1]


def _verify_resolved(ext: ExtendedInstance, out: Vector | SecondaryRay) -> bool:
    if isinstance(out, SecondaryRay):
        return is_secondary_ray(ext, out) and out.direction.u0 == 1
    return is_solution(ext.base, out)


def run_pipeline(
    ext: ExtendedInstance,
    beta: object | None = None,
    max_support: int = DEFAULT_MAX_SIZE,
    resolve: bool = True,
) -> PipelineReport:
    """Scale, bound, build the bordered game, enumerate its equilibria and
    classify each one back into the original problem.

    Type-1 directions are lifted to a solution or ray; a degenerate direction
    triggers one re-run with a perturbed covering vector.
    """
    if ex.is_nonneg(ext.q):
        return PipelineReport(ext, ext, trivial=True)
    report = _run_once(ext, ext, beta, max_support, resolve)
    if report is not None:
        return report
    perturbed = perturb_covering(ext)
    eps = perturbed.d[0] - ext.d[0]
    log.info("degenerate type-1 direction; retrying with covering vector perturbed by eps=%s", eps)
    report = _run_once(ext, perturbed, beta, max_support, resolve)
    if report is None:
        raise DegenerateDirectionError("perturbed covering vector still yields a degenerate direction")
    return PipelineReport(
        report.original, report.instance, False, report.beta, report.game, report.entries, eps
    )


def _run_once(
    original: ExtendedInstance,
    ext: ExtendedInstance,
    beta: object | None,
    max_support: int,
    resolve: bool,
) -> PipelineReport | None:
    s = scale_instance(ext)
    b = compute_beta(s.scaled) if beta is None else ex.frac(beta)
    aug = build_augmented(s.scaled, b)
    game = build_game_basic(aug.instance)
    entries = []
    for x in enumerate_sne(game, max_support):
        c = classify_equilibrium(ext, aug, x)
        ok = c.verify(ext)
        resolved = None
        if resolve and c.tag is Tag.TYPE1_DIRECTION:
            try:
                resolved = _resolve(ext, c)
            except DegenerateDirectionError:
                return None
            ok = ok and _verify_resolved(ext, resolved)
        entries.append(PipelineEntry(c, ok, resolved))
    return PipelineReport(original, ext, False, b, game, tuple(entries))


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class AuditReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))


def _lemke_checks(report: AuditReport, ext: ExtendedInstance, out: LemkeOutcome, skel) -> None:
    if out.tag is Outcome.TRIVIAL:
        report.add("lemke-outcome-verified", is_solution(ext.base, out.solution), "trivial")
        return
    if out.tag is Outcome.SOLVED:
        report.add("lemke-outcome-verified", is_solution(ext.base, out.solution))
    else:
        report.add("lemke-outcome-verified", is_secondary_ray(ext, out.ray))
    bases = [step.basis_after for step in out.path]
    report.add("lemke-path-no-repeat", len(set(bases)) == len(bases), f"{len(bases)} pivots")
    missing = [i for i, st in enumerate(out.path) if not skel.has_vertex(st.vertex_after, st.basis_after)]
    report.add("lemke-path-in-skeleton", not missing, f"steps missing: {missing}" if missing else "")
    if out.tag is Outcome.SOLVED:
        final = out.path[-1].vertex_after
        report.add("lemke-endpoint-in-skeleton", skel.has_vertex(final))
    else:
        report.add("lemke-endpoint-in-skeleton", skel.has_ray(out.ray))
    if skel.nondegenerate:
        kind, obj = walk_from_primary(skel)
        if out.tag is Outcome.SOLVED:
            same = kind == "solved" and obj == out.solution
        else:
            same = kind == "ray" and obj.vertex.key == out.ray.vertex.key and obj.direction == out.ray.direction
        report.add("lemke-matches-walk", same, f"walk ended with {kind}")
    else:
        report.add("lemke-matches-walk", True, "skipped: degenerate instance")


def audit_instance(ext: ExtendedInstance, beta: object | None = None) -> AuditReport:
    """Run every route on one instance and compare against brute force."""
    report = AuditReport()
    skel = enumerate_skeleton(ext)
    sols = enumerate_solutions(ext.base)
    dirs = enumerate_directions(ext)
    out = lemke_solve(ext)
    _lemke_checks(report, ext, out, skel)

    s = scale_instance(ext)
    scaled_skel = enumerate_skeleton(s.extended)
    mapped = sorted(scale_point(s, v.z0, v.z) for v in skel.vertices)
    report.add("scaling-invariance", mapped == sorted(v.key for v in scaled_skel.vertices))

    if ex.is_nonneg(ext.q):
        report.add("pipeline-trivial", out.tag is Outcome.TRIVIAL)
        return report

    # basic game: solutions and directions, no augmentation
    basic_bad = []
    for x in enumerate_sne(build_game_basic(s.scaled)):
        c = classify_equilibrium(ext, None, x)
        good = c.verify(ext)
        if c.tag is Tag.ORIGINAL_SOLUTION:
            good = good and c.payload in sols
        elif not dirs.degenerate:
            good = good and c.payload in dirs
        if not good:
            basic_bad.append(c)
    report.add("basic-game-bijection", not basic_bad, "; ".join(map(_describe, basic_bad)))

    enum_beta = compute_beta(s.scaled)
    report.add("beta-bound", hadamard_beta(s.scaled) >= enum_beta, f"beta={enum_beta}")

    pipe = run_pipeline(ext, beta=beta, resolve=True)
    entries = pipe.entries
    bad = [e for e in entries if not e.verified]
    report.add("pipeline-payloads-verified", not bad, "; ".join(_describe(e.classification) for e in bad))
    if pipe.epsilon is not None:
        report.add("pipeline-perturbation", True, f"eps={pipe.epsilon}")
        return report
    found = sorted({e.classification.payload for e in entries if e.classification.tag is Tag.ORIGINAL_SOLUTION})
    detail = f"game={list(map(ex.fmt_vector, found))} oracle={list(map(ex.fmt_vector, sols.points))}"
    if sols.degenerate:
        # the beta row cuts unbounded solution pieces and adds genuine, non-vertex solutions
        ok = set(sols.points) <= set(found) and all(is_solution(ext.base, z) for z in found)
        report.add("solutions-match-oracle", ok, "degenerate solution set, containment only; " + detail)
    else:
        report.add("solutions-match-oracle", found == sorted(sols.points), detail)
    rays = [e.classification.payload for e in entries if e.classification.tag is Tag.SECONDARY_RAY]
    report.add("rays-in-skeleton", all(skel.has_ray(r) for r in rays), f"{len(rays)} rays")
    t1 = [e.classification.payload for e in entries if e.classification.tag is Tag.TYPE1_DIRECTION]
    if dirs.degenerate:
        report.add("directions-in-oracle", True, "skipped: degenerate direction set")
    else:
        report.add("directions-in-oracle", all(d in dirs.type1 for d in t1), f"{len(t1)} directions")

    if out.tag is Outcome.SOLVED:
        report.add("lemke-solution-among-equilibria", out.solution in found)
    elif out.tag is Outcome.RAY:
        ray = out.ray
        _, u_scaled = scale_point(s, ex.ZERO, ray.direction.u)
        slope = sum(u_scaled, ex.ZERO) - ray.direction.u0
        if slope > 0:
            # the ray crosses the bound row; that crossing is an equilibrium of the full game
            if ray.vertex.z0 == 0 and ray.direction.u0 == 0:
                # ray of solutions: the crossing shows up as a solution payload
                _, v_scaled = scale_point(s, ex.ZERO, ray.vertex.z)
                lam = (pipe.beta - sum(v_scaled, ex.ZERO)) / slope
                report.add("lemke-ray-among-equilibria", ray.point(lam)[1] in found, "ray of solutions")
            else:
                report.add(
                    "lemke-ray-among-equilibria",
                    any(r.vertex.key == ray.vertex.key and r.direction == ray.direction for r in rays),
                )
    return report


def _describe(c: EquilibriumClassification) -> str:
    return f"{c.tag.value} from x={ex.fmt_vector(c.profile.x)}"
