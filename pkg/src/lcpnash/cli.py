"""Command-line front end.

Exit codes: 0 success (Solved or Trivial for ``lemke``), 1 usage, parse or
size errors, 2 Lemke ended on a secondary ray, 3 ray extraction hit a
degenerate point (``beta`` too small), 4 an audit or verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from . import exact as ex
from .document import (
    InstanceDocument,
    document_kind,
    parse_document,
    parse_game_document,
    parse_vector_document,
)
from .errors import DegeneracyError, DocumentError, LcpError, NotEquilibriumError, SizeError
from .lcp import ExtendedInstance, SecondaryDirection, SecondaryRay, var_name
from .lemke import Outcome, lemke_solve
from .nash import DEFAULT_MAX_SIZE, MixedProfile, SymmetricGame, enumerate_sne
from .oracle import enumerate_directions, enumerate_skeleton, enumerate_solutions
from .pipeline import audit_instance, run_pipeline
from .recovery import Tag, classify_equilibrium
from .reduction import (
    build_augmented,
    build_game_basic,
    compute_beta,
    scale_instance,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RAY = 2
EXIT_DEGENERATE = 3
EXIT_MISMATCH = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Printer:
    """Collects a report as text lines and as a JSON-ready dict."""

    def __init__(self, decimal: int | None) -> None:
        self.decimal = decimal
        self.lines: list[str] = []
        self.data: dict[str, object] = {}

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    def approx(self, values: Sequence[Fraction]) -> str:
        if self.decimal is None:
            return ""
        k = self.decimal
        parts = [format(Decimal(v.numerator) / Decimal(v.denominator), f".{k}f") for v in values]
        return "  (approx [" + ", ".join(parts) + "])"

    def vec(self, v: Sequence[Fraction]) -> str:
        return ex.fmt_vector(v) + self.approx(v)


def _strs(v: Sequence[Fraction]) -> list[str]:
    return [str(x) for x in v]


def fmt_direction(d: SecondaryDirection) -> str:
    return f"({d.u0},{ex.fmt_vector(d.u)})"


def fmt_ray(ray: SecondaryRay) -> str:
    return f"vertex=({ray.vertex.z0},{ex.fmt_vector(ray.vertex.z)}) direction={fmt_direction(ray.direction)}"


def direction_json(d: SecondaryDirection) -> dict:
    return {"u0": d.u0, "u": _strs(d.u)}


def ray_json(ray: SecondaryRay) -> dict:
    return {"vertex": {"z0": str(ray.vertex.z0), "z": _strs(ray.vertex.z)}, "direction": direction_json(ray.direction)}


def payload_text(tag: Tag, payload: object) -> str:
    if tag is Tag.ORIGINAL_SOLUTION:
        return f"z = {ex.fmt_vector(payload)}"
    if tag is Tag.SECONDARY_RAY:
        return fmt_ray(payload)
    return fmt_direction(payload)


def payload_json(tag: Tag, payload: object) -> object:
    if tag is Tag.ORIGINAL_SOLUTION:
        return {"z": _strs(payload)}
    if tag is Tag.SECONDARY_RAY:
        return ray_json(payload)
    return direction_json(payload)


def _load_instance(args: argparse.Namespace) -> tuple[InstanceDocument, ExtendedInstance]:
    doc = parse_document(Path(args.file).read_text())
    d = None
    if getattr(args, "d_file", None):
        d = parse_vector_document(Path(args.d_file).read_text(), "d")
        if len(d) != doc.m:
            raise UsageError(f"--d-file has {len(d)} entries, instance has m = {doc.m}")
    return doc, doc.extended(d)


def _beta(args: argparse.Namespace, doc: InstanceDocument) -> Fraction | None:
    if getattr(args, "beta", None) is not None:
        return ex.frac(args.beta)
    return doc.beta


def cmd_lemke(args: argparse.Namespace, out: Printer) -> int:
    _, ext = _load_instance(args)
    res = lemke_solve(ext)
    m = ext.m
    out.data["outcome"] = res.tag.value
    if args.trace:
        steps = []
        for k, step in enumerate(res.path, 1):
            v = step.vertex_after
            out.say(f"pivot {k}: {step.describe(m)}; z0 = {v.z0}, z = {out.vec(v.z)}")
            steps.append(
                {
                    "entering": var_name(step.entering, m),
                    "leaving": var_name(step.leaving, m),
                    "z0": str(v.z0),
                    "z": _strs(v.z),
                    "basis": sorted(var_name(b, m) for b in step.basis_after),
                }
            )
        out.data["path"] = steps
    if res.tag is Outcome.RAY:
        out.say(f"RAY {fmt_ray(res.ray)}")
        out.data["ray"] = ray_json(res.ray)
        if res.ray.vertex.z0 == 0:
            # degenerate termination: the lexicographic rule left z0 basic at level zero
            out.say(f"note: the ray's vertex has z0 = 0, so z = {ex.fmt_vector(res.ray.vertex.z)} solves the problem")
            out.data["vertex_solves"] = True
        return EXIT_RAY
    out.say(f"{res.tag.value} z = {out.vec(res.solution)}")
    out.data["z"] = _strs(res.solution)
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace, out: Printer) -> int:
    doc, ext = _load_instance(args)
    s = scale_instance(ext)
    beta = _beta(args, doc)
    beta = compute_beta(s.scaled) if beta is None else beta
    aug = build_augmented(s.scaled, beta)
    basic = build_game_basic(s.scaled)
    full = build_game_basic(aug.instance)
    out.say(f"beta = {beta}")
    out.say(f"scaled M = {ex.fmt_matrix(s.scaled.M)}")
    out.say(f"scaled q = {ex.fmt_vector(s.scaled.q)}")
    out.say(f"augmented M = {ex.fmt_matrix(aug.M_tilde)}")
    out.say(f"augmented q = {ex.fmt_vector(aug.q_tilde)}")
    out.say(f"basic game C = {ex.fmt_matrix(basic.C)}")
    out.say(f"full game C = {ex.fmt_matrix(full.C)}")
    out.data.update(
        beta=str(beta),
        scaled={"M": [_strs(r) for r in s.scaled.M], "q": _strs(s.scaled.q)},
        augmented={"M": [_strs(r) for r in aug.M_tilde], "q": _strs(aug.q_tilde)},
        basic_game=[_strs(r) for r in basic.C],
        full_game=[_strs(r) for r in full.C],
    )
    return EXIT_OK


def _profiles_report(out: Printer, game: SymmetricGame, profiles: list[MixedProfile]) -> None:
    out.say(f"{game.n} strategies, {len(profiles)} symmetric equilibria")
    for p in profiles:
        flag = "  (vertex of a continuum)" if p.in_component else ""
        out.say(f"x = {out.vec(p.x)}  cost = {p.value}{flag}")
    out.data["equilibria"] = [
        {"x": _strs(p.x), "cost": str(p.value), "in_component": p.in_component} for p in profiles
    ]


def cmd_solve_game(args: argparse.Namespace, out: Printer) -> int:
    text = Path(args.file).read_text()
    if document_kind(text) == "game":
        game = parse_game_document(text)
    else:
        doc, ext = _load_instance(args)
        s = scale_instance(ext)
        beta = _beta(args, doc)
        beta = compute_beta(s.scaled) if beta is None else beta
        game = build_game_basic(build_augmented(s.scaled, beta).instance)
    _profiles_report(out, game, enumerate_sne(game, args.max_support))
    return EXIT_OK


def cmd_pipeline(args: argparse.Namespace, out: Printer) -> int:
    doc, ext = _load_instance(args)
    rep = run_pipeline(ext, beta=_beta(args, doc), max_support=args.max_support)
    if rep.trivial:
        z = ex.zeros(ext.m)
        out.say(f"TRIVIAL z = {out.vec(z)}  (q >= 0, no game built)")
        out.data.update(outcome="TRIVIAL", z=_strs(z))
        return EXIT_OK
    out.data["beta"] = str(rep.beta)
    out.say(f"beta = {rep.beta}")
    if rep.epsilon is not None:
        out.say(f"degenerate type-1 direction: retried with d perturbed by eps = {rep.epsilon}")
        out.say(f"perturbed d = {ex.fmt_vector(rep.instance.d)}")
        out.data.update(epsilon=str(rep.epsilon), perturbed_d=_strs(rep.instance.d))
    out.say(f"{rep.game.n} strategies, {len(rep.entries)} symmetric equilibria")
    items = []
    for e in rep.entries:
        c = e.classification
        line = f"x = {out.vec(c.profile.x)}  -> {c.tag.value} {payload_text(c.tag, c.payload)}"
        item = {"x": _strs(c.profile.x), "tag": c.tag.value, "payload": payload_json(c.tag, c.payload)}
        if e.resolved is not None:
            if isinstance(e.resolved, SecondaryRay):
                line += f"  resolved: RAY {fmt_ray(e.resolved)}"
                item["resolved"] = {"ray": ray_json(e.resolved)}
            else:
                line += f"  resolved: SOLVED z = {ex.fmt_vector(e.resolved)}"
                item["resolved"] = {"z": _strs(e.resolved)}
        line += "  [verified]" if e.verified else "  [VERIFICATION FAILED]"
        item["verified"] = e.verified
        out.say(line)
        items.append(item)
    out.data["equilibria"] = items
    out.data["ok"] = rep.ok
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_classify(args: argparse.Namespace, out: Printer) -> int:
    doc, ext = _load_instance(args)
    s = scale_instance(ext)
    aug = None
    if not args.basic:
        beta = _beta(args, doc)
        aug = build_augmented(s.scaled, compute_beta(s.scaled) if beta is None else beta)
        out.say(f"beta = {aug.beta}")
        out.data["beta"] = str(aug.beta)
    game = build_game_basic(s.scaled if aug is None else aug.instance)
    if args.profile:
        profiles = [MixedProfile.of(game, [ex.frac(t.strip()) for t in args.profile.split(",")])]
    else:
        profiles = enumerate_sne(game, args.max_support)
    items = []
    ok = True
    for p in profiles:
        c = classify_equilibrium(ext, aug, p)
        good = c.verify(ext)
        ok = ok and good
        out.say(f"x = {out.vec(p.x)}  -> {c.tag.value} {payload_text(c.tag, c.payload)}")
        items.append(
            {"x": _strs(p.x), "tag": c.tag.value, "payload": payload_json(c.tag, c.payload), "verified": good}
        )
    out.data["classifications"] = items
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_audit(args: argparse.Namespace, out: Printer) -> int:
    doc, ext = _load_instance(args)
    rep = audit_instance(ext, beta=_beta(args, doc))
    for c in rep.checks:
        out.say(f"{'PASS' if c.ok else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else ""))
    out.say("audit: ok" if rep.ok else "audit: MISMATCH")
    out.data["ok"] = rep.ok
    out.data["checks"] = [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in rep.checks]
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_oracle(args: argparse.Namespace, out: Printer) -> int:
    _, ext = _load_instance(args)
    sols = enumerate_solutions(ext.base)
    dirs = enumerate_directions(ext)
    skel = enumerate_skeleton(ext)
    out.say(f"solutions ({len(sols)}{', degenerate' if sols.degenerate else ''}):")
    for z in sols:
        out.say(f"  z = {out.vec(z)}")
    out.say(f"type-0 directions: {', '.join(map(fmt_direction, dirs.type0)) or 'none'}")
    out.say(f"type-1 directions: {', '.join(map(fmt_direction, dirs.type1)) or 'none'}")
    out.say(f"complementary vertices ({len(skel.vertices)}{'' if skel.nondegenerate else ', degenerate'}):")
    for v in skel.vertices:
        out.say(f"  z0 = {v.z0}, z = {out.vec(v.z)}")
    out.say(f"complementary edges: {len(skel.edges)}")
    for r in skel.rays:
        out.say(f"  {'primary' if r.is_primary else 'secondary'} ray {fmt_ray(r)}")
    out.data.update(
        solutions=[_strs(z) for z in sols],
        solutions_degenerate=sols.degenerate,
        type0=[direction_json(d) for d in dirs.type0],
        type1=[direction_json(d) for d in dirs.type1],
        vertices=[{"z0": str(v.z0), "z": _strs(v.z)} for v in skel.vertices],
        edges=len(skel.edges),
        rays=[dict(ray_json(r), primary=r.is_primary) for r in skel.rays],
        nondegenerate=skel.nondegenerate,
    )
    return EXIT_OK


COMMANDS = {
    "lemke": (cmd_lemke, "run Lemke's method from the primary ray"),
    "reduce": (cmd_reduce, "print the scaled, augmented and game matrices"),
    "solve-game": (cmd_solve_game, "enumerate symmetric equilibria of a game or of an instance's full game"),
    "pipeline": (cmd_pipeline, "solve through the game and classify every equilibrium"),
    "classify": (cmd_classify, "classify one profile, or every equilibrium"),
    "audit": (cmd_audit, "cross-check every route against brute force"),
    "oracle": (cmd_oracle, "brute-force solutions, directions and complementary skeleton"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lcpnash", description="Exact LCP solving through symmetric bimatrix games.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="instance document (JSON, rationals as strings)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--decimal", type=int, metavar="K", help="append K-digit decimal approximations")
        p.add_argument("--d-file", help="covering vector document overriding the instance's d")
        if name in {"lemke"}:
            p.add_argument("--trace", action="store_true", help="print every pivot")
        if name in {"reduce", "solve-game", "pipeline", "classify", "audit"}:
            p.add_argument("--beta", metavar="R", help="override the computed bound beta")
        if name in {"solve-game", "pipeline", "classify"}:
            p.add_argument("--max-support", type=int, default=DEFAULT_MAX_SIZE, metavar="N")
        if name == "classify":
            p.add_argument("--profile", help="comma-separated mixed strategy, e.g. 0,1/2,1/2")
            p.add_argument("--basic", action="store_true", help="use the basic game instead of the full one")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.decimal is not None and args.decimal < 0:
        parser.error("--decimal must be nonnegative")
    out = Printer(args.decimal)
    handler, _ = COMMANDS[args.command]
    try:
        code = handler(args, out)
    except DocumentError as err:
        return _fail(args, f"parse error: {err}", EXIT_USAGE)
    except (OSError, UsageError) as err:
        return _fail(args, f"error: {err}", EXIT_USAGE)
    except SizeError as err:
        return _fail(args, f"size error: {err}", EXIT_USAGE)
    except DegeneracyError as err:
        return _fail(args, f"degeneracy error: {err}", EXIT_DEGENERATE)
    except NotEquilibriumError as err:
        return _fail(args, f"error: {err}", EXIT_USAGE)
    except (LcpError, ValueError) as err:
        return _fail(args, f"error: {err}", EXIT_USAGE)
    if args.json:
        out.data["command"] = args.command
        out.data["exit_code"] = code
        print(json.dumps(out.data, indent=2))
    else:
        print("\n".join(out.lines))
    return code


def _fail(args: argparse.Namespace, message: str, code: int) -> int:
    if args.json:
        print(json.dumps({"command": args.command, "error": message, "exit_code": code}, indent=2))
    else:
        print(message, file=sys.stderr)
    return code
