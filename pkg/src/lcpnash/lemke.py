"""Generic Lemke(d) complementary pivoting with lexicographic anti-cycling."""

from __future__ import annotations

import enum
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from . import exact as ex
from .errors import PivotLimitError
from .lcp import (
    ExtendedInstance,
    ExtendedPoint,
    SecondaryDirection,
    SecondaryRay,
    complement,
    var_name,
)


class Outcome(enum.Enum):
    SOLVED = "SOLVED"
    RAY = "RAY"
    TRIVIAL = "TRIVIAL"


@dataclass(frozen=True)
class PivotStep:
    entering: int
    leaving: int
    vertex_after: ExtendedPoint

    @property
    def basis_after(self) -> frozenset[int]:
        assert self.vertex_after.basis is not None
        return self.vertex_after.basis

    def describe(self, m: int) -> str:
        return f"{var_name(self.entering, m)} in, {var_name(self.leaving, m)} out"


@dataclass(frozen=True)
class LemkeOutcome:
    tag: Outcome
    path: tuple[PivotStep, ...] = ()
    solution: ex.Vector | None = None
    ray: SecondaryRay | None = None


class _Tableau:
    """Dense tableau ``B^-1 [I | -M | -d | q]``.

    The first ``m`` columns (the slack block) hold ``B^-1`` and supply the
    lexicographic tie-breaking rows.
    """

    def __init__(self, ext: ExtendedInstance) -> None:
        m = ext.m
        self.m = m
        cols = [ext.column(v) for v in range(2 * m + 1)]
        self.rows = [[c[i] for c in cols] + [ext.q[i]] for i in range(m)]
        self.basis = list(range(m))

    def column(self, var: int) -> list[Fraction]:
        return [r[var] for r in self.rows]

    def lex_key(self, i: int, denom: Fraction) -> tuple[Fraction, ...]:
        row = self.rows[i]
        return (row[-1] / denom,) + tuple(row[k] / denom for k in range(self.m))

    def pivot(self, r: int, var: int) -> int:
        piv = self.rows[r][var]
        self.rows[r] = [v / piv for v in self.rows[r]]
        pr = self.rows[r]
        for i, row in enumerate(self.rows):
            f = row[var]
            if i != r and f:
                self.rows[i] = [a - f * b for a, b in zip(row, pr)]
        leaving = self.basis[r]
        self.basis[r] = var
        return leaving

    def point(self, ext: ExtendedInstance) -> ExtendedPoint:
        m = self.m
        values = [ex.ZERO] * (2 * m + 1)
        for i, v in enumerate(self.basis):
            values[v] = self.rows[i][-1]
        return ExtendedPoint(values[2 * m], tuple(values[m : 2 * m]), tuple(values[:m]), frozenset(self.basis))


def direction_from_unbounded_column(
    ext: ExtendedInstance, basis: Sequence[int], entering: int
) -> SecondaryDirection:
    """Edge direction obtained by raising ``entering`` from the basis ``basis``.

    ``basis`` is ordered (row ``i`` of the basis matrix belongs to
    ``basis[i]``).  Raises ``ValueError`` if some basic variable would block
    the move, i.e. the column is not unbounded.
    """
    m = ext.m
    B = ext.basis_matrix(list(basis))
    a = ex.solve_linear(B, ext.column(entering))
    if a is None:
        raise ValueError("basis matrix is singular")
    if any(x > 0 for x in a):
        raise ValueError(f"{var_name(entering, m)} is blocked; column is not unbounded")
    step = [ex.ZERO] * (2 * m + 1)
    step[entering] = ex.ONE
    for v, x in zip(basis, a):
        step[v] = -x
    return SecondaryDirection.normalized(step[2 * m], tuple(step[m : 2 * m]))


def default_pivot_cap(m: int) -> int:
    return math.comb(2 * m + 1, m)


def lemke_solve(ext: ExtendedInstance, max_pivots: int | None = None) -> LemkeOutcome:
    """Run Lemke(d) from the primary ray to a solution or a secondary ray.

    Degeneracy is resolved with the lexicographic ratio test over the slack
    block, so no basis is ever revisited.
    """
    m = ext.m
    if ex.is_nonneg(ext.q):
        return LemkeOutcome(Outcome.TRIVIAL, solution=ex.zeros(m))
    cap = default_pivot_cap(m) if max_pivots is None else max_pivots
    z0 = 2 * m
    tab = _Tableau(ext)

    # initial pivot: z0 replaces the lexicographically most violated w_r
    r = min(range(m), key=lambda i: tab.lex_key(i, ext.d[i]))
    leaving = tab.pivot(r, z0)
    path = [PivotStep(z0, leaving, tab.point(ext))]

    while True:
        if len(path) > cap:
            raise PivotLimitError(f"more than {cap} pivots")
        entering = complement(leaving, m)
        col = tab.column(entering)
        rows = [i for i in range(m) if col[i] > 0]
        if not rows:
            vertex = tab.point(ext)
            direction = direction_from_unbounded_column(ext, tab.basis, entering)
            return LemkeOutcome(Outcome.RAY, tuple(path), ray=SecondaryRay(vertex, direction))
        r = min(rows, key=lambda i: tab.lex_key(i, col[i]))
        leaving = tab.pivot(r, entering)
        pt = tab.point(ext)
        path.append(PivotStep(entering, leaving, pt))
        if leaving == z0:
            return LemkeOutcome(Outcome.SOLVED, tuple(path), solution=pt.z)
