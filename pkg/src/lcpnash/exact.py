"""Exact rational linear algebra on tuples of :class:`fractions.Fraction`.

Vectors are ``tuple[Fraction, ...]`` and matrices are row-major tuples of
vectors.  Everything here is a pure function over immutable values.
"""

from __future__ import annotations

import itertools
import math
import numbers
from collections.abc import Iterable, Sequence
from fractions import Fraction

from .errors import CoveringVectorError, DimensionError

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(value: object) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they would smuggle binary rounding into exact data.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        num, sep, den = text.partition("/")
        try:
            p = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"malformed rational literal {value!r}") from None
        if q == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(p, q)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot make an exact rational from {type(value).__name__}")


def vector(values: Iterable[object]) -> Vector:
    return tuple(frac(v) for v in values)


def matrix(rows: Iterable[Iterable[object]]) -> Matrix:
    out = tuple(vector(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionError("matrix rows have different lengths")
    return out


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def ones(n: int) -> Vector:
    return (ONE,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def diag_of(d: Sequence[Fraction]) -> Matrix:
    """Diagonal matrix with ``d`` on the diagonal; ``d`` must be strictly positive."""
    if any(x <= 0 for x in d):
        raise CoveringVectorError(f"diagonal entries must be positive, got {list(map(str, d))}")
    n = len(d)
    return tuple(tuple(d[i] if i == j else ZERO for j in range(n)) for i in range(n))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def column(A: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in A)


def submatrix(A: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return tuple(tuple(A[i][j] for j in cols) for i in rows)


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    if len(x) != len(y):
        raise DimensionError(f"dot of vectors of length {len(x)} and {len(y)}")
    return sum((a * b for a, b in zip(x, y)), ZERO)


def matvec(A: Matrix, x: Sequence[Fraction]) -> Vector:
    if A and len(A[0]) != len(x):
        raise DimensionError(f"matrix with {len(A[0])} columns applied to length-{len(x)} vector")
    return tuple(dot(row, x) for row in A)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def add(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    if len(x) != len(y):
        raise DimensionError(f"adding vectors of length {len(x)} and {len(y)}")
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    if len(x) != len(y):
        raise DimensionError(f"subtracting vectors of length {len(x)} and {len(y)}")
    return tuple(a - b for a, b in zip(x, y))


def scale(c: Fraction, x: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in x)


def is_nonneg(x: Iterable[Fraction]) -> bool:
    return all(a >= 0 for a in x)


def is_zero(x: Iterable[Fraction]) -> bool:
    return all(a == 0 for a in x)


def _rref(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form over the first
    ``ncols`` columns; returns the pivot columns."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [v / piv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def rank(A: Matrix) -> int:
    rows = [list(r) for r in A]
    return len(_rref(rows, shape(A)[1]))


def solve_linear(A: Matrix, b: Sequence[Fraction]) -> Vector | None:
    """Solve the square system ``A x = b`` exactly.

    Returns ``None`` when ``A`` is singular.
    """
    n, k = shape(A)
    if n != k or n != len(b):
        raise DimensionError(f"solve_linear needs a square system, got {n}x{k} with rhs {len(b)}")
    rows = [list(A[i]) + [b[i]] for i in range(n)]
    pivots = _rref(rows, n)
    if len(pivots) < n:
        return None
    return tuple(rows[i][n] for i in range(n))


def affine_solutions(A: Matrix, b: Sequence[Fraction]) -> tuple[Vector, tuple[Vector, ...]] | None:
    """All solutions of ``A x = b`` as ``(p, N)`` with ``x = p + N theta``.

    ``N`` is returned as a tuple of basis vectors of the null space (possibly
    empty).  Returns ``None`` when the system is inconsistent.
    """
    n, k = shape(A)
    if n != len(b):
        raise DimensionError(f"{n} equations with {len(b)} right-hand sides")
    rows = [list(A[i]) + [b[i]] for i in range(n)]
    pivots = _rref(rows, k)
    for i in range(len(pivots), n):
        if rows[i][k] != 0:
            return None
    p = [ZERO] * k
    for i, c in enumerate(pivots):
        p[c] = rows[i][k]
    free = [c for c in range(k) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * k
        v[f] = ONE
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        basis.append(tuple(v))
    return tuple(p), tuple(basis)


def nullspace(A: Matrix, ncols: int | None = None) -> tuple[Vector, ...]:
    k = shape(A)[1] if A else (ncols or 0)
    if not A:
        return identity(k)
    sol = affine_solutions(A, zeros(len(A)))
    assert sol is not None
    return sol[1]


def polyhedron_vertices(
    p: Vector,
    basis: Sequence[Vector],
    constraints: Sequence[tuple[Vector, Fraction]],
) -> list[Vector]:
    """Vertices of ``{x = p + N theta : a . x + c >= 0 for (a, c) in constraints}``.

    ``N`` (the columns in ``basis``) must have full column rank and the
    polyhedron must be pointed; vertices are found by brute force over
    ``dim``-subsets of constraints.
    """
    k = len(basis)
    # constraint in theta-space: b . theta + c' >= 0
    reduced = []
    for a, c in constraints:
        reduced.append((tuple(dot(a, v) for v in basis), dot(a, p) + c))

    def point(theta: Sequence[Fraction]) -> Vector:
        x = list(p)
        for t, v in zip(theta, basis):
            if t:
                for i, vi in enumerate(v):
                    x[i] += t * vi
        return tuple(x)

    found: dict[Vector, None] = {}
    if k == 0:
        if all(c >= 0 for _, c in reduced):
            found[p] = None
        return list(found)
    live = [(b, c) for b, c in reduced if any(b)]
    if any(c < 0 for b, c in reduced if not any(b)):
        return []
    for combo in itertools.combinations(range(len(live)), k):
        B = tuple(live[i][0] for i in combo)
        theta = solve_linear(B, tuple(-live[i][1] for i in combo))
        if theta is None:
            continue
        if all(dot(b, theta) + c >= 0 for b, c in live):
            found[point(theta)] = None
    return list(found)


def lcm_denominator(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v.denominator)
    return out


def fmt(x: Fraction) -> str:
    return str(x)


def fmt_vector(x: Sequence[Fraction]) -> str:
    return "[" + ", ".join(str(v) for v in x) + "]"


def fmt_matrix(A: Matrix) -> str:
    return "[" + ", ".join(fmt_vector(r) for r in A) + "]"
