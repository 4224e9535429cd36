"""Seeded random instance families used by the audit tests and the shipped corpus."""

from __future__ import annotations

import random
from fractions import Fraction

from . import exact as ex
from .lcp import ExtendedInstance, is_p_matrix


def _int_matrix(rng: random.Random, m: int, lo: int, hi: int) -> ex.Matrix:
    return tuple(tuple(Fraction(rng.randint(lo, hi)) for _ in range(m)) for _ in range(m))


def _nontrivial_q(rng: random.Random, m: int, lo: int, hi: int) -> ex.Vector:
    while True:
        q = tuple(Fraction(rng.randint(lo, hi)) for _ in range(m))
        if not ex.is_nonneg(q):
            return q


def random_instance(rng: random.Random, m: int, lo: int = -5, hi: int = 5) -> ExtendedInstance:
    """Integer ``M`` and ``q`` in ``[lo, hi]`` with ``q`` not nonnegative, ``d = e``."""
    return ExtendedInstance.build(_int_matrix(rng, m, lo, hi), _nontrivial_q(rng, m, lo, hi))


def random_covering(rng: random.Random, m: int) -> ex.Vector:
    """Positive rationals ``a / b`` with ``1 <= a, b <= 4``, not all equal to one."""
    while True:
        d = tuple(Fraction(rng.randint(1, 4), rng.randint(1, 4)) for _ in range(m))
        if any(v != 1 for v in d):
            return d


def integer_corpus(seed: int, count: int, m_range: tuple[int, int] = (1, 4)) -> list[ExtendedInstance]:
    rng = random.Random(seed)
    return [random_instance(rng, rng.randint(*m_range)) for _ in range(count)]


def covering_corpus(seed: int, count: int, m_range: tuple[int, int] = (1, 4)) -> list[ExtendedInstance]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        base = random_instance(rng, rng.randint(*m_range))
        out.append(ExtendedInstance(base.base, random_covering(rng, base.m)))
    return out


def spd_matrix(rng: random.Random, m: int, lo: int = -3, hi: int = 3) -> ex.Matrix:
    """``A^T A + I`` for a random integer ``A``: symmetric positive definite."""
    A = _int_matrix(rng, m, lo, hi)
    AtA = ex.matmul(ex.transpose(A), A)
    return tuple(ex.add(row, eye) for row, eye in zip(AtA, ex.identity(m)))


def spd_corpus(seed: int, count: int, m_range: tuple[int, int] = (1, 4)) -> list[ExtendedInstance]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        m = rng.randint(*m_range)
        out.append(ExtendedInstance.build(spd_matrix(rng, m), _nontrivial_q(rng, m, -5, 5)))
    return out


def p_matrix_corpus(seed: int, count: int, m_range: tuple[int, int] = (1, 4)) -> list[ExtendedInstance]:
    """Random instances filtered down to P-matrices (rejection sampling, diagonal boosted)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = rng.randint(*m_range)
        M = _int_matrix(rng, m, -3, 3)
        M = tuple(tuple(v + (6 if i == j else 0) for j, v in enumerate(row)) for i, row in enumerate(M))
        if is_p_matrix(M):
            out.append(ExtendedInstance.build(M, _nontrivial_q(rng, m, -5, 5)))
    return out


def degenerate_corpus(seed: int, count: int, m_range: tuple[int, int] = (2, 4)) -> list[ExtendedInstance]:
    """Instances with repeated ``q`` entries, so ratio tests tie on the first pivot."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        m = rng.randint(*m_range)
        M = _int_matrix(rng, m, -5, 5)
        v = Fraction(-rng.randint(1, 5))
        q = [v] * m
        # keep at least two equal entries, perturb the rest
        for i in range(2, m):
            if rng.random() < 0.5:
                q[i] = Fraction(rng.randint(-5, 5))
        out.append(ExtendedInstance.build(M, q))
    return out
