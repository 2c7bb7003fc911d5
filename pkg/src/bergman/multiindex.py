"""Multi-index combinatorics for polynomials on C^d.

A multi-index is a plain tuple of d non-negative integers.  The graded
basis used everywhere in this package lists all multi-indices of total
degree <= M in graded lexicographic order: degree blocks come first, and
within a block tuples are sorted in descending lexicographic order, so
truncating at a lower degree is a prefix operation.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator, Sequence, Tuple

MultiIndex = Tuple[int, ...]


def degree(m: MultiIndex) -> int:
    """Total degree |m| = sum of the entries."""
    return sum(m)


def factorial(m: MultiIndex) -> int:
    """m! = product of entrywise factorials, exact integer."""
    out = 1
    for k in m:
        out *= math.factorial(k)
    return out


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def subtract(a: MultiIndex, b: MultiIndex) -> MultiIndex | None:
    """a - b entrywise, or None if any entry would go negative."""
    out = tuple(x - y for x, y in zip(a, b))
    if any(x < 0 for x in out):
        return None
    return out


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    # descending lex within a fixed total degree
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_basis(d: int, M: int) -> Tuple[MultiIndex, ...]:
    """All multi-indices of length d with |m| <= M, graded lex order.

    The result has length binomial(M + d, d) and is cached; the returned
    tuple is immutable and safe to share across threads.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if M < 0:
        raise ValueError(f"truncation degree must be >= 0, got {M}")
    out = []
    for k in range(M + 1):
        out.extend(_compositions(k, d))
    assert len(out) == math.comb(M + d, d)
    return tuple(out)


def basis_index(basis: Sequence[MultiIndex], m: MultiIndex) -> int:
    """Position of m in the graded basis (linear scan within its block)."""
    k = degree(m)
    lo = math.comb(k - 1 + len(m), len(m)) if k > 0 else 0
    hi = min(math.comb(k + len(m), len(m)), len(basis))
    for i in range(lo, hi):
        if basis[i] == m:
            return i
    raise KeyError(f"multi-index {m} not in basis")


def multinomial(k: int, m: MultiIndex) -> int:
    """k! / m! for |m| = k, exact."""
    if degree(m) != k:
        raise ValueError(f"multinomial needs |m| = k, got |{m}| != {k}")
    return math.factorial(k) // factorial(m)
