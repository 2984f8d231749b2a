"""Exact permanents.

``permanent`` is Ryser's inclusion-exclusion formula in the Nijenhuis-Wilf
form, walking the subsets of the first n-1 columns in Gray-code order so each
step adds or subtracts a single column from the running row sums.  The
half-integers of that form are avoided by working with doubled row sums and
dividing by 2^(n-1) at the end (the division is exact).

``permanent_naive`` sums over all n! permutations and serves as the
independent oracle.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import prod
from operator import add, getitem, sub
from typing import Iterator

from .errors import SizeLimitError
from .matrix import ExactMatrix

DEFAULT_MAX_N = 30
NAIVE_MAX_N = 12
# below this size a process pool costs more than it saves
_PARALLEL_MIN_N = 14


def max_n() -> int:
    """Engine size cap; ``PERMLAB_MAX_N`` overrides the default of 30."""
    raw = os.environ.get("PERMLAB_MAX_N")
    return int(raw) if raw else DEFAULT_MAX_N


def _gray_chunk(rows: tuple[tuple[int, ...], ...], start: int, stop: int) -> int:
    """Signed sum of prod(row sums) over Gray-code steps start..stop-1."""
    n = len(rows)
    cols = [[2 * rows[i][j] for i in range(n)] for j in range(n - 1)]
    r = [2 * rows[i][n - 1] - sum(rows[i]) for i in range(n)]
    g = start ^ (start >> 1)
    for j in range(n - 1):
        if (g >> j) & 1:
            r = list(map(add, r, cols[j]))
    total = prod(r) if start % 2 == 0 else -prod(r)
    positive = start % 2 == 0
    for k in range(start + 1, stop):
        j = (k & -k).bit_length() - 1
        if (k >> j) & 2:
            r = list(map(sub, r, cols[j]))
        else:
            r = list(map(add, r, cols[j]))
        positive = not positive
        if positive:
            total += prod(r)
        else:
            total -= prod(r)
    return total


def _chunks(steps: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, steps))
    bounds = [steps * p // parts for p in range(parts + 1)]
    return [(bounds[p], bounds[p + 1]) for p in range(parts) if bounds[p] < bounds[p + 1]]


def permanent(a: ExactMatrix, jobs: int = 1, limit: int | None = None) -> int:
    """Exact permanent of ``a``.

    ``jobs > 1`` splits the subset range into contiguous chunks evaluated in
    worker processes; partial sums are exact so the result never depends on
    the chunking.  Raises SizeLimitError above ``limit`` (default: ``max_n()``).
    """
    n = a.n
    cap = max_n() if limit is None else limit
    if n > cap:
        raise SizeLimitError(f"dimension {n} exceeds engine cap {cap} (set PERMLAB_MAX_N to raise it)")
    if n == 0:
        return 1
    if n == 1:
        return a.rows[0][0]
    steps = 1 << (n - 1)
    if jobs > 1 and n >= _PARALLEL_MIN_N:
        spans = _chunks(steps, jobs * 4)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_gray_chunk, a.rows, s, e) for s, e in spans]
            total = sum(f.result() for f in futures)
    else:
        total = _gray_chunk(a.rows, 0, steps)
    if n % 2 == 0:
        total = -total
    q, rem = divmod(total, steps)
    assert rem == 0, "Ryser sum not divisible by 2^(n-1)"
    return q


def permanent_naive(a: ExactMatrix) -> int:
    """Sum over all n! permutations; refuses n > 12."""
    n = a.n
    if n > NAIVE_MAX_N:
        raise SizeLimitError(f"brute-force enumeration refused for n={n} > {NAIVE_MAX_N}")
    rows = a.rows
    return sum(prod(map(getitem, rows, sigma)) for sigma in itertools.permutations(range(n)))


@dataclass(frozen=True)
class PermTerm:
    sigma: tuple[int, ...]
    value: int


def permutation_terms(a: ExactMatrix) -> Iterator[PermTerm]:
    """Yield every permutation with its product sum_i a[i][sigma(i)]."""
    n = a.n
    if n > NAIVE_MAX_N:
        raise SizeLimitError(f"brute-force enumeration refused for n={n} > {NAIVE_MAX_N}")
    rows = a.rows
    for sigma in itertools.permutations(range(n)):
        yield PermTerm(sigma, prod(rows[i][sigma[i]] for i in range(n)))


@dataclass(frozen=True)
class ZeroBlockWitness:
    rows: frozenset[int]
    cols: frozenset[int]

    def is_valid_for(self, a: ExactMatrix) -> bool:
        return (len(self.rows) + len(self.cols) > a.n
                and all(a.rows[r][c] == 0 for r in self.rows for c in self.cols))


def _max_matching(adj: list[list[int]], n: int) -> list[int]:
    """Augmenting-path maximum matching; returns match_col[c] = row or -1."""
    match_col = [-1] * n

    def augment(r: int, seen: list[bool]) -> bool:
        for c in adj[r]:
            if seen[c]:
                continue
            seen[c] = True
            if match_col[c] == -1 or augment(match_col[c], seen):
                match_col[c] = r
                return True
        return False

    for r in range(n):
        augment(r, [False] * n)
    return match_col


def structural_zero(a: ExactMatrix) -> ZeroBlockWitness | None:
    """Zero block R x S with |R| + |S| > n, if the support has no perfect matching.

    The block comes from the Koenig cover: rows reachable by alternating paths
    from unmatched rows, and the columns those paths do not reach.
    """
    n = a.n
    adj = [[j for j in range(n) if a.rows[i][j] != 0] for i in range(n)]
    match_col = _max_matching(adj, n)
    matched_rows = {r for r in match_col if r != -1}
    if len(matched_rows) == n:
        return None
    reach_rows = set(r for r in range(n) if r not in matched_rows)
    reach_cols: set[int] = set()
    frontier = list(reach_rows)
    while frontier:
        r = frontier.pop()
        for c in adj[r]:
            if c in reach_cols:
                continue
            reach_cols.add(c)
            r2 = match_col[c]
            if r2 != -1 and r2 not in reach_rows:
                reach_rows.add(r2)
                frontier.append(r2)
    witness = ZeroBlockWitness(frozenset(reach_rows), frozenset(set(range(n)) - reach_cols))
    assert witness.is_valid_for(a)
    return witness


def nonzero_terms(a: ExactMatrix) -> Iterator[PermTerm]:
    """Like ``permutation_terms`` but only the nonzero ones, found by search over the support."""
    n = a.n
    if n > NAIVE_MAX_N:
        raise SizeLimitError(f"term enumeration refused for n={n} > {NAIVE_MAX_N}")
    support = [[j for j in range(n) if a.rows[i][j] != 0] for i in range(n)]
    sigma = [0] * n
    used = [False] * n

    def extend(i: int, acc: int) -> Iterator[PermTerm]:
        if i == n:
            yield PermTerm(tuple(sigma), acc)
            return
        for j in support[i]:
            if not used[j]:
                used[j] = True
                sigma[i] = j
                yield from extend(i + 1, acc * a.rows[i][j])
                used[j] = False

    yield from extend(0, 1)
