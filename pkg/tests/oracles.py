"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
import random


def laplace_permanent(rows):
    """Permanent by cofactor expansion along the first row (no shared code with the engine)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j, x in enumerate(rows[0]):
        if x:
            sub = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += x * laplace_permanent(sub)
    return total


def cycle_matchings_brute(n):
    """m(n, t) for C_n by enumerating all edge subsets."""
    edges = [(i, (i + 1) % n) for i in range(n)]
    counts = [0] * (n // 2 + 1)
    for mask in range(1 << n):
        chosen = [edges[k] for k in range(n) if mask >> k & 1]
        verts = [v for e in chosen for v in e]
        if len(verts) == len(set(verts)):
            counts[len(chosen)] += 1
    return counts


def laplacian_rows(n, edges):
    rows = [[0] * n for _ in range(n)]
    for u, v in edges:
        rows[u][v] = rows[v][u] = -1
        rows[u][u] += 1
        rows[v][v] += 1
    return rows


def random_int_rows(rng: random.Random, n, lo, hi):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def random_symmetric_rows(rng: random.Random, n, lo, hi):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(lo, hi)
    return rows


def random_graph_edges(rng: random.Random, n, p=0.5):
    return [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
