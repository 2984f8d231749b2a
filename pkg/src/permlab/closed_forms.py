"""Closed forms for cycle and clique Laplacian permanents.

Cycles: with m(n, t) the number of t-edge matchings of C_n,

    U_n = sum_t m(n, t) 2^(n-2t),   V_n = sum_t m(n, t) 4^(n-2t),
    F_n = U_n^2 - V_n - 4 U_n.

For odd n, per(L) = U_n - 2 and per(L o L) = V_n + 2 (the two oriented
n-cycles weigh -1 each in L and +1 each in L o L).  For even n both oriented
n-cycles weigh +1; the even formula (U_n + 2, V_n + 2) is derived here, not
taken from the literature, and is tagged as such wherever it is reported.

Cliques: M = n I_s - J_s.  After clearing the k! denominators,

    P = sum_k (s!/k!) (n(n-2))^k,   Q = sum_k (s!/k!) (-n)^k,
    per(M) = (-1)^s Q,              per(M o M) = P,

and the scalar inequality for the clique reduces to the integer test P <= Q^2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError

# Printed seeds; regression-tested against matching enumeration.
U_SEED = {3: 14, 4: 34}
V_SEED = {3: 76, 4: 322}
MATCHING_SEED = {3: (1, 3), 4: (1, 4, 2)}


@dataclass(frozen=True)
class CycleSeries:
    n: int
    U: int
    V: int
    F: int
    matchings: tuple[int, ...]


def cycle_matchings(n: int) -> tuple[int, ...]:
    """m(n, t) for t = 0..n//2, by m(n,t) = m(n-1,t) + m(n-2,t-1) from the C_3, C_4 seeds."""
    if n < 3:
        raise ParameterError("cycle needs n >= 3")
    table = {k: list(v) for k, v in MATCHING_SEED.items()}
    for k in range(5, n + 1):
        prev, prev2 = table[k - 1], table[k - 2]
        row = [1]
        for t in range(1, k // 2 + 1):
            a = prev[t] if t < len(prev) else 0
            b = prev2[t - 1] if t - 1 < len(prev2) else 0
            row.append(a + b)
        table[k] = row
        table.pop(k - 2)
    return tuple(table[n])


def _uv_recurrence(n: int) -> tuple[int, int]:
    u = [U_SEED[3], U_SEED[4]]
    v = [V_SEED[3], V_SEED[4]]
    if n <= 4:
        return u[n - 3], v[n - 3]
    for _ in range(5, n + 1):
        u = [u[1], 2 * u[1] + u[0]]
        v = [v[1], 4 * v[1] + v[0]]
    return u[1], v[1]


def cycle_series(n: int) -> CycleSeries:
    """U, V, F for C_n, computed from matching counts and checked against the recurrences."""
    m = cycle_matchings(n)
    u = sum(c * 2 ** (n - 2 * t) for t, c in enumerate(m))
    v = sum(c * 4 ** (n - 2 * t) for t, c in enumerate(m))
    ur, vr = _uv_recurrence(n)
    if (u, v) != (ur, vr):
        raise AssertionError(f"C_{n}: matching sums ({u}, {v}) disagree with recurrences ({ur}, {vr})")
    return CycleSeries(n, u, v, u * u - v - 4 * u, m)


def cycle_laplacian_permanents(n: int) -> tuple[int, int]:
    """(per(L), per(L o L)) for the Laplacian of C_n.

    The even-n branch is a derived formula (see module docstring).
    """
    s = cycle_series(n)
    if n % 2:
        return s.U - 2, s.V + 2
    return s.U + 2, s.V + 2


def odd_cycle_gap(n: int) -> int:
    """per(L)^2 - per(L o L) = F_n + 2 for odd n."""
    if n < 3 or n % 2 == 0:
        raise ParameterError("odd_cycle_gap needs odd n >= 3")
    return cycle_series(n).F + 2


@dataclass(frozen=True)
class CliqueFormValues:
    n: int
    s: int
    per_M: int
    per_MM: int
    P: int
    Q: int


def _pq(n: int, m: int) -> tuple[int, int]:
    # m!/k! built downward from k = m
    p = q = 0
    coeff = 1
    x, y = n * (n - 2), -n
    for k in range(m, -1, -1):
        p += coeff * x ** k
        q += coeff * y ** k
        coeff *= k if k else 1
    return p, q


def clique_form(n: int, s: int) -> CliqueFormValues:
    """per(nI_s - J_s) and per of its Hadamard square."""
    if n < 2 or s < 1:
        raise ParameterError("clique_form needs n >= 2 and s >= 1")
    p, q = _pq(n, s)
    return CliqueFormValues(n, s, (-1) ** s * q, p, p, q)


@dataclass(frozen=True)
class ScalarCheck:
    n: int
    m: int
    P: int
    Q: int

    @property
    def holds(self) -> bool:
        return self.P <= self.Q * self.Q


def clique_scalar_holds(n: int, m: int) -> ScalarCheck:
    """Integer form P <= Q^2 of the clique scalar inequality, m in {n-1, n}."""
    if n < 2:
        raise ParameterError("n must be >= 2")
    if m not in (n - 1, n):
        raise ParameterError(f"m must be n-1 or n, got m={m} for n={n}")
    p, q = _pq(n, m)
    return ScalarCheck(n, m, p, q)

