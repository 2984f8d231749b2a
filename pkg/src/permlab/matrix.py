"""Square integer matrices with exact (Python int) entries.

The 0x0 matrix is allowed; its permanent is 1 by the empty-product
convention, which keeps block expansions uniform when a block is empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParameterError, ParseError
from .graphs import Graph, bipartition


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ParameterError(f"row {i} has length {len(r)}, expected {n} (matrix must be square)")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "ExactMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.rows]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def is_symmetric(self) -> bool:
        n = self.n
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    def _check_index(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise ParameterError(f"index {i} out of range [0, {self.n})")
        return i

    def __str__(self) -> str:
        return to_text(self).rstrip("\n")


def identity(n: int) -> ExactMatrix:
    return ExactMatrix(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def ones(n: int) -> ExactMatrix:
    return ExactMatrix(tuple((1,) * n for _ in range(n)))


def zeros(n: int) -> ExactMatrix:
    return ExactMatrix(tuple((0,) * n for _ in range(n)))


def n_identity_minus_ones(n: int, s: int) -> ExactMatrix:
    """``n*I_s - J_s``: diagonal n-1, off-diagonal -1."""
    return ExactMatrix(tuple(tuple(n - 1 if i == j else -1 for j in range(s)) for i in range(s)))


def laplacian(g: Graph) -> ExactMatrix:
    """L = D - A: degrees on the diagonal, -1 on edges."""
    rows = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        rows[u][v] = rows[v][u] = -1
        rows[u][u] += 1
        rows[v][v] += 1
    return ExactMatrix.from_rows(rows)


def hadamard(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.n != b.n:
        raise ParameterError(f"dimension mismatch: {a.n} vs {b.n}")
    return ExactMatrix(tuple(
        tuple(x * y for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows)
    ))


def hadamard_square(a: ExactMatrix) -> ExactMatrix:
    return hadamard(a, a)


def principal_submatrix(a: ExactMatrix, keep: Iterable[int]) -> ExactMatrix:
    """A[S]: rows and columns in ``keep``, in increasing order."""
    idx = sorted(set(keep))
    for i in idx:
        a._check_index(i)
    return ExactMatrix(tuple(tuple(a.rows[i][j] for j in idx) for i in idx))


def delete_index(a: ExactMatrix, i: int) -> ExactMatrix:
    """A(i): row i and column i removed."""
    a._check_index(i)
    return principal_submatrix(a, (k for k in range(a.n) if k != i))


def minor(a: ExactMatrix, i: int, j: int) -> ExactMatrix:
    """A(i, j): row i and column j removed (not principal in general)."""
    a._check_index(i)
    a._check_index(j)
    return ExactMatrix(tuple(
        tuple(x for c, x in enumerate(r) if c != j) for k, r in enumerate(a.rows) if k != i
    ))


def add_to_diagonal(a: ExactMatrix, i: int, alpha: int) -> ExactMatrix:
    """A + alpha * E_ii with alpha >= 0."""
    a._check_index(i)
    if alpha < 0:
        raise ParameterError(f"alpha must be >= 0, got {alpha}")
    rows = a.tolist()
    rows[i][i] += alpha
    return ExactMatrix.from_rows(rows)


def with_column(a: ExactMatrix, j: int, col: Sequence[int]) -> ExactMatrix:
    a._check_index(j)
    if len(col) != a.n:
        raise ParameterError("column length mismatch")
    rows = a.tolist()
    for i, x in enumerate(col):
        rows[i][j] = x
    return ExactMatrix.from_rows(rows)


def permute(a: ExactMatrix, perm: Sequence[int]) -> ExactMatrix:
    """P A P^T: entry (i, j) of the result is a[perm[i]][perm[j]]."""
    if sorted(perm) != list(range(a.n)):
        raise ParameterError("perm must be a permutation of range(n)")
    return ExactMatrix(tuple(tuple(a.rows[p][q] for q in perm) for p in perm))


def entrywise_abs(a: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(tuple(tuple(abs(x) for x in r) for r in a.rows))


def support_graph(a: ExactMatrix) -> Graph:
    """Edge {i, j} iff i != j and a_ij != 0 (or a_ji != 0 for non-symmetric input)."""
    n = a.n
    return Graph(n, tuple(
        (i, j) for i in range(n) for j in range(i + 1, n) if a.rows[i][j] or a.rows[j][i]
    ))


def gram(b: Sequence[Sequence[int]]) -> ExactMatrix:
    """B B^T, positive semidefinite by construction."""
    return ExactMatrix.from_rows(
        [sum(x * y for x, y in zip(ri, rj)) for rj in b] for ri in b
    )


@dataclass(frozen=True)
class ZMatrixProfile:
    is_symmetric: bool
    diag_nonneg: bool
    offdiag_nonpos: bool
    support: Graph

    @property
    def in_bipartite_z_class(self) -> bool:
        """Symmetric Z-matrix, nonnegative diagonal, bipartite support."""
        return (self.is_symmetric and self.diag_nonneg and self.offdiag_nonpos
                and bipartition(self.support) is not None)


def z_profile(a: ExactMatrix) -> ZMatrixProfile:
    n = a.n
    return ZMatrixProfile(
        is_symmetric=a.is_symmetric(),
        diag_nonneg=all(a.rows[i][i] >= 0 for i in range(n)),
        offdiag_nonpos=all(a.rows[i][j] <= 0 for i in range(n) for j in range(n) if i != j),
        support=support_graph(a),
    )


def to_text(a: ExactMatrix) -> str:
    lines = [str(a.n)] + [" ".join(str(x) for x in r) for r in a.rows]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> ExactMatrix:
    """Parse ``n`` on the first line, then n rows of n integers."""
    lines = [(k, ln.strip()) for k, ln in enumerate(text.splitlines(), start=1)]
    lines = [(k, ln) for k, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty matrix file", 1, "line")
    k0, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"expected dimension, got {head!r}", k0, "line") from None
    if n < 0:
        raise ParseError("negative dimension", k0, "line")
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} rows, got {len(body)}", body[-1][0] if body else k0, "line")
    rows = []
    for k, ln in body:
        try:
            row = [int(x) for x in ln.split()]
        except ValueError:
            raise ParseError(f"non-integer entry in {ln!r}", k, "line") from None
        if len(row) != n:
            raise ParseError(f"expected {n} entries, got {len(row)}", k, "line")
        rows.append(row)
    return ExactMatrix.from_rows(rows)
