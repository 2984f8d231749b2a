"""Simple undirected graphs, named families and gluing operations.

Vertices are always ``0..n-1``.  Every operation returns a new graph; the
labeling conventions are part of the contract because the block structure of
a coalesced Laplacian depends on them:

* ``coalesce`` orders the result as ``(V(g1) - v1, merged, V(g2) - v2)``,
  each part keeping its original relative order.
* ``delete_vertex`` keeps the surviving vertices in their original order.
* ``edge_join`` places ``g2`` after ``g1`` (shifted by ``g1.n``).
* ``one_vertex_union`` puts the hub at 0, followed by the remaining vertices
  of each piece in order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ParameterError, ParseError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...] = ()
    _adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ParameterError(f"vertex count must be >= 0, got {self.n}")
        seen: set[Edge] = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ParameterError(f"edge {e} has an endpoint outside [0, {self.n})")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ParameterError(f"duplicate edge {key}")
            seen.add(key)
        edges = tuple(sorted(seen))
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))

    def degree(self, v: int) -> int:
        return len(self._adj[self._check(v)])

    def degrees(self) -> list[int]:
        return [len(s) for s in self._adj]

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[self._check(v)])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[self._check(u)]

    @property
    def m(self) -> int:
        return len(self.edges)

    def _check(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise ParameterError(f"vertex {v} out of range [0, {self.n})")
        return v

    def relabel(self, mapping: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``u`` renamed to ``mapping[u]``."""
        if sorted(mapping) != list(range(self.n)):
            raise ParameterError("relabel mapping must be a permutation of the vertices")
        return Graph(self.n, tuple((mapping[u], mapping[v]) for u, v in self.edges))


@dataclass(frozen=True)
class Bipartition:
    left: frozenset[int]
    right: frozenset[int]

    def is_valid_for(self, g: Graph) -> bool:
        if self.left & self.right or (self.left | self.right) != set(range(g.n)):
            return False
        return all((u in self.left) != (v in self.left) for u, v in g.edges)


# ---------------------------------------------------------------------------
# families

def path(n: int) -> Graph:
    if n < 1:
        raise ParameterError("path needs n >= 1")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    """Cycle with edges {i, i+1 mod n}."""
    if n < 3:
        raise ParameterError("cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    if n < 1:
        raise ParameterError("complete graph needs n >= 1")
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with sides 0..a-1 and a..a+b-1."""
    if a < 1 or b < 1:
        raise ParameterError("complete_bipartite needs a, b >= 1")
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def star(k: int) -> Graph:
    """K_{1,k} with center 0."""
    if k < 1:
        raise ParameterError("star needs k >= 1")
    return Graph(k + 1, tuple((0, i) for i in range(1, k + 1)))


def windmill(clique_size: int, copies: int) -> Graph:
    """``copies`` cliques K_{clique_size} sharing hub 0."""
    if clique_size < 2 or copies < 1:
        raise ParameterError("windmill needs clique_size >= 2 and copies >= 1")
    return one_vertex_union([(complete(clique_size), 0)] * copies)


def friendship(k: int) -> Graph:
    """k triangles sharing hub 0."""
    if k < 1:
        raise ParameterError("friendship needs k >= 1")
    return windmill(3, k)


def bouquet_of_cycles(lengths: Sequence[int]) -> Graph:
    """Cycles of the given lengths sharing hub 0."""
    if not lengths:
        raise ParameterError("bouquet_of_cycles needs at least one cycle length")
    return one_vertex_union([(cycle(k), 0) for k in lengths])


_FAMILIES = {
    "path": (path, 1),
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "star": (star, 1),
    "friendship": (friendship, 1),
    "windmill": (windmill, 2),
}

FAMILY_NAMES = tuple(_FAMILIES) + ("bouquet_of_cycles",)


def make_family(family: str, params: Sequence[int]) -> Graph:
    """Build a named family member; ``params`` are the integer arguments.

    ``windmill`` takes ``(clique_size, copies)``; ``bouquet_of_cycles`` takes
    the list of cycle lengths.
    """
    family = family.replace("-", "_").lower()
    params = [int(p) for p in params]
    if family == "bouquet_of_cycles":
        return bouquet_of_cycles(params)
    try:
        fn, arity = _FAMILIES[family]
    except KeyError:
        raise ParameterError(f"unknown family {family!r}; choose from {', '.join(FAMILY_NAMES)}") from None
    if len(params) != arity:
        raise ParameterError(f"{family} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


# ---------------------------------------------------------------------------
# closure operations

def coalesce(g1: Graph, v1: int, g2: Graph, v2: int) -> tuple[Graph, int]:
    """Identify ``v1`` in ``g1`` with ``v2`` in ``g2``.

    Returns the glued graph and the label of the merged vertex (``g1.n - 1``).
    """
    g1._check(v1)
    g2._check(v2)
    merged = g1.n - 1

    def map1(u: int) -> int:
        if u == v1:
            return merged
        return u if u < v1 else u - 1

    def map2(w: int) -> int:
        if w == v2:
            return merged
        return g1.n + (w if w < v2 else w - 1)

    edges = [(map1(u), map1(v)) for u, v in g1.edges]
    edges += [(map2(u), map2(v)) for u, v in g2.edges]
    return Graph(g1.n + g2.n - 1, tuple(edges)), merged


def attach_leaf(g: Graph, v: int) -> Graph:
    """Add a pendant vertex at ``v``.

    Same labeling as ``coalesce(g, v, K2, 0)``: ``v`` moves to ``g.n - 1`` and
    the new leaf is ``g.n``.
    """
    return coalesce(g, v, path(2), 0)[0]


def edge_join(g1: Graph, v1: int, g2: Graph, v2: int) -> Graph:
    """Disjoint union of ``g1`` and ``g2`` plus the bridge {v1, g1.n + v2}."""
    g1._check(v1)
    g2._check(v2)
    off = g1.n
    edges = list(g1.edges) + [(u + off, v + off) for u, v in g2.edges]
    edges.append((v1, v2 + off))
    return Graph(g1.n + g2.n, tuple(edges))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    off = g1.n
    return Graph(g1.n + g2.n, g1.edges + tuple((u + off, v + off) for u, v in g2.edges))


def one_vertex_union(pieces: Sequence[tuple[Graph, int]]) -> Graph:
    """Glue every marked vertex into a single hub, labeled 0.

    Built by repeated coalescence onto the running graph, then relabeled so
    the hub comes first and the other vertices keep their order.
    """
    if not pieces:
        raise ParameterError("one_vertex_union needs at least one piece")
    g, hub = pieces[0]
    g._check(hub)
    for h, v in pieces[1:]:
        g, hub = coalesce(g, hub, h, v)
    mapping = [0] * g.n
    nxt = 1
    for u in range(g.n):
        if u == hub:
            continue
        mapping[u] = nxt
        nxt += 1
    return g.relabel(mapping)


def delete_vertex(g: Graph, v: int) -> Graph:
    g._check(v)
    edges = tuple(
        (a - (a > v), b - (b > v)) for a, b in g.edges if a != v and b != v
    )
    return Graph(g.n - 1, edges)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    keep = sorted(set(keep))
    for u in keep:
        g._check(u)
    pos = {u: i for i, u in enumerate(keep)}
    return Graph(len(keep), tuple((pos[a], pos[b]) for a, b in g.edges if a in pos and b in pos))


# ---------------------------------------------------------------------------
# bipartiteness

def _two_color(g: Graph) -> tuple[list[int], list[int], list[int] | None]:
    color = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return color, parent, _odd_walk(parent, u, w)
    return color, parent, None


def _odd_walk(parent: list[int], u: int, w: int) -> list[int]:
    def to_root(x: int) -> list[int]:
        out = [x]
        while parent[x] != -1:
            x = parent[x]
            out.append(x)
        return out

    pu, pw = to_root(u), to_root(w)
    # u -> root, then root -> w; the closing edge w-u makes it a closed walk
    return pu + pw[::-1][1:]


def bipartition(g: Graph) -> Bipartition | None:
    """2-coloring by BFS per component, or None if an odd cycle exists."""
    color, _, odd = _two_color(g)
    if odd is not None:
        return None
    return Bipartition(
        frozenset(i for i in range(g.n) if color[i] == 0),
        frozenset(i for i in range(g.n) if color[i] == 1),
    )


def odd_closed_walk(g: Graph) -> list[int] | None:
    """Vertices of an odd closed walk ``w[0], ..., w[-1], w[0]``, if any."""
    return _two_color(g)[2]


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


# ---------------------------------------------------------------------------
# text formats

def to_graph6(g: Graph) -> str:
    """Header-less graph6 for n <= 62."""
    if g.n > 62:
        raise ParameterError("graph6 encoding is limited to n <= 62 here")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.rstrip("\r\n")
    if not s:
        raise ParseError("empty graph6 string", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 byte {ch!r}", i)
    n = ord(s[0]) - 63
    if n > 62:
        raise ParseError("graph6 vertex counts above 62 are not supported", 0)
    nbits = n * (n - 1) // 2
    need = 1 + (nbits + 5) // 6
    if len(s) != need:
        raise ParseError(f"graph6 string for n={n} must have {need} bytes, got {len(s)}", min(len(s), need))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(s[1 + k // 6]) - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if nbits % 6:
        last = ord(s[-1]) - 63
        if last & ((1 << (6 - nbits % 6)) - 1):
            raise ParseError("nonzero padding bits in graph6 string", len(s) - 1)
    return Graph(n, tuple(edges))


def to_edgelist(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    """Parse ``n <count>`` followed by one ``u v`` pair per line.

    Blank lines and ``#`` comments are ignored.
    """
    n: int | None = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
                raise ParseError("expected header 'n <count>'", lineno, "line")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno, "line")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno, "line") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range [0, {n})", lineno, "line")
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno, "line")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key}", lineno, "line")
        seen.add(key)
        edges.append(key)
    if n is None:
        raise ParseError("missing 'n <count>' header", 1, "line")
    return Graph(n, tuple(edges))
