"""Measuring per(A o A) <= per(A)^2 and the identities behind the gluing rules.

Nothing here assumes the inequality: every check computes both sides exactly
and reports the values, so a violation would surface as data.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from . import graphs as gr
from .errors import InputClassError, ParameterError, StructuralError
from .graphs import Graph
from .matrix import (
    ExactMatrix,
    add_to_diagonal,
    delete_index,
    entrywise_abs,
    hadamard_square,
    laplacian,
    permute,
    z_profile,
)
from .permanent import nonzero_terms, permanent, permanent_naive

METHODS = ("ryser", "naive", "closed_form")


@dataclass(frozen=True)
class VerificationReport:
    instance_id: str
    n: int
    per_A: int
    per_AhadA: int
    method: str = "ryser"
    provenance: str = ""
    elapsed: float = 0.0

    @property
    def gap(self) -> int:
        return self.per_A * self.per_A - self.per_AhadA

    @property
    def holds(self) -> bool:
        return self.gap >= 0


def _per(a: ExactMatrix, method: str, jobs: int = 1) -> int:
    if method == "naive":
        return permanent_naive(a)
    if method == "ryser":
        return permanent(a, jobs=jobs)
    raise ParameterError(f"method must be 'ryser' or 'naive', got {method!r}")


def chollet_check(
    a: ExactMatrix,
    instance_id: str = "",
    provenance: str = "",
    method: str = "ryser",
    jobs: int = 1,
) -> VerificationReport:
    """per(A) and per(A o A), measured exactly."""
    t0 = time.perf_counter()
    p = _per(a, method, jobs)
    ph = _per(hadamard_square(a), method, jobs)
    return VerificationReport(instance_id, a.n, p, ph, method, provenance, time.perf_counter() - t0)


def verify_graph(g: Graph, instance_id: str = "", provenance: str = "", jobs: int = 1) -> VerificationReport:
    if g.n <= 62:
        instance_id = instance_id or gr.to_graph6(g)
        provenance = provenance or f"Laplacian of graph6 {gr.to_graph6(g)}"
    return chollet_check(laplacian(g), instance_id, provenance, jobs=jobs)


class HypothesisBundle(NamedTuple):
    whole: VerificationReport
    minor: VerificationReport

    @property
    def holds(self) -> bool:
        return self.whole.holds and self.minor.holds


def verify_hypothesis_bundle(g: Graph, v: int, label: str = "G") -> HypothesisBundle:
    """The inequality for L_G and for L_G(v)."""
    g._check(v)
    lap = laplacian(g)
    return HypothesisBundle(
        chollet_check(lap, label, f"L_{label}"),
        chollet_check(delete_index(lap, v), f"{label}({v})", f"L_{label} with row/column {v} deleted"),
    )


@dataclass(frozen=True)
class IdentityCheck:
    """Exactly computed (lhs, rhs) pairs and the relation that should link each pair.

    ``lhs``/``rhs`` refer to the first pair, the headline comparison.
    """

    name: str
    relation: str  # "==" or ">="
    sides: tuple[tuple[int, int], ...]
    values: dict[str, int] = field(default_factory=dict)

    @property
    def lhs(self) -> int:
        return self.sides[0][0]

    @property
    def rhs(self) -> int:
        return self.sides[0][1]

    @property
    def holds(self) -> bool:
        if self.relation == "==":
            return all(x == y for x, y in self.sides)
        return all(x >= y for x, y in self.sides)


def verify_coalescence_identity(g1: Graph, v1: int, g2: Graph, v2: int) -> IdentityCheck:
    """per(L_G) = per(L1) per(L2(v2)) + per(L1(v1)) per(L2) for G = G1 . G2."""
    g, _ = gr.coalesce(g1, v1, g2, v2)
    l1, l2 = laplacian(g1), laplacian(g2)
    vals = {
        "per_L": permanent(laplacian(g)),
        "per_L1": permanent(l1),
        "per_L1_minor": permanent(delete_index(l1, v1)),
        "per_L2": permanent(l2),
        "per_L2_minor": permanent(delete_index(l2, v2)),
    }
    rhs = vals["per_L1"] * vals["per_L2_minor"] + vals["per_L1_minor"] * vals["per_L2"]
    vals["rhs"] = rhs
    return IdentityCheck("coalesce", "==", ((vals["per_L"], rhs),), vals)


def verify_hadamard_coalescence_identity(g1: Graph, v1: int, g2: Graph, v2: int) -> IdentityCheck:
    """per(L o L) = per(H1) per(H2(v2)) + per(H1(v1)) per(H2) + 2 d1 d2 per(H1(v1)) per(H2(v2)),

    with Hi = L_{Gi} o L_{Gi} and di the degree of the glued vertex in Gi.
    """
    g, _ = gr.coalesce(g1, v1, g2, v2)
    h1, h2 = hadamard_square(laplacian(g1)), hadamard_square(laplacian(g2))
    d1, d2 = g1.degree(v1), g2.degree(v2)
    vals = {
        "per_H": permanent(hadamard_square(laplacian(g))),
        "per_H1": permanent(h1),
        "per_H1_minor": permanent(delete_index(h1, v1)),
        "per_H2": permanent(h2),
        "per_H2_minor": permanent(delete_index(h2, v2)),
        "d1": d1,
        "d2": d2,
    }
    rhs = (vals["per_H1"] * vals["per_H2_minor"] + vals["per_H1_minor"] * vals["per_H2"]
           + 2 * d1 * d2 * vals["per_H1_minor"] * vals["per_H2_minor"])
    vals["rhs"] = rhs
    return IdentityCheck("coalesce-hadamard", "==", ((vals["per_H"], rhs),), vals)


def verify_diag_multilinearity(a: ExactMatrix, i: int, alpha: int) -> IdentityCheck:
    """Bumping a_ii by alpha >= 0.

    Checks per(A') = per(A) + alpha per(A(i)) and
    per(A' o A') = per(A o A) + (2 a_ii alpha + alpha^2) per((A o A)(i)).
    """
    bumped = add_to_diagonal(a, i, alpha)
    h = hadamard_square(a)
    aii = a.rows[i][i]
    vals = {
        "per_A": permanent(a),
        "per_A_minor": permanent(delete_index(a, i)),
        "per_Abump": permanent(bumped),
        "per_H": permanent(h),
        "per_H_minor": permanent(delete_index(h, i)),
        "per_Hbump": permanent(hadamard_square(bumped)),
    }
    vals["rhs_plain"] = vals["per_A"] + alpha * vals["per_A_minor"]
    vals["rhs_hadamard"] = vals["per_H"] + (2 * aii * alpha + alpha * alpha) * vals["per_H_minor"]
    return IdentityCheck("diag", "==", (
        (vals["per_Abump"], vals["rhs_plain"]),
        (vals["per_Hbump"], vals["rhs_hadamard"]),
    ), vals)


def verify_sign_property(a: ExactMatrix) -> IdentityCheck:
    """per(A) == per(|A|) for a symmetric Z-matrix with nonnegative diagonal and bipartite support.

    Equality means no permutation term is negative.  For n <= 10 the terms are
    also inspected one by one.
    """
    prof = z_profile(a)
    if not prof.in_bipartite_z_class:
        reasons = [name for name, ok in (
            ("not symmetric", prof.is_symmetric),
            ("negative diagonal entry", prof.diag_nonneg),
            ("positive off-diagonal entry", prof.offdiag_nonpos),
            ("support graph not bipartite", gr.bipartition(prof.support) is not None),
        ) if not ok]
        raise InputClassError("sign property is only claimed for bipartite-support symmetric Z-matrices: "
                              + ", ".join(reasons))
    vals = {"per_A": permanent(a), "per_absA": permanent(entrywise_abs(a))}
    sides = [(vals["per_A"], vals["per_absA"])]
    if a.n <= 10:
        vals["negative_terms"] = sum(1 for t in nonzero_terms(a) if t.value < 0)
        sides.append((vals["negative_terms"], 0))
    return IdentityCheck("sign", "==", tuple(sides), vals)


def verify_lieb_bound(a: ExactMatrix, i: int) -> IdentityCheck:
    """per(A) >= a_ii per(A(i)); the caller vouches that A is PSD."""
    a._check_index(i)
    vals = {"per_A": permanent(a), "a_ii": a.rows[i][i], "per_A_minor": permanent(delete_index(a, i))}
    vals["rhs"] = vals["a_ii"] * vals["per_A_minor"]
    return IdentityCheck("lieb", ">=", ((vals["per_A"], vals["rhs"]),), vals)


# ---------------------------------------------------------------------------
# closure certificates

@dataclass(frozen=True)
class ClosureStep:
    """One step of a decomposition.

    ``base``: start from ``piece``.  ``coalesce``: glue ``piece`` at
    ``piece_vertex`` onto vertex ``at`` of the running graph.  ``leaf``: attach
    a pendant vertex at ``at``.  ``edge_join``: bridge ``at`` to
    ``piece_vertex`` of ``piece``.
    """

    op: str
    piece: Graph | None = None
    at: int | None = None
    piece_vertex: int | None = None


def build_from_steps(steps: Sequence[ClosureStep]) -> Graph:
    if not steps or steps[0].op != "base" or steps[0].piece is None:
        raise StructuralError("decomposition must start with a 'base' step")
    g = steps[0].piece
    for st in steps[1:]:
        g = _apply(g, st)
    return g


def _apply(g: Graph, st: ClosureStep) -> Graph:
    if st.op == "coalesce":
        return gr.coalesce(g, st.at, st.piece, st.piece_vertex)[0]
    if st.op == "leaf":
        return gr.attach_leaf(g, st.at)
    if st.op == "edge_join":
        return gr.edge_join(g, st.at, st.piece, st.piece_vertex)
    raise StructuralError(f"unknown closure op {st.op!r}")


@dataclass
class StepRecord:
    op: str
    vertices: dict[str, int]
    hypotheses: list[VerificationReport]
    conclusion: VerificationReport | None = None
    extra: dict[str, object] = field(default_factory=dict)

    @property
    def hypotheses_hold(self) -> bool:
        return all(r.holds for r in self.hypotheses)


@dataclass
class ClosureCertificate:
    steps: list[StepRecord]
    final: VerificationReport | None
    failure: str | None = None

    @property
    def holds(self) -> bool:
        return self.failure is None and self.final is not None and self.final.holds


def _bundle(g: Graph, v: int, label: str) -> list[VerificationReport]:
    b = verify_hypothesis_bundle(g, v, label)
    return [b.whole, b.minor]


def certify_block_graph(g: Graph, decomposition: Sequence[ClosureStep]) -> ClosureCertificate:
    """Replay ``decomposition`` and measure every hypothesis of every gluing step.

    Stops at the first failed hypothesis.  Raises StructuralError if the steps
    do not rebuild ``g`` exactly (as a labeled graph).
    """
    rebuilt = build_from_steps(decomposition)
    if rebuilt != g:
        raise StructuralError("decomposition does not reproduce the given graph")

    records: list[StepRecord] = []
    cur = decomposition[0].piece
    base = StepRecord("base", {}, [verify_graph(cur, "base")])
    records.append(base)
    if not base.hypotheses_hold:
        return ClosureCertificate(records, None, "base piece violates the inequality")

    for k, st in enumerate(decomposition[1:], start=1):
        if st.op in ("coalesce", "leaf"):
            piece, pv = (st.piece, st.piece_vertex) if st.op == "coalesce" else (gr.path(2), 0)
            rec = StepRecord(st.op, {"at": st.at, "piece_vertex": pv},
                             _bundle(cur, st.at, "H") + _bundle(piece, pv, "P"))
            records.append(rec)
            if not rec.hypotheses_hold:
                return ClosureCertificate(records, None, f"step {k} ({st.op}): hypothesis failed")
            cur = _apply(cur, st)
            rec.conclusion = verify_graph(cur, f"step{k}")
        elif st.op == "edge_join":
            rec, cur = _edge_join_record(cur, st)
            records.append(rec)
            if rec.conclusion is None:
                return ClosureCertificate(records, None, f"step {k} (edge_join): hypothesis failed")
        else:
            raise StructuralError(f"unknown closure op {st.op!r}")

    final = verify_graph(cur, "final")
    return ClosureCertificate(records, final, None if final.holds else "final inequality fails")


def _edge_join_record(h1: Graph, st: ClosureStep) -> tuple[StepRecord, Graph]:
    """Bridge via leaf attachment, a unit diagonal bump, then coalescence at the leaf."""
    a, piece, b = st.at, st.piece, st.piece_vertex
    rec = StepRecord("edge_join", {"at": a, "piece_vertex": b}, _bundle(h1, a, "H") + _bundle(piece, b, "P"))
    if not rec.hypotheses_hold:
        return rec, h1
    with_leaf = gr.attach_leaf(h1, a)
    leaf = h1.n
    # L_{H+leaf}(leaf) is L_H with a unit bump at a, up to the order attach_leaf uses
    order = [u for u in range(h1.n) if u != a] + [a]
    bumped = add_to_diagonal(laplacian(h1), a, 1)
    rec.extra["diag_bump_matches"] = permute(bumped, order) == delete_index(laplacian(with_leaf), leaf)
    diag = chollet_check(bumped, "H+E_aa", "L_H with unit bump at the bridge vertex")
    leaf_whole = verify_graph(with_leaf, "H+leaf")
    rec.hypotheses += [leaf_whole, diag]
    if not (rec.hypotheses_hold and rec.extra["diag_bump_matches"]):
        return rec, h1
    glued, _ = gr.coalesce(with_leaf, leaf, piece, b)
    joined = gr.edge_join(h1, a, piece, b)
    rec.extra["route_matches"] = _same_up_to_labels_via_route(glued, joined, h1.n, order, b, piece.n)
    rec.conclusion = verify_graph(joined, "joined")
    return rec, joined


def _same_up_to_labels_via_route(glued: Graph, joined: Graph, n1: int, order: list[int], b: int, n2: int) -> bool:
    # glued labels: [H in `order`] + [bridge end = piece vertex b] + [piece minus b]
    mapping = order + [n1 + b] + [n1 + w for w in range(n2) if w != b]
    return glued.relabel(mapping) == joined


# ---------------------------------------------------------------------------
# exploratory probes (no theorem backs either outcome)

@dataclass(frozen=True)
class CoalescenceProbe:
    whole_1: bool
    minor_1: bool
    whole_2: bool
    minor_2: bool
    conclusion: VerificationReport

    @property
    def minor_hypothesis_failed(self) -> bool:
        return self.whole_1 and self.whole_2 and not (self.minor_1 and self.minor_2)


def probe_coalescence(g1: Graph, v1: int, g2: Graph, v2: int) -> CoalescenceProbe:
    b1 = verify_hypothesis_bundle(g1, v1, "G1")
    b2 = verify_hypothesis_bundle(g2, v2, "G2")
    g, _ = gr.coalesce(g1, v1, g2, v2)
    return CoalescenceProbe(b1.whole.holds, b1.minor.holds, b2.whole.holds, b2.minor.holds,
                            verify_graph(g, "G1.G2"))


@dataclass(frozen=True)
class DiagonalProbe:
    base: VerificationReport
    shifted: VerificationReport
    diagonal: tuple[int, ...]


def probe_diagonal_addition(a: ExactMatrix, diagonal: Sequence[int]) -> DiagonalProbe:
    if len(diagonal) != a.n:
        raise ParameterError("diagonal length must match the matrix dimension")
    shifted = a
    for i, d in enumerate(diagonal):
        if d:
            shifted = add_to_diagonal(shifted, i, d)
    return DiagonalProbe(chollet_check(a, "A"), chollet_check(shifted, "A+D"), tuple(diagonal))
