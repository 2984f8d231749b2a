"""Seeded random instances and violation-hunting campaigns.

Instance ``i`` of a campaign is a pure function of ``(seed, generator, i)``:
each index gets its own ``random.Random`` keyed by a SHA-256 digest, so
instances can be regenerated individually and trials can run in any order
or in parallel without changing the report.
"""

from __future__ import annotations

import hashlib
import heapq
import random
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Any

from . import graphs as gr
from .errors import ParameterError, ParseError, SizeLimitError
from .graphs import Graph
from .lab import (
    ClosureStep,
    VerificationReport,
    build_from_steps,
    chollet_check,
    verify_graph,
    verify_sign_property,
)
from .matrix import ExactMatrix, gram, z_profile
from .permanent import max_n
from .reports import report_to_dict

GENERATORS = (
    "erdos_renyi",
    "random_tree",
    "random_unicyclic",
    "random_block_graph",
    "z_bipartite_matrix",
    "integer_gram_psd",
)

# short names accepted on the command line
ALIASES = {
    "er": "erdos_renyi",
    "erdos-renyi": "erdos_renyi",
    "tree": "random_tree",
    "unicyclic": "random_unicyclic",
    "block": "random_block_graph",
    "z-bipartite": "z_bipartite_matrix",
    "gram": "integer_gram_psd",
}

# classes where a zero-violation outcome is backed by a proof; the rest is evidence only
THEOREM_BACKED = {"random_tree", "random_unicyclic", "random_block_graph", "z_bipartite_matrix"}


def canonical_generator(name: str) -> str:
    key = name.strip().lower()
    key = ALIASES.get(key, key.replace("-", "_"))
    if key not in GENERATORS:
        raise ParameterError(f"unknown generator {name!r}; choose from {', '.join(GENERATORS)}")
    return key


@dataclass(frozen=True)
class CampaignConfig:
    generator: str
    n_min: int
    n_max: int
    trials: int
    seed: int = 0
    edge_percent: int = 50
    diag_max: int = 9
    offdiag_min: int = -5
    gram_cols: int = 0  # 0 means "same as n"
    gram_entry_max: int = 3
    max_clique: int = 4

    def __post_init__(self) -> None:
        object.__setattr__(self, "generator", canonical_generator(self.generator))
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if not 1 <= self.n_min <= self.n_max:
            raise ParameterError(f"bad size range {self.n_min}..{self.n_max}")
        if not 0 <= self.seed < 2 ** 64:
            raise ParameterError("seed must be a 64-bit unsigned integer")
        if self.generator == "random_unicyclic" and self.n_min < 3:
            raise ParameterError("unicyclic graphs need n >= 3")
        if not 0 <= self.edge_percent <= 100:
            raise ParameterError("edge_percent must be in 0..100")
        if self.diag_max < 0 or self.offdiag_min > 0 or self.gram_entry_max < 0 or self.gram_cols < 0:
            raise ParameterError("value ranges must satisfy diag_max >= 0, offdiag_min <= 0, gram ranges >= 0")
        if self.max_clique < 2:
            raise ParameterError("max_clique must be >= 2")

    @property
    def exploratory(self) -> bool:
        return self.generator not in THEOREM_BACKED


def load_config(text: str) -> CampaignConfig:
    """Parse ``key = value`` lines (``#`` comments allowed)."""
    known = {f.name: f.type for f in fields(CampaignConfig)}
    values: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", lineno, "line")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "n":
            lo, hi = parse_range(val)
            values["n_min"], values["n_max"] = lo, hi
            continue
        if key not in known:
            raise ParseError(f"unknown config key {key!r}", lineno, "line")
        if key == "generator":
            values[key] = val
        else:
            try:
                values[key] = int(val, 0)
            except ValueError:
                raise ParseError(f"{key} must be an integer", lineno, "line") from None
    for req in ("generator", "n_min", "n_max", "trials"):
        if req not in values:
            raise ParseError(f"missing required key {req!r}", None)
    return CampaignConfig(**values)


def parse_range(text: str) -> tuple[int, int]:
    """``7`` or ``3..9`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        v = int(text)
        return v, v
    except ValueError:
        raise ParameterError(f"bad range {text!r}; use N or A..B") from None


# ---------------------------------------------------------------------------
# instances

@dataclass
class Instance:
    index: int
    kind: str  # "graph" or "matrix"
    graph: Graph | None = None
    matrix: ExactMatrix | None = None
    steps: list[ClosureStep] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.graph.n if self.graph is not None else self.matrix.n

    def describe(self) -> dict[str, Any]:
        if self.graph is not None:
            return {"kind": "graph", "n": self.graph.n, "graph6": gr.to_graph6(self.graph),
                    "edges": [list(e) for e in self.graph.edges]}
        return {"kind": "matrix", "n": self.matrix.n, "rows": [[str(x) for x in r] for r in self.matrix.rows]}


def _rng(config: CampaignConfig, index: int) -> random.Random:
    digest = hashlib.sha256(f"{config.generator}:{config.seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labeled tree decoded from a random Pruefer sequence."""
    if n <= 2:
        return gr.path(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph(n, tuple(edges))


def random_unicyclic(n: int, rng: random.Random) -> Graph:
    """A random cycle with random trees hanging off it, randomly relabeled."""
    c = rng.randint(3, n)
    edges = [(i, (i + 1) % c) for i in range(c)]
    for v in range(c, n):
        edges.append((rng.randrange(v), v))
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, tuple(edges)).relabel(perm)


def random_block_graph(n: int, rng: random.Random, max_clique: int = 4) -> tuple[Graph, list[ClosureStep]]:
    """Cliques glued at cut vertices, with the gluing recipe."""
    first = rng.randint(min(2, n), min(max_clique, n))
    steps = [ClosureStep("base", gr.complete(first))]
    size = first
    while size < n:
        s = rng.randint(2, min(max_clique, n - size + 1))
        steps.append(ClosureStep("coalesce", gr.complete(s), rng.randrange(size), rng.randrange(s)))
        size += s - 1
    return build_from_steps(steps), steps


def erdos_renyi(n: int, percent: int, rng: random.Random) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n) if rng.randrange(100) < percent))


def z_bipartite_matrix(n: int, rng: random.Random, diag_max: int, offdiag_min: int) -> ExactMatrix:
    """Symmetric, diagonal in [0, diag_max], nonpositive entries only across a random bipartition."""
    side = [rng.randrange(2) for _ in range(n)]
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = rng.randint(0, diag_max)
        for j in range(i + 1, n):
            if side[i] != side[j]:
                rows[i][j] = rows[j][i] = rng.randint(offdiag_min, 0)
    return ExactMatrix.from_rows(rows)


def integer_gram(n: int, k: int, bound: int, rng: random.Random) -> ExactMatrix:
    b = [[rng.randint(-bound, bound) for _ in range(k)] for _ in range(n)]
    return gram(b)


def generate(config: CampaignConfig, index: int) -> Instance:
    if not 0 <= index < config.trials:
        raise ParameterError(f"index {index} outside 0..{config.trials - 1}")
    rng = _rng(config, index)
    n = rng.randint(config.n_min, config.n_max)
    gen = config.generator
    if gen == "erdos_renyi":
        inst = Instance(index, "graph", graph=erdos_renyi(n, config.edge_percent, rng))
    elif gen == "random_tree":
        inst = Instance(index, "graph", graph=random_tree(n, rng))
    elif gen == "random_unicyclic":
        inst = Instance(index, "graph", graph=random_unicyclic(n, rng))
    elif gen == "random_block_graph":
        g, steps = random_block_graph(n, rng, config.max_clique)
        inst = Instance(index, "graph", graph=g, steps=steps)
    elif gen == "z_bipartite_matrix":
        inst = Instance(index, "matrix", matrix=z_bipartite_matrix(n, rng, config.diag_max, config.offdiag_min))
    else:
        k = config.gram_cols or n
        inst = Instance(index, "matrix", matrix=integer_gram(n, k, config.gram_entry_max, rng))
    self_check(config, inst)
    return inst


def self_check(config: CampaignConfig, inst: Instance) -> None:
    """Class invariants every generated instance must satisfy before it is measured."""
    gen = config.generator
    g = inst.graph
    ok = True
    if gen == "random_tree":
        ok = g.m == max(g.n - 1, 0) and gr.is_connected(g)
    elif gen == "random_unicyclic":
        ok = g.m == g.n and gr.is_connected(g)
    elif gen == "random_block_graph":
        ok = build_from_steps(inst.steps) == g and gr.is_connected(g)
    elif gen == "z_bipartite_matrix":
        ok = z_profile(inst.matrix).in_bipartite_z_class
    elif gen == "integer_gram_psd":
        a = inst.matrix
        ok = a.is_symmetric() and all(a.rows[i][i] >= 0 for i in range(a.n))
    if not ok:
        raise AssertionError(f"generator {gen} produced an instance outside its class (index {inst.index})")


# ---------------------------------------------------------------------------
# campaigns

@dataclass
class TrialResult:
    index: int
    status: str  # "pass", "violation", "skipped"
    report: VerificationReport | None
    instance: Instance
    sign_ok: bool | None = None
    note: str = ""


def run_trial(config: CampaignConfig, index: int) -> TrialResult:
    inst = generate(config, index)
    iid = f"{config.generator}#{index}"
    if inst.n > max_n():
        return TrialResult(index, "skipped", None, inst, note=f"n={inst.n} exceeds engine cap {max_n()}")
    try:
        if inst.kind == "graph":
            rep = verify_graph(inst.graph, iid, f"{config.generator} seed={config.seed} index={index}")
            sign_ok = None
        else:
            rep = chollet_check(inst.matrix, iid, f"{config.generator} seed={config.seed} index={index}")
            sign_ok = verify_sign_property(inst.matrix).holds if config.generator == "z_bipartite_matrix" else None
    except SizeLimitError as exc:
        return TrialResult(index, "skipped", None, inst, note=str(exc))
    bad = not rep.holds or sign_ok is False
    return TrialResult(index, "violation" if bad else "pass", rep, inst, sign_ok)


def _run_span(config: CampaignConfig, start: int, stop: int) -> list[TrialResult]:
    return [run_trial(config, i) for i in range(start, stop)]


@dataclass
class CampaignReport:
    config: CampaignConfig
    results: list[TrialResult]
    elapsed: float = 0.0

    @property
    def violations(self) -> list[TrialResult]:
        return [r for r in self.results if r.status == "violation"]

    @property
    def skipped(self) -> list[TrialResult]:
        return [r for r in self.results if r.status == "skipped"]

    @property
    def measured(self) -> list[TrialResult]:
        return [r for r in self.results if r.report is not None]

    def gap_stats(self) -> tuple[int | None, int | None]:
        gaps = sorted(r.report.gap for r in self.measured)
        if not gaps:
            return None, None
        return gaps[0], statistics.median_low(gaps)

    def to_dict(self, details: bool = False, timing: bool = False) -> dict[str, Any]:
        lo, med = self.gap_stats()
        out: dict[str, Any] = {
            "config": asdict(self.config),
            "exploratory": self.config.exploratory,
            "instances_run": len(self.measured),
            "skipped": len(self.skipped),
            "violation_count": len(self.violations),
            "min_gap": None if lo is None else str(lo),
            "median_gap": None if med is None else str(med),
            "violations": [
                {"index": r.index, "instance": r.instance.describe(),
                 "report": report_to_dict(r.report, timing), "sign_property_ok": r.sign_ok}
                for r in self.violations
            ],
        }
        if self.skipped:
            out["skipped_instances"] = [{"index": r.index, "n": r.instance.n, "note": r.note} for r in self.skipped]
        if details:
            out["instances"] = [
                {"index": r.index, "status": r.status,
                 **({"report": report_to_dict(r.report, timing)} if r.report else {}),
                 **({"sign_property_ok": r.sign_ok} if r.sign_ok is not None else {})}
                for r in self.results
            ]
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def run_campaign(config: CampaignConfig, jobs: int = 1) -> CampaignReport:
    """Measure every instance; results are ordered by index whatever ``jobs`` is."""
    t0 = time.perf_counter()
    if jobs <= 1 or config.trials < 2:
        results = _run_span(config, 0, config.trials)
    else:
        parts = min(config.trials, jobs * 4)
        bounds = [config.trials * p // parts for p in range(parts + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_span, config, bounds[p], bounds[p + 1])
                       for p in range(parts) if bounds[p] < bounds[p + 1]]
            results = [r for f in futures for r in f.result()]
    results.sort(key=lambda r: r.index)
    return CampaignReport(config, results, time.perf_counter() - t0)
