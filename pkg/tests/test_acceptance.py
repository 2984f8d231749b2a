"""Exit criteria.  Each test is tagged with its criterion number; the terminal
summary prints one PASS/FAIL line per criterion."""

import itertools
import random
import subprocess
import sys
import time

import pytest

from permlab import graphs as gr
from permlab.closed_forms import clique_form, clique_scalar_holds, cycle_series
from permlab.lab import (
    verify_coalescence_identity,
    verify_diag_multilinearity,
    verify_graph,
    verify_hadamard_coalescence_identity,
    verify_sign_property,
)
from permlab.matrix import ExactMatrix, hadamard_square, laplacian, n_identity_minus_ones
from permlab.permanent import permanent, permanent_naive, structural_zero
from permlab.search import CampaignConfig, run_campaign, z_bipartite_matrix

from oracles import random_graph_edges, random_int_rows, random_symmetric_rows

M = ExactMatrix.from_rows
acceptance = pytest.mark.acceptance


class Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


@acceptance("1", title="cycle seed values U, V, F for n = 3, 4")
def test_c01_cycle_seed_values():
    with Clock() as clk:
        s3, s4 = cycle_series(3), cycle_series(4)
    assert (s3.U, s4.U, s3.V, s4.V, s3.F, s4.F) == (14, 34, 76, 322, 64, 698)
    assert clk.seconds < 1


@acceptance("2", title="Ryser equals the permutation-sum oracle on 500 random matrices")
def test_c02_engine_vs_oracle():
    rng = random.Random(20260201)
    with Clock() as clk:
        mismatches = 0
        for _ in range(500):
            a = M(random_int_rows(rng, rng.randint(1, 9), -5, 5))
            mismatches += permanent(a) != permanent_naive(a)
    assert mismatches == 0
    assert clk.seconds < 30


def _bouquets(max_n):
    out = []
    for k in range(1, max_n):
        for lengths in itertools.combinations_with_replacement(range(3, max_n + 1), k):
            if 1 + sum(c - 1 for c in lengths) <= max_n:
                out.append(gr.bouquet_of_cycles(list(lengths)))
    return out


def _covered_graphs():
    yield from (gr.complete_bipartite(a, b) for a in range(1, 10) for b in range(1, 11 - a))
    yield from (gr.cycle(n) for n in range(3, 16))
    yield from (gr.complete(n) for n in range(1, 11))
    yield from (gr.friendship(k) for k in range(1, 6))
    yield from (gr.windmill(c, k) for c in range(2, 12) for k in range(1, 12) if 1 + k * (c - 1) <= 12)
    yield from _bouquets(12)


@acceptance("3", title="zero violations on covered families and seeded campaigns")
def test_c03_covered_families():
    with Clock() as clk:
        fixed = [verify_graph(g) for g in _covered_graphs()]
        campaigns = [
            run_campaign(CampaignConfig("tree", 1, 9, 200, seed=1)),
            run_campaign(CampaignConfig("unicyclic", 3, 12, 200, seed=2)),
            run_campaign(CampaignConfig("block", 2, 12, 100, seed=3)),
        ]
        # evidence only: general PSD matrices are not covered by a proof
        gram = run_campaign(CampaignConfig("gram", 1, 7, 200, seed=4))
    assert len(fixed) > 100
    assert [r.instance_id for r in fixed if not r.holds] == []
    for rep in campaigns:
        assert rep.violations == [] and rep.skipped == []
        assert len(rep.measured) == rep.config.trials
    assert gram.violations == [] and len(gram.measured) == 200
    assert clk.seconds < 300


@acceptance("4", title="odd-cycle gap is at least 2 and equals F_n + 2")
def test_c04_odd_cycle_gap():
    with Clock() as clk:
        for n in range(3, 16, 2):
            lap = laplacian(gr.cycle(n))
            gap = permanent(lap) ** 2 - permanent(hadamard_square(lap))
            assert gap >= 2
            assert gap == cycle_series(n).F + 2
    assert clk.seconds < 60


@acceptance("5", title="both coalescence decompositions on 200 random pairs")
def test_c05_coalescence_identities():
    rng = random.Random(20260205)
    mismatches = 0
    with Clock() as clk:
        for _ in range(200):
            n1, n2 = rng.randint(1, 7), rng.randint(1, 7)
            g1 = gr.Graph(n1, tuple(random_graph_edges(rng, n1)))
            g2 = gr.Graph(n2, tuple(random_graph_edges(rng, n2)))
            v1, v2 = rng.randrange(n1), rng.randrange(n2)
            mismatches += not verify_coalescence_identity(g1, v1, g2, v2).holds
            mismatches += not verify_hadamard_coalescence_identity(g1, v1, g2, v2).holds
    assert mismatches == 0
    assert clk.seconds < 120


@acceptance("6", title="diagonal bump identities on 200 random symmetric matrices")
def test_c06_diag_multilinearity():
    rng = random.Random(20260206)
    with Clock() as clk:
        failures = 0
        for _ in range(200):
            n = rng.randint(1, 8)
            a = M(random_symmetric_rows(rng, n, -5, 5))
            failures += not verify_diag_multilinearity(a, rng.randrange(n), rng.randint(0, 5)).holds
    assert failures == 0
    assert clk.seconds < 60


@acceptance("7", title="per(A) == per(|A|) on 1000 bipartite-support Z-matrices")
def test_c07_sign_property():
    rng = random.Random(20260207)
    with Clock() as clk:
        failures = 0
        for _ in range(1000):
            a = z_bipartite_matrix(rng.randint(1, 9), rng, diag_max=9, offdiag_min=-5)
            failures += not verify_sign_property(a).holds
    assert failures == 0
    assert clk.seconds < 120


@acceptance("8", title="clique closed forms match Ryser; scalar inequality for n <= 200")
def test_c08_clique_forms():
    with Clock() as clk:
        for n in range(2, 11):
            for s in (n - 1, n):
                m = n_identity_minus_ones(n, s)
                c = clique_form(n, s)
                assert (c.per_M, c.per_MM) == (permanent(m), permanent(hadamard_square(m))), (n, s)
        for n in range(2, 201):
            for m in (n - 1, n):
                assert clique_scalar_holds(n, m).holds, (n, m)
    assert clk.seconds < 30


@acceptance("9", title="structural-zero witnesses are sound on 500 sparse matrices")
def test_c09_structural_zero():
    rng = random.Random(20260209)
    witnesses = 0
    with Clock() as clk:
        for _ in range(500):
            n = rng.randint(1, 8)
            a = M([[rng.randint(-5, 5) if rng.random() < 0.3 else 0 for _ in range(n)] for _ in range(n)])
            w = structural_zero(a)
            if w is None:
                continue
            witnesses += 1
            assert len(w.rows) + len(w.cols) > n
            assert all(a[i, j] == 0 for i in w.rows for j in w.cols)
            assert permanent(a) == 0
    assert witnesses >= 100  # the sample must actually exercise the witness path
    assert clk.seconds < 30


@acceptance("10", title="dense 20x20 permanent under 5 s; identical across job counts")
def test_c10_performance(tmp_path):
    rng = random.Random(20260210)
    a = M([[rng.choice([-9, -7, -3, -1, 1, 2, 5, 8]) for _ in range(20)] for _ in range(20)])
    with Clock() as clk:
        base = permanent(a, jobs=1)
    assert clk.seconds < 5, f"single-threaded 20x20 took {clk.seconds:.2f}s"
    assert permanent(a, jobs=2) == base
    assert permanent(a, jobs=4) == base

    # the same through the command line
    f = tmp_path / "a.txt"
    f.write_text("20\n" + "\n".join(" ".join(map(str, r)) for r in a.rows) + "\n")
    outs = [subprocess.run([sys.executable, "-m", "permlab", "verify", "--matrix", str(f), "--jobs", j],
                           capture_output=True, check=False).stdout for j in ("1", "4")]
    assert outs[0] == outs[1] and str(base).encode() in outs[0]


@acceptance("11", title="search output is byte-identical across runs and job counts")
def test_c11_determinism():
    argv = [sys.executable, "-m", "permlab", "search", "--gen", "er", "--n", "3..9",
            "--trials", "60", "--seed", "424242", "--details"]
    runs = [subprocess.run(argv + extra, capture_output=True, check=False)
            for extra in ([], [], ["--jobs", "3"])]
    assert all(r.returncode == 0 for r in runs)
    assert runs[0].stdout == runs[1].stdout == runs[2].stdout
    assert b'"instances_run": 60' in runs[0].stdout
