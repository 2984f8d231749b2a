import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from permlab import graphs as gr
from permlab.errors import ParameterError, ParseError
from permlab.matrix import (
    ExactMatrix,
    add_to_diagonal,
    delete_index,
    entrywise_abs,
    from_text,
    hadamard,
    hadamard_square,
    laplacian,
    ones,
    principal_submatrix,
    to_text,
    z_profile,
    zeros,
)

from oracles import random_graph_edges, random_int_rows

M = ExactMatrix.from_rows


@st.composite
def matrices(draw, max_n=6, lo=-5, hi=5):
    n = draw(st.integers(1, max_n))
    return M([[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(n)])


def test_rejects_non_square():
    with pytest.raises(ParameterError):
        M([[1, 2], [3]])


def test_empty_matrix_allowed():
    assert ExactMatrix(()).n == 0


class TestLaplacian:
    def test_k2(self):
        assert laplacian(gr.complete(2)) == M([[1, -1], [-1, 1]])

    def test_k3(self):
        assert laplacian(gr.complete(3)) == M([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])

    def test_c4(self):
        assert laplacian(gr.cycle(4)) == M([[2, -1, 0, -1], [-1, 2, -1, 0], [0, -1, 2, -1], [-1, 0, -1, 2]])

    def test_row_sums_zero_and_symmetric(self):
        rng = random.Random(3)
        for _ in range(50):
            n = rng.randint(1, 10)
            lap = laplacian(gr.Graph(n, tuple(random_graph_edges(rng, n))))
            assert lap.is_symmetric()
            assert all(sum(r) == 0 for r in lap.rows)

    def test_vertex_deletion_identity(self):
        # L_{G-v} = L_G(v) minus 1 on the diagonal of each neighbor of v
        rng = random.Random(4)
        for _ in range(100):
            n = rng.randint(2, 10)
            g = gr.Graph(n, tuple(random_graph_edges(rng, n)))
            v = rng.randrange(n)
            minor = delete_index(laplacian(g), v).tolist()
            for u in g.neighbors(v):
                minor[u - (u > v)][u - (u > v)] -= 1
            assert laplacian(gr.delete_vertex(g, v)) == M(minor)


class TestHadamard:
    def test_examples(self):
        l2 = laplacian(gr.complete(2))
        assert hadamard(l2, l2) == ones(2)
        a = M([[3, -1], [0, 7]])
        assert hadamard(a, ones(2)) == a
        h = hadamard_square(laplacian(gr.cycle(3)))
        assert h == M([[4, 1, 1], [1, 4, 1], [1, 1, 4]])

    def test_mismatch(self):
        with pytest.raises(ParameterError):
            hadamard(ones(2), ones(3))

    def test_commutative_associative(self):
        rng = random.Random(5)
        for _ in range(50):
            n = rng.randint(1, 7)
            a, b, c = (M(random_int_rows(rng, n, -9, 9)) for _ in range(3))
            assert hadamard(a, b) == hadamard(b, a)
            assert hadamard(hadamard(a, b), c) == hadamard(a, hadamard(b, c))


class TestPrincipalSubmatrix:
    def test_delete_zero_of_k3(self):
        assert delete_index(laplacian(gr.complete(3)), 0) == M([[2, -1], [-1, 2]])

    def test_full_keep_is_identity(self):
        a = M([[1, 2], [3, 4]])
        assert principal_submatrix(a, range(2)) == a

    def test_commutes_with_hadamard_c4(self):
        lap = laplacian(gr.cycle(4))
        assert delete_index(hadamard_square(lap), 0) == hadamard_square(delete_index(lap, 0))

    @given(matrices(), st.data())
    def test_commutes_with_hadamard(self, a, data):
        keep = data.draw(st.sets(st.integers(0, a.n - 1)))
        assert principal_submatrix(hadamard_square(a), keep) == hadamard_square(principal_submatrix(a, keep))

    def test_out_of_range(self):
        with pytest.raises(ParameterError):
            principal_submatrix(ones(2), [0, 2])


class TestAddToDiagonal:
    def test_examples(self):
        assert add_to_diagonal(laplacian(gr.complete(2)), 0, 1) == M([[2, -1], [-1, 1]])
        a = M([[1, 2], [3, 4]])
        assert add_to_diagonal(a, 1, 0) == a
        assert add_to_diagonal(zeros(1), 0, 5) == M([[5]])

    def test_errors(self):
        with pytest.raises(ParameterError):
            add_to_diagonal(ones(2), 2, 1)
        with pytest.raises(ParameterError):
            add_to_diagonal(ones(2), 0, -1)

    @given(matrices(), st.data())
    def test_only_one_entry_changes(self, a, data):
        i = data.draw(st.integers(0, a.n - 1))
        alpha = data.draw(st.integers(0, 20))
        b = add_to_diagonal(a, i, alpha)
        for r in range(a.n):
            for c in range(a.n):
                assert b[r, c] == a[r, c] + (alpha if r == c == i else 0)


def test_entrywise_abs():
    assert entrywise_abs(laplacian(gr.complete(2))) == ones(2)
    assert entrywise_abs(M([[0, 3], [1, 2]])) == M([[0, 3], [1, 2]])
    assert entrywise_abs(laplacian(gr.path(3))) == M([[1, 1, 0], [1, 2, 1], [0, 1, 1]])


class TestZProfile:
    def test_c5(self):
        p = z_profile(laplacian(gr.cycle(5)))
        assert p.is_symmetric and p.diag_nonneg and p.offdiag_nonpos
        assert p.support == gr.cycle(5)
        assert not p.in_bipartite_z_class

    def test_positive_offdiag(self):
        assert not z_profile(M([[1, 2], [2, 1]])).offdiag_nonpos

    def test_support_of_laplacian_is_graph(self):
        rng = random.Random(6)
        for _ in range(50):
            n = rng.randint(1, 9)
            g = gr.Graph(n, tuple(random_graph_edges(rng, n)))
            assert z_profile(laplacian(g)).support == g


class TestText:
    @given(matrices(max_n=5, lo=-10 ** 30, hi=10 ** 30))
    def test_round_trip(self, a):
        assert from_text(to_text(a)) == a

    def test_zero_dim(self):
        assert from_text("0\n").n == 0

    @pytest.mark.parametrize("text", ["", "2\n1 2\n", "2\n1 2\n3\n", "x\n", "1\nq\n"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            from_text(text)
