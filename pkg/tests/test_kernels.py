import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from girthlab import _kernels_py, kernels
from girthlab.dseries import Family, build_bipartite
from girthlab.graphcore import Graph

compiled = pytest.importorskip("girthlab._kernels")


@st.composite
def csr_graphs(draw):
    n = draw(st.integers(2, 12))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=1, max_size=len(pairs)))
    return Graph.from_edges((n,), chosen)


def test_backend_selected():
    assert kernels.BACKEND in ("compiled", "python")


@settings(max_examples=80, deadline=None)
@given(csr_graphs(), st.integers(3, 9))
def test_backends_agree_on_random_graphs(g, L):
    a = (g.indptr, g.indices)
    assert compiled.girth(*a, g.n, False) == _kernels_py.girth(*a, g.n, False)
    assert np.array_equal(compiled.bfs_dist(*a, 0), _kernels_py.bfs_dist(*a, 0))
    assert compiled.diameter(*a)[0] == _kernels_py.diameter(*a)[0]
    assert compiled.cycles_of_length(*a, L, False)[0] == _kernels_py.cycles_of_length(*a, L, False)[0]
    u, v = map(int, g.edge_array()[0])
    assert compiled.count_paths(*a, u, v, L - 1) == _kernels_py.count_paths(*a, u, v, L - 1)
    assert compiled.min_cycle_through_edge(*a, u, v, 12) == _kernels_py.min_cycle_through_edge(*a, u, v, 12)


@pytest.mark.parametrize("family", list(Family))
def test_backends_agree_on_d_graphs(family):
    g = build_bipartite(family, 4, 3)
    a = (g.indptr, g.indices)
    u, v = 0, g.part_offset(1)
    assert compiled.girth(*a, g.n, True) == _kernels_py.girth(*a, g.n, True)
    assert compiled.diameter(*a)[0] == _kernels_py.diameter(*a)[0]
    for length in (7, 9):
        assert compiled.count_paths(*a, u, v, length) == _kernels_py.count_paths(*a, u, v, length)
