from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from treeconn.connectivity import (
    Fan,
    PathSystem,
    disjoint_paths,
    fan,
    kappa3_range_from_kappa,
    kappa3_upper_adjacent_min_degree,
    local_connectivity,
    max_disjoint_paths,
    vertex_connectivity,
)
from treeconn.graphs import (
    Graph,
    cartesian_product,
    complete,
    complete_bipartite,
    cycle,
    path,
)


# -- independent oracle: smallest vertex cut by exhaustive enumeration -----


def cut_oracle_local(g: Graph, u: int, v: int) -> int:
    """min |C|, C a u-v separator avoiding both ends (Menger: = #paths)."""
    assert not g.has_edge(u, v)
    others = [x for x in range(g.n) if x not in (u, v)]
    for size in range(len(others) + 1):
        for cut in combinations(others, size):
            if not _reachable(g, u, v, set(cut)):
                return size
    raise AssertionError("u and v must be separated by removing all others")


def cut_oracle_global(g: Graph) -> int:
    if not g.is_connected():
        return 0
    if g.is_complete():
        return g.n - 1
    return min(
        cut_oracle_local(g, a, b)
        for a in range(g.n)
        for b in range(a + 1, g.n)
        if not g.has_edge(a, b)
    )


def _reachable(g: Graph, u: int, v: int, removed: set) -> bool:
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y == v:
                return True
            if y not in removed and y not in seen:
                seen.add(y)
                stack.append(y)
    return False


SMALL_GRAPHS = [
    path(2),
    path(5),
    cycle(4),
    cycle(7),
    complete(5),
    complete_bipartite(2, 3),
    complete_bipartite(3, 3),
    cartesian_product(path(3), path(3)),
    cartesian_product(cycle(3), path(2)),
    Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]),
    Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]),  # bridge
]


@pytest.mark.parametrize("g", SMALL_GRAPHS, ids=lambda g: f"n{g.n}m{g.m}")
def test_vertex_connectivity_matches_cut_oracle(g):
    assert vertex_connectivity(g) == cut_oracle_global(g)


@pytest.mark.parametrize("g", SMALL_GRAPHS, ids=lambda g: f"n{g.n}m{g.m}")
def test_local_connectivity_matches_cut_oracle(g):
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v):
                assert local_connectivity(g, u, v) == cut_oracle_local(g, u, v)


def test_known_connectivities():
    assert vertex_connectivity(complete(6)) == 5
    assert vertex_connectivity(cycle(9)) == 2
    assert vertex_connectivity(complete_bipartite(2, 5)) == 2
    assert vertex_connectivity(path(4)) == 1
    assert vertex_connectivity(Graph(4, [(0, 1), (2, 3)])) == 0


def test_path_systems_check_and_count():
    g = complete_bipartite(3, 3)
    sys_ = disjoint_paths(g, 0, 1, 3)
    assert sys_ is not None and len(sys_.paths) == 3
    assert sys_.check(g) is None
    assert disjoint_paths(g, 0, 1, 4) is None


def test_max_disjoint_paths_avoid():
    g = cycle(6)
    assert len(max_disjoint_paths(g, 0, 3)) == 2
    assert len(max_disjoint_paths(g, 0, 3, avoid=frozenset({1}))) == 1


def test_disjoint_paths_deterministic():
    g = complete(5)
    a = disjoint_paths(g, 0, 4, 4)
    b = disjoint_paths(g, 0, 4, 4)
    assert a == b


def test_fan_basic():
    g = complete(5)
    f = fan(g, 0, [1, 2, 3], 3)
    assert f is not None
    assert f.check(g) is None
    assert sorted(p[-1] for p in f.paths) == [1, 2, 3]


def test_fan_respects_avoid():
    g = cycle(6)
    # 0 reaches {2, 4} two ways normally; removing 1 kills one side
    assert fan(g, 0, [2, 4], 2) is not None
    assert fan(g, 0, [2, 4], 2, avoid=frozenset({5})) is None
    f = fan(g, 0, [2, 4], 1, avoid=frozenset({5}))
    assert f is not None and 5 not in {v for p in f.paths for v in p}


def test_fan_input_validation():
    g = complete(4)
    with pytest.raises(ValueError):
        fan(g, 0, [0, 1], 2)
    with pytest.raises(ValueError):
        fan(g, 0, [1, 2], 2, avoid=frozenset({1}))


def test_fan_targets_not_passed_through():
    # fan paths may end at a target but never cross one
    g = cartesian_product(path(3), path(3))
    f = fan(g, 4, [0, 2, 6, 8], 4)
    assert f is not None
    for p in f.paths:
        assert all(x not in (0, 2, 6, 8) for x in p[1:-1])


def test_checkers_catch_violations():
    g = cycle(4)
    bad = PathSystem(0, 2, ((0, 1, 2), (0, 1, 2)))
    assert bad.check(g) is not None
    bad_fan = Fan(0, (2,), ((0, 3, 2, 1),))
    assert bad_fan.check(g) is not None


def test_kappa3_upper_adjacent_min_degree():
    assert kappa3_upper_adjacent_min_degree(complete(4)) == 2
    assert kappa3_upper_adjacent_min_degree(cycle(5)) == 1
    # star: the two leaves are nonadjacent
    assert kappa3_upper_adjacent_min_degree(complete_bipartite(1, 2)) is None
    with pytest.raises(ValueError):
        kappa3_upper_adjacent_min_degree(path(2))


@pytest.mark.parametrize(
    "kappa,expected",
    [(0, (0, 0)), (1, (1, 1)), (2, (1, 2)), (3, (2, 3)), (4, (3, 4)),
     (5, (4, 5)), (6, (4, 6)), (8, (6, 8))],
)
def test_kappa3_range_table(kappa, expected):
    assert kappa3_range_from_kappa(kappa) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=4, max_value=7), st.data())
def test_random_graph_connectivity_property(n, data):
    edges = [
        (a, b)
        for a in range(n)
        for b in range(a + 1, n)
        if data.draw(st.booleans())
    ]
    g = Graph(n, edges)
    assert vertex_connectivity(g) == cut_oracle_global(g)
