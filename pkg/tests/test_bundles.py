from itertools import combinations

import pytest

from treeconn.bundles import (
    OriginalPathBundle,
    ReducedPathBundle,
    find_cycle_through_edges,
    find_reduced_bundle,
    verify_original_bundle,
    verify_reduced_bundle,
)
from treeconn.errors import Budget, BudgetExhausted
from treeconn.graphs import (
    Graph,
    cartesian_product,
    complete,
    complete_bipartite,
    cycle,
    path,
)


def test_verify_original_accepts_hand_built():
    g = complete(5)
    b = OriginalPathBundle(0, 1, 2, 1, ((0, 2, 1), (0, 3, 1), (0, 4, 1)))
    assert verify_original_bundle(g, b) is None


def test_verify_original_rejects_violations():
    g = complete(5)
    # through path misses u3
    b = OriginalPathBundle(0, 1, 2, 1, ((0, 3, 1), (0, 4, 1)))
    assert verify_original_bundle(g, b) is not None
    # u3 internal to a non-designated path
    b = OriginalPathBundle(0, 1, 2, 0, ((0, 2, 1), (0, 3, 1)))
    assert verify_original_bundle(g, b) == "u3 on non-designated path"
    # shared internal vertex
    b = OriginalPathBundle(0, 1, 2, 0, ((0, 3, 1), (0, 3, 4, 1)))
    assert "shared" in verify_original_bundle(g, b)
    # wrong endpoints
    b = OriginalPathBundle(0, 1, 2, 0, ((0, 3, 4),))
    assert verify_original_bundle(g, b) is not None


def test_verify_reduced_alignment():
    g = complete(6)
    base = OriginalPathBundle(0, 1, 2, 0, ((0, 3, 1), (0, 4, 1)))
    good = ReducedPathBundle(base, ((2, 3), (2, 4)))
    assert verify_reduced_bundle(g, good) is None
    # connector 1 lands on free path 2 -> misaligned
    bad = ReducedPathBundle(base, ((2, 4), (2, 3)))
    assert "misaligned" in verify_reduced_bundle(g, bad)
    # wrong connector count
    short = ReducedPathBundle(base, ((2, 3),))
    assert "connectors" in verify_reduced_bundle(g, short)


def test_find_reduced_bundle_smallest_t_first():
    # only 3 paths 0-1 avoid vertex 2 in K5, so t=0 fails and t=1 is minimal
    g = complete(5)
    rb = find_reduced_bundle(g, 4, 0, 1, 2)
    assert rb is not None
    assert rb.base.t == 1
    assert rb.base.s == 4
    assert len(rb.connectors) == 2


def test_find_reduced_bundle_forced_t():
    g = complete(6)
    for t in (0, 1, 2):
        rb = find_reduced_bundle(g, 4, 0, 1, 2, t=t)
        assert rb is not None and rb.base.t == t
        assert len(rb.connectors) == 4 - 2 * t
        assert verify_reduced_bundle(g, rb) is None


def test_find_reduced_bundle_cycle():
    # C6: exactly 2 disjoint u1-u2 paths, u3 on one of them -> (2,1)-bundle
    g = cycle(6)
    rb = find_reduced_bundle(g, 2, 0, 3, 1)
    assert rb is not None
    assert rb.base.t == 1 and len(rb.connectors) == 0


def test_find_reduced_bundle_infeasible():
    g = path(4)
    assert find_reduced_bundle(g, 2, 0, 3, 1) is None


def test_find_reduced_bundle_deterministic():
    g = complete_bipartite(3, 4)
    a = find_reduced_bundle(g, 3, 3, 4, 5)
    b = find_reduced_bundle(g, 3, 3, 4, 5)
    assert a == b


def test_budget_exhaustion_raises():
    g = complete(7)
    with pytest.raises(BudgetExhausted):
        find_reduced_bundle(g, 6, 0, 1, 2, budget=Budget(10))


# -- cycle through three independent edges ---------------------------------


def _component_count(g: Graph, removed: set) -> int:
    seen: set[int] = set()
    comps = 0
    for v in range(g.n):
        if v in seen:
            continue
        comps += 1
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return comps  # caller passes g with edges already removed


def _edges_removed(g: Graph, triple) -> Graph:
    drop = {tuple(sorted(e)) for e in triple}
    return Graph(g.n, [e for e in g.edges if e not in drop])


def _is_edge_cut(g: Graph, triple) -> bool:
    return not _edges_removed(g, triple).is_connected()


def _independent_triples(g: Graph):
    for triple in combinations(g.sorted_edges(), 3):
        ends = [v for e in triple for v in e]
        if len(set(ends)) == 6:
            yield triple


@pytest.mark.parametrize(
    "g",
    [
        cartesian_product(cycle(3), path(2)),  # triangular prism, 3-connected
        cartesian_product(path(2), cartesian_product(path(2), path(2))),  # Q3
        complete_bipartite(3, 3),
    ],
    ids=["prism", "cube", "k33"],
)
def test_cycle_exists_iff_not_edge_cut(g):
    for triple in _independent_triples(g):
        cyc = find_cycle_through_edges(g, *triple)
        if _is_edge_cut(g, triple):
            assert cyc is None
        else:
            assert cyc is not None
            # the cycle really is a cycle containing the three edges
            assert len(set(cyc)) == len(cyc)
            ring = list(zip(cyc, cyc[1:] + cyc[:1]))
            ring_edges = {tuple(sorted(e)) for e in ring}
            assert all(g.has_edge(a, b) for a, b in ring)
            for e in triple:
                assert tuple(sorted(e)) in ring_edges


def test_cycle_finder_validates_input():
    g = complete(6)
    with pytest.raises(ValueError):
        find_cycle_through_edges(g, (0, 1), (1, 2), (3, 4))  # adjacent pair
    with pytest.raises(ValueError):
        find_cycle_through_edges(cycle(6), (0, 1), (2, 3), (4, 5))  # kappa 2


def test_cycle_canonical_form():
    g = cartesian_product(cycle(3), path(2))
    for triple in _independent_triples(g):
        cyc = find_cycle_through_edges(g, *triple)
        if cyc is not None:
            assert cyc[0] == min(cyc)
            assert cyc[1] <= cyc[-1]
