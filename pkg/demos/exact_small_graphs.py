"""Exact generalized 3-connectivity of small named graphs.

Walks through kappa_3 = min over 3-subsets S of the maximum number of
internally disjoint S-trees, computed by exhaustive tree packing, and
checks the closed-form values for complete bipartite/tripartite graphs.
"""

from treeconn.graphs import complete, complete_bipartite, complete_tripartite, cycle
from treeconn.packing import kappa_k, kappa3_formula

print("== complete graphs: kappa3(K_b) = b - 2 ==")
for b in range(3, 7):
    value, witness, bundle = kappa_k(complete(b), 3)
    print(f"K_{b}: kappa3 = {value} (witness S = {list(witness)}, "
          f"{len(bundle)} disjoint trees)")
    assert value == b - 2

print()
print("== complete bipartite: a-1 when a == b, else min(a,b) ==")
for a, b in [(2, 2), (2, 3), (3, 3), (2, 4), (4, 4)]:
    value = kappa_k(complete_bipartite(a, b), 3)[0]
    formula = kappa3_formula("complete_bipartite", [a, b])
    print(f"K_{{{a},{b}}}: search {value}, formula {formula}")
    assert value == formula

print()
print("== complete tripartite ==")
for parts in [(1, 1, 2), (1, 1, 3), (1, 2, 3), (2, 2, 2)]:
    value = kappa_k(complete_tripartite(*parts), 3)[0]
    formula = kappa3_formula("complete_tripartite", parts)
    print(f"K_{parts}: search {value}, formula {formula}")
    assert value == formula

print()
print("== cycles are the minimum: kappa3(C_n) = 1 ==")
for n in (3, 5, 8):
    print(f"C_{n}: kappa3 = {kappa_k(cycle(n), 3)[0]}")
