"""Ordering a set so partial sums differ along the edges of a graph."""
import numpy as np

from anticonc import ConstraintGraph, GroundSet, Ordering, banded_graph, exhaustive_sequencing, randomized_sequencing, verify
from anticonc.sequencer import exact_expected_collisions, expected_collisions_bound, monte_carlo_collisions

A = GroundSet.of([1, 2, 5], modulus=7)
G = ConstraintGraph.from_edges(3, [(1, 3)])
for perm in ((2, 1, 5), (1, 2, 5)):
    o = Ordering(A, perm)
    print(perm, "sums", o.partial_sums, "violations", verify(o, G).violations)
print("oracle:", exhaustive_sequencing(A, G).perm)

# small instance: random orderings plus repair
B = GroundSet.of([1, 2, 3, 4, 5], modulus=11)
res = randomized_sequencing(B, banded_graph(5, 2), seed=42)
print(res.to_dict())

# large instance: zero-sum-free block, greedy prefix, random tail
p, n = 14401, 120
rng = np.random.default_rng(3)
C = GroundSet.of([int(v) for v in rng.choice(np.arange(1, p), n, replace=False)], modulus=p)
res = randomized_sequencing(C, banded_graph(n, 1), seed=1)
print("strategy:", res.strategy, " t, m, h =", res.plan.t, res.plan.m, res.plan.h, " trials:", res.trials_used)

# the expected-collision bound tends to 1/3
for m in (50, 500, 5000, 50000):
    print(f"m={m:>6}: {expected_collisions_bound(m + 4, 3, m, 2):.5f}")

# Monte Carlo against enumeration of all 7! orderings
D = GroundSet.of([1, 2, 3, 4, 50, 51, 52], modulus=53)
H = banded_graph(7, 2)
mean, se = monte_carlo_collisions(D, H, (), 10_000, 1)
print("E(X) exact", float(exact_expected_collisions(D, H)), " estimate", mean, "+-", se)
