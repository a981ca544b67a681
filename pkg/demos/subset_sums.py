"""Sums of random fixed-size subsets, and how they relate to i.i.d. draws."""
import math

from anticonc import GroundSet, INTEGERS, build_table, freiman_check, iid_vs_distinct_relation, lo_max_prob
from anticonc.groups import CyclicContext
from anticonc.suites import next_prime_above

A = GroundSet.of([1, 2, 3, 4])
table = build_table(A)
for ell in range(A.n + 1):
    print(f"ell={ell}: {table.row(ell)}")
print("most likely 2-subset sum:", lo_max_prob(A, 2))

# counts are exact integers, well past 64 bits
B = GroundSet.of(range(1, 101))
big = build_table(B, 50)
print("C(100,50) =", sum(big.rows[50].values()), math.comb(100, 50) == sum(big.rows[50].values()))

# P[Y = x] >= P[sum X = x] * P[draws distinct]
rep = iid_vs_distinct_relation(GroundSet.of(range(1, 7)), 3)
print("distinct-draw probability:", rep.distinct_prob, " holds:", rep.holds, " min margin:", rep.min_margin)

# at p > n^2 no ell-subset sum is very likely
n = 8
p = next_prime_above(n * n)
C = GroundSet.of([3, 7, 12, 19, 30, 41, 50, 60], modulus=p)
print(f"Z_{p}:", [str(lo_max_prob(C, ell)[1]) for ell in range(2, n - 1)], "vs 2/n =", 2 / n)

# lifting residues to integers keeps pair sums apart for {1,2,3} but not for {1,2,5}
Z7 = CyclicContext.cyclic(7)
print(freiman_check({1: 1, 2: 2, 3: 3}, 2, Z7, INTEGERS, isomorphism=True))
print(freiman_check({1: 1, 2: 2, 5: 5}, 2, Z7, INTEGERS))
