"""Sums of uniform draws from a set of integers.

Concentration of Y = Y1 + ... + Y_ell is largest when the set is an
interval; this script measures that and the normal approximation.
"""
from fractions import Fraction

from anticonc import GroundSet, centered_interval_set, iid_sum, max_point_prob
from anticonc.integer_case import (
    brute_force_triple_count,
    lr_domination_check,
    normal_approx_gap,
    three_sum_bound,
)

# three draws from {1,...,5}
A = GroundSet.of(range(1, 6))
law = iid_sum(A, 3)
x, p = max_point_prob(law)
print("mode of Y1+Y2+Y3 on {1..5}:", x, "with probability", p)
print("closed-form bound (3 + 1/n^2)/(4n):", three_sum_bound(5))

# the number of triples hitting the centre
for n in (3, 5, 7, 9):
    print(f"n={n}: {brute_force_triple_count(n)} central triples, (3n^2+1)/4 = {Fraction(3 * n * n + 1, 4)}")

# a spread-out set is less concentrated than the interval of the same size
for vals in ([0, 1, 5], [0, 1, 2, 10], [-7, -2, 0, 3, 11]):
    chk = lr_domination_check(GroundSet.of(vals), 2)
    print(f"{vals}: max {chk.max_A} vs interval {chk.max_interval}")

# even sizes use the translate {1..n}; the bound is then strict
for n in (4, 5, 6):
    _, p = max_point_prob(iid_sum(centered_interval_set(n), 3))
    print(f"interval n={n}: {p} <= {three_sum_bound(n)}")

# distance between the normalised CDF and Phi, against the Berry-Esseen budget
print("\n ell   sup|Psi-Phi|   0.7655*rho/sqrt(ell)")
for ell in range(2, 9):
    g = normal_approx_gap(5, ell)
    print(f"{ell:4d}   {g.sup_gap:.6f}       {g.budget:.6f}")
