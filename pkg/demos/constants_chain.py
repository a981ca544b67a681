"""The constants C1 -> C2 -> C3 -> nu, solved from their defining surfaces.

The deficits 1 - C are tiny, so the report carries them separately.
"""
import json

from anticonc import compute_constants, nested_bound, required_prime

rep = compute_constants()
print(f"eps1 = {rep.eps1:.10f}   eps2 = {rep.eps2:.10f}")
print(f"C1   = {rep.C1:.10f}   (1 - C1 = {rep.delta1:.6e})")
print(f"eps3 = {rep.eps3:.6e}   C2 = {rep.C2:.10f}")
print(f"eps4 = {rep.eps4:.6e}   eps5 = {rep.eps5:.6e}")
print(f"1 - C3 = {rep.delta3:.6e}   nu = {rep.nu:.6e}")
print("residuals:", json.dumps(rep.residuals))

# linearising the C3 surface predicts (1 - C2)^2 / 96 for the deficit
print("first-order estimate:", rep.eps3 ** 2 / 96)

# what the exponent buys: the bound after ell0 summands
for ell0 in (3, 9, 10, 81, 10**6):
    nb = nested_bound(ell0, 0.5, rep.nu)
    print(f"ell0={ell0:>7}: k={nb.k:2d}  bound={nb.bound:.15f}  closed form={nb.closed_form:.15f}")

print("prime needed for lam=1/2, ell0=3:", required_prime(3, 0.5, rep.nu))
