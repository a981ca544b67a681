"""Spectra of uniform laws on Z_p and recovering point masses from them."""
import numpy as np

from anticonc import GroundSet, fourier_point_prob, iid_sum, spectrum, uniform_on
from anticonc.distributions import fourier_law

p = 13
A = GroundSet.of([1, 3, 4, 9], modulus=p)
s = spectrum(uniform_on(A, "float"))
print("|f(j)| for j = 0..12:")
print(np.round(np.abs(s.values), 4))

# inversion against the exact convolution power
exact = iid_sum(A, 3)
err = max(abs(fourier_point_prob(s, 3, x) - float(exact.prob(x))) for x in range(p))
print("max inversion error, ell=3:", err)

# a symmetric set has a real spectrum, and P[Y1 + Y2 = 0] = 1/n
S = GroundSet.of([1, 12, 5, 8, 0], modulus=p)
ss = spectrum(uniform_on(S, "float"))
print("largest imaginary part:", np.max(np.abs(ss.values.imag)))
print("P[Y1+Y2=0] =", fourier_point_prob(ss, 2, 0), " 1/n =", 1 / S.n)

# a large prime modulus goes through the chirp-z transform
q = 1009
B = GroundSet.of([2, 17, 400, 401, 777], modulus=q)
law = fourier_law(spectrum(uniform_on(B, "float")), 4)
ref = iid_sum(B, 4).to_array()
print(f"Z_{q}: max |fourier - exact| = {np.max(np.abs(law - ref)):.2e}")
