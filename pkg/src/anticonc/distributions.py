"""Laws of sums of independent variables over Z and Z_k.

Two arithmetic modes share one type:

* ``"exact"``: nonnegative integer weights over a common integer denominator,
  so every mass is an exact rational and the masses sum to exactly one.
* ``"float"``: a float64 mass vector.

Integer-valued laws live on a window ``[offset, offset + len - 1]``; laws on
Z_k always carry the full residue vector of length ``k``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .groups import CyclicContext, GroundSet

Mode = Literal["exact", "float"]

# cyclic float convolutions and spectra switch to the chirp-z path above this modulus
DIRECT_DFT_LIMIT = 256


def int_convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Linear convolution of nonnegative integer sequences.

    Uses Kronecker substitution: both sequences are packed into single big
    integers with fixed-width slots wide enough that no slot of the product
    can overflow, multiplied once, and unpacked.
    """
    if not a or not b:
        return []
    if min(a) < 0 or min(b) < 0:
        raise ValueError("int_convolve needs nonnegative coefficients")
    # slots must hold the inputs as well as every product coefficient
    bound = max(max(a), max(b), max(a) * max(b) * min(len(a), len(b)))
    width = bound.bit_length() // 8 + 1
    pa = int.from_bytes(b"".join(int(x).to_bytes(width, "little") for x in a), "little")
    pb = int.from_bytes(b"".join(int(x).to_bytes(width, "little") for x in b), "little")
    size = len(a) + len(b) - 1
    raw = (pa * pb).to_bytes(size * width, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(size)]


def _fold(linear: Sequence, k: int, zero):
    out = [zero] * k
    for i, w in enumerate(linear):
        out[i % k] += w
    return out


def bluestein_dft(x: np.ndarray, inverse: bool = False) -> np.ndarray:
    """Length-N DFT of ``x`` for arbitrary N (in particular prime N) via the chirp-z trick.

    Forward: ``X[j] = sum_n x[n] exp(-2 pi i j n / N)``; ``inverse=True`` flips the
    sign of the exponent (no 1/N scaling).
    """
    x = np.asarray(x, dtype=complex)
    N = len(x)
    if N == 0:
        return x.copy()
    sign = 1.0 if inverse else -1.0
    idx = np.arange(N)
    # n^2 mod 2N keeps the chirp phase argument small and exact
    chirp = np.exp(sign * 1j * np.pi * ((idx * idx) % (2 * N)) / N)
    L = 1 << (2 * N - 1).bit_length()
    a = np.zeros(L, dtype=complex)
    a[:N] = x * chirp
    b = np.zeros(L, dtype=complex)
    b[:N] = np.conj(chirp)
    b[L - N + 1:] = np.conj(chirp[1:][::-1])
    conv = np.fft.ifft(np.fft.fft(a) * np.fft.fft(b))
    return chirp * conv[:N]


def direct_dft(x: np.ndarray, inverse: bool = False) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    N = len(x)
    idx = np.arange(N)
    phase = np.outer(idx, idx) % N
    sign = 1.0 if inverse else -1.0
    return np.exp(sign * 2j * np.pi * phase / N) @ x


def dft(x: np.ndarray, inverse: bool = False) -> np.ndarray:
    if len(x) > DIRECT_DFT_LIMIT:
        return bluestein_dft(x, inverse)
    return direct_dft(x, inverse)


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability law on Z (finite window) or on Z_k.

    ``weights`` is a tuple of ints in exact mode (mass = weight / denominator)
    and a read-only float64 array in float mode (``denominator is None``).
    """

    context: CyclicContext
    offset: int
    weights: tuple[int, ...] | np.ndarray
    denominator: int | None = None

    def __post_init__(self):
        if self.context.is_cyclic:
            if self.offset != 0 or len(self.weights) != self.context.modulus:
                raise ValueError("cyclic laws need offset 0 and a full residue vector")
        if self.denominator is None:
            w = np.array(self.weights, dtype=float)
            w.setflags(write=False)
            object.__setattr__(self, "weights", w)
        else:
            object.__setattr__(self, "weights", tuple(int(v) for v in self.weights))

    @property
    def mode(self) -> Mode:
        return "float" if self.denominator is None else "exact"

    @property
    def lo(self) -> int:
        return self.offset

    @property
    def hi(self) -> int:
        return self.offset + len(self.weights) - 1

    def __len__(self) -> int:
        return len(self.weights)

    def points(self) -> range:
        return range(self.lo, self.hi + 1)

    def prob(self, x: int) -> Fraction | float:
        x = self.context.canonicalize(x)
        i = x - self.offset
        if not 0 <= i < len(self.weights):
            return Fraction(0) if self.denominator is not None else 0.0
        if self.denominator is not None:
            return Fraction(self.weights[i], self.denominator)
        return float(self.weights[i])

    def masses(self) -> list[Fraction] | np.ndarray:
        if self.denominator is None:
            return self.weights
        return [Fraction(w, self.denominator) for w in self.weights]

    def items(self):
        """Yield ``(x, mass)`` for every point of the window with nonzero mass."""
        for x, m in zip(self.points(), self.masses()):
            if m:
                yield x, m

    def total(self) -> Fraction | float:
        if self.denominator is not None:
            return Fraction(sum(self.weights), self.denominator)
        return float(np.sum(self.weights))

    def to_float(self) -> Distribution:
        if self.denominator is None:
            return self
        den = self.denominator
        return Distribution(self.context, self.offset, np.array([w / den for w in self.weights]))

    def to_array(self) -> np.ndarray:
        return np.asarray(self.to_float().weights)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "prob_num", "prob_den", "prob_float"])
        for x, m in self.items():
            if isinstance(m, Fraction):
                writer.writerow([x, m.numerator, m.denominator, repr(float(m))])
            else:
                writer.writerow([x, "", "", repr(float(m))])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "context": str(self.context),
            "modulus": self.context.modulus,
            "mode": self.mode,
            "support": [{"x": x} | rational_json(m) for x, m in self.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def rational_json(q: Fraction | float) -> dict:
    if isinstance(q, Fraction):
        return {"num": str(q.numerator), "den": str(q.denominator), "float": float(q)}
    return {"num": None, "den": None, "float": float(q)}


def point_mass(x: int, ctx: CyclicContext, mode: Mode = "exact") -> Distribution:
    x = ctx.canonicalize(x)
    if ctx.is_cyclic:
        w = [0] * ctx.modulus
        w[x] = 1
        return _make(ctx, 0, w, mode)
    return _make(ctx, x, [1], mode)


def _make(ctx: CyclicContext, offset: int, counts: Sequence[int], mode: Mode, den: int = 1) -> Distribution:
    if mode == "exact":
        return Distribution(ctx, offset, tuple(counts), den)
    if mode == "float":
        return Distribution(ctx, offset, np.array(counts, dtype=float) / den)
    raise ValueError(f"unknown mode {mode!r}")


def uniform_on(A: GroundSet, mode: Mode = "exact") -> Distribution:
    ctx = A.context
    if ctx.is_cyclic:
        counts = [0] * ctx.modulus
        for v in A:
            counts[v] = 1
        return _make(ctx, 0, counts, mode, A.n)
    lo = min(A.elements)
    counts = [0] * (max(A.elements) - lo + 1)
    for v in A:
        counts[v - lo] = 1
    return _make(ctx, lo, counts, mode, A.n)


def from_masses(ctx: CyclicContext, masses: dict[int, Fraction | float], mode: Mode = "exact") -> Distribution:
    """Build a law from an explicit ``{x: mass}`` table (masses must sum to one)."""
    pts = {ctx.canonicalize(x): m for x, m in masses.items() if m}
    if not pts:
        raise ValueError("empty law")
    offset = 0 if ctx.is_cyclic else min(pts)
    size = ctx.modulus if ctx.is_cyclic else max(pts) - offset + 1
    if mode == "exact":
        fr = {x: Fraction(m) for x, m in pts.items()}
        den = math.lcm(*(q.denominator for q in fr.values()))
        w = [0] * size
        for x, q in fr.items():
            w[x - offset] = q.numerator * (den // q.denominator)
        if sum(w) != den:
            raise ValueError("masses must sum to exactly 1")
        return Distribution(ctx, offset, tuple(w), den)
    w = np.zeros(size)
    for x, m in pts.items():
        w[x - offset] = float(m)
    if abs(w.sum() - 1.0) > 1e-9:
        raise ValueError("masses must sum to 1")
    return Distribution(ctx, offset, w)


def convolve(d1: Distribution, d2: Distribution) -> Distribution:
    """Law of the sum of independent draws from ``d1`` and ``d2``."""
    if d1.context != d2.context:
        raise ValueError(f"context mismatch: {d1.context} vs {d2.context}")
    if d1.mode != d2.mode:
        raise ValueError(f"mode mismatch: {d1.mode} vs {d2.mode}")
    ctx = d1.context
    if d1.mode == "exact":
        lin = int_convolve(d1.weights, d2.weights)
        den = d1.denominator * d2.denominator
        if ctx.is_cyclic:
            return Distribution(ctx, 0, tuple(_fold(lin, ctx.modulus, 0)), den)
        return Distribution(ctx, d1.offset + d2.offset, tuple(lin), den)

    if not ctx.is_cyclic:
        return Distribution(ctx, d1.offset + d2.offset, np.convolve(d1.weights, d2.weights))
    k = ctx.modulus
    if k <= DIRECT_DFT_LIMIT:
        lin = np.convolve(d1.weights, d2.weights)
        out = np.zeros(k)
        np.add.at(out, np.arange(len(lin)) % k, lin)
        return Distribution(ctx, 0, out)
    prod = bluestein_dft(d1.weights) * bluestein_dft(d2.weights)
    out = bluestein_dft(prod, inverse=True).real / k
    return Distribution(ctx, 0, np.clip(out, 0.0, None))


def iid_sum(A: GroundSet | Distribution, ell: int, mode: Mode = "exact") -> Distribution:
    """``ell``-fold convolution power by binary exponentiation.

    ``A`` may be a ground set (uniform summands) or an arbitrary base law.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    base = uniform_on(A, mode) if isinstance(A, GroundSet) else A
    result = None
    while ell:
        if ell & 1:
            result = base if result is None else convolve(result, base)
        ell >>= 1
        if ell:
            base = convolve(base, base)
    return result


def max_point_prob(d: Distribution) -> tuple[int, Fraction | float]:
    """Largest point mass and its location (smallest canonical x on ties)."""
    if d.mode == "exact":
        best = max(d.weights)
        i = d.weights.index(best)
        return d.offset + i, Fraction(best, d.denominator)
    i = int(np.argmax(d.weights))
    return d.offset + i, float(d.weights[i])


@dataclass(frozen=True, eq=False)
class Spectrum:
    """``values[j] = sum_x P[x] exp(-2 pi i x j / k)``."""

    context: CyclicContext
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)


def spectrum(d: Distribution) -> Spectrum:
    if not d.context.is_cyclic:
        raise ValueError("spectrum is only defined on Z_k")
    vals = dft(d.to_array())
    vals.setflags(write=False)
    return Spectrum(d.context, vals)


def fourier_point_prob(s: Spectrum, ell: int, x: int, tol: float = 1e-9) -> float:
    """``P[Y_1 + ... + Y_ell = x]`` recovered from the spectrum by inversion."""
    k = s.context.modulus
    x = s.context.canonicalize(x)
    phase = (np.arange(k) * x) % k
    val = np.sum(np.exp(2j * np.pi * phase / k) * s.values ** ell) / k
    if abs(val.imag) > tol:
        raise ValueError(f"imaginary residue {val.imag:.3e} exceeds {tol:g}; spectrum is corrupt")
    return float(val.real)


def fourier_law(s: Spectrum, ell: int) -> np.ndarray:
    """All point probabilities of the ``ell``-fold sum at once (float)."""
    k = s.context.modulus
    return dft(s.values ** ell, inverse=True).real / k
