"""Anticoncentration over the integers: interval extremality, the three-summand
bound, and the normal-approximation gap for interval laws."""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .distributions import iid_sum, max_point_prob
from .groups import INTEGERS, GroundSet, centered_interval_set

BERRY_ESSEEN_C = 0.7655


def normal_cdf(z: float) -> float:
    # erfc keeps full relative accuracy in the lower tail
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def triple_count_formula(n: int) -> int:
    """Number of triples of ``{1..n}`` hitting the central sum, odd ``n``."""
    if n % 2 == 0:
        raise ValueError("closed form holds for odd n")
    return (3 * n * n + 1) // 4


def brute_force_triple_count(n: int, target: int | None = None) -> int:
    """Count ``(y1, y2, y3) in {1..n}^3`` with ``y1 + y2 + y3 = target`` by enumeration.

    The default target is the mode ``floor(3 (n + 1) / 2)``.
    """
    if target is None:
        target = 3 * (n + 1) // 2
    return sum(1 for t in itertools.product(range(1, n + 1), repeat=3) if sum(t) == target)


def three_sum_bound(n: int) -> Fraction:
    """``(3 + 1/n^2) / (4n)`` as an exact rational."""
    return Fraction(3 * n * n + 1, 4 * n ** 3)


def interval_concentration_ratio(n: int, ell: int) -> float:
    """``max_x P[Y = x] * n * sqrt(ell - 1)`` for ``ell`` uniform draws on an interval of size ``n``."""
    if ell < 2:
        raise ValueError("ell must be >= 2")
    _, p = max_point_prob(iid_sum(centered_interval_set(n), ell))
    return float(p) * n * math.sqrt(ell - 1)


@dataclass(frozen=True)
class DominationCheck:
    max_A: Fraction
    max_interval: Fraction
    holds: bool


def lr_domination_check(A: GroundSet, ell: int) -> DominationCheck:
    """Compare the concentration of ``ell`` uniform draws from ``A`` with the interval of equal size."""
    if A.context.is_cyclic:
        raise ValueError("domination check is for integer sets")
    _, pA = max_point_prob(iid_sum(A, ell))
    _, pI = max_point_prob(iid_sum(centered_interval_set(A.n), ell))
    return DominationCheck(pA, pI, pA <= pI)


@dataclass(frozen=True)
class NormalApproxGap:
    n: int
    ell: int
    sigma2: Fraction
    abs_third: Fraction
    rho: float
    sup_gap: float
    argsup: float
    budget: float

    @property
    def holds(self) -> bool:
        return self.sup_gap <= self.budget


def interval_moments(n: int) -> tuple[Fraction, Fraction]:
    """Variance and third absolute moment of the uniform law on ``{-(n-1)/2, ..., (n-1)/2}``."""
    centred = [Fraction(2 * i - (n + 1), 2) for i in range(1, n + 1)]
    var = sum(c * c for c in centred) / n
    third = sum(abs(c) ** 3 for c in centred) / n
    return var, third


def normal_approx_gap(n: int, ell: int, grid: Iterable[float] | None = None) -> NormalApproxGap:
    """Sup distance between the CDF of the normalised interval sum and the standard normal CDF.

    With ``grid=None`` the supremum over the real line is taken exactly: it is
    attained at a jump of the step CDF, where both one-sided limits are
    compared with the normal CDF. An explicit grid evaluates the
    right-continuous CDF at those points only.
    """
    if n < 2 or ell < 1:
        raise ValueError("need n >= 2 and ell >= 1")
    sigma2, third = interval_moments(n)
    sigma = math.sqrt(sigma2)
    rho = float(third) / sigma ** 3
    scale = sigma * math.sqrt(ell)
    law = iid_sum(GroundSet(INTEGERS, tuple(range(1, n + 1))), ell)
    shift = Fraction(ell * (n + 1), 2)

    jumps = []
    cum = Fraction(0)
    for s, m in law.items():
        before = cum
        cum += m
        jumps.append((float(s - shift) / scale, before, cum))

    best, where = 0.0, 0.0
    if grid is None:
        for z, before, after in jumps:
            phi = normal_cdf(z)
            gap = max(abs(float(before) - phi), abs(float(after) - phi))
            if gap > best:
                best, where = gap, z
    else:
        zs = [z for z, _, _ in jumps]
        cdf = [float(after) for _, _, after in jumps]
        for z in grid:
            i = bisect.bisect_right(zs, z)
            psi = cdf[i - 1] if i else 0.0
            gap = abs(psi - normal_cdf(z))
            if gap > best:
                best, where = gap, z
    return NormalApproxGap(n, ell, sigma2, third, rho, best, where, BERRY_ESSEEN_C * rho / math.sqrt(ell))

