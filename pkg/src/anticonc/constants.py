"""Numerical reproduction of the anticoncentration constants C1, C2, C3 and nu.

Each constant is the best value available on an explicit surface in the
proof parameters:

* C1 = 1 - e1*e2 on
  ``(28/9) / (4 (1 - 4 e1 - 3 e2)) + 3 (4 e1 + 3 e2) = 1 - e1*e2``;
* C2 = 1 - e3 with ``(1 - e3) (1 - 4 e3) = C1``;
* C3 = 1 - e4*e5 on
  ``1 - e4*e5 = 3 (e4 + e5) + C2 / ((1 - e4)^3 (1 - e5))``, ``e5 < 1/10``;
* nu = -log_3(C3).

The deficits ``1 - C`` are tiny (down to ~1e-12), so the chain carries the
deficits themselves rather than the constants: C3's deficit never goes
through a subtraction from one.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq, minimize_scalar

LN3 = math.log(3.0)
# brentq refuses rtol below 4 * machine epsilon
_RTOL = 4 * np.finfo(float).eps


class ConstantsError(RuntimeError):
    """The surface solver found no feasible point."""


# ---------------------------------------------------------------------------
# C1


def c1_surface(e1: float, e2: float) -> float:
    """Bound minus target on the C1 surface, scaled by ``n``; zero on the surface."""
    u = 4 * e1 + 3 * e2
    return (28 / 9) / (4 * (1 - u)) + 3 * u - (1 - e1 * e2)


def _c1_e2_on_surface(e1: float) -> float | None:
    # F(e1, 0) < 0 and F increases in e2 up to u = 1/2, so the lower root is bracketed
    hi = (0.5 - 4 * e1) / 3
    if hi <= 0 or c1_surface(e1, 0.0) >= 0:
        return None
    return brentq(lambda e2: c1_surface(e1, e2), 0.0, hi, xtol=1e-300, rtol=_RTOL)


def _c1_feasible_e1_max() -> float:
    # with e2 -> 0 the surface reduces to 27u^2 - 36u + 2 = 0 in u = 4 e1
    u_star = (36 - math.sqrt(36 * 36 - 4 * 27 * 2)) / 54
    return u_star / 4


@dataclass(frozen=True)
class ScanResult:
    x: float
    y: float
    product: float
    scan_step: float
    scan_points: int
    residual: float


def _scan_and_refine(
    partner: Callable[[float], float | None], lo: float, hi: float, step: float, passes: int
) -> tuple[float, float, int]:
    """Maximise ``x * partner(x)`` over ``(lo, hi)``.

    A uniform scan locates the best cell; each refinement pass rescans the
    neighbouring cells ten times finer; a bounded scalar minimiser finishes.
    Ties resolve to the smallest ``x``.
    """
    def objective(x):
        y = partner(x)
        return -math.inf if y is None else x * y

    xs = np.arange(lo + step, hi, step)
    best = max(xs, key=objective)
    count = len(xs)
    for _ in range(passes):
        fine = np.linspace(best - step, best + step, 21)
        fine = fine[(fine > lo) & (fine < hi)]
        best = max(fine, key=objective)
        count += len(fine)
        step /= 10
    a, b = max(lo, best - step), min(hi, best + step)
    scale = 1.0 / max(abs(objective(best)), 1e-300)
    res = minimize_scalar(lambda x: -objective(x) * scale, bounds=(a, b), method="bounded",
                          options={"xatol": step * 1e-9})
    x = float(res.x) if objective(res.x) >= objective(best) else float(best)
    return x, partner(x), count


def solve_c1(step: float = 1e-6) -> tuple[float, float, float]:
    """Best ``(e1, e2, C1)`` on the C1 surface."""
    res, _ = _solve_c1_full(step)
    return res.x, res.y, 1 - res.product


def _solve_c1_full(step: float = 1e-6) -> tuple[ScanResult, float]:
    e1_max = _c1_feasible_e1_max()
    e1, e2, count = _scan_and_refine(_c1_e2_on_surface, 0.0, e1_max, step, passes=2)
    if e2 is None or e1 * e2 <= 0:
        raise ConstantsError("no feasible point on the C1 surface")
    res = ScanResult(e1, e2, e1 * e2, step, count, abs(c1_surface(e1, e2)))
    return res, e1_max


# ---------------------------------------------------------------------------
# C2


def c2_equation(e3: float, c1: float) -> float:
    return c1 / (1 - e3) + 3 * e3 - (1 - e3)


def _e3_from_deficit(delta1: float) -> float:
    # smaller root of 4 e^2 - 5 e + delta1 = 0, rationalised to avoid cancellation
    disc = 25 - 16 * delta1
    if disc < 0:
        raise ConstantsError("negative discriminant in the C2 equation")
    return 2 * delta1 / (5 + math.sqrt(disc))


def solve_c2(c1: float, *, deficit: float | None = None) -> tuple[float, float]:
    """``(e3, C2)`` solving ``C1 / (1 - e3) + 3 e3 = 1 - e3``.

    Pass ``deficit = 1 - C1`` when it is known more accurately than ``C1``.
    """
    if not 0 < c1 < 1:
        raise ValueError("C1 must lie in (0, 1)")
    e3 = _e3_from_deficit(1 - c1 if deficit is None else deficit)
    return e3, 1 - e3


# ---------------------------------------------------------------------------
# C3


def c3_surface(e4: float, e5: float, c2: float) -> float:
    """Right side minus left side of the C3 surface, in the form it is stated."""
    return 3 * (e4 + e5) + c2 / ((1 - e4) ** 3 * (1 - e5)) - (1 - e4 * e5)


def c3_surface_scaled(e4: float, e5: float, gamma: float) -> float:
    """``c3_surface * (1 - e4)^3 (1 - e5)`` written in terms of ``gamma = 1 - C2``.

    Every term is O(gamma), so cancellation against 1 never happens.
    """
    log_d = 3 * math.log1p(-e4) + math.log1p(-e5)
    d = math.exp(log_d)
    return 3 * (e4 + e5) * d - math.expm1(log_d) - gamma + e4 * e5 * d


def _c3_partner(gamma: float) -> Callable[[float], float | None]:
    def e5_of(e4: float) -> float | None:
        # the scaled surface increases in e5; it is negative at e5 = 0 iff e4 < ~gamma/6
        if e4 <= 0 or c3_surface_scaled(e4, 0.0, gamma) >= 0:
            return None
        if c3_surface_scaled(e4, 0.1, gamma) <= 0:
            return None
        return brentq(lambda e5: c3_surface_scaled(e4, e5, gamma), 0.0, 0.1, xtol=1e-300, rtol=_RTOL)
    return e5_of


def solve_c3(c2: float, *, deficit: float | None = None, resolution: int = 10_000) -> tuple[float, float, float, float]:
    """``(e4, e5, C3, nu)`` for the best point of the C3 surface with ``e5 < 1/10``."""
    r = _solve_c3_full(1 - c2 if deficit is None else deficit, resolution)
    return r.x, r.y, 1 - r.product, nu_from_deficit(r.product)


def _solve_c3_full(gamma: float, resolution: int = 10_000) -> ScanResult:
    if not 0 < gamma < 1:
        raise ValueError("C2 must lie in (0, 1)")
    partner = _c3_partner(gamma)
    hi = gamma / 6
    step = gamma / resolution
    e4, e5, count = _scan_and_refine(partner, 0.0, hi, step, passes=2)
    if e5 is None or not 0 < e5 < 0.1:
        raise ConstantsError("no feasible point on the C3 surface")
    residual = abs(c3_surface(e4, e5, 1 - gamma))
    return ScanResult(e4, e5, e4 * e5, step, count, residual)


def nu_from_deficit(delta3: float) -> float:
    """``-log_3(1 - delta3)`` without forming ``1 - delta3``."""
    return -math.log1p(-delta3) / LN3


# ---------------------------------------------------------------------------
# full chain


@dataclass(frozen=True)
class ConstantsReport:
    eps1: float
    eps2: float
    eps3: float
    eps4: float
    eps5: float
    C1: float
    C2: float
    C3: float
    nu: float
    # 1 - C1, 1 - C2, 1 - C3 carried at full relative precision
    delta1: float
    delta2: float
    delta3: float
    residuals: dict[str, float] = field(default_factory=dict)
    solver: dict[str, float | int | str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def compute_constants(c1_step: float = 1e-6, c3_resolution: int = 10_000) -> ConstantsReport:
    """Run the C1 -> C2 -> C3 -> nu chain."""
    c1_res, e1_max = _solve_c1_full(c1_step)
    delta1 = c1_res.product
    c1 = 1 - delta1
    e3 = _e3_from_deficit(delta1)
    c3_res = _solve_c3_full(e3, c3_resolution)
    delta3 = c3_res.product
    residuals = {
        "c1_surface": c1_res.residual,
        "c2_equation": abs(c2_equation(e3, c1)),
        "c3_surface": c3_res.residual,
        "c3_surface_scaled": abs(c3_surface_scaled(c3_res.x, c3_res.y, e3)),
    }
    solver = {
        "c1_scan_step": c1_res.scan_step,
        "c1_scan_points": c1_res.scan_points,
        "c1_e1_upper": e1_max,
        "c3_scan_step": c3_res.scan_step,
        "c3_scan_points": c3_res.scan_points,
        "refinement": "2 x (10x rescan) + bounded Brent",
        "root_finder": "brentq",
    }
    return ConstantsReport(
        eps1=c1_res.x, eps2=c1_res.y, eps3=e3, eps4=c3_res.x, eps5=c3_res.y,
        C1=c1, C2=1 - e3, C3=1 - delta3, nu=nu_from_deficit(delta3),
        delta1=delta1, delta2=e3, delta3=delta3,
        residuals=residuals, solver=solver,
    )


# ---------------------------------------------------------------------------
# consequences


def floor_log3(x: int) -> int:
    k = 0
    while 3 ** (k + 1) <= x:
        k += 1
    return k


@dataclass(frozen=True)
class NestedBound:
    k: int
    bound: float
    closed_form: float


def nested_bound(ell0: int, lam: float, nu: float) -> NestedBound:
    """Bound ``C3^k * lam`` for sums of at least ``ell0`` summands, ``k = floor(log_3 ell0)``.

    Also returns ``lam * (3 / ell0)^nu``, which strictly dominates it.
    """
    if ell0 < 3:
        raise ValueError("ell0 must be >= 3")
    if not 0 < lam <= 0.9:
        raise ValueError("lam must lie in (0, 9/10]")
    k = floor_log3(ell0)
    log_c3 = -nu * LN3
    log_bound = k * log_c3
    log_closed = -nu * math.log(ell0 / 3)
    # k > log_3(ell0) - 1, so the comparison is strict whenever nu > 0
    if not log_bound < log_closed:
        raise AssertionError(f"C3^k < (3/ell0)^nu failed at ell0={ell0}")
    return NestedBound(k, lam * math.exp(log_bound), lam * math.exp(log_closed))


def required_prime(ell0: int, lam: float, nu: float) -> float:
    """Sufficient prime size ``2 C3 ell0^nu / lam``."""
    if ell0 < 3 or not 0 < lam <= 0.9:
        raise ValueError("need ell0 >= 3 and 0 < lam <= 9/10")
    return 2 * math.exp(-nu * LN3 + nu * math.log(ell0)) / lam
