"""Batch verification suites: each case reports ``lhs <= rhs`` with its margin."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from .constants import ConstantsReport, compute_constants
from .distributions import fourier_point_prob, iid_sum, max_point_prob, spectrum, uniform_on
from .groups import INTEGERS, CyclicContext, GroundSet, centered_interval_set, is_prime
from .integer_case import lr_domination_check, normal_approx_gap, three_sum_bound
from .subsets import build_table, iid_vs_distinct_relation, lo_max_prob

SUITES = ("bounds2", "bounds3", "lo", "fourier", "be")


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    lhs: Fraction | float
    rhs: Fraction | float
    passed: bool

    @property
    def margin(self) -> float:
        return float(self.rhs) - float(self.lhs)

    def row(self) -> list[str]:
        return [self.case, repr(float(self.lhs)), repr(float(self.rhs)), repr(self.margin)]


@lru_cache(maxsize=1)
def cached_constants() -> ConstantsReport:
    return compute_constants()


def next_prime_above(x: int) -> int:
    p = x + 1
    while not is_prime(p):
        p += 1
    return p


def random_int_set(rng: np.random.Generator, n: int, lo: int = -20, hi: int = 20) -> GroundSet:
    vals = rng.choice(np.arange(lo, hi + 1), size=n, replace=False)
    return GroundSet(INTEGERS, tuple(int(v) for v in vals))


def random_cyclic_set(rng: np.random.Generator, n: int, p: int, exclude_zero: bool = False) -> GroundSet:
    pool = np.arange(1 if exclude_zero else 0, p)
    vals = rng.choice(pool, size=n, replace=False)
    return GroundSet(CyclicContext.cyclic(p), tuple(int(v) for v in vals))


def symmetric_subsets(p: int) -> Iterable[GroundSet]:
    """Every nonempty ``A`` in Z_p with ``-A = A``."""
    ctx = CyclicContext.cyclic(p)
    pairs = [(v, p - v) for v in range(1, (p + 1) // 2)]
    for r in range(len(pairs) + 1):
        for chosen in itertools.combinations(pairs, r):
            base = tuple(v for pair in chosen for v in pair)
            if base:
                yield GroundSet(ctx, base)
            yield GroundSet(ctx, (0,) + base)


def _map(fn: Callable, items: list, workers: int) -> list:
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------


def bounds2(n_max: int = 9, ell_max: int = 4, samples: int = 200, seed: int = 0, workers: int = 1) -> list[CaseResult]:
    """Three-summand bound on random integer sets and interval domination."""
    tasks = []
    for n in range(3, n_max + 1):
        for r in range(samples):
            tasks.append(("t24", n, 3, r))
        for ell in range(1, ell_max + 1):
            for r in range(samples):
                tasks.append(("lr", n, ell, r))

    def run(task):
        kind, n, ell, r = task
        rng = np.random.default_rng([seed, n, ell, r, 0 if kind == "t24" else 1])
        A = random_int_set(rng, n)
        if kind == "t24":
            _, p = max_point_prob(iid_sum(A, 3))
            b = three_sum_bound(n)
            return CaseResult("bounds2", f"three_sum n={n} A={list(A)}", p, b, p <= b)
        chk = lr_domination_check(A, ell)
        return CaseResult("bounds2", f"domination n={n} ell={ell} A={list(A)}", chk.max_A, chk.max_interval, chk.holds)

    out = _map(run, tasks, workers)
    for n in range(3, n_max + 1):
        _, p = max_point_prob(iid_sum(centered_interval_set(n), 3))
        b = three_sum_bound(n)
        out.append(CaseResult("bounds2", f"three_sum interval n={n}", p, b, p <= b))
    return out


def bounds3(n_max: int = 5, primes: Iterable[int] = (11, 13), workers: int = 1, c2: float | None = None) -> list[CaseResult]:
    """Exhaustive ``max_x P[Y1+Y2+Y3 = x] <= C2/n`` over subsets of Z_p with ``p > 2n``."""
    if c2 is None:
        c2 = cached_constants().C2
    bound_c2 = Fraction(c2)
    tasks = []
    for p in primes:
        for n in range(2, n_max + 1):
            if p > 2 * n:
                tasks.extend((p, A) for A in itertools.combinations(range(p), n))

    def run(task):
        p, elems = task
        A = GroundSet(CyclicContext.cyclic(p), elems)
        _, mx = max_point_prob(iid_sum(A, 3))
        rhs = bound_c2 / A.n
        return CaseResult("bounds3", f"p={p} A={list(elems)}", mx, rhs, mx <= rhs)

    return _map(run, tasks, workers)


def affine_representatives(n: int, p: int) -> Iterable[tuple[int, ...]]:
    """One ``n``-subset of Z_p from every orbit of ``x -> a x + b`` (``a != 0``).

    Any two distinct elements can be sent to 0 and 1, so the subsets
    containing both cover every orbit. The fixed-size subset-sum law only
    moves under such a map, so its maximum is an orbit invariant.
    """
    for rest in itertools.combinations(range(2, p), n - 2):
        yield (0, 1) + rest


def lo(n_max: int = 8, ell_max: int = 4, samples: int = 50, seed: int = 0, workers: int = 1,
       lo_n_max: int = 10, exhaustive_n_max: int = 6, lo_samples: int = 500, t: int = 2) -> list[CaseResult]:
    """i.i.d.-versus-distinct relation pointwise, and ``lo_max <= 2/n`` for ``p > n^2``.

    The second check runs over ``t <= ell <= n - t``: exhaustively (up to
    affine maps) for ``n <= exhaustive_n_max`` and on ``lo_samples`` random
    sets per ``n`` above that. It reports the worst set for each ``(n, ell)``.
    """
    tasks = []
    for n in range(2, n_max + 1):
        for ell in range(1, min(ell_max, n) + 1):
            for r in range(samples):
                tasks.append(("rel", n, ell, r))

    def run(task):
        kind, n, ell, r = task
        rng = np.random.default_rng([seed, n, ell, r, 0])
        if r % 2 == 0:
            A = random_int_set(rng, n, -15, 15)
        else:
            A = random_cyclic_set(rng, n, 11 if n <= 8 else 13)
        rep = iid_vs_distinct_relation(A, ell)
        worst = min(rep.points, key=lambda pt: pt[1] - pt[2])
        return CaseResult("lo", f"relation {A.context} ell={ell} A={list(A)} x={worst[0]}",
                          worst[2], worst[1], rep.holds)

    out = _map(run, tasks, workers)

    def lo_cases(n: int) -> list[CaseResult]:
        p = next_prime_above(n * n)
        ells = range(t, n - t + 1)
        if not ells:
            return []
        if n <= exhaustive_n_max:
            family = affine_representatives(n, p)
            label = "exhaustive"
        else:
            rng = np.random.default_rng([seed, n, 1])
            family = (tuple(int(v) for v in rng.choice(p, size=n, replace=False)) for _ in range(lo_samples))
            label = f"random x{lo_samples}"
        worst: dict[int, tuple[Fraction, tuple[int, ...]]] = {}
        ctx = CyclicContext.cyclic(p)
        for elems in family:
            A = GroundSet(ctx, elems)
            table = build_table(A, ells[-1])
            for ell in ells:
                _, q = lo_max_prob(A, ell, table)
                if ell not in worst or q > worst[ell][0]:
                    worst[ell] = (q, elems)
        b = Fraction(2, n)
        return [CaseResult("lo", f"lo_max {label} Z_{p} n={n} ell={ell} worst A={list(worst[ell][1])}",
                           worst[ell][0], b, worst[ell][0] <= b) for ell in ells]

    for cases in _map(lo_cases, list(range(2, lo_n_max + 1)), workers):
        out.extend(cases)
    return out


def fourier(primes: Iterable[int] = (5, 7, 11, 13), n_max: int = 5, ell_max: int = 4,
            tol: float = 1e-9, workers: int = 1) -> list[CaseResult]:
    """Fourier inversion against exact convolution, and ``P[Y1+Y2 = 0] = 1/n`` on symmetric sets."""
    tasks = []
    for p in primes:
        for n in range(1, min(n_max, p) + 1):
            tasks.extend(("inv", p, A) for A in itertools.combinations(range(p), n))
        tasks.extend(("sym", p, A.elements) for A in symmetric_subsets(p))

    def run(task):
        kind, p, elems = task
        A = GroundSet(CyclicContext.cyclic(p), elems)
        s = spectrum(uniform_on(A, "float"))
        if kind == "sym":
            val = fourier_point_prob(s, 2, 0)
            err = abs(val - 1 / A.n)
            return CaseResult("fourier", f"val0 p={p} A={list(elems)}", err, tol, err <= tol)
        worst = 0.0
        for ell in range(1, ell_max + 1):
            exact = iid_sum(A, ell)
            for x in range(p):
                worst = max(worst, abs(fourier_point_prob(s, ell, x) - float(exact.prob(x))))
        return CaseResult("fourier", f"inversion p={p} A={list(elems)}", worst, tol, worst <= tol)

    return _map(run, tasks, workers)


def be(n: int = 5, ell_max: int = 8) -> list[CaseResult]:
    """Normal-approximation gap of interval sums against the Berry-Esseen budget."""
    out = []
    for ell in range(2, ell_max + 1):
        g = normal_approx_gap(n, ell)
        out.append(CaseResult("be", f"n={n} ell={ell} rho={g.rho:.6f}", g.sup_gap, g.budget, g.holds))
    return out


def run_suite(name: str, **kwargs) -> list[CaseResult]:
    fns = {"bounds2": bounds2, "bounds3": bounds3, "lo": lo, "fourier": fourier, "be": be}
    if name not in fns:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return fns[name](**kwargs)


def worst_ratio(results: list[CaseResult]) -> float:
    """Largest ``lhs / rhs`` over the cases (the regression value for slack bounds)."""
    return max(float(r.lhs) / float(r.rhs) for r in results if float(r.rhs) > 0) if results else math.nan
