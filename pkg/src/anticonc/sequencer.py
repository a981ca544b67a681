"""Gamma-sequencings: orderings of a set whose partial sums differ along the edges of a graph.

The randomized solver follows the probabilistic existence argument: fix a
zero-sum-free block ``T``, order a prefix greedily so that it is collision
free and avoids the final sum, then complete the remaining positions at
random. Small instances, where that argument promises nothing, fall back to
random full orderings with local repair. :func:`exhaustive_sequencing` is the
oracle.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .groups import ConstraintGraph, CyclicContext, GroundSet

ZERO_SUM_GUARD = 10 ** 7
EXHAUSTIVE_MAX_N = 10


class PreconditionError(ValueError):
    pass


class SearchExhausted(RuntimeError):
    """No zero-violation ordering was found; carries the best ordering seen."""

    def __init__(self, best: Ordering, report: CollisionReport, trials_used: int):
        self.best = best
        self.report = report
        self.trials_used = trials_used
        super().__init__(f"no Gamma-sequencing after {trials_used} trials; best has {report.count} violations")


def partial_sums(perm: Sequence[int], ctx: CyclicContext) -> tuple[int, ...]:
    sums = [0]
    for v in perm:
        sums.append(ctx.canonicalize(sums[-1] + v))
    return tuple(sums)


@dataclass(frozen=True)
class Ordering:
    ground: GroundSet
    perm: tuple[int, ...]
    partial_sums: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        ctx = self.ground.context
        perm = tuple(ctx.canonicalize(v) for v in self.perm)
        if sorted(perm) != sorted(self.ground.elements):
            raise ValueError(f"{perm} is not a permutation of {self.ground.elements}")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "partial_sums", partial_sums(perm, ctx))

    @property
    def n(self) -> int:
        return len(self.perm)


@dataclass(frozen=True)
class CollisionReport:
    violations: tuple[tuple[int, int], ...]

    @property
    def count(self) -> int:
        return len(self.violations)

    @property
    def ok(self) -> bool:
        return not self.violations


def _violations(sums: Sequence[int], edges: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    return [(i, j) for i, j in edges if sums[i] == sums[j]]


def _count(sums: Sequence[int], edges: Sequence[tuple[int, int]]) -> int:
    return sum(1 for i, j in edges if sums[i] == sums[j])


def verify(ordering: Ordering, graph: ConstraintGraph) -> CollisionReport:
    """Every edge ``{i, j}`` of the graph with ``s_i == s_j``.

    Index 0 is not a vertex, so ``s_0`` takes part in no constraint.
    """
    if graph.n != ordering.n:
        raise ValueError(f"graph has {graph.n} vertices but the ordering has {ordering.n} elements")
    return CollisionReport(tuple(_violations(ordering.partial_sums, graph.sorted_edges())))


# ---------------------------------------------------------------------------
# zero-sum-free blocks


def has_zero_sum(T: Sequence[int], t: int, ctx: CyclicContext) -> bool:
    """Brute force: does some nonempty subset of ``T`` of size at most ``t`` sum to 0?"""
    for g in range(1, min(t, len(T)) + 1):
        for S in itertools.combinations(T, g):
            if ctx.add(*S) == 0:
                return True
    return False


def zero_sum_free_subset(A: GroundSet, t: int, m: int, max_nodes: int = 1_000_000) -> tuple[int, ...] | None:
    """An ``m``-subset of ``A`` none of whose nonempty subsets of size ``<= t`` sums to zero.

    Depth-first search over elements in increasing order. For each partial
    block the sums of its subsets of each size ``< t`` are kept, so a
    candidate ``c`` is admissible iff ``-c`` is not among them. ``None`` means
    the search failed (or ran out of nodes), not that no such block exists.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if not 0 <= m <= A.n:
        raise ValueError(f"m must be in [0, {A.n}]")
    if m ** t > ZERO_SUM_GUARD:
        raise ValueError(f"m^t = {m ** t} exceeds the enumeration guard {ZERO_SUM_GUARD}")
    ctx = A.context
    cand = sorted(A.elements)
    nodes = 0

    def extend(sums: list[set[int]], c: int) -> list[set[int]]:
        out = [sums[0]]
        for j in range(1, len(sums)):
            out.append(sums[j] | {ctx.canonicalize(s + c) for s in sums[j - 1]})
        return out

    def dfs(start: int, chosen: list[int], sums: list[set[int]]) -> tuple[int, ...] | None:
        nonlocal nodes
        if len(chosen) == m:
            return tuple(chosen)
        if len(cand) - start < m - len(chosen):
            return None
        for idx in range(start, len(cand)):
            nodes += 1
            if nodes > max_nodes:
                return None
            c = cand[idx]
            if c == 0 or any(ctx.neg(c) in sums[j] for j in range(1, len(sums))):
                continue
            found = dfs(idx + 1, chosen + [c], extend(sums, c))
            if found is not None:
                return found
        return None

    # sums[j] = sums of j-element subsets of the block, j < t
    return dfs(0, [], [{0}] + [set() for _ in range(t - 1)])


# ---------------------------------------------------------------------------
# greedy prefix


def prefix_ok(prefix: Sequence[int], graph: ConstraintGraph, total: int, ctx: CyclicContext) -> bool:
    """Independent check: prefix sums collision free on the graph and all different from ``total``."""
    sums = partial_sums(prefix, ctx)
    h = len(prefix)
    if any(s == ctx.canonicalize(total) for s in sums):
        return False
    return all(sums[i] != sums[j] for i, j in graph.edges if j <= h)


def greedy_prefix(
    U: GroundSet, h: int, graph: ConstraintGraph, total: int, max_nodes: int = 1_000_000,
    *, strict: bool = True,
) -> tuple[int, ...] | None:
    """Order ``h`` elements of ``U`` so that prefix sums avoid ``total`` and each other along edges.

    Requires ``h <= |U| - d - 1`` for the graph's maximum degree ``d``, and
    ``total != 0`` (``s_0 = 0`` must avoid it). Under these conditions a choice
    is always available at every position, so backtracking only guards
    against misuse. With ``strict=False`` the length bound is not enforced
    and the search may legitimately come back empty-handed (``None``).
    """
    ctx = U.context
    total = ctx.canonicalize(total)
    d = graph.max_degree()
    if h < 0 or (strict and h > U.n - d - 1):
        raise PreconditionError(f"need 0 <= h <= |U| - d - 1 = {U.n - d - 1}, got h={h}")
    if h > graph.n:
        raise PreconditionError("prefix longer than the graph")
    if total == 0:
        raise PreconditionError("total is 0, so s_0 = 0 already equals it")
    lower = graph.lower_neighbors()
    cand = sorted(U.elements)
    used = [False] * len(cand)
    sums = [0]
    chosen: list[int] = []
    nodes = 0

    def dfs(i: int) -> bool:
        nonlocal nodes
        if i > h:
            return True
        for idx, v in enumerate(cand):
            if used[idx]:
                continue
            nodes += 1
            if nodes > max_nodes:
                return False
            s = ctx.canonicalize(sums[-1] + v)
            if s == total or any(sums[j] == s for j in lower[i]):
                continue
            used[idx] = True
            sums.append(s)
            chosen.append(v)
            if dfs(i + 1):
                return True
            used[idx] = False
            sums.pop()
            chosen.pop()
        return False

    return tuple(chosen) if dfs(1) else None


# ---------------------------------------------------------------------------
# expected collisions


def expected_collisions_bound(n: int, t: int, m: int, d: int) -> float:
    """Upper bound on the expected number of collisions of a random completion.

    ``t^2/m + (m+t) t / m * (1 - ((m-t+1)/(m+t))^t) + 1/3 + t d / m``.
    """
    if not (m > t >= 1 and d >= 1 and n > m + t):
        raise ValueError(f"need m > t >= 1, d >= 1, n > m + t; got n={n}, t={t}, m={m}, d={d}")
    tail = 1 - ((m - (t - 1)) / (m + t)) ** t
    return t * t / m + (m + t) * t / m * tail + 1 / 3 + t * d / m


def _completions(A: GroundSet, prefix: Sequence[int]) -> tuple[int, ...]:
    rest = list(A.elements)
    for v in prefix:
        rest.remove(A.context.canonicalize(v))
    return tuple(rest)


def monte_carlo_collisions(
    A: GroundSet, graph: ConstraintGraph, prefix: Sequence[int], trials: int, seed: int
) -> tuple[float, float]:
    """Mean and standard error of the collision count over uniformly random completions of ``prefix``."""
    if trials < 2:
        raise ValueError("need at least two trials")
    ctx = A.context
    edges = graph.sorted_edges()
    suffix = np.array(_completions(A, prefix))
    head = list(prefix)
    rng = np.random.default_rng(seed)
    counts = np.empty(trials)
    for r in range(trials):
        perm = head + [int(v) for v in rng.permutation(suffix)]
        counts[r] = _count(partial_sums(perm, ctx), edges)
    return float(counts.mean()), float(counts.std(ddof=1) / math.sqrt(trials))


def exact_expected_collisions(A: GroundSet, graph: ConstraintGraph, prefix: Sequence[int] = ()) -> Fraction:
    """Expected collision count over all completions of ``prefix``, by enumeration."""
    ctx = A.context
    edges = graph.sorted_edges()
    suffix = _completions(A, prefix)
    total, count = 0, 0
    for tail in itertools.permutations(suffix):
        total += _count(partial_sums(tuple(prefix) + tail, ctx), edges)
        count += 1
    return Fraction(total, count)


# ---------------------------------------------------------------------------
# solvers


def exhaustive_sequencing(A: GroundSet, graph: ConstraintGraph) -> Ordering | None:
    """Lexicographically first Gamma-sequencing (by element value), or ``None`` if none exists."""
    n = A.n
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive search limited to n <= {EXHAUSTIVE_MAX_N}")
    if graph.n != n:
        raise ValueError("graph size does not match the set")
    ctx = A.context
    lower = graph.lower_neighbors()
    cand = sorted(A.elements)
    used = [False] * n
    sums = [0]
    chosen: list[int] = []

    def dfs(i: int) -> bool:
        if i > n:
            return True
        for idx, v in enumerate(cand):
            if used[idx]:
                continue
            s = ctx.canonicalize(sums[-1] + v)
            if any(sums[j] == s for j in lower[i]):
                continue
            used[idx] = True
            sums.append(s)
            chosen.append(v)
            if dfs(i + 1):
                return True
            used[idx] = False
            sums.pop()
            chosen.pop()
        return False

    return Ordering(A, tuple(chosen)) if dfs(1) else None


@dataclass(frozen=True)
class SequencingPlan:
    t: int
    m: int
    h: int
    block: tuple[int, ...]
    prefix: tuple[int, ...]


@dataclass(frozen=True)
class SequencingResult:
    ordering: Ordering
    report: CollisionReport
    trials_used: int
    strategy: str
    plan: SequencingPlan | None = None

    def to_dict(self) -> dict:
        return {
            "ordering": list(self.ordering.perm),
            "partial_sums": list(self.ordering.partial_sums),
            "violations": [list(v) for v in self.report.violations],
            "trials_used": self.trials_used,
            "strategy": self.strategy,
            "plan": None if self.plan is None else {
                "t": self.plan.t, "m": self.plan.m, "h": self.plan.h,
                "block": list(self.plan.block), "prefix": list(self.plan.prefix),
            },
        }


def default_parameters(n: int, d: int, t: int | None = None, m: int | None = None) -> tuple[int, int] | None:
    """``(t, m)`` for the structured pipeline, or ``None`` when ``n`` is too small for it.

    ``t`` defaults to ``d + 1``; ``m`` to the smallest value with collision
    bound below 0.9, capped at ``n - t - 1``.
    """
    t = d + 1 if t is None else t
    cap = n - t - 1
    if m is None:
        m = cap
        for cand in range(t + 1, cap + 1):
            if expected_collisions_bound(n, t, cand, max(d, 1)) < 0.9:
                m = cand
                break
    if t < 1 or m <= t or m > cap:
        return None
    return t, m


def plan_sequencing(A: GroundSet, graph: ConstraintGraph, t: int | None = None, m: int | None = None) -> SequencingPlan | None:
    """Zero-sum-free block plus greedy prefix, or ``None`` when either stage is unavailable."""
    params = default_parameters(A.n, graph.max_degree(), t, m)
    if params is None:
        return None
    t, m = params
    try:
        block = zero_sum_free_subset(A, t, m)
    except ValueError:
        return None
    if block is None:
        return None
    U = GroundSet(A.context, A.without(block))
    h = A.n - m - t
    try:
        prefix = greedy_prefix(U, h, graph, A.total())
    except PreconditionError:
        return None
    if prefix is None:
        return None
    return SequencingPlan(t, m, h, block, prefix)


def _local_repair(perm: list[int], free: list[int], ctx: CyclicContext, edges, max_rounds: int) -> tuple[list[int], int]:
    """First-improvement transpositions among positions ``free`` (1-based)."""
    perm = list(perm)
    current = _count(partial_sums(perm, ctx), edges)
    for _ in range(max_rounds):
        if current == 0:
            break
        sums = partial_sums(perm, ctx)
        hot = sorted({p for i, j in _violations(sums, edges) for p in free if i < p <= j})
        improved = False
        for p in hot:
            for q in free:
                if q == p:
                    continue
                perm[p - 1], perm[q - 1] = perm[q - 1], perm[p - 1]
                c = _count(partial_sums(perm, ctx), edges)
                if c < current:
                    current, improved = c, True
                    break
                perm[p - 1], perm[q - 1] = perm[q - 1], perm[p - 1]
            if improved:
                break
        if not improved:
            break
    return perm, current


def _run_trials(
    trial: Callable[[int], tuple[list[int], int]], start: int, count: int, workers: int
) -> tuple[int | None, tuple[int, list[int], int]]:
    """Run trials ``start .. start+count-1``; return the first success index and the best trial.

    The outcome depends only on trial indices, never on ``workers``.
    """
    best: tuple[int, list[int], int] | None = None

    def consider(idx, result):
        nonlocal best
        perm, c = result
        if best is None or c < best[2]:
            best = (idx, perm, c)

    if workers <= 1:
        for idx in range(start, start + count):
            res = trial(idx)
            consider(idx, res)
            if res[1] == 0:
                return idx, best
        return None, best

    batch = 4 * workers
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for lo in range(start, start + count, batch):
            idxs = range(lo, min(lo + batch, start + count))
            for idx, res in zip(idxs, pool.map(trial, idxs)):
                consider(idx, res)
                if res[1] == 0:
                    return idx, best
    return None, best


def randomized_sequencing(
    A: GroundSet,
    graph: ConstraintGraph,
    *,
    t: int | None = None,
    m: int | None = None,
    max_trials: int = 2000,
    seed: int = 0,
    workers: int = 1,
    repair_rounds: int = 200,
) -> SequencingResult:
    """Find a Gamma-sequencing of ``A`` by random completion plus local repair.

    When the structured plan is available, half of the trial budget shuffles
    only the positions after the greedy prefix and repair swaps stay in that
    range. The rest of the budget (all of it when there is no plan) shuffles
    whole orderings. Trial ``r`` draws from ``default_rng([seed, r])``.

    Raises :class:`SearchExhausted` if every trial and repair fails.
    """
    if 0 in A:
        raise ValueError("0 must not belong to the set")
    if graph.n != A.n:
        raise ValueError(f"graph has {graph.n} vertices but the set has {A.n} elements")
    if max_trials < 1:
        raise ValueError("max_trials must be >= 1")
    ctx = A.context
    n = A.n
    edges = graph.sorted_edges()
    plan = plan_sequencing(A, graph, t, m)

    def shuffler(head: tuple[int, ...]) -> Callable[[int], tuple[list[int], int]]:
        tail = np.array(_completions(A, head))

        def trial(idx: int) -> tuple[list[int], int]:
            rng = np.random.default_rng([seed, idx])
            perm = list(head) + [int(v) for v in rng.permutation(tail)]
            return perm, _count(partial_sums(perm, ctx), edges)
        return trial

    used = 0
    best_overall: tuple[list[int], int] | None = None
    stages = []
    if plan is not None:
        stages.append(("structured", plan.prefix, (max_trials + 1) // 2))
    stages.append(("fallback", (), max_trials - sum(s[2] for s in stages)))

    for name, head, budget in stages:
        if budget <= 0:
            continue
        hit, best = _run_trials(shuffler(head), used, budget, workers)
        if hit is not None:
            used = hit + 1
            ordering = Ordering(A, tuple(best[1]))
            return SequencingResult(ordering, verify(ordering, graph), used, name, plan)
        used += budget
        free = list(range(len(head) + 1, n + 1))
        perm, c = _local_repair(best[1], free, ctx, edges, repair_rounds)
        if best_overall is None or c < best_overall[1]:
            best_overall = (perm, c)
        if c == 0:
            ordering = Ordering(A, tuple(perm))
            return SequencingResult(ordering, verify(ordering, graph), used, name + "+repair", plan)

    ordering = Ordering(A, tuple(best_overall[0]))
    raise SearchExhausted(ordering, verify(ordering, graph), used)
