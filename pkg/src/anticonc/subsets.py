"""Fixed-cardinality subset sums (Littlewood-Offord over Z and Z_k) and Freiman maps."""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .distributions import iid_sum
from .groups import CyclicContext, GroundSet

FREIMAN_GUARD = 10 ** 7


@dataclass(frozen=True, eq=False)
class SubsetSumTable:
    """``rows[ell][x]`` = number of ``ell``-subsets of ``ground`` summing to ``x`` (zeros omitted)."""

    ground: GroundSet
    rows: tuple[dict[int, int], ...]

    @property
    def ell_max(self) -> int:
        return len(self.rows) - 1

    def count(self, ell: int, x: int) -> int:
        return self.rows[ell].get(self.ground.context.canonicalize(x), 0)

    def row(self, ell: int) -> dict[int, int]:
        return dict(sorted(self.rows[ell].items()))

    def prob(self, ell: int, x: int) -> Fraction:
        return Fraction(self.count(ell, x), math.comb(self.ground.n, ell))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["ell", "x", "count_decimal"])
        for ell, row in enumerate(self.rows):
            for x, c in sorted(row.items()):
                writer.writerow([ell, x, str(c)])
        return buf.getvalue()


def build_table(A: GroundSet, ell_max: int | None = None) -> SubsetSumTable:
    """Exact subset-sum counts for every cardinality up to ``ell_max``.

    Elements are processed one at a time; cardinalities run downwards so each
    element is used at most once per subset.
    """
    n = A.n
    if ell_max is None:
        ell_max = n
    if not 0 <= ell_max <= n:
        raise ValueError(f"ell_max must be in [0, {n}]")
    ctx = A.context
    rows: list[dict[int, int]] = [{0: 1}] + [{} for _ in range(ell_max)]
    for i, v in enumerate(A.elements):
        for ell in range(min(i + 1, ell_max), 0, -1):
            src, dst = rows[ell - 1], rows[ell]
            for x, c in src.items():
                y = ctx.canonicalize(x + v)
                dst[y] = dst.get(y, 0) + c
    return SubsetSumTable(A, tuple(rows))


def enumerate_table(A: GroundSet, ell_max: int | None = None) -> SubsetSumTable:
    """Same table by listing every subset; an oracle for :func:`build_table`."""
    if ell_max is None:
        ell_max = A.n
    rows = []
    for ell in range(ell_max + 1):
        row: dict[int, int] = {}
        for X in itertools.combinations(A.elements, ell):
            x = A.context.add(*X)
            row[x] = row.get(x, 0) + 1
        rows.append(row)
    return SubsetSumTable(A, tuple(rows))


def lo_max_prob(A: GroundSet, ell: int, table: SubsetSumTable | None = None) -> tuple[int, Fraction]:
    """Most likely sum of a uniformly random ``ell``-subset of ``A`` and its probability."""
    if not 1 <= ell <= A.n:
        raise ValueError(f"ell must be in [1, {A.n}]")
    if table is None or table.ell_max < ell:
        table = build_table(A, ell)
    row = table.rows[ell]
    best = max(row.values())
    x = min(x for x, c in row.items() if c == best)
    return x, Fraction(best, math.comb(A.n, ell))


def distinct_draw_prob(n: int, ell: int) -> Fraction:
    """Probability that ``ell`` uniform draws from ``n`` items are pairwise distinct."""
    return Fraction(math.perm(n, ell), n ** ell)


@dataclass(frozen=True)
class RelationReport:
    ell: int
    distinct_prob: Fraction
    # (x, P[Y = x], P[sum X = x] * P[all distinct])
    points: tuple[tuple[int, Fraction, Fraction], ...]

    @property
    def holds(self) -> bool:
        return all(lhs >= rhs for _, lhs, rhs in self.points)

    @property
    def distinct_exceeds_half(self) -> bool:
        return self.distinct_prob > Fraction(1, 2)

    @property
    def min_margin(self) -> Fraction:
        return min(lhs - rhs for _, lhs, rhs in self.points)


def iid_vs_distinct_relation(A: GroundSet, ell: int) -> RelationReport:
    """Pointwise ``P[Y = x] >= P[sum X = x] * P[draws distinct]`` for every reachable ``x``.

    ``Y`` sums ``ell`` i.i.d. uniform draws from ``A``; ``X`` is a uniform
    ``ell``-subset.
    """
    if not 1 <= ell <= A.n:
        raise ValueError(f"ell must be in [1, {A.n}]")
    law = iid_sum(A, ell)
    table = build_table(A, ell)
    q = distinct_draw_prob(A.n, ell)
    xs = sorted(set(x for x, _ in law.items()) | set(table.rows[ell]))
    pts = tuple((x, law.prob(x), table.prob(ell, x) * q) for x in xs)
    return RelationReport(ell, q, pts)


def split_count(A: GroundSet, ell: int, ell0: int, x: int) -> int:
    """``sum over (ell-ell0)-subsets X1`` of the number of ``ell0``-subsets of ``A - X1`` hitting ``x - sum X1``.

    Choosing ``X1`` first and ``X2`` inside the complement reaches every
    ``ell``-subset exactly ``C(ell, ell0)`` times, so this equals
    ``C(ell, ell0) * N[ell][x]``.
    """
    ctx = A.context
    total = 0
    if not 0 <= ell0 <= ell <= A.n:
        raise ValueError("need 0 <= ell0 <= ell <= n")
    for X1 in itertools.combinations(A.elements, ell - ell0):
        residual = ctx.canonicalize(x - sum(X1))
        if ell0 == 0:
            total += residual == 0
        else:
            total += build_table(GroundSet(ctx, A.without(X1)), ell0).count(ell0, residual)
    return total


def _multiset_groups(
    domain: tuple[int, ...], ell: int, ctx: CyclicContext, image: Mapping[int, int], img_ctx: CyclicContext
) -> bool:
    if len(domain) ** ell > FREIMAN_GUARD:
        raise ValueError(f"|A|^ell = {len(domain) ** ell} exceeds the enumeration guard {FREIMAN_GUARD}")
    seen: dict[int, int] = {}
    for tup in itertools.combinations_with_replacement(domain, ell):
        s = ctx.add(*tup)
        t = img_ctx.add(*(image[a] for a in tup))
        if seen.setdefault(s, t) != t:
            return False
    return True


def freiman_check(
    phi: Mapping[int, int], ell: int, source: CyclicContext, target: CyclicContext, *, isomorphism: bool = False
) -> bool:
    """Whether ``phi`` is a Freiman homomorphism of order ``ell`` (or an isomorphism).

    Equal ``ell``-fold sums in the source must map to equal sums in the target.
    With ``isomorphism=True`` the map must also be injective and its inverse
    must satisfy the same property.
    """
    if ell < 1:
        raise ValueError("order must be >= 1")
    src = {source.canonicalize(a): target.canonicalize(b) for a, b in phi.items()}
    if not _multiset_groups(tuple(sorted(src)), ell, source, src, target):
        return False
    if not isomorphism:
        return True
    inv = {b: a for a, b in src.items()}
    if len(inv) != len(src):
        return False
    return _multiset_groups(tuple(sorted(inv)), ell, target, inv, source)
