"""Ambient groups (Z and Z_k), ground sets and constraint graphs.

Group elements are plain Python ints. Residues of Z_k are kept canonical in
``[0, k)``; integers are unbounded, so sums never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator


class InputError(ValueError):
    """Malformed input file or argument; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    for f in range(3, math.isqrt(k) + 1, 2):
        if k % f == 0:
            return False
    return True


@dataclass(frozen=True)
class CyclicContext:
    """Either the integers (``modulus is None``) or Z_k."""

    modulus: int | None = None
    is_prime: bool | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.modulus is None:
            object.__setattr__(self, "is_prime", None)
            return
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "is_prime", is_prime(self.modulus))

    @classmethod
    def integers(cls) -> CyclicContext:
        return cls(None)

    @classmethod
    def cyclic(cls, k: int) -> CyclicContext:
        return cls(int(k))

    @property
    def kind(self) -> str:
        return "integers" if self.modulus is None else "cyclic"

    @property
    def is_cyclic(self) -> bool:
        return self.modulus is not None

    def canonicalize(self, x: int) -> int:
        return int(x) if self.modulus is None else int(x) % self.modulus

    def add(self, *xs: int) -> int:
        return self.canonicalize(sum(xs))

    def neg(self, x: int) -> int:
        return self.canonicalize(-x)

    def __str__(self) -> str:
        return "Z" if self.modulus is None else f"Z_{self.modulus}"


INTEGERS = CyclicContext.integers()


def canonicalize(x: int, ctx: CyclicContext) -> int:
    return ctx.canonicalize(x)


@dataclass(frozen=True)
class GroundSet:
    """A set of ``n`` distinct elements of ``context`` kept in the given order."""

    context: CyclicContext
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(self.context.canonicalize(x) for x in self.elements)
        if not elems:
            raise ValueError("ground set must be nonempty")
        if len(set(elems)) != len(elems):
            raise ValueError(f"ground set elements must be distinct in {self.context}: {elems}")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def of(cls, elements: Iterable[int], modulus: int | None = None) -> GroundSet:
        ctx = INTEGERS if modulus is None else CyclicContext.cyclic(modulus)
        return cls(ctx, tuple(elements))

    @property
    def n(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and self.context.canonicalize(x) in self.elements

    def total(self) -> int:
        return self.context.add(*self.elements)

    def is_symmetric(self) -> bool:
        s = set(self.elements)
        return all(self.context.neg(v) in s for v in s)

    def sorted(self) -> GroundSet:
        return GroundSet(self.context, tuple(sorted(self.elements)))

    def without(self, removed: Iterable[int]) -> tuple[int, ...]:
        gone = set(removed)
        return tuple(v for v in self.elements if v not in gone)


def centered_interval_set(n: int, ctx: CyclicContext = INTEGERS) -> GroundSet:
    """``{-(n-1)/2, ..., (n-1)/2}`` for odd ``n``; the translate ``{1, ..., n}`` for even ``n``.

    Every downstream consumer only looks at maximum point masses, which are
    translation invariant.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n % 2 == 1:
        half = (n - 1) // 2
        values = range(-half, half + 1)
    else:
        values = range(1, n + 1)
    return GroundSet(ctx, tuple(values))


@dataclass(frozen=True)
class ConstraintGraph:
    """Graph on vertices ``1..n``; edges stored as sorted pairs ``(i, j)`` with ``i < j``."""

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {e} has an endpoint outside [1, {self.n}]")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> ConstraintGraph:
        return cls(n, frozenset(tuple(e) for e in edges))

    @classmethod
    def complete(cls, n: int) -> ConstraintGraph:
        return cls.from_edges(n, ((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def degrees(self) -> list[int]:
        deg = [0] * (self.n + 1)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg[1:]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def neighbors(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for i, j in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def lower_neighbors(self) -> dict[int, list[int]]:
        """For each vertex, its neighbours with a smaller index (used by prefix searches)."""
        return {v: [u for u in nb if u < v] for v, nb in self.neighbors().items()}

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def banded_graph(n: int, t: int) -> ConstraintGraph:
    """Edges ``{i, j}`` with ``0 < |i - j| <= t`` (t-weak sequenceability)."""
    if not 1 <= t < n:
        raise ValueError(f"need 1 <= t < n, got t={t}, n={n}")
    return ConstraintGraph.from_edges(
        n, ((i, j) for i in range(1, n + 1) for j in range(i + 1, min(n, i + t) + 1))
    )


# ---------------------------------------------------------------------------
# text formats


def _data_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise InputError(f"expected integers, got {line!r}", lineno) from None


def parse_ground_set(text: str) -> GroundSet:
    """Parse ``"k n"`` followed by ``n`` whitespace-separated values (``k = 0`` means Z)."""
    lines = _data_lines(text)
    if not lines:
        raise InputError("empty ground-set file", 1)
    lineno, header = lines[0]
    head = _ints(header, lineno)
    if len(head) != 2:
        raise InputError("header must be 'k n'", lineno)
    k, n = head
    if k < 0 or k == 1:
        raise InputError(f"modulus must be 0 (integers) or >= 2, got {k}", lineno)
    if n < 1:
        raise InputError(f"set size must be >= 1, got {n}", lineno)
    values: list[int] = []
    last = lineno
    for lineno, line in lines[1:]:
        values.extend(_ints(line, lineno))
        last = lineno
    if len(values) != n:
        raise InputError(f"expected {n} values, found {len(values)}", last)
    ctx = INTEGERS if k == 0 else CyclicContext.cyclic(k)
    try:
        return GroundSet(ctx, tuple(values))
    except ValueError as exc:
        raise InputError(str(exc), last) from None


def format_ground_set(A: GroundSet) -> str:
    k = A.context.modulus or 0
    return f"{k} {A.n}\n" + " ".join(map(str, A.elements)) + "\n"


def parse_graph(text: str) -> ConstraintGraph:
    """Parse ``"n m"`` followed by ``m`` lines ``"i j"`` (1-based vertices)."""
    lines = _data_lines(text)
    if not lines:
        raise InputError("empty graph file", 1)
    lineno, header = lines[0]
    head = _ints(header, lineno)
    if len(head) != 2:
        raise InputError("header must be 'n m'", lineno)
    n, m = head
    if n < 1:
        raise InputError(f"vertex count must be >= 1, got {n}", lineno)
    body = lines[1:]
    if len(body) != m:
        raise InputError(f"expected {m} edge lines, found {len(body)}", body[-1][0] if body else lineno)
    edges = []
    for lineno, line in body:
        pair = _ints(line, lineno)
        if len(pair) != 2:
            raise InputError("edge line must be 'i j'", lineno)
        i, j = pair
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise InputError(f"invalid edge {i} {j} for n={n}", lineno)
        edges.append((i, j))
    return ConstraintGraph.from_edges(n, edges)


def format_graph(G: ConstraintGraph) -> str:
    edges = G.sorted_edges()
    return f"{G.n} {len(edges)}\n" + "".join(f"{i} {j}\n" for i, j in edges)


def read_ground_set(path: str | Path) -> GroundSet:
    return parse_ground_set(Path(path).read_text())


def read_graph(path: str | Path) -> ConstraintGraph:
    return parse_graph(Path(path).read_text())
