"""Complete r-uniform hypergraphs, colex edge indexing and clique structure.

Vertices are 1-based integers.  An edge is a strictly increasing tuple of
``r`` vertices; its coordinate in ``{0,1}^C(n,r)`` is its colexicographic
rank, which does not depend on ``n``.  Edge sets are Python ints used as
bit vectors over those ranks.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

from . import config
from .errors import CapExceededError

Edge = tuple


def _check_edge(edge: Sequence[int], n: int | None = None, r: int | None = None) -> tuple:
    edge = tuple(int(v) for v in edge)
    if not edge:
        raise ValueError("edge must contain at least one vertex")
    if any(b <= a for a, b in zip(edge, edge[1:])):
        raise ValueError(f"edge {edge} is not strictly increasing")
    if edge[0] < 1:
        raise ValueError(f"edge {edge} has a non-positive vertex label")
    if r is not None and len(edge) != r:
        raise ValueError(f"edge {edge} does not have {r} vertices")
    if n is not None and edge[-1] > n:
        raise ValueError(f"edge {edge} has a vertex above n={n}")
    return edge


def rank_edge(edge: Sequence[int]) -> int:
    """Colex rank of a sorted vertex tuple: sum of C(v_i - 1, i)."""
    edge = _check_edge(edge)
    return sum(comb(v - 1, i) for i, v in enumerate(edge, start=1))


def unrank_edge(rank: int, n: int, r: int) -> tuple:
    if r < 1:
        raise ValueError("r must be positive")
    total = comb(n, r)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} outside [0, {total}) for n={n}, r={r}")
    vertices = []
    for i in range(r, 0, -1):
        # largest c with C(c, i) <= rank
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        rank -= comb(c, i)
        vertices.append(c + 1)
    return tuple(reversed(vertices))


@dataclass(frozen=True)
class CompleteHypergraph:
    """K^r_n; construction enforces the ambient size cap."""

    n: int
    r: int

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"uniformity r must be at least 2, got {self.r}")
        if self.n < self.r:
            raise ValueError(f"need n >= r, got n={self.n}, r={self.r}")
        cap = config.max_edges()
        if comb(self.n, self.r) > cap:
            raise CapExceededError(
                f"K^{self.r}_{self.n} has {comb(self.n, self.r)} edges, cap is {cap}"
            )

    @property
    def edge_count(self) -> int:
        return comb(self.n, self.r)

    def edges(self) -> list:
        return [unrank_edge(i, self.n, self.r) for i in range(self.edge_count)]


@dataclass(frozen=True)
class EdgeSet:
    """A set of edges of K^r_n stored as a bit vector over colex ranks."""

    n: int
    r: int
    bits: int = 0

    def __post_init__(self):
        CompleteHypergraph(self.n, self.r)
        if self.bits < 0 or self.bits >> comb(self.n, self.r):
            raise ValueError(f"bit vector has ranks outside K^{self.r}_{self.n}")

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[Sequence[int]]) -> "EdgeSet":
        bits = 0
        for e in edges:
            bits |= 1 << rank_edge(_check_edge(sorted(e), n, r))
        return cls(n, r, bits)

    @classmethod
    def from_ranks(cls, n: int, r: int, ranks: Iterable[int]) -> "EdgeSet":
        bits = 0
        for k in ranks:
            bits |= 1 << k
        return cls(n, r, bits)

    @classmethod
    def complete(cls, n: int, r: int) -> "EdgeSet":
        return cls(n, r, (1 << comb(n, r)) - 1)

    @property
    def ambient(self) -> CompleteHypergraph:
        return CompleteHypergraph(self.n, self.r)

    def ranks(self) -> list:
        out = []
        bits, k = self.bits, 0
        while bits:
            if bits & 1:
                out.append(k)
            bits >>= 1
            k += 1
        return out

    def edges(self) -> list:
        return [unrank_edge(k, self.n, self.r) for k in self.ranks()]

    def vertices(self) -> list:
        return sorted({v for e in self.edges() for v in e})

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.edges())

    def __contains__(self, edge) -> bool:
        return bool(self.bits >> rank_edge(sorted(edge)) & 1)

    def _coerce(self, other: "EdgeSet") -> int:
        if not isinstance(other, EdgeSet):
            raise TypeError(f"expected EdgeSet, got {type(other).__name__}")
        if other.r != self.r:
            raise ValueError("edge sets have different uniformity")
        return max(self.n, other.n)

    def __or__(self, other: "EdgeSet") -> "EdgeSet":
        n = self._coerce(other)
        return EdgeSet(n, self.r, self.bits | other.bits)

    def __and__(self, other: "EdgeSet") -> "EdgeSet":
        n = self._coerce(other)
        return EdgeSet(n, self.r, self.bits & other.bits)

    def __sub__(self, other: "EdgeSet") -> "EdgeSet":
        n = self._coerce(other)
        return EdgeSet(n, self.r, self.bits & ~other.bits)

    def issubset(self, other: "EdgeSet") -> bool:
        self._coerce(other)
        return self.bits & ~other.bits == 0

    def embed(self, n: int) -> "EdgeSet":
        """Same edges viewed inside K^r_n (colex ranks are stable in n)."""
        return EdgeSet(n, self.r, self.bits)

    def with_edge(self, edge) -> "EdgeSet":
        return EdgeSet(self.n, self.r, self.bits | 1 << rank_edge(_check_edge(sorted(edge), self.n, self.r)))

    def without_edge(self, edge) -> "EdgeSet":
        return EdgeSet(self.n, self.r, self.bits & ~(1 << rank_edge(_check_edge(sorted(edge), self.n, self.r))))

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_dict(cls, data: dict) -> "EdgeSet":
        return cls.from_edges(int(data["n"]), int(data["r"]), data["edges"])


def _colex(subsets: Iterable[tuple]) -> list:
    return sorted(subsets, key=lambda s: tuple(reversed(s)))


def enumerate_cliques(n: int, r: int, a: int) -> list:
    """All a-subsets of [n] in colex order (the vertex sets of candidate a-cliques)."""
    if a <= r:
        raise ValueError(f"clique size a={a} must exceed uniformity r={r}")
    if a > n:
        return []
    return _colex(itertools.combinations(range(1, n + 1), a))


def _mask(vertices: Sequence[int], r: int) -> int:
    bits = 0
    for e in itertools.combinations(vertices, r):
        bits |= 1 << rank_edge(e)
    return bits


def clique_edge_set(clique: Sequence[int], r: int, n: int | None = None) -> EdgeSet:
    """All r-subsets of ``clique`` as an edge set of K^r_n (n defaults to max(clique))."""
    clique = tuple(sorted(clique))
    if len(set(clique)) != len(clique):
        raise ValueError(f"clique {clique} repeats a vertex")
    if len(clique) <= r:
        raise ValueError(f"clique of size {len(clique)} must exceed r={r}")
    _check_edge(clique, n)
    return EdgeSet(n or clique[-1], r, _mask(clique, r))


@lru_cache(maxsize=64)
def clique_masks(n: int, a: int, r: int) -> tuple:
    """(clique, bit mask) for every a-subset of [n], colex order; cached per (n, a, r)."""
    CompleteHypergraph(n, r)
    return tuple((q, _mask(q, r)) for q in enumerate_cliques(n, r, a))


def full_cliques(edges: EdgeSet, a: int) -> list:
    """Vertex a-subsets whose C(a, r) edges all lie in ``edges``."""
    bits = edges.bits
    return [q for q, m in clique_masks(edges.n, a, edges.r) if m & bits == m]


def is_clique_free(edges: EdgeSet, a: int) -> bool:
    if a <= edges.r:
        raise ValueError(f"clique size a={a} must exceed uniformity r={edges.r}")
    bits = edges.bits
    for _, m in clique_masks(edges.n, a, edges.r):
        if m & bits == m:
            return False
    return True


# -- wheels and webs --------------------------------------------------------

def cyclic(i: int, m: int) -> int:
    """Reduce an index into 1..m (0 maps to m)."""
    return (i - 1) % m + 1


def cyclic_span(vertices: Iterable[int], m: int) -> int:
    """Length of the shortest cyclic window of 1..m containing ``vertices``."""
    pos = sorted(set(vertices))
    if not pos:
        return 0
    gaps = [b - a for a, b in zip(pos, pos[1:])] + [pos[0] + m - pos[-1]]
    return m - max(gaps) + 1


@dataclass(frozen=True)
class WheelSpec:
    """Hyperwheel on l vertices: hub l, cycle 1..l-1 in order."""

    l: int
    a: int
    r: int

    def __post_init__(self):
        if not 2 <= self.r < self.a:
            raise ValueError(f"need 2 <= r < a, got r={self.r}, a={self.a}")
        if self.l < 2 * self.a - 1:
            raise ValueError(f"wheel needs l >= 2a-1 = {2 * self.a - 1}, got l={self.l}")

    @property
    def hub(self) -> int:
        return self.l

    @property
    def cycle_length(self) -> int:
        return self.l - 1

    @property
    def stride(self) -> int:
        return self.a - self.r + 1


@dataclass(frozen=True)
class WebSpec:
    """Hyperweb on the cycle 1..l; every a consecutive vertices form a clique."""

    l: int
    a: int
    r: int

    def __post_init__(self):
        if not 2 <= self.r < self.a:
            raise ValueError(f"need 2 <= r < a, got r={self.r}, a={self.a}")
        if self.l < 2 * self.a:
            raise ValueError(f"web needs l >= 2a = {2 * self.a}, got l={self.l}")

    @property
    def cycle_length(self) -> int:
        return self.l

    @property
    def stride(self) -> int:
        return self.a - self.r + 1


def wheel_clique(spec: WheelSpec, i: int) -> tuple:
    """Clique i: cycle vertices i..i+a-2 (mod l-1) plus the hub."""
    m = spec.cycle_length
    if not 1 <= i <= m:
        raise ValueError(f"wheel clique index must be in 1..{m}, got {i}")
    return tuple(sorted({cyclic(i + k, m) for k in range(spec.a - 1)} | {spec.hub}))


def web_clique(spec: WebSpec, i: int) -> tuple:
    m = spec.cycle_length
    if not 1 <= i <= m:
        raise ValueError(f"web clique index must be in 1..{m}, got {i}")
    return tuple(sorted({cyclic(i + k, m) for k in range(spec.a)}))


def window_edge_set(n: int, m: int, window: int, r: int, extra: int | None = None) -> EdgeSet:
    """Union of the cliques {i..i+window-1 (mod m)} (+ ``extra``) over i in 1..m."""
    bits = 0
    for i in range(1, m + 1):
        q = {cyclic(i + k, m) for k in range(window)}
        if extra is not None:
            q.add(extra)
        bits |= _mask(sorted(q), r)
    return EdgeSet(n, r, bits)


def wheel_edge_set(spec: WheelSpec) -> EdgeSet:
    return window_edge_set(spec.l, spec.cycle_length, spec.a - 1, spec.r, extra=spec.hub)


def web_edge_set(spec: WebSpec) -> EdgeSet:
    return window_edge_set(spec.l, spec.l, spec.a, spec.r)


def wheel_edge_span(spec: WheelSpec, edge: Sequence[int]) -> int:
    """Number of consecutive cycle vertices spanned by a wheel edge (hub excluded)."""
    return cyclic_span([v for v in edge if v != spec.hub], spec.cycle_length)


def web_edge_span(spec: WebSpec, edge: Sequence[int]) -> int:
    return cyclic_span(edge, spec.l)
