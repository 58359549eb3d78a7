"""Turán numbers: the t-recurrence for graphs and a brute-force oracle.

``ex_exact`` evaluates the nested-floor recurrence (graphs only).  The
oracle ``ex_oracle`` is independent of it: it maximises the weight of an
a-clique-free subset of an arbitrary support by enumerating minimum-weight
hitting sets of the cliques with an exact branch and bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping

from .combinat import EdgeSet, clique_masks, rank_edge
from .config import DEFAULT_MAX_OPTIMA, DEFAULT_ORACLE_MAX_EDGES
from .errors import CapExceededError


@dataclass(frozen=True)
class ExtremalTable:
    a: int
    rows: tuple  # (i, t_a^i) for i = a..n_max

    def __getitem__(self, i: int) -> int:
        lo = self.a
        if not lo <= i < lo + len(self.rows):
            raise KeyError(i)
        return self.rows[i - lo][1]

    def to_dict(self) -> dict:
        return {"a": self.a, "rows": [{"n": i, "t": t} for i, t in self.rows]}

    def to_csv(self) -> str:
        return "n,t\n" + "".join(f"{i},{t}\n" for i, t in self.rows)


def t_table(a: int, n_max: int) -> ExtremalTable:
    """t_a^a = C(a,2) - 1 and t_a^{i+1} = floor((i+1) t_a^i / (i-1))."""
    if a < 3:
        raise ValueError(f"need a >= 3, got {a}")
    if n_max < a:
        raise ValueError(f"need n_max >= a, got n_max={n_max}, a={a}")
    t = comb(a, 2) - 1
    rows = [(a, t)]
    for i in range(a, n_max):
        t = (i + 1) * t // (i - 1)
        rows.append((i + 1, t))
    return ExtremalTable(a, tuple(rows))


@lru_cache(maxsize=1024)
def ex_exact(n: int, a: int) -> int:
    """ex(n, a, 2) from the nested-floor recurrence."""
    if not 3 <= a <= n:
        raise ValueError(f"need 3 <= a <= n, got n={n}, a={a}")
    return t_table(a, n)[n]


def turan_part_sizes(n: int, a: int) -> list:
    """Sizes of the a-1 parts, as equal as possible, larger parts first."""
    if not 3 <= a <= n:
        raise ValueError(f"need 3 <= a <= n, got n={n}, a={a}")
    k = a - 1
    q, big = divmod(n, k)
    return [q + 1] * big + [q] * (k - big)


def turan_graph(n: int, a: int) -> EdgeSet:
    """Complete (a-1)-partite graph on [n] with balanced consecutive parts."""
    parts, start = [], 1
    for size in turan_part_sizes(n, a):
        parts.append(range(start, start + size))
        start += size
    part_of = {v: i for i, p in enumerate(parts) for v in p}
    edges = [(u, w) for u in range(1, n + 1) for w in range(u + 1, n + 1) if part_of[u] != part_of[w]]
    return EdgeSet.from_edges(n, 2, edges)


def turan_bound(n: int, a: int) -> Fraction:
    """(1 - 1/(a-1)) n^2 / 2 as an exact rational."""
    if not 3 <= a <= n:
        raise ValueError(f"need 3 <= a <= n, got n={n}, a={a}")
    return (1 - Fraction(1, a - 1)) * n * n / 2


# -- oracle -----------------------------------------------------------------

@dataclass
class OracleResult:
    value: int
    optima: list = field(default_factory=list)
    node_count: int = 0
    truncated: bool = False

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "node_count": self.node_count,
            "truncated": self.truncated,
            "optima": [s.to_dict()["edges"] for s in self.optima],
        }


def _normalize_weights(support: EdgeSet, weights) -> dict:
    ranks = support.ranks()
    if weights is None:
        return {k: 1 for k in ranks}
    out = {}
    for key, w in dict(weights).items():
        k = key if isinstance(key, int) else rank_edge(sorted(key))
        if w != int(w) or w < 0:
            raise ValueError(f"weights must be nonnegative integers, got {w!r}")
        out[k] = int(w)
    missing = set(ranks) - set(out)
    extra = set(out) - set(ranks)
    if extra:
        raise ValueError(f"weights given for {len(extra)} edges outside the support")
    for k in missing:
        out[k] = 1
    return out


class _HittingSetSearch:
    """Branch and bound for minimum-weight hitting sets of clique edge sets.

    Edges are local indices 0..m-1; a node carries the removed mask, the
    mask of edges fixed as kept, and the removed weight.  Branching takes the
    un-hit clique with the fewest free edges (lowest colex label on ties) and
    for its free edges e_1 < e_2 < ... tries "remove e_k, keep e_1..e_{k-1}",
    which partitions the search space so every leaf is distinct.
    """

    def __init__(self, weights: list, cliques: list, find_all: bool, max_optima: int):
        self.w = weights
        self.cliques = cliques
        self.find_all = find_all
        self.max_optima = max_optima
        self.best = sum(weights) + 1
        self.leaves: list = []
        self.truncated = False
        self.nodes = 0

    def _min_weight(self, mask: int) -> int:
        w = self.w
        best = None
        while mask:
            low = mask & -mask
            v = w[low.bit_length() - 1]
            if best is None or v < best:
                best = v
            mask ^= low
        return best

    def run(self):
        self._visit(0, 0, 0)

    def _visit(self, removed: int, kept: int, cost: int):
        self.nodes += 1
        free_sets = []
        for c in self.cliques:
            if not c & removed:
                f = c & ~kept
                if not f:
                    return  # a clique of kept edges: infeasible
                free_sets.append(f)
        if not free_sets:
            self._leaf(removed, cost)
            return
        order = sorted(range(len(free_sets)), key=lambda i: (bin(free_sets[i]).count("1"), i))
        used, bound = 0, 0
        for i in order:
            f = free_sets[i]
            if not f & used:
                used |= f
                bound += self._min_weight(f)
        if cost + bound > self.best or (not self.find_all and cost + bound >= self.best):
            return
        f = free_sets[order[0]]
        prev = 0
        while f:
            low = f & -f
            f ^= low
            self._visit(removed | low, kept | prev, cost + self.w[low.bit_length() - 1])
            prev |= low

    def _leaf(self, removed: int, cost: int):
        if cost < self.best:
            self.best = cost
            self.leaves = [removed]
            self.truncated = False
        elif cost == self.best and self.find_all:
            if len(self.leaves) < self.max_optima:
                self.leaves.append(removed)
            else:
                self.truncated = True


def ex_oracle(
    support: EdgeSet,
    a: int,
    weights: Mapping | None = None,
    *,
    find_all: bool = True,
    max_optima: int = DEFAULT_MAX_OPTIMA,
    max_edges: int = DEFAULT_ORACLE_MAX_EDGES,
) -> OracleResult:
    """Maximum weight of an a-clique-free subset of ``support``.

    ``weights`` maps edges (vertex tuples or colex ranks) to nonnegative
    integers; unlisted support edges weigh 1.  Edges of weight zero are
    dropped from the search, so optima only list positive-weight edges.
    With ``find_all`` every optimum is returned (sorted by bit pattern), up
    to ``max_optima`` after which ``truncated`` is set; otherwise one.
    """
    if a <= support.r:
        raise ValueError(f"clique size a={a} must exceed uniformity r={support.r}")
    wmap = _normalize_weights(support, weights)
    ranks = [k for k in support.ranks() if wmap[k] > 0]
    if len(ranks) > max_edges:
        raise CapExceededError(f"oracle support has {len(ranks)} edges, cap is {max_edges}")
    local = {k: i for i, k in enumerate(ranks)}
    active = 0
    for k in ranks:
        active |= 1 << k

    cliques = []
    for _, m in clique_masks(support.n, a, support.r):
        if m & active == m:
            lm, bits = 0, m
            while bits:
                low = bits & -bits
                lm |= 1 << local[low.bit_length() - 1]
                bits ^= low
            cliques.append(lm)

    w = [wmap[k] for k in ranks]
    search = _HittingSetSearch(w, cliques, find_all, max_optima)
    search.run()

    total = sum(w)
    optima = []
    for removed in search.leaves:
        bits = 0
        for i, k in enumerate(ranks):
            if not removed >> i & 1:
                bits |= 1 << k
        optima.append(EdgeSet(support.n, support.r, bits))
    optima.sort(key=lambda s: s.bits)
    return OracleResult(total - search.best, optima, search.nodes, search.truncated)


@lru_cache(maxsize=256)
def ex_complete(n: int, a: int, r: int) -> int:
    """ex(n, a, r) on K^r_n by the oracle (value only); used when no formula exists."""
    if n < a:
        return comb(n, r)
    return ex_oracle(EdgeSet.complete(n, r), a, find_all=False).value
