"""Facet verification by tight-point enumeration and exact affine rank.

T(G, a, r) is full-dimensional (it contains 0 and every unit vector), so a
valid inequality with positive rhs is facet-defining exactly when the
clique-free sets meeting it with equality span an affine space of
dimension |E(G)| - 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, gcd
from typing import Iterable, Sequence

from .combinat import EdgeSet, clique_masks
from .config import DEFAULT_MAX_EXTENSION_EDGES, DEFAULT_MAX_OPTIMA
from .errors import CapExceededError
from .extremal import ex_oracle
from .inequalities import LinearInequality


# -- exact rank -------------------------------------------------------------

class _Echelon:
    """Incremental integer row echelon form over sparse {col: int} rows.

    Row k is zero on the pivot columns of rows 0..k-1, so reducing a new
    vector against the rows in insertion order clears every pivot column.
    """

    def __init__(self):
        self.rows: list = []  # (pivot, row)

    def __len__(self) -> int:
        return len(self.rows)

    def add(self, vec: dict) -> bool:
        v = {c: x for c, x in vec.items() if x}
        for p, row in self.rows:
            x = v.get(p)
            if x:
                y = row[p]
                cols = set(v) | set(row)
                v = {c: y * v.get(c, 0) - x * row.get(c, 0) for c in cols}
                v = {c: z for c, z in v.items() if z}
                g = 0
                for z in v.values():
                    g = gcd(g, z)
                if g > 1:
                    v = {c: z // g for c, z in v.items()}
        if not v:
            return False
        # pivot on the entry of largest magnitude (lowest column on ties)
        p = min(v, key=lambda c: (-abs(v[c]), c))
        self.rows.append((p, v))
        return True


def _to_int_row(values: Iterable) -> dict:
    vals = [Fraction(x) for x in values]
    den = lcm(*(x.denominator for x in vals)) if vals else 1
    return {i: int(x * den) for i, x in enumerate(vals) if x}


@dataclass
class RationalMatrix:
    rows: list

    def __post_init__(self):
        self.rows = [[Fraction(x) for x in row] for row in self.rows]
        widths = {len(row) for row in self.rows}
        if len(widths) > 1:
            raise ValueError("rows have different lengths")

    def rank(self) -> int:
        """Exact rank; rows are scaled to integers and eliminated fraction-free."""
        ech = _Echelon()
        for row in self.rows:
            ech.add(_to_int_row(row))
        return len(ech)


def _as_sparse(point) -> dict:
    if isinstance(point, EdgeSet):
        return {k: 1 for k in point.ranks()}
    return _to_int_row(point)


def affine_rank(points: Sequence, ambient_dim: int | None = None, stop_at: int | None = None) -> int:
    """Dimension of the affine hull of ``points`` (EdgeSets or rational vectors).

    ``stop_at`` ends the scan early once that rank is reached.
    """
    points = list(points)
    if not points:
        raise ValueError("affine rank of an empty point set is undefined")
    base = _as_sparse(points[0])
    ech = _Echelon()
    for p in points[1:]:
        q = _as_sparse(p)
        diff = {c: q.get(c, 0) - base.get(c, 0) for c in set(q) | set(base)}
        ech.add(diff)
        if stop_at is not None and len(ech) >= stop_at:
            break
    if ambient_dim is not None and len(ech) > ambient_dim:
        raise ValueError(f"rank {len(ech)} exceeds ambient dimension {ambient_dim}")
    return len(ech)


# -- tight points -----------------------------------------------------------

@dataclass
class TightPoints:
    points: list
    max_lhs: int
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]


def _ambient_for(ineq: LinearInequality, ambient: EdgeSet | None) -> tuple:
    support = ineq.support()
    if ambient is None:
        return support, support
    if ambient.r != ineq.r:
        raise ValueError("ambient and inequality have different uniformity")
    n = max(ambient.n, ineq.n)
    support, ambient = support.embed(n), ambient.embed(n)
    if not support.issubset(ambient):
        raise ValueError("ambient must contain the support of the inequality")
    return support, ambient


def _extensions(base: EdgeSet, extra: list, cliques_by_edge: dict, limit: int):
    """All x = base + subset of ``extra`` that stay a-clique-free, in DFS order."""
    out = []

    def dfs(i: int, bits: int):
        if len(out) >= limit:
            return
        if i == len(extra):
            out.append(bits)
            return
        dfs(i + 1, bits)
        k = extra[i]
        with_k = bits | 1 << k
        if all(m & with_k != m for m in cliques_by_edge[k]):
            dfs(i + 1, with_k)

    dfs(0, base.bits)
    return out


def tight_points(
    ineq: LinearInequality,
    a: int,
    ambient: EdgeSet | None = None,
    *,
    max_points: int = DEFAULT_MAX_OPTIMA,
    max_extension_edges: int = DEFAULT_MAX_EXTENSION_EDGES,
) -> TightPoints:
    """Clique-free subsets of ``ambient`` (default: the support) with lhs == rhs.

    Points restricted to the support are the oracle's optima when the
    oracle maximum equals the rhs (otherwise there are none on a valid
    face); each is extended by every clique-free-preserving subset of the
    ambient edges outside the support.
    """
    support, amb = _ambient_for(ineq, ambient)
    extra = (amb - support).ranks()
    if extra and len(amb) > max_extension_edges:
        raise CapExceededError(
            f"extending tight points into {len(amb)} edges exceeds cap {max_extension_edges}; use the lifting checks"
        )
    res = ex_oracle(support, a, ineq.coeffs, max_optima=max_points)
    if res.value != ineq.rhs:
        return TightPoints([], res.value, False)
    if not extra:
        return TightPoints(res.optima, res.value, res.truncated)

    masks = [m for _, m in clique_masks(amb.n, a, amb.r) if m & amb.bits == m]
    by_edge = {k: [m for m in masks if m >> k & 1] for k in extra}
    points, truncated = [], res.truncated
    for base in res.optima:
        room = max_points - len(points)
        ext = _extensions(base, extra, by_edge, room + 1)
        if len(ext) > room:
            ext = ext[:room]
            truncated = True
        points.extend(EdgeSet(amb.n, amb.r, b) for b in ext)
        if truncated:
            break
    return TightPoints(points, res.value, truncated)


# -- verdicts ---------------------------------------------------------------

@dataclass
class FacetVerdict:
    valid: bool
    max_lhs: int
    rhs: int
    tight_count: int
    affine_rank: int
    ambient_dim: int
    is_facet: bool
    truncated: bool
    label: str = ""

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "valid": self.valid,
            "max_lhs": self.max_lhs,
            "rhs": self.rhs,
            "tight_count": self.tight_count,
            "affine_rank": self.affine_rank,
            "ambient_dim": self.ambient_dim,
            "is_facet": self.is_facet,
            "truncated": self.truncated,
        }


def is_facet(ineq: LinearInequality, a: int, ambient: EdgeSet | None = None, **kw) -> FacetVerdict:
    """Verdict by exact rank; never infers anything beyond the computed rank."""
    _, amb = _ambient_for(ineq, ambient)
    tp = tight_points(ineq, a, ambient, **kw)
    dim = len(amb)
    valid = tp.max_lhs <= ineq.rhs
    rank = affine_rank(tp.points, dim, stop_at=dim - 1) if tp.points else -1
    facet = valid and tp.max_lhs == ineq.rhs and rank == dim - 1 and not tp.truncated
    return FacetVerdict(valid, tp.max_lhs, ineq.rhs, len(tp), rank, dim, facet, tp.truncated, ineq.label)


# -- lifting conditions -----------------------------------------------------

@dataclass
class LiftCheck:
    ok: bool
    checked: int
    failing_edges: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "failing_edges": [list(e) for e in self.failing_edges]}


def _difference(h: EdgeSet, g: EdgeSet) -> tuple:
    if h.r != g.r:
        raise ValueError("hypergraphs have different uniformity")
    n = max(h.n, g.n)
    h, g = h.embed(n), g.embed(n)
    if not h.issubset(g):
        raise ValueError("H must be contained in G")
    return h, g, (g - h)


def check_lift_rank_form(h_support: EdgeSet, g_ambient: EdgeSet, a: int) -> LiftCheck:
    """ex(H + e) == ex(H) + 1 for every edge e of G outside H."""
    h, g, diff = _difference(h_support, g_ambient)
    base = ex_oracle(h, a, find_all=False).value
    failing = []
    for e in diff.edges():
        if ex_oracle(h.with_edge(e), a, find_all=False).value != base + 1:
            failing.append(e)
    return LiftCheck(not failing, len(diff), failing)


def check_lift_general_form(ineq: LinearInequality, g_ambient: EdgeSet, a: int, **kw) -> LiftCheck:
    """For every e' of G outside the support, some tight point stays clique-free with e' added."""
    h, g, diff = _difference(ineq.support(), g_ambient)
    tp = tight_points(ineq, a, **kw)
    masks = [m for _, m in clique_masks(g.n, a, g.r) if m & g.bits == m]
    failing = []
    for k in diff.ranks():
        through = [m for m in masks if m >> k & 1]
        if not any(all(m & (x.bits | 1 << k) != m for m in through) for x in tp.points):
            failing.append(k)
    edges = [EdgeSet.from_ranks(g.n, g.r, [k]).edges()[0] for k in failing]
    return LiftCheck(not failing and not tp.truncated, len(diff), edges)
