"""Valid inequalities for the Turán polytope and their derivations.

Generators return :class:`LinearInequality` objects over K^r_n; the
``cg_*`` functions return :class:`CGDerivation` objects that replay a
Chvátal-Gomory step with exact rational weights, and ``verify()`` checks
the replay coefficient by coefficient.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, floor
from typing import Mapping, Sequence

from .combinat import (
    EdgeSet,
    WebSpec,
    WheelSpec,
    clique_edge_set,
    is_clique_free,
    rank_edge,
    unrank_edge,
    web_clique,
    web_edge_set,
    web_edge_span,
    wheel_clique,
    wheel_edge_set,
    wheel_edge_span,
)
from .errors import WitnessUnavailableError
from .extremal import ex_complete, ex_exact, ex_oracle, t_table


@dataclass(frozen=True)
class LinearInequality:
    """sum_e coeffs[e] x_e <= rhs over K^r_n; coeffs keyed by colex rank."""

    n: int
    r: int
    coeffs: Mapping[int, int]
    rhs: int
    label: str = ""

    def __post_init__(self):
        clean = {}
        for k, c in sorted(self.coeffs.items()):
            if c < 0:
                raise ValueError(f"coefficient {c} on edge {unrank_edge(k, self.n, self.r)} is negative")
            if c:
                clean[int(k)] = int(c)
        object.__setattr__(self, "coeffs", clean)
        if self.rhs <= 0:
            raise ValueError(f"right-hand side must be positive, got {self.rhs}")
        # validates ranks against the ambient
        self.support()

    def support(self) -> EdgeSet:
        return EdgeSet.from_ranks(self.n, self.r, self.coeffs)

    def coeff(self, edge) -> int:
        return self.coeffs.get(rank_edge(sorted(edge)), 0)

    def lhs(self, x: EdgeSet) -> int:
        return sum(c for k, c in self.coeffs.items() if x.bits >> k & 1)

    def is_tight(self, x: EdgeSet) -> bool:
        return self.lhs(x) == self.rhs

    def with_rhs(self, rhs: int, label: str | None = None) -> "LinearInequality":
        return LinearInequality(self.n, self.r, self.coeffs, rhs, self.label if label is None else label)

    def embed(self, n: int) -> "LinearInequality":
        return LinearInequality(n, self.r, self.coeffs, self.rhs, self.label)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "coeffs": [{"edge": list(unrank_edge(k, self.n, self.r)), "c": c} for k, c in self.coeffs.items()],
            "rhs": self.rhs,
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LinearInequality":
        coeffs = {}
        for item in data["coeffs"]:
            k = rank_edge(sorted(item["edge"]))
            if k in coeffs:
                raise ValueError(f"edge {item['edge']} listed twice")
            coeffs[k] = int(item["c"])
        ineq = cls(int(data["n"]), int(data["r"]), coeffs, int(data["rhs"]), data.get("label", ""))
        for k in coeffs:
            unrank_edge(k, ineq.n, ineq.r)
        return ineq


def _uniform(support: EdgeSet, rhs: int, label: str) -> LinearInequality:
    return LinearInequality(support.n, support.r, {k: 1 for k in support.ranks()}, rhs, label)


def _edge_bound(n: int, r: int, k: int) -> LinearInequality:
    return LinearInequality(n, r, {k: 1}, 1, f"edge{list(unrank_edge(k, n, r))}")


# -- generators -------------------------------------------------------------

def clique_inequality(S: Sequence[int], a: int, r: int = 2, n: int | None = None) -> LinearInequality:
    """Sum over the edges inside S is at most ex(|S|, a, r)."""
    S = tuple(sorted(S))
    if len(S) < a:
        raise ValueError(f"clique inequality needs |S| >= a, got |S|={len(S)}, a={a}")
    if a <= r:
        raise ValueError(f"need a > r, got a={a}, r={r}")
    rhs = ex_exact(len(S), a) if r == 2 else ex_complete(len(S), a, r)
    return _uniform(clique_edge_set(S, r, n), rhs, f"clique(S={list(S)},a={a})")


def doubling_inequality(n: int, a: int, v: int) -> LinearInequality:
    """2 on edges at v, 1 elsewhere, at most ex(n+1, a)."""
    if not 1 <= v <= n:
        raise ValueError(f"vertex v must be in 1..{n}, got {v}")
    if not 3 <= a <= n:
        raise ValueError(f"need 3 <= a <= n, got n={n}, a={a}")
    coeffs = {}
    for e in itertools.combinations(range(1, n + 1), 2):
        coeffs[rank_edge(e)] = 2 if v in e else 1
    return LinearInequality(n, 2, coeffs, ex_exact(n + 1, a), f"doubling(v={v},a={a})")


@dataclass(frozen=True)
class BlowupSpec:
    """Vertex v of K_n replaced by multiplicities[v] copies (default 1)."""

    n: int
    a: int
    multiplicities: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        m = {}
        for v, k in self.multiplicities.items():
            if not 1 <= v <= self.n:
                raise ValueError(f"vertex {v} outside 1..{self.n}")
            if k < 1:
                raise ValueError(f"multiplicity of {v} must be positive, got {k}")
            if k > 1:
                m[int(v)] = int(k)
        object.__setattr__(self, "multiplicities", dict(sorted(m.items())))
        if not 3 <= self.a <= self.n:
            raise ValueError(f"need 3 <= a <= n, got n={self.n}, a={self.a}")
        if self.extra_vertices < 1:
            raise ValueError("blow-up needs at least one multiplicity above 1")

    def m(self, v: int) -> int:
        return self.multiplicities.get(v, 1)

    @property
    def extra_vertices(self) -> int:
        return sum(k - 1 for k in self.multiplicities.values())


def blowup_inequality(spec: BlowupSpec) -> LinearInequality:
    """Coefficient m_u m_w on edge (u, w); rhs ex(n + sum(m_v - 1), a)."""
    n = spec.n
    coeffs = {rank_edge(e): spec.m(e[0]) * spec.m(e[1]) for e in itertools.combinations(range(1, n + 1), 2)}
    mult = ",".join(f"{v}:{k}" for v, k in spec.multiplicities.items())
    return LinearInequality(n, 2, coeffs, ex_exact(n + spec.extra_vertices, spec.a), f"blowup(m={{{mult}}},a={spec.a})")


def blowup_edge_set(graph: EdgeSet, spec: BlowupSpec) -> EdgeSet:
    """Copy each vertex v into m_v independent copies (new labels n+1, n+2, ... by v)."""
    if graph.r != 2 or graph.n != spec.n:
        raise ValueError("blow-up needs a graph on the BlowupSpec's vertex set")
    copies, nxt = {}, spec.n + 1
    for v in range(1, spec.n + 1):
        copies[v] = [v] + list(range(nxt, nxt + spec.m(v) - 1))
        nxt += spec.m(v) - 1
    edges = [(x, y) for u, w in graph.edges() for x in copies[u] for y in copies[w]]
    return EdgeSet.from_edges(nxt - 1, 2, [tuple(sorted(e)) for e in edges])


def wheel_rhs(spec: WheelSpec) -> int:
    m = spec.cycle_length
    return comb(spec.a - 1, spec.r - 1) * m - ceil(Fraction(m, spec.stride))


def web_rhs(spec: WebSpec) -> int:
    return comb(spec.a - 1, spec.r - 1) * spec.l - ceil(Fraction(spec.l, spec.stride))


def wheel_inequality(spec: WheelSpec) -> LinearInequality:
    return _uniform(wheel_edge_set(spec), wheel_rhs(spec), f"wheel(l={spec.l},a={spec.a},r={spec.r})")


def web_inequality(spec: WebSpec) -> LinearInequality:
    return _uniform(web_edge_set(spec), web_rhs(spec), f"web(l={spec.l},a={spec.a},r={spec.r})")


# -- validity ---------------------------------------------------------------

@dataclass
class ValidityResult:
    valid: bool
    max_lhs: int
    rhs: int
    certificate: EdgeSet | None = None

    def __bool__(self) -> bool:
        return self.valid

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "max_lhs": self.max_lhs,
            "rhs": self.rhs,
            "certificate": None if self.certificate is None else self.certificate.to_dict()["edges"],
        }


def check_validity(ineq: LinearInequality, a: int, **oracle_kw) -> ValidityResult:
    """Compare the oracle's weighted maximum over the support with the rhs.

    When invalid, ``certificate`` is a clique-free edge set whose left-hand
    side exceeds the rhs.
    """
    res = ex_oracle(ineq.support(), a, ineq.coeffs, find_all=False, **oracle_kw)
    valid = res.value <= ineq.rhs
    return ValidityResult(valid, res.value, ineq.rhs, None if valid else res.optima[0])


# -- tightness witnesses ----------------------------------------------------

def _check_kind(kind: str) -> str:
    kind = str(kind).upper()
    if kind not in ("I", "II"):
        raise ValueError(f"witness kind must be 'I' or 'II', got {kind!r}")
    return kind


def _stride_witness(support, cliques, short_edge, m, stride, kind, rhs, a, what):
    """Remove short edges at positions stride, 2*stride, ... around the cycle.

    ``short_edge(s)`` is the minimal-span edge starting at cycle vertex s;
    it lies in cliques s-stride+1..s.  Type I removes ceil(m/stride) of them
    (the last one pulled back to s=m); type II removes floor(m/stride) and
    then one edge shared by all cliques that are still full.
    """
    removed = 0
    count = ceil(Fraction(m, stride)) if kind == "I" else m // stride
    for k in range(1, count + 1):
        removed |= 1 << rank_edge(short_edge(min(k * stride, m)))
    x = EdgeSet(support.n, support.r, support.bits & ~removed)
    if kind == "II":
        still_full = [c for c in cliques if c & x.bits == c]
        if not still_full:
            raise WitnessUnavailableError(f"{what}: no clique remains after {count} removals; type II coincides with type I")
        common = x.bits
        for c in still_full:
            common &= c
        if not common:
            raise WitnessUnavailableError(f"{what}: no single edge lies in every remaining full clique")
        low = common & -common
        x = EdgeSet(x.n, x.r, x.bits & ~low)
    if not is_clique_free(x, a) or len(x) != rhs:
        raise WitnessUnavailableError(f"{what}: type {kind} construction is not an optimal clique-free set")
    return x


def wheel_witness(spec: WheelSpec, kind: str = "I") -> EdgeSet:
    """Clique-free subset of the wheel meeting the wheel inequality with equality."""
    kind = _check_kind(kind)
    m, r = spec.cycle_length, spec.r

    def spoke(s):
        return tuple(sorted({(s + k - 1) % m + 1 for k in range(r - 1)} | {spec.hub}))

    cliques = [clique_edge_set(wheel_clique(spec, i), r, spec.l).bits for i in range(1, m + 1)]
    return _stride_witness(wheel_edge_set(spec), cliques, spoke, m, spec.stride, kind, wheel_rhs(spec), spec.a, f"wheel{(spec.l, spec.a, r)}")


def web_witness(spec: WebSpec, kind: str = "I") -> EdgeSet:
    kind = _check_kind(kind)
    m, r = spec.l, spec.r

    def short(s):
        return tuple(sorted((s + k - 1) % m + 1 for k in range(r)))

    cliques = [clique_edge_set(web_clique(spec, i), r, spec.l).bits for i in range(1, m + 1)]
    return _stride_witness(web_edge_set(spec), cliques, short, m, spec.stride, kind, web_rhs(spec), spec.a, f"web{(spec.l, spec.a, r)}")


# -- Chvátal-Gomory replays -------------------------------------------------

@dataclass
class CGDerivation:
    sources: list  # (LinearInequality, Fraction)
    target: LinearInequality

    def combined(self) -> tuple:
        """Weighted coefficient map and weighted rhs, both exact."""
        coeffs: dict = {}
        rhs = Fraction(0)
        for ineq, wt in self.sources:
            if wt < 0:
                raise ValueError(f"negative weight {wt}")
            for k, c in ineq.coeffs.items():
                coeffs[k] = coeffs.get(k, Fraction(0)) + wt * c
            rhs += wt * ineq.rhs
        return {k: c for k, c in sorted(coeffs.items()) if c}, rhs

    def verify(self) -> bool:
        coeffs, rhs = self.combined()
        return coeffs == dict(self.target.coeffs) and floor(rhs) == self.target.rhs

    def to_dict(self) -> dict:
        coeffs, rhs = self.combined()
        n, r = self.target.n, self.target.r
        return {
            "sources": [{"inequality": s.to_dict(), "weight": _q(w)} for s, w in self.sources],
            "combined": {
                "coeffs": [{"edge": list(unrank_edge(k, n, r)), "c": _q(c)} for k, c in coeffs.items()],
                "rhs": _q(rhs),
            },
            "target": self.target.to_dict(),
            "verified": self.verify(),
        }


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def cg_subset_step(S: Sequence[int], a: int, source_rhs: int | None = None, n: int | None = None) -> CGDerivation:
    """Aggregate the |S| inequalities on (|S|-1)-subsets of S, each weighted 1/(|S|-2).

    ``source_rhs`` is the bound assumed for every (|S|-1)-subset; it defaults
    to t_a^{|S|-1}.
    """
    S = tuple(sorted(S))
    j = len(S) - 1
    if j + 1 <= a:
        raise ValueError(f"subset step needs |S| > a, got |S|={len(S)}, a={a}")
    n = n or S[-1]
    if source_rhs is None:
        source_rhs = t_table(a, j)[j]
    wt = Fraction(1, j - 1)
    sources = []
    for T in itertools.combinations(S, j):
        sources.append((_uniform(clique_edge_set(T, 2, n), source_rhs, f"subset(T={list(T)})"), wt))
    target_rhs = floor(Fraction((j + 1) * source_rhs, j - 1))
    target = _uniform(clique_edge_set(S, 2, n), target_rhs, f"subset(S={list(S)})")
    return CGDerivation(sources, target)


def cg_subset_chain(n: int, a: int) -> list:
    """Steps for S = [a+1], ..., [n], each using the previous target as its source bound."""
    if not 3 <= a < n:
        raise ValueError(f"need 3 <= a < n, got n={n}, a={a}")
    rhs = comb(a, 2) - 1
    steps = []
    for size in range(a + 1, n + 1):
        step = cg_subset_step(range(1, size + 1), a, source_rhs=rhs, n=n)
        steps.append(step)
        rhs = step.target.rhs
    return steps


def cg_doubling_aggregate(n: int, a: int) -> CGDerivation:
    """Sum of the n doubling inequalities, each weighted 1/(n+2)."""
    wt = Fraction(1, n + 2)
    sources = [(doubling_inequality(n, a, v), wt) for v in range(1, n + 1)]
    rhs = floor(Fraction(n * ex_exact(n + 1, a), n + 2))
    return CGDerivation(sources, _uniform(EdgeSet.complete(n, 2), rhs, f"doubling-aggregate(n={n},a={a})"))


def _cycle_cg(support, cliques, span, offset, rhs, a, r, label) -> CGDerivation:
    # an edge of span beta lies in stride - (beta - offset) cliques
    stride = a - r + 1
    n = support.n
    sources = []
    clique_rhs = comb(a, r) - 1
    for q in cliques:
        sources.append((_uniform(clique_edge_set(q, r, n), clique_rhs, f"clique{list(q)}"), Fraction(1, stride)))
    for k in support.ranks():
        beta = span(unrank_edge(k, n, r))
        wt = Fraction(beta - offset, stride)
        if wt:
            sources.append((_edge_bound(n, r, k), wt))
    return CGDerivation(sources, _uniform(support, rhs, label))


def cg_wheel_derivation(spec: WheelSpec) -> CGDerivation:
    """Wheel cliques at 1/(a-r+1) plus x_e <= 1 at (span_e - r + 1)/(a-r+1)."""
    m = spec.cycle_length
    return _cycle_cg(
        wheel_edge_set(spec),
        [wheel_clique(spec, i) for i in range(1, m + 1)],
        lambda e: wheel_edge_span(spec, e),
        spec.r - 1,
        wheel_rhs(spec),
        spec.a,
        spec.r,
        wheel_inequality(spec).label,
    )


def cg_web_derivation(spec: WebSpec) -> CGDerivation:
    """Web cliques at 1/(a-r+1) plus x_e <= 1 at (span_e - r)/(a-r+1)."""
    return _cycle_cg(
        web_edge_set(spec),
        [web_clique(spec, i) for i in range(1, spec.l + 1)],
        lambda e: web_edge_span(spec, e),
        spec.r,
        web_rhs(spec),
        spec.a,
        spec.r,
        web_inequality(spec).label,
    )


__all__ = [
    "BlowupSpec",
    "CGDerivation",
    "LinearInequality",
    "ValidityResult",
    "blowup_edge_set",
    "blowup_inequality",
    "cg_doubling_aggregate",
    "cg_subset_chain",
    "cg_subset_step",
    "cg_web_derivation",
    "cg_wheel_derivation",
    "check_validity",
    "clique_inequality",
    "doubling_inequality",
    "web_inequality",
    "web_rhs",
    "web_witness",
    "wheel_inequality",
    "wheel_rhs",
    "wheel_witness",
]
