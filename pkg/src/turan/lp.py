"""Exact rational LP over the clique relaxation Q(n, a, r).

The simplex works on a dense tableau of ``Fraction`` entries and uses
Bland's rule, so it terminates without any tolerance or perturbation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor
from typing import Sequence

from .combinat import CompleteHypergraph, clique_edge_set, unrank_edge
from .errors import CapExceededError, InfeasibleError, UnboundedError
from .extremal import ex_complete, ex_exact

MAX_ROWS = 10_000


@dataclass(frozen=True)
class Row:
    coeffs: dict  # variable index -> Fraction
    rhs: Fraction
    label: str = ""


@dataclass
class ConstraintSystem:
    """Rows sum_j coeffs[j] x_j <= rhs over the edges of K^r_n (variable j = rank j)."""

    n: int
    r: int
    variables: list
    rows: list = field(default_factory=list)

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    def clique_rows(self) -> list:
        return [row for row in self.rows if row.label.startswith("clique")]

    def bound_rows(self) -> list:
        return [row for row in self.rows if row.label.startswith(("lower", "upper"))]

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        return all(sum(c * x[j] for j, c in row.coeffs.items()) <= row.rhs for row in self.rows)

    def to_lp_format(self, objective: Sequence | None = None) -> str:
        """CPLEX LP text; each row is scaled by its denominators so all coefficients are integers."""
        names = [f"x_{'_'.join(map(str, unrank_edge(k, self.n, self.r)))}" for k in self.variables]
        objective = [1] * self.num_vars if objective is None else objective
        scale = _lcm_den(objective)
        lines = ["\\ clique relaxation Q(n={},r={})".format(self.n, self.r), "Maximize"]
        lines.append(" obj: " + _lp_expr({j: Fraction(c) * scale for j, c in enumerate(objective)}, names))
        lines.append("Subject To")
        for i, row in enumerate(self.rows):
            if row.label.startswith(("lower", "upper")):
                continue
            s = _lcm_den(list(row.coeffs.values()) + [row.rhs])
            expr = _lp_expr({j: c * s for j, c in row.coeffs.items()}, names)
            lines.append(f" c{i}: {expr} <= {int(row.rhs * s)}")
        lines.append("Bounds")
        lines.extend(f" 0 <= {name} <= 1" for name in names)
        lines.append("End")
        return "\n".join(lines) + "\n"


def _lcm_den(values) -> int:
    out = 1
    for v in values:
        d = Fraction(v).denominator
        out = out * d // _gcd(out, d)
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _lp_expr(coeffs: dict, names: list) -> str:
    parts = []
    for j, c in sorted(coeffs.items()):
        c = int(c)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        term = names[j] if mag == 1 else f"{mag} {names[j]}"
        parts.append(f"{sign} {term}")
    if not parts:
        return "0 " + names[0]
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def build_Q(n: int, a: int, r: int = 2, include_full_clique: bool = False) -> ConstraintSystem:
    """Clique rows for every i-subset, a <= i <= n-1 (and i = n if requested), plus 0 <= x <= 1."""
    if not r < a <= n:
        raise ValueError(f"need r < a <= n, got n={n}, a={a}, r={r}")
    CompleteHypergraph(n, r)
    top = n if include_full_clique else n - 1
    nrows = sum(comb(n, i) for i in range(a, top + 1))
    if nrows > MAX_ROWS:
        raise CapExceededError(f"Q({n},{a},{r}) has {nrows} clique rows, cap is {MAX_ROWS}")
    variables = list(range(comb(n, r)))
    rows = []
    for i in range(a, top + 1):
        rhs = Fraction(ex_exact(i, a) if r == 2 else ex_complete(i, a, r))
        for S in itertools.combinations(range(1, n + 1), i):
            mask = clique_edge_set(S, r, n)
            rows.append(Row({k: Fraction(1) for k in mask.ranks()}, rhs, f"clique{list(S)}"))
    for j in variables:
        rows.append(Row({j: Fraction(-1)}, Fraction(0), f"lower{j}"))
        rows.append(Row({j: Fraction(1)}, Fraction(1), f"upper{j}"))
    return ConstraintSystem(n, r, variables, rows)


@dataclass
class LPResult:
    value: Fraction
    x: list
    pivots: int

    @property
    def floor(self) -> int:
        return floor(self.value)


def _is_nonnegativity(row: Row) -> bool:
    return row.rhs == 0 and len(row.coeffs) == 1 and next(iter(row.coeffs.values())) < 0


class _Tableau:
    """Dense tableau for max c.x s.t. A x <= b, x >= 0 (slacks appended)."""

    def __init__(self, A: list, b: list, c: list):
        m, nv = len(A), len(c)
        self.m, self.nv = m, nv
        width = nv + m + 1
        self.T = []
        for i in range(m):
            row = [Fraction(0)] * width
            for j, v in A[i].items():
                row[j] = Fraction(v)
            row[nv + i] = Fraction(1)
            row[-1] = Fraction(b[i])
            self.T.append(row)
        self.basis = [nv + i for i in range(m)]
        self.pivots = 0

    def pivot(self, r: int, col: int, obj_rows: list):
        T = self.T
        prow = T[r]
        p = prow[col]
        if p != 1:
            prow[:] = [v / p for v in prow]
        nz = [j for j, v in enumerate(prow) if v]
        for row in itertools.chain(T, obj_rows):
            if row is prow:
                continue
            f = row[col]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        self.basis[r] = col
        self.pivots += 1

    def optimize(self, obj: list, obj_rows: list, allowed: int):
        """Bland's rule on reduced-cost row ``obj`` (entries z_j - c_j; negative = improving)."""
        T = self.T
        while True:
            col = next((j for j in range(allowed) if obj[j] < 0), None)
            if col is None:
                return
            best, r = None, None
            for i, row in enumerate(T):
                if row[col] > 0:
                    ratio = row[-1] / row[col]
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[r]):
                        best, r = ratio, i
            if r is None:
                raise UnboundedError("objective is unbounded on the constraint system")
            self.pivot(r, col, obj_rows)


def lp_max(system: ConstraintSystem, objective: Sequence | None = None) -> LPResult:
    """Exact maximum of objective.x over the system (variables are nonnegative).

    Nonnegativity rows are implied by the variable domain and skipped.  When
    some rhs is negative an auxiliary phase finds a feasible basis first.
    """
    nv = system.num_vars
    c = [Fraction(1)] * nv if objective is None else [Fraction(v) for v in objective]
    if len(c) != nv:
        raise ValueError(f"objective has {len(c)} entries, system has {nv} variables")
    rows = [row for row in system.rows if not _is_nonnegativity(row)]
    A = [row.coeffs for row in rows]
    b = [row.rhs for row in rows]

    if any(v < 0 for v in b):
        return _two_phase(A, b, c)
    tab = _Tableau(A, b, c)
    obj = [-v for v in c] + [Fraction(0)] * (tab.m + 1)
    tab.optimize(obj, [obj], nv + tab.m)
    return _extract(tab, obj, nv)


def _extract(tab: _Tableau, obj: list, nv: int) -> LPResult:
    x = [Fraction(0)] * nv
    for i, j in enumerate(tab.basis):
        if j < nv:
            x[j] = tab.T[i][-1]
    return LPResult(obj[-1], x, tab.pivots)


def _two_phase(A: list, b: list, c: list) -> LPResult:
    # auxiliary variable x0 (index nv) added to every row: max -x0
    nv = len(c)
    A0 = [{**row, nv: Fraction(-1)} for row in A]
    tab = _Tableau(A0, b, c + [Fraction(0)])
    width = len(tab.T[0])
    aux = [Fraction(0)] * width
    aux[nv] = Fraction(1)
    obj = [-v for v in c] + [Fraction(0)] * (width - nv)
    r = min(range(tab.m), key=lambda i: (b[i], i))
    tab.pivot(r, nv, [aux, obj])
    tab.optimize(aux, [aux, obj], width - 1)
    if aux[-1] != 0:
        raise InfeasibleError("constraint system is infeasible")
    if nv in tab.basis:
        i = tab.basis.index(nv)
        col = next((j for j in range(width - 1) if j != nv and tab.T[i][j]), None)
        if col is not None:
            tab.pivot(i, col, [aux, obj])
    for row in tab.T:
        row[nv] = Fraction(0)
    obj[nv] = Fraction(0)
    tab.optimize(obj, [obj], width - 1)
    x = [Fraction(0)] * nv
    for i, j in enumerate(tab.basis):
        if j < nv:
            x[j] = tab.T[i][-1]
    return LPResult(obj[-1], x, tab.pivots)


def integrality_gap_check(n: int, a: int, include_full_clique: bool = False) -> bool:
    """floor(max 1.x over Q(n, a, 2)) == ex(n, a)."""
    return lp_max(build_Q(n, a, 2, include_full_clique)).floor == ex_exact(n, a)
