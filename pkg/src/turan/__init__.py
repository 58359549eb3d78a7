"""Exact tools for the Turán polytope: Turán numbers, facet families,
facet verification by exact rank, Chvátal-Gomory replays and the clique
relaxation LP."""

from .combinat import (
    CompleteHypergraph,
    EdgeSet,
    WebSpec,
    WheelSpec,
    clique_edge_set,
    enumerate_cliques,
    is_clique_free,
    rank_edge,
    unrank_edge,
    web_edge_set,
    wheel_clique,
    wheel_edge_set,
)
from .extremal import ex_exact, ex_oracle, t_table, turan_bound, turan_graph
from .facets import affine_rank, check_lift_general_form, check_lift_rank_form, is_facet, tight_points
from .inequalities import (
    BlowupSpec,
    LinearInequality,
    blowup_inequality,
    cg_doubling_aggregate,
    cg_subset_step,
    cg_wheel_derivation,
    check_validity,
    clique_inequality,
    doubling_inequality,
    web_inequality,
    web_witness,
    wheel_inequality,
    wheel_witness,
)
from .lp import build_Q, integrality_gap_check, lp_max

__version__ = "0.1.0"
