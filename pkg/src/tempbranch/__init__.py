"""Disjoint spanning branchings in temporal digraphs."""

from .core import (
    InvalidInstance,
    ProblemVariant,
    StaticDigraph,
    TemporalDigraph,
    arrival_graph,
    expand,
    snapshot,
    validate,
)
from .exact import OracleResult, ScaleError, oracle_enumerate, solve_exact
from .flow import BACKEND
from .formats import (
    ParseError,
    parse_cnf,
    parse_instance,
    parse_solution,
    parse_wdp,
    serialize_instance,
    serialize_solution,
)
from .poly import CapabilityError, PreconditionError, solve, solve_edge_temporal_interval, solve_tedge_temporal
from .reach import TemporalBranching, check_disjoint, verify_branching, walk_count
from .reductions import (
    CnfFormula,
    WdpInstance,
    decode_assignment,
    decode_paths,
    lift_roots,
    reduce_nae3sat_star,
    reduce_nae3sat_vertex,
    reduce_wdp,
    to_single_source,
)
from .static_branchings import edmonds_construct, edmonds_feasible, verify_static

__version__ = "0.1.0"
