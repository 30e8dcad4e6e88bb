"""Exact tools for entanglement catalysis of bipartite pure states."""

from .convertibility import (
    Classification,
    LSetReport,
    l_set,
    lemma1_strict,
    lemma2_sufficient,
    nielsen_convertible,
    universal_rank_reach,
)
from .filters import (
    BoundParams,
    FilterId,
    FilterVerdict,
    dimension_bound,
    filter_cor1,
    filter_cor1_all,
    filter_cor3,
    filter_pra99,
    filter_prop1,
    filter_rem2,
    filter_t1,
    filter_t2,
    run_battery,
    two_dim_feasible_interval,
)
from .metrics import majorization_distance, p_max_catalytic, p_max_plain, prop2_check
from .protocol import EnsembleSpec, protocol_feasible, protocol_trace
from .search import GridSpec, SearchOutcome, min_catalyst_dimension, oracle_catalyzes, search_catalyst
from .vectors import ProbVector, cumulative, from_floats, majorizes, parse_vector, tensor

__version__ = "0.1.0"
