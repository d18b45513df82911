"""Distance oracles, routing schemes and their lower-bound instances in the hybrid network model."""

from .graphcore import INF, Graph, GraphError
from .hybridsim import BudgetViolation, HybridConfig, HybridNetwork, RoundStats
from .schemes import (
    SamplingFailure,
    Scheme,
    build_scheme_approx,
    build_scheme_exact,
    default_config,
    forward,
)
from .lowerbound import (
    GammaInstance,
    WeightPreset,
    check_inequalities,
    decode_from_oracle,
    decode_from_routing,
    gen_unweighted,
    gen_weighted,
    make_preset,
    verify_unweighted,
    verify_weighted,
)
from .bounds import girth_density, label_cap, node_comm_bound, optimize_tradeoff, stretch_table
from .surd import Surd

__version__ = "0.1.0"

__all__ = [
    "BudgetViolation",
    "GammaInstance",
    "Graph",
    "GraphError",
    "HybridConfig",
    "HybridNetwork",
    "INF",
    "RoundStats",
    "SamplingFailure",
    "Scheme",
    "Surd",
    "WeightPreset",
    "build_scheme_approx",
    "build_scheme_exact",
    "check_inequalities",
    "decode_from_oracle",
    "decode_from_routing",
    "default_config",
    "forward",
    "gen_unweighted",
    "gen_weighted",
    "girth_density",
    "label_cap",
    "make_preset",
    "node_comm_bound",
    "optimize_tradeoff",
    "stretch_table",
    "verify_unweighted",
    "verify_weighted",
]
