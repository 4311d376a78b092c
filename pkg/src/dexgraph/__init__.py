"""Statistics of binary functional graphs of the map x -> g^x mod p.

The package is organized in layers:

* ``numtheory``   -- primes, totients, primitive roots, generator selection
* ``graphcore``   -- graph construction and exact per-node tail/cycle/rho metrics
* ``closedform``  -- closed-form expectations, variance, and asymptotic means
* ``egfseries``   -- exact-rational truncated power series for the generating
                     functions behind the closed forms
* ``oracle``      -- brute-force enumeration of all binary functional graphs
                     on small node sets
* ``normstat``    -- Shapiro-Wilk / Anderson-Darling normality testing
* ``xrunner``     -- the per-prime experiment pipeline and report writers
"""

from dexgraph.numtheory import (
    PrimeModulus,
    GeneratorSet,
    mod_pow,
    is_prime,
    next_primes,
    euler_phi,
    find_primitive_root,
    m_ary_generators,
)
from dexgraph.graphcore import (
    SuccessorMap,
    NodeMetrics,
    GraphSummary,
    build_exp_graph,
    in_degree_profile,
    node_metrics,
    summarize,
    export_dot,
)
from dexgraph.closedform import (
    TheoryValue,
    expected_rho,
    expected_cycle,
    expected_tail,
    rho_variance,
    scaled_graph_count,
    scaled_graph_count_asymptotic,
    binary_graph_count,
    asymptotic_level_mean,
)
from dexgraph.egfseries import (
    RationalSeries,
    UJet,
    SeriesDomainError,
    binary_tree_series,
    component_series,
    graph_series,
    check_tree_equation,
    total_rho_series,
    total_rho_square_series,
    rho_level_series,
    check_recurrence,
    closed_form_coefficient,
)
from dexgraph.oracle import OracleReport, BudgetExceededError, enumerate_binary, oracle_means
from dexgraph.normstat import (
    SampleVector,
    TestResult,
    DegenerateSampleError,
    normal_quantile,
    normal_cdf,
    normalize_point,
    shapiro_wilk,
    anderson_darling,
    qq_points,
)
from dexgraph.xrunner import ExperimentConfig, PerPrimeRecord, run_experiment, inspect_graph

__version__ = "0.1.0"
