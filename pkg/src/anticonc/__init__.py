"""Exact anticoncentration computations over Z and Z_k.

Distributions of sums of uniform draws, subset-sum counts, the constants of
the cyclic-group bounds, and a solver for graph-constrained sequencings.
"""

from .constants import ConstantsReport, compute_constants, nested_bound, required_prime, solve_c1, solve_c2, solve_c3
from .distributions import (
    Distribution,
    Spectrum,
    convolve,
    fourier_point_prob,
    iid_sum,
    max_point_prob,
    point_mass,
    spectrum,
    uniform_on,
)
from .groups import (
    INTEGERS,
    ConstraintGraph,
    CyclicContext,
    GroundSet,
    banded_graph,
    canonicalize,
    centered_interval_set,
)
from .integer_case import lr_domination_check, normal_approx_gap, three_sum_bound
from .sequencer import (
    CollisionReport,
    Ordering,
    exhaustive_sequencing,
    expected_collisions_bound,
    greedy_prefix,
    monte_carlo_collisions,
    randomized_sequencing,
    verify,
    zero_sum_free_subset,
)
from .subsets import SubsetSumTable, build_table, freiman_check, iid_vs_distinct_relation, lo_max_prob

__version__ = "0.1.0"
