"""Percolation engine for rooted Cayley trees.

Computes the standard percolation function and the alternating-path (zebra)
percolation function by three independent routes: closed-form / fixed-point
analysis, exact finite-depth recursion, and Monte-Carlo simulation, with an
exhaustive small-tree oracle tying them together.
"""

from .analytic import (
    CriticalPair,
    NonConvergenceError,
    UnsupportedOrderError,
    ZebraDPState,
    expected_zebra_count,
    open_ray_probability,
    path_probability,
    standard_critical,
    theta_branch_fixed_point,
    theta_closed_form,
    theta_fixed_point,
    theta_inverse,
    zebra_critical_pair,
    zebra_dp,
    zebra_limit,
    zebra_via_relation,
)
from .montecarlo import (
    Estimate,
    EventKind,
    EventSpec,
    NoBracketError,
    Side,
    brute_force_probability,
    count_zebra_connected,
    estimate_count,
    estimate_probability,
    find_critical_dp,
    find_critical_mc,
    open_ray,
    sample_open_ray,
    sample_sigma,
    sample_zebra_ray,
    transform_equivalence_trial,
    wilson_interval,
    zebra_count,
    zebra_ray,
)
from .params import (
    FIXED_POINT_CONFIG,
    LIMIT_CONFIG,
    RootMode,
    SolverConfig,
    TreeParams,
)
from .rng import TrialStream, derive_seed
from .tree import (
    EdgeState,
    InvalidHatEdgeError,
    OddDepthError,
    PhiConfig,
    PhiValue,
    SigmaConfig,
    TooLargeError,
    children,
    dump_sigma,
    enumerate_configs,
    hat_edge_decompose,
    level_size,
    load_sigma,
    phi_of_sigma,
)

__version__ = "0.1.0"
