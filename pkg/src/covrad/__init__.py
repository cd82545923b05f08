"""Exact covering and multicovering radii of permutation and perfect-matching
codes, probabilistic lower bounds on them, and the injections behind those
bounds."""

from covrad.bounds import (
    BoundReport,
    best_bound,
    lll_perm_threshold,
    lll_pm_threshold,
    union_perm_threshold,
    union_pm_threshold,
    w_count,
)
from covrad.errors import CodeFileError, CovradError, DimensionError, DomainError, ResourceError
from covrad.matchings import (
    MatchingCode,
    PartialMatching,
    PerfectMatching,
    beta,
    beta_x,
    contains,
    edge_frequency,
    enumerate_perfect_matchings,
    matching_distance,
)
from covrad.perms import (
    PartialInjection,
    Permutation,
    PermutationCode,
    agreement_positions,
    enumerate_permutations,
    frequency_matrix,
    hamming_distance,
    max_frequency,
)
from covrad.radius import (
    MatchingSpace,
    PermutationSpace,
    RadiusResult,
    agreement_characterization,
    covering_radius,
    multicovering_radius,
)

__version__ = "0.1.0"
