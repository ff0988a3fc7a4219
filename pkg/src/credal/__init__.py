"""Sets of probability distributions over finite outcome spaces.

Three credal-set representations (finite vertex lists, linear constraint
systems, one-parameter families), with envelopes, conditioning, decision
criteria, linear opinion pooling, belief-function correspondence, and
expectation-level Dutch book analysis.
"""

from .spaces import Event, OutcomeSpace, Variable, coin_space, product_space, simple_space
from .distributions import (
    Distribution,
    condition_distribution,
    die_bias,
    die_space,
    iid_coin,
    independent_square,
    make_distribution,
    marginalize,
    mixture,
)
from .sets import (
    CredalSet,
    FamilyBranch,
    IntervalDistribution,
    LinearSystem,
    ParametricFamily,
    VertexSet,
    coin_family,
    die_family,
    die_star,
    fractional_bounds,
    independent_square_family,
    interval_to_linear_system,
)
from .linprog import (
    Constraint,
    HullMembership,
    LinearProgram,
    LpResult,
    constraint,
    hull_membership,
    solve,
)
from .inference import (
    Envelope,
    IndependenceReport,
    MassFunction,
    MobiusReport,
    SetFunction,
    belief_from_mass,
    check_conditional_independence,
    check_pairwise_independence,
    conditionalize,
    core_of_belief,
    envelope,
    mobius_report,
)
from .decisions import (
    AdmissibilityReport,
    GroupMinimaxResult,
    UtilityMatrix,
    e_admissible,
    e_admissible_over_hull,
    expected_utility,
    group_minimax,
    optimal_actions,
    pareto_optimal,
)
from .pooling import (
    PoolingProblem,
    independence_preserved,
    linear_pool,
    marginalization_commutes,
    nixon_scenario,
    total_variation,
)
from .betting import (
    BetBook,
    BookedVerdict,
    ExpectationPolynomial,
    PayoffTable,
    Ticket,
    booked_in_expectation,
    expectation_polynomial,
    expectation_under,
    fair_price,
    fair_price_cents,
    fair_ticket,
    payoff_table,
)
from . import errors, tolerances

__version__ = "0.1.0"
