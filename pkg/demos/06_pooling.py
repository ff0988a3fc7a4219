"""Linear opinion pooling: what it keeps (marginalization order) and
what it throws away (independence, and information in the joints).

Run:  python demos/06_pooling.py
"""

from credal import (
    PoolingProblem,
    iid_coin,
    independence_preserved,
    linear_pool,
    marginalization_commutes,
    nixon_scenario,
)
from credal.errors import PreconditionUnmetError
from credal.pooling import nixon_report

# Pooling then marginalizing equals marginalizing then pooling, exactly,
# for any weights -- linearity makes the orders commute.
base = nixon_scenario()
rep = marginalization_commutes(base, ["residence"])
print("pool->marginalize vs marginalize->pool gap:", rep.max_deviation)

# The canned scenario: expert P gives the extraterrestrial option zero
# probability, expert Q gives it everything. Weights (1, 0) are the
# sensible choice once you see the joints; the residence marginals alone
# could never tell you that.
report = nixon_report([1.0, 0.0])
print("\njoints:")
for name, d in report["joints"].items():
    print(f"  {name}:", {a: float(v) for a, v in zip(d.space.atoms, d.probs)})
print("residence marginals:", {k: list(map(float, d.probs)) for k, d in report["marginals"].items()})
print("pooled marginal:", list(map(float, report["pooled_marginal"].probs)))
print(
    f"total variation between the two marginals: {report['marginal_distance']:.3f} "
    "(deceptively close)"
)
print("note:", report["note"])

# Independence is NOT preserved: both experts treat the tosses as
# independent, the even pool does not.
coins = PoolingProblem((("low", iid_coin(0.1, 2)), ("high", iid_coin(0.5, 2))), [0.5, 0.5])
rep = independence_preserved(coins, "toss1", "toss2", tol=1e-9)
pooled = rep.pooled
print("\npooled coin pair:", {a: round(float(v), 3) for a, v in zip(pooled.space.atoms, pooled.probs)})
print(
    f"independence preserved? {rep.preserved} "
    f"(P(HH) = {rep.check.actual:.2f} vs marginal product {rep.check.product_value:.2f})"
)

# The check refuses to run if an expert does not satisfy the premise.
bad = PoolingProblem((("ok", iid_coin(0.2, 2)), ("pooled", linear_pool(coins))), [0.5, 0.5])
try:
    independence_preserved(bad, "toss1", "toss2", tol=1e-9)
except PreconditionUnmetError as ex:
    print("\nprecondition enforcement:", ex)
