"""Conditional independence is not preserved by mixing.

Two joints over binary X, Y, Z both make X and Z independent given Y,
yet their even mixture does not: the set of conditionally independent
distributions is nonconvex.

Run:  python demos/03_independence_and_mixtures.py
"""

import numpy as np

from credal import (
    Variable,
    check_conditional_independence,
    check_pairwise_independence,
    iid_coin,
    interval_to_linear_system,
    make_distribution,
    mixture,
    product_space,
)
from credal.sets import IntervalDistribution

space = product_space(
    Variable("X", ("x", "~x")), Variable("Y", ("y", "~y")), Variable("Z", ("z", "~z"))
)

# Two published joint tables (the first, as printed, sums to 0.98; it is
# kept verbatim rather than repaired, and the checker works either way).
p = make_distribution(
    space, [0.1, 0.1, 0.03, 0.06, 0.1, 0.1, 0.16, 0.33], require_normalized=False
)
p_prime = make_distribution(space, [0.05, 0.05, 0.1, 0.1, 0.15, 0.15, 0.2, 0.2])

for name, table in (("first table", p), ("second table", p_prime)):
    rep = check_conditional_independence(table, "X", "Z", "Y", tol=1e-9)
    print(f"{name}: X indep Z given Y? {rep.passed} (max violation {rep.max_violation:.2e})")

q = mixture([0.5, 0.5], [p, p_prime])
rep = check_conditional_independence(q, "X", "Z", "Y", tol=1e-9)
print(
    f"\neven mixture: passes? {rep.passed}; worst cell {rep.worst_cell}: "
    f"joint {rep.actual:.4f} vs product formula {rep.product_value:.4f}"
)

# The same convexity failure without conditioning: each coin-pair makes
# the two tosses independent, the mixture of the pairs does not.
q2 = mixture([0.5, 0.5], [iid_coin(0.1, 2), iid_coin(0.5, 2)])
rep2 = check_pairwise_independence(q2, "toss1", "toss2", tol=1e-9)
print(
    f"\nmixture of two independent coin pairs: independent? {rep2.passed}; "
    f"P(HH) = {rep2.actual:.2f} but the marginals multiply to {rep2.product_value:.2f}"
)

# Interval bounds, by contrast, are convex: they compile to a linear
# constraint system with a feasibility proof.
xy = product_space(Variable("X", ("x", "~x")), Variable("Y", ("y", "~y")))
box = interval_to_linear_system(
    IntervalDistribution(xy, [0.0, 0.1, 0.2, 0.3], [0.2, 0.3, 0.4, 0.5])
)
member = make_distribution(xy, [0.1, 0.2, 0.3, 0.4])
print(f"\ninterval box feasible with member {np.round(member.probs, 2)}: {box.contains(member)}")
