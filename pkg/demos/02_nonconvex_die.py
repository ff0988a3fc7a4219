"""A die rigged one of two ways: the classic example of belief that no
convex set (and no mass assignment) captures.

The die favors '1' at the expense of '2' by 1/12, or the other way
around, and is fair otherwise. The two admissible bias vectors form a
two-point, nonconvex credal set.

Run:  python demos/02_nonconvex_die.py
"""

import numpy as np

from credal import (
    Event,
    MassFunction,
    ParametricFamily,
    belief_from_mass,
    die_family,
    die_star,
    envelope,
    hull_membership,
    make_distribution,
    mobius_report,
)

star = die_star()
print("the two admissible biases:")
for v in star.vertices:
    print("  ", np.round(v.probs, 4))

env = envelope(star, Event.of(star.space, "1"))
print(f"\np(face 1) ranges over [{env.lower:.4f}, {env.upper:.4f}]")

# The fair die is the midpoint of the two biases, so it lies in their
# convex hull -- but it is NOT an admissible bias. Working with the hull
# would smuggle it in.
fair = make_distribution(star.space, [1 / 6] * 6)
hull = hull_membership(fair, list(star.vertices))
print(f"\nfair die in the convex hull? {hull.inside} (weights {hull.weights})")

family = die_family()  # the physically realistic version: eps-wiggles
on_a_branch = any(
    ParametricFamily((b,)).contains(fair, tol=1e-9) for b in family.branches
)
print(f"fair die on either bias branch? {on_a_branch}")

# The closest mass assignment puts 1/12 on each of {1} and {2} and 1/6 on
# the pair {1,2} -- but mass on {1,2} cannot say "all of it belongs to
# one face or the other", which is exactly what the two-point set says.
mass = MassFunction.from_subsets(
    star.space,
    {
        ("1",): 1 / 12,
        ("2",): 1 / 12,
        ("1", "2"): 1 / 6,
        ("3",): 1 / 6,
        ("4",): 1 / 6,
        ("5",): 1 / 6,
        ("6",): 1 / 6,
    },
)
bel = belief_from_mass(mass)
print(f"\nBel({{1}}) = {bel.of('1'):.4f}, Bel({{1,2}}) = {bel.of('1', '2'):.4f}")

# The lower envelope of the two-point set IS this belief function; the
# information lost is that the set of distributions compatible with the
# belief function (its core) is the whole hull segment, not two points.
report = mobius_report(star)
print(
    "two-point envelope is a belief function:",
    report.envelope_is_belief,
    f"(mass on {{1,2}}: {report.mobius.of('1', '2'):.4f})",
)
print("so the belief function cannot rule out the fair die, but the set does.")
