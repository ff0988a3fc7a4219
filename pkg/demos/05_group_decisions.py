"""Decision criteria over sets of opinions: admissibility relative to a
finite set versus its hull, group minimax, and Pareto flags.

Run:  python demos/05_group_decisions.py
"""

from credal import (
    UtilityMatrix,
    VertexSet,
    e_admissible,
    e_admissible_over_hull,
    expected_utility,
    group_minimax,
    hull_membership,
    make_distribution,
    mixture,
    optimal_actions,
    pareto_optimal,
    simple_space,
)

states = simple_space("c1", "c2", "c3")
U = UtilityMatrix(("a1", "a2", "a3"), states, [[3, 3, 4], [2.5, 3.5, 5], [1, 5, 4]])

# Two sharply different opinions.
p1 = make_distribution(states, [1 / 8, 3 / 4, 1 / 8])
p2 = make_distribution(states, [3 / 4, 1 / 8, 1 / 8])

for a in U.actions:
    print(f"{a}: eu under p1 = {expected_utility(a, p1, U):.4f}, under p2 = {expected_utility(a, p2, U):.4f}")

rep = e_admissible(U, VertexSet((p1, p2)))
print("\nadmissible relative to the two-point set:", rep.admissible_actions)

hull_rep = e_admissible_over_hull(U, [p1, p2])
print("admissible relative to its convex hull:  ", hull_rep.admissible_actions)
print(
    "a2 re-enters through mixtures, e.g. the even one:",
    optimal_actions(mixture([0.5, 0.5], [p1, p2]), U),
)

# A three-member group with the same utilities but different opinions.
g1 = make_distribution(states, [1 / 8, 3 / 4, 1 / 8])
g2 = make_distribution(states, [1 / 4, 1 / 2, 1 / 4])
g3 = make_distribution(states, [3 / 8, 3 / 8, 1 / 4])
group = [g1, g2, g3]

for i, g in enumerate(group, 1):
    print(f"\nmember {i} prefers {optimal_actions(g, U)}")

gm = group_minimax(U, group)
print("\nregret table (rows: actions, columns: members):")
for i, a in enumerate(gm.actions):
    row = "  ".join(f"{v:.4f}" for v in gm.losses[i])
    print(f"  {a}: {row}   worst {gm.max_losses[i]:.4f}")
print("group minimax action:", gm.winner)

# A particular weighted mixture prefers a2 instead, and points outside
# the hull can also prefer the minimax action.
mix = mixture([1 / 8, 1 / 8, 3 / 4], group)
print("\nbut the mixture (1/8, 1/8, 3/4) prefers:", optimal_actions(mix, U))
outside = make_distribution(states, [1 / 3, 1 / 2, 1 / 6])
print(
    f"the point {tuple(round(float(x), 4) for x in outside.probs)} is in the hull? "
    f"{hull_membership(outside, group).inside}; it prefers {optimal_actions(outside, U)}"
)

print("\nPareto flags:", pareto_optimal(U, group))
