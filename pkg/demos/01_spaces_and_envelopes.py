"""Build the three kinds of credal sets and compute event envelopes.

Run:  python demos/01_spaces_and_envelopes.py
"""

import numpy as np

from credal import (
    Event,
    LinearSystem,
    VertexSet,
    coin_family,
    conditionalize,
    constraint,
    envelope,
    iid_coin,
    make_distribution,
    simple_space,
)

# A plain four-outcome space with per-atom probability bounds. The bounds
# 0.15 <= p(w) <= 0.40 leave plenty of slack, so events have genuinely
# imprecise probabilities.
space = simple_space("w1", "w2", "w3", "w4")
rows = []
for j in range(4):
    e = np.zeros(4)
    e[j] = 1.0
    rows.append(constraint(e, ">=", 0.15))
    rows.append(constraint(e, "<=", 0.40))
bounds = LinearSystem(space, tuple(rows))

for atoms in [("w1",), ("w1", "w2"), ("w1", "w2", "w3")]:
    env = envelope(bounds, Event.of(space, *atoms))
    print(f"p({{{', '.join(atoms)}}}) ranges over [{env.lower:.4f}, {env.upper:.4f}]")

# The same machinery over a finite set of distributions: here just two
# opinions about a rigged coin pair.
pair = VertexSet((iid_coin(0.1, 2), iid_coin(0.5, 2)))
env = envelope(pair, Event.of(pair.space, "TT"))
print(f"\ntwo-point set: p(TT) in [{env.lower:.4f}, {env.upper:.4f}]")

# And over a one-parameter family: every coin with heads probability
# between 0.1 and 0.5, two independent tosses.
family = coin_family(0.1, 0.5)
env = envelope(family, Event.of(family.space, "TT"))
print(f"coin family:   p(TT) in [{env.lower:.4f}, {env.upper:.4f}]")

# Conditioning a credal set conditions every member with positive
# evidence. For the bounds box the result is reported as per-atom
# conditional bounds.
conditioned = conditionalize(bounds, Event.of(space, "w1", "w2"))
env = envelope(conditioned, Event.of(space, "w1"))
print(f"\nafter seeing {{w1, w2}}: p(w1 | evidence) in [{env.lower:.4f}, {env.upper:.4f}]")

# A single-member set conditions exactly like ordinary Bayes' rule.
single = VertexSet((make_distribution(space, [0.4, 0.3, 0.2, 0.1]),))
cond = conditionalize(single, Event.of(space, "w1", "w2"))
print("single member conditioned:", np.round(cond.vertices[0].probs, 4))
