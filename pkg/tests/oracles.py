"""Independent brute-force oracles used by the test suite.

Everything here is deliberately written without touching the package's
solver or transforms: vertex enumeration uses itertools plus
numpy.linalg.solve, and subset sums are explicit double loops.
"""

import itertools

import numpy as np


def feasible(rows, x, tol=1e-9):
    for c in rows:
        v = float(c.coeffs @ x)
        if c.relation == "<=" and v > c.rhs + tol:
            return False
        if c.relation == ">=" and v < c.rhs - tol:
            return False
        if c.relation == "=" and abs(v - c.rhs) > tol:
            return False
    return True


def vertices_of(n, rows):
    """All vertices of {x >= 0} intersected with the constraint rows."""
    planes = [(np.asarray(c.coeffs), c.rhs, c.relation == "=") for c in rows]
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        planes.append((e, 0.0, False))
    eq = [i for i, p in enumerate(planes) if p[2]]
    rest = [i for i, p in enumerate(planes) if not p[2]]
    out = []
    for extra in itertools.combinations(rest, n - len(eq)):
        chosen = eq + list(extra)
        A = np.stack([planes[i][0] for i in chosen])
        b = np.array([planes[i][1] for i in chosen])
        try:
            x = np.linalg.solve(A, b)
        except np.linalg.LinAlgError:
            continue
        if np.any(x < -1e-9) or not feasible(rows, x):
            continue
        out.append(x)
    return out


def interval_lower_envelopes(n, lo, hi):
    """Lower envelope of every subset of a per-atom bounds box, from the
    closed form max(sum of los, 1 - sum of complementary his)."""
    bel = {}
    atoms = list(range(n))
    for r in range(n + 1):
        for subset in itertools.combinations(atoms, r):
            inside = sum(lo[j] for j in subset)
            outside = 1.0 - sum(hi[j] for j in atoms if j not in subset)
            bel[frozenset(subset)] = max(inside, outside, 0.0) if subset else 0.0
    bel[frozenset(atoms)] = 1.0
    return bel


def mobius_by_subset_sums(bel):
    """m(A) = sum over B subset of A of (-1)^|A - B| Bel(B), explicitly."""
    m = {}
    for A in bel:
        total = 0.0
        for r in range(len(A) + 1):
            for B in itertools.combinations(sorted(A), r):
                total += (-1) ** (len(A) - r) * bel[frozenset(B)]
        m[A] = total
    return m
