"""Probability vectors over finite spaces and the basic operations on them.

Includes the built-in one-parameter generators (binomial coin pairs, the
two-branch biased die, and the independence-constrained square family)
that parametric credal sets are built from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    NegativeMassError,
    NotFactorizedError,
    NotNormalizedError,
    ParamRangeError,
    SpaceMismatchError,
    UnknownVariableError,
    WeightInvalidError,
    ZeroEvidenceError,
)
from .spaces import Event, OutcomeSpace, coin_space, product_space, simple_space
from .tolerances import TAU_NORM, TAU_ZERO

DIE_BRANCHES = ("favor-2", "favor-1")


@dataclass(frozen=True, eq=False)
class Distribution:
    """A probability vector over a space, immutable after construction.

    ``is_normalized`` records whether the entries sum to 1 within
    TAU_NORM. Verbatim copies of rounded printed tables may undersum;
    they can only be built through ``make_distribution`` with
    ``require_normalized=False`` and carry the flag.
    """

    space: OutcomeSpace
    probs: np.ndarray
    is_normalized: bool = field(default=True, compare=False)

    def __post_init__(self):
        arr = np.asarray(self.probs, dtype=float)
        if arr.shape != (self.space.size,):
            raise ValueError(
                f"expected {self.space.size} probabilities, got shape {arr.shape}"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)

    def prob(self, atom: str) -> float:
        return float(self.probs[self.space.index(atom)])

    def p(self, event: Event) -> float:
        """Total probability of an event."""
        if event.space != self.space:
            raise SpaceMismatchError("event is over a different space")
        return float(self.probs[list(event.indices)].sum())

    def tensor(self) -> np.ndarray:
        """Probabilities reshaped to one axis per variable."""
        return self.probs.reshape(self.space.tensor_shape())

    def total(self) -> float:
        return float(self.probs.sum())

    def allclose(self, other: "Distribution", tol: float = 1e-12) -> bool:
        return self.space == other.space and bool(
            np.all(np.abs(self.probs - other.probs) <= tol)
        )


def make_distribution(
    space: OutcomeSpace, probs, require_normalized: bool = True
) -> Distribution:
    """Validate a probability vector and wrap it.

    Raises NegativeMassError for entries below -TAU_NORM and
    NotNormalizedError when an entry exceeds 1 + TAU_NORM or (unless
    ``require_normalized=False``) the sum differs from 1 by more than
    TAU_NORM.
    """
    arr = np.asarray(probs, dtype=float)
    if arr.shape != (space.size,):
        raise ValueError(f"expected {space.size} probabilities, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NotNormalizedError("probabilities must be finite")
    if np.any(arr < -TAU_NORM):
        worst = float(arr.min())
        raise NegativeMassError(f"negative probability {worst}")
    if np.any(arr > 1.0 + TAU_NORM):
        raise NotNormalizedError(f"probability above 1: {float(arr.max())}")
    total = float(arr.sum())
    normalized = abs(total - 1.0) <= TAU_NORM
    if require_normalized and not normalized:
        raise NotNormalizedError(f"probabilities sum to {total}, expected 1")
    return Distribution(space, arr, is_normalized=normalized)


def mixture(weights, dists: list[Distribution]) -> Distribution:
    """Pointwise convex combination of distributions on a common space."""
    w = np.asarray(weights, dtype=float)
    if len(dists) == 0 or w.shape != (len(dists),):
        raise WeightInvalidError("one weight per distribution required")
    if np.any(w < -TAU_NORM) or abs(float(w.sum()) - 1.0) > TAU_NORM:
        raise WeightInvalidError(
            f"weights must be nonnegative and sum to 1, got {w.tolist()}"
        )
    space = dists[0].space
    for d in dists[1:]:
        if d.space != space:
            raise SpaceMismatchError("mixture components live on different spaces")
    combined = np.zeros(space.size)
    for wi, d in zip(w, dists):
        combined += wi * d.probs
    return make_distribution(
        space, combined, require_normalized=all(d.is_normalized for d in dists)
    )


def marginalize(d: Distribution, keep_vars) -> Distribution:
    """Sum out all variables not in ``keep_vars``.

    The output space is the product of the kept variables in the
    original variable order; keeping every variable returns an equal
    distribution on the same space.
    """
    if not d.space.is_factorized:
        raise NotFactorizedError("marginalization needs a factorized space")
    keep = list(keep_vars)
    names = [v.name for v in d.space.variables]
    for k in keep:
        if k not in names:
            raise UnknownVariableError(f"unknown variable {k!r}")
    keep_axes = sorted(set(names.index(k) for k in keep))
    if len(keep_axes) != len(keep):
        raise UnknownVariableError("duplicate variable in keep set")
    if len(keep_axes) == len(names):
        return Distribution(d.space, d.probs, is_normalized=d.is_normalized)
    drop_axes = tuple(i for i in range(len(names)) if i not in keep_axes)
    summed = d.tensor().sum(axis=drop_axes)
    new_space = product_space(*(d.space.variables[i] for i in keep_axes))
    return make_distribution(
        new_space, summed.ravel(), require_normalized=d.is_normalized
    )


def condition_distribution(d: Distribution, e: Event) -> Distribution:
    """Bayes' rule: renormalize on the event, zero elsewhere."""
    if e.space != d.space:
        raise SpaceMismatchError("event is over a different space")
    pe = d.p(e)
    if pe <= TAU_ZERO:
        raise ZeroEvidenceError(f"event probability {pe} is at or below {TAU_ZERO}")
    out = np.zeros(d.space.size)
    idx = list(e.indices)
    out[idx] = d.probs[idx] / pe
    return make_distribution(d.space, out)


def iid_coin(p_heads: float, n_tosses: int) -> Distribution:
    """Product distribution of n independent tosses with P(H) = p_heads."""
    if not 0.0 <= p_heads <= 1.0:
        raise ParamRangeError(f"p_heads must be in [0, 1], got {p_heads}")
    if n_tosses < 1:
        raise ParamRangeError("n_tosses must be >= 1")
    per_toss = np.array([p_heads, 1.0 - p_heads])
    probs = per_toss
    for _ in range(n_tosses - 1):
        probs = np.multiply.outer(probs, per_toss).ravel()
    return make_distribution(coin_space(n_tosses), probs)


def die_space() -> OutcomeSpace:
    return simple_space("1", "2", "3", "4", "5", "6")


DIE_EPS_MAX = 1.0 / 48.0


def die_bias(eps: float, branch: str = "favor-2") -> Distribution:
    """A die fair on faces 3..6 with faces 1 and 2 trading mass 1/12 +- eps.

    branch "favor-2" puts (1/12 + eps, 3/12 - eps) on faces (1, 2);
    branch "favor-1" swaps them. eps ranges over [-1/48, 1/48].
    """
    if branch not in DIE_BRANCHES:
        raise ParamRangeError(f"branch must be one of {DIE_BRANCHES}, got {branch!r}")
    if not -DIE_EPS_MAX - TAU_ZERO <= eps <= DIE_EPS_MAX + TAU_ZERO:
        raise ParamRangeError(f"eps must be within [-1/48, 1/48], got {eps}")
    lo, hi = 1.0 / 12.0 + eps, 3.0 / 12.0 - eps
    first_two = (lo, hi) if branch == "favor-2" else (hi, lo)
    probs = np.array([*first_two, 1 / 6, 1 / 6, 1 / 6, 1 / 6])
    return make_distribution(die_space(), probs)


def independent_square(w: float) -> Distribution:
    """The two-toss distribution with P(HH) = w under independent tosses.

    Equals iid_coin(sqrt(w), 2); the HH entry is kept exactly equal to w.
    """
    if not 0.0 <= w <= 1.0:
        raise ParamRangeError(f"w must be in [0, 1], got {w}")
    s = math.sqrt(w)
    probs = np.array([w, s - w, s - w, (1.0 - s) ** 2])
    return make_distribution(coin_space(2), probs)


# Vectorized forms used by grid scans over parametric families: rows are
# parameter values, columns are atoms.


def iid_coin_matrix(thetas: np.ndarray, n_tosses: int) -> np.ndarray:
    thetas = np.asarray(thetas, dtype=float)
    heads = _head_counts(n_tosses)
    return (
        thetas[:, None] ** heads[None, :]
        * (1.0 - thetas[:, None]) ** (n_tosses - heads)[None, :]
    )


def _head_counts(n_tosses: int) -> np.ndarray:
    counts = np.zeros(2**n_tosses, dtype=int)
    for j in range(2**n_tosses):
        # bit 0 of the atom index toggles the last toss; H is the 0 bit
        counts[j] = n_tosses - bin(j).count("1")
    return counts


def die_bias_matrix(thetas: np.ndarray, branch: str) -> np.ndarray:
    thetas = np.asarray(thetas, dtype=float)
    out = np.full((len(thetas), 6), 1 / 6)
    lo, hi = 1.0 / 12.0 + thetas, 3.0 / 12.0 - thetas
    if branch == "favor-2":
        out[:, 0], out[:, 1] = lo, hi
    elif branch == "favor-1":
        out[:, 0], out[:, 1] = hi, lo
    else:
        raise ParamRangeError(f"branch must be one of {DIE_BRANCHES}, got {branch!r}")
    return out

