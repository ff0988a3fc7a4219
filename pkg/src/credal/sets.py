"""Credal sets: finite vertex lists, linear constraint systems, and
one-parameter families.

A credal set is one of three representations:

* ``VertexSet`` — a finite (generally nonconvex) set of distributions.
  Polytopes are represented by ``LinearSystem``, not by their vertex
  lists, so a two-element VertexSet really is two points.
* ``LinearSystem`` — all distributions satisfying linear constraints;
  the probability simplex (sum = 1, p >= 0) is implicit.
* ``ParametricFamily`` — a union of one-parameter curves drawn from a
  closed generator registry, optionally composed with conditioning on
  an event. Generally nonconvex.

Families are scanned in a transformed parameter when that keeps event
probabilities polynomial (the independence-square family is scanned in
sqrt(w)); grids are dense (step 1e-4) with golden-section refinement of
bracketed extrema down to 1e-8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import (
    DIE_BRANCHES,
    Distribution,
    condition_distribution,
    die_bias,
    die_bias_matrix,
    die_space,
    iid_coin,
    iid_coin_matrix,
    independent_square,
    make_distribution,
)
from .errors import (
    EmptySetError,
    InfeasibleSystemError,
    ParamRangeError,
    SpaceMismatchError,
    ZeroEvidenceError,
)
from .linprog import Constraint, LpResult, PreparedLp, constraint
from .spaces import Event, OutcomeSpace, coin_space
from .tolerances import TAU_LP, TAU_NORM, TAU_ZERO

GRID_STEP = 1e-4
REFINE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class IntervalDistribution:
    """Per-atom probability bounds [lo, hi]."""

    space: OutcomeSpace
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float).copy()
        hi = np.asarray(self.hi, dtype=float).copy()
        if lo.shape != (self.space.size,) or hi.shape != (self.space.size,):
            raise ValueError("bound vectors must have one entry per atom")
        if np.any(lo < -TAU_NORM) or np.any(hi > 1.0 + TAU_NORM) or np.any(lo > hi + TAU_NORM):
            raise ValueError("bounds must satisfy 0 <= lo <= hi <= 1")
        if float(lo.sum()) > 1.0 + TAU_NORM or float(hi.sum()) < 1.0 - TAU_NORM:
            raise InfeasibleSystemError(
                f"no distribution fits: sum(lo)={float(lo.sum())}, sum(hi)={float(hi.sum())}"
            )
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def contains(self, d: Distribution, tol: float = TAU_NORM) -> bool:
        if d.space != self.space:
            raise SpaceMismatchError("distribution is over a different space")
        return bool(
            np.all(d.probs >= self.lo - tol) and np.all(d.probs <= self.hi + tol)
        )


@dataclass(frozen=True)
class VertexSet:
    """A finite set of distributions over a common space."""

    vertices: tuple[Distribution, ...]
    dropped: int = field(default=0, compare=False)  # zero-evidence vertices lost in conditioning

    def __post_init__(self):
        if not self.vertices:
            raise EmptySetError("vertex set must be nonempty")
        space = self.vertices[0].space
        for v in self.vertices[1:]:
            if v.space != space:
                raise SpaceMismatchError("vertices live on different spaces")

    @property
    def space(self) -> OutcomeSpace:
        return self.vertices[0].space

    def sample(self, k: int, rng: np.random.Generator) -> list[Distribution]:
        idx = rng.integers(0, len(self.vertices), size=k)
        return [self.vertices[i] for i in idx]


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """All distributions satisfying the constraints; feasibility is
    verified on construction.

    Construction runs the solver's phase 1 once; the prepared tableau is
    kept so later optimizations over the same system skip straight to
    phase 2.
    """

    space: OutcomeSpace
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        for c in self.constraints:
            if c.coeffs.shape != (self.space.size,):
                raise ValueError("constraint length does not match space size")
        prepared = PreparedLp(self.space.size, self.full_constraints())
        if not prepared.feasible:
            raise InfeasibleSystemError(
                f"constraint system is infeasible (residual {prepared.infeasibility})"
            )
        object.__setattr__(self, "_prepared", prepared)

    def full_constraints(self) -> tuple[Constraint, ...]:
        """Explicit rows plus the simplex normalization row."""
        rows = list(self.constraints)
        rows.append(constraint(np.ones(self.space.size), "=", 1.0))
        return tuple(rows)

    def optimize(self, objective: np.ndarray, sense: str) -> LpResult:
        return self._prepared.optimize(np.asarray(objective, dtype=float), sense)

    def contains(self, d: Distribution, tol: float = TAU_LP) -> bool:
        if d.space != self.space:
            raise SpaceMismatchError("distribution is over a different space")
        return all(c.satisfied_by(d.probs, tol) for c in self.constraints)

    def a_member(self) -> Distribution:
        point = self._prepared.feasible_point()
        return make_distribution(self.space, np.clip(point, 0.0, 1.0))

    def sample(self, k: int, rng: np.random.Generator) -> list[Distribution]:
        """Random vertices from random objectives, plus mixtures of them."""
        n = self.space.size
        points: list[np.ndarray] = []
        n_lp = min(k, max(4, n * 2))
        for _ in range(n_lp):
            res = self.optimize(rng.normal(size=n), "min")
            if res.status == "OPTIMAL":
                points.append(np.clip(res.witness, 0.0, 1.0))
        if not points:
            points = [self.a_member().probs]
        out = []
        for _ in range(k):
            if len(points) == 1:
                mix = points[0]
            else:
                w = rng.dirichlet(np.ones(len(points)))
                mix = np.einsum("i,ij->j", w, np.array(points))
            out.append(make_distribution(self.space, mix / mix.sum()))
        return out


def interval_to_linear_system(iv: IntervalDistribution) -> LinearSystem:
    """Box bounds per atom as a (feasibility-checked) LinearSystem."""
    rows = []
    n = iv.space.size
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        rows.append(constraint(e, ">=", float(iv.lo[j])))
        rows.append(constraint(e, "<=", float(iv.hi[j])))
    return LinearSystem(iv.space, tuple(rows))


class _GeneratorSpec:
    """One entry of the closed generator registry.

    Families are evaluated in a scan parameter s with theta = to_theta(s)
    chosen so every atom probability is a polynomial in s.
    """

    name: str

    def space(self, params: dict) -> OutcomeSpace:
        raise NotImplementedError

    def point(self, theta: float, params: dict) -> Distribution:
        raise NotImplementedError

    def scan_interval(self, lo: float, hi: float) -> tuple[float, float]:
        return lo, hi

    def to_theta(self, s: float) -> float:
        return s

    def matrix_scan(self, svals: np.ndarray, params: dict) -> np.ndarray:
        raise NotImplementedError

    def atom_polys_scan(self, params: dict) -> list[np.ndarray]:
        """Ascending coefficients of each atom probability in s."""
        raise NotImplementedError

    def validate(self, lo: float, hi: float, params: dict):
        self.point(lo, params)
        self.point(hi, params)


class _IidCoin(_GeneratorSpec):
    name = "iid-coin"

    def space(self, params):
        return coin_space(params.get("n_tosses", 2))

    def point(self, theta, params):
        return iid_coin(theta, params.get("n_tosses", 2))

    def matrix_scan(self, svals, params):
        return iid_coin_matrix(svals, params.get("n_tosses", 2))

    def atom_polys_scan(self, params):
        n = params.get("n_tosses", 2)
        from numpy.polynomial import polynomial as P

        heads = _atom_head_counts(n)
        polys = []
        for h in heads:
            poly = np.array([1.0])
            for _ in range(h):
                poly = P.polymul(poly, [0.0, 1.0])
            for _ in range(n - h):
                poly = P.polymul(poly, [1.0, -1.0])
            polys.append(poly)
        return polys


def _atom_head_counts(n: int) -> list[int]:
    return [n - bin(j).count("1") for j in range(2**n)]


class _DieBias(_GeneratorSpec):
    name = "die-bias"

    def space(self, params):
        return die_space()

    def point(self, theta, params):
        return die_bias(theta, params.get("branch", "favor-2"))

    def matrix_scan(self, svals, params):
        return die_bias_matrix(svals, params.get("branch", "favor-2"))

    def atom_polys_scan(self, params):
        branch = params.get("branch", "favor-2")
        lo = np.array([1.0 / 12.0, 1.0])
        hi = np.array([3.0 / 12.0, -1.0])
        first, second = (lo, hi) if branch == "favor-2" else (hi, lo)
        polys = [first, second] + [np.array([1.0 / 6.0])] * 4
        return polys


class _IndependentSquare(_GeneratorSpec):
    name = "independent-square"

    def space(self, params):
        return coin_space(2)

    def point(self, theta, params):
        return independent_square(theta)

    def scan_interval(self, lo, hi):
        return math.sqrt(lo), math.sqrt(hi)

    def to_theta(self, s):
        return s * s

    def matrix_scan(self, svals, params):
        # in s = sqrt(w) the family is exactly the two-toss coin family
        return iid_coin_matrix(svals, 2)

    def atom_polys_scan(self, params):
        return _IidCoin().atom_polys_scan({"n_tosses": 2})


GENERATORS: dict[str, _GeneratorSpec] = {
    g.name: g for g in (_IidCoin(), _DieBias(), _IndependentSquare())
}


@dataclass(frozen=True)
class FamilyBranch:
    generator: str
    lo: float
    hi: float
    params: tuple[tuple[str, object], ...] = ()

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise ParamRangeError(
                f"unknown generator {self.generator!r}; registry: {sorted(GENERATORS)}"
            )
        if not self.lo <= self.hi:
            raise ParamRangeError("branch needs lo <= hi")
        GENERATORS[self.generator].validate(self.lo, self.hi, dict(self.params))

    @property
    def spec(self) -> _GeneratorSpec:
        return GENERATORS[self.generator]

    @property
    def param_dict(self) -> dict:
        return dict(self.params)


@dataclass(frozen=True)
class ParametricFamily:
    """A union of generator branches, optionally conditioned on an event."""

    branches: tuple[FamilyBranch, ...]
    conditioning: Event | None = None

    def __post_init__(self):
        if not self.branches:
            raise EmptySetError("family needs at least one branch")
        space = self.branches[0].spec.space(self.branches[0].param_dict)
        for b in self.branches[1:]:
            if b.spec.space(b.param_dict) != space:
                raise SpaceMismatchError("family branches live on different spaces")
        if self.conditioning is not None and self.conditioning.space != space:
            raise SpaceMismatchError("conditioning event is over a different space")

    @property
    def space(self) -> OutcomeSpace:
        return self.branches[0].spec.space(self.branches[0].param_dict)

    def member(self, branch_index: int, theta: float) -> Distribution:
        b = self.branches[branch_index]
        d = b.spec.point(theta, b.param_dict)
        if self.conditioning is not None:
            d = condition_distribution(d, self.conditioning)
        return d

    def scan_grid(self, branch_index: int, step: float = GRID_STEP):
        """(scan values, member matrix) for one branch; conditioned rows are
        renormalized on the event and zero-evidence rows masked out."""
        b = self.branches[branch_index]
        a, z = b.spec.scan_interval(b.lo, b.hi)
        count = max(2, int(math.ceil((z - a) / step)) + 1)
        svals = np.linspace(a, z, count)
        M = b.spec.matrix_scan(svals, b.param_dict)
        if self.conditioning is not None:
            svals, M = _condition_rows(svals, M, self.conditioning)
        return svals, M

    def member_at_scan(self, branch_index: int, s: float) -> Distribution:
        b = self.branches[branch_index]
        return self.member(branch_index, b.spec.to_theta(s))

    def event_value_fn(self, branch_index: int, event: Event):
        """Scalar map s -> member probability of event (after conditioning)."""
        idx = list(event.indices)
        b = self.branches[branch_index]
        cond = self.conditioning

        def fn(s: float) -> float:
            row = b.spec.matrix_scan(np.array([s]), b.param_dict)[0]
            if cond is not None:
                pe = row[list(cond.indices)].sum()
                if pe <= TAU_ZERO:
                    return math.nan
                masked = np.zeros_like(row)
                masked[list(cond.indices)] = row[list(cond.indices)] / pe
                row = masked
            return float(row[idx].sum())

        return fn

    def contains(self, d: Distribution, tol: float = 1e-9) -> bool:
        """Whether some branch point coincides with d within sup-norm tol."""
        if d.space != self.space:
            raise SpaceMismatchError("distribution is over a different space")
        for bi in range(len(self.branches)):
            svals, M = self.scan_grid(bi)
            if len(svals) == 0:
                continue
            dist = np.abs(M - d.probs[None, :]).max(axis=1)
            j = int(np.argmin(dist))
            lo = svals[max(0, j - 1)]
            hi = svals[min(len(svals) - 1, j + 1)]

            def gap(s, bi=bi):
                try:
                    member = self.member_at_scan(bi, s)
                except ZeroEvidenceError:
                    return math.inf
                return float(np.abs(member.probs - d.probs).max())

            refined = _golden_min(gap, lo, hi)
            # the refinement bracket may narrow onto a point a hair off
            # an exact grid hit, so keep the better of the two
            if min(gap(refined), float(dist[j])) <= tol:
                return True
        return False

    def sample(self, k: int, rng: np.random.Generator) -> list[Distribution]:
        out: list[Distribution] = []
        guard = 0
        while len(out) < k and guard < 20 * k:
            guard += 1
            bi = int(rng.integers(0, len(self.branches)))
            b = self.branches[bi]
            theta = float(rng.uniform(b.lo, b.hi))
            try:
                out.append(self.member(bi, theta))
            except ZeroEvidenceError:
                continue
        if not out:
            raise EmptySetError("conditioning leaves no family member with evidence")
        return out


def _condition_rows(svals: np.ndarray, M: np.ndarray, event: Event):
    idx = list(event.indices)
    pe = M[:, idx].sum(axis=1)
    keep = pe > TAU_ZERO
    out = np.zeros_like(M[keep])
    out[:, idx] = M[keep][:, idx] / pe[keep][:, None]
    return svals[keep], out


def _golden_min(fn, a: float, b: float, tol: float = REFINE_TOL) -> float:
    """Golden-section minimum of fn on [a, b]; fn may return nan (treated
    as +inf)."""
    inv = 0.6180339887498949
    x1 = b - inv * (b - a)
    x2 = a + inv * (b - a)
    f1, f2 = _finite(fn(x1)), _finite(fn(x2))
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv * (b - a)
            f1 = _finite(fn(x1))
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv * (b - a)
            f2 = _finite(fn(x2))
    return (a + b) / 2.0


def _finite(v: float) -> float:
    return v if math.isfinite(v) else math.inf


CredalSet = VertexSet | LinearSystem | ParametricFamily


def credal_space(s: CredalSet) -> OutcomeSpace:
    return s.space


def coin_family(p_lo: float, p_hi: float, n_tosses: int = 2) -> ParametricFamily:
    """All iid coin-product distributions with P(H) in [p_lo, p_hi]."""
    return ParametricFamily(
        (FamilyBranch("iid-coin", p_lo, p_hi, (("n_tosses", n_tosses),)),)
    )


def die_family() -> ParametricFamily:
    """Both die-bias branches over the full eps interval [-1/48, 1/48]."""
    eps = 1.0 / 48.0
    return ParametricFamily(
        tuple(
            FamilyBranch("die-bias", -eps, eps, (("branch", b),))
            for b in DIE_BRANCHES
        )
    )


def die_star() -> VertexSet:
    """The two-point set of extreme die biases (eps = +-1/12 traded
    between faces 1 and 2)."""
    return VertexSet((die_bias(0.0, "favor-2"), die_bias(0.0, "favor-1")))


def independent_square_family(w_lo: float, w_hi: float) -> ParametricFamily:
    return ParametricFamily((FamilyBranch("independent-square", w_lo, w_hi),))


def fractional_bounds(
    system: LinearSystem, event_num: Event, event_den: Event, sense: str
) -> float:
    """Min or max of p(A and E) / p(E) over the system.

    Linear-fractional objectives reduce to an LP by the substitution
    y = p / p(E); see linprog.fractional_bounds_raw.
    """
    from .errors import DenominatorVanishesError
    from .linprog import fractional_bounds_raw

    if event_num.space != system.space or event_den.space != system.space:
        raise SpaceMismatchError("events are over a different space")
    den = event_den.indicator()
    upper = system.optimize(den, "max")
    if upper.status != "OPTIMAL" or upper.value <= TAU_ZERO:
        raise DenominatorVanishesError(
            "denominator event has zero upper probability over the system"
        )
    num = event_num.indicator() * den  # numerator restricted to A-and-E
    value, _ = fractional_bounds_raw(
        system.space.size, system.constraints, num, den, sense
    )
    if math.isnan(value):
        raise InfeasibleSystemError("fractional program unexpectedly infeasible")
    return value
