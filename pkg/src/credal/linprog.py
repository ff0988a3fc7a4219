"""Dense linear programming kernel.

A small two-phase tableau simplex for the tiny programs that arise from
credal sets (at most dozens of variables). Variables are nonnegative;
callers split free variables. Dantzig pricing switches to Bland's rule
after an iteration threshold so degenerate programs cannot cycle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .distributions import Distribution
from .errors import NumericalFailureError, SpaceMismatchError
from .tolerances import TAU_LP, TAU_ZERO

RELATIONS = ("<=", "=", ">=")

# Entries smaller than this are unusable as pivots.
PIVOT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Constraint:
    coeffs: np.ndarray
    relation: str
    rhs: float

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}")
        arr = np.asarray(self.coeffs, dtype=float).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    def satisfied_by(self, x: np.ndarray, tol: float = TAU_LP) -> bool:
        lhs = float(self.coeffs @ x)
        if self.relation == "<=":
            return lhs <= self.rhs + tol
        if self.relation == ">=":
            return lhs >= self.rhs - tol
        return abs(lhs - self.rhs) <= tol


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """min/max objective @ x subject to constraints and x >= 0."""

    n_vars: int
    constraints: tuple[Constraint, ...]
    objective: np.ndarray | None = None
    sense: str = "min"  # "min" | "max" | "feasibility"

    def __post_init__(self):
        if self.sense not in ("min", "max", "feasibility"):
            raise ValueError(f"bad sense {self.sense!r}")
        for c in self.constraints:
            if c.coeffs.shape != (self.n_vars,):
                raise ValueError("constraint length does not match n_vars")
        if self.sense != "feasibility":
            obj = np.asarray(self.objective, dtype=float).copy()
            if obj.shape != (self.n_vars,):
                raise ValueError("objective length does not match n_vars")
            obj.flags.writeable = False
            object.__setattr__(self, "objective", obj)


@dataclass(frozen=True, eq=False)
class LpResult:
    status: str  # "OPTIMAL" | "INFEASIBLE" | "UNBOUNDED"
    value: float | None = None
    witness: np.ndarray | None = None
    infeasibility: float | None = None  # phase-1 residual when INFEASIBLE


def constraint(coeffs, relation: str, rhs: float) -> Constraint:
    return Constraint(np.asarray(coeffs, dtype=float), relation, float(rhs))


class _Tableau:
    """Simplex tableau: rows are equality constraints, col -1 is the rhs."""

    def __init__(self, A: np.ndarray, b: np.ndarray, basis: list[int]):
        self.T = np.hstack([A, b[:, None]])
        self.basis = basis

    def solution(self, n: int) -> np.ndarray:
        x = np.zeros(self.T.shape[1] - 1)
        for row, col in enumerate(self.basis):
            x[col] = self.T[row, -1]
        return x[:n]

    def reduced_costs(self, cost: np.ndarray) -> np.ndarray:
        z = cost.astype(float).copy()
        for row, col in enumerate(self.basis):
            if abs(z[col]) > 0.0:
                z -= z[col] * self.T[row, :-1]
        return z

    def pivot(self, row: int, col: int):
        T = self.T
        T[row] /= T[row, col]
        factors = T[:, col].copy()
        factors[row] = 0.0
        T -= np.outer(factors, T[row])
        self.basis[row] = col


def _run_simplex(tab: _Tableau, cost: np.ndarray, allowed_cols, bland_after: int,
                 max_iter: int) -> str:
    """Minimize cost over the tableau in place. Returns OPTIMAL or UNBOUNDED.

    The reduced-cost row is appended as an extra tableau row so pivots
    keep it current; it is stripped again before returning.
    """
    allowed = np.zeros(tab.T.shape[1] - 1, dtype=bool)
    allowed[list(allowed_cols)] = True
    m = tab.T.shape[0]
    tab.T = np.vstack([tab.T, np.append(tab.reduced_costs(cost), 0.0)])
    try:
        for it in range(max_iter):
            z = tab.T[-1, :-1]
            candidates = np.where(allowed & (z < -TAU_LP))[0]
            if candidates.size == 0:
                return "OPTIMAL"
            if it < bland_after:
                enter = candidates[np.argmin(z[candidates])]
            else:
                enter = candidates[0]  # Bland: smallest index
            col = tab.T[:m, enter]
            rows = np.where(col > PIVOT_TOL)[0]
            if rows.size == 0:
                return "UNBOUNDED"
            ratios = tab.T[rows, -1] / col[rows]
            best = ratios.min()
            tied = rows[ratios <= best + TAU_ZERO]
            # smallest basis index among ties keeps Bland's rule intact
            leave = tied[np.argmin([tab.basis[r] for r in tied])]
            tab.pivot(leave, enter)
        raise NumericalFailureError(f"simplex exceeded {max_iter} iterations")
    finally:
        tab.T = tab.T[:-1]


class PreparedLp:
    """A constraint set with phase 1 already run, reusable across
    objectives.

    Building one runs phase 1 and drives artificials out; ``optimize``
    then copies the feasible tableau and runs phase 2 only. Instances
    are immutable after construction and safe to share.
    """

    def __init__(self, n_vars: int, constraints: tuple[Constraint, ...]):
        self.n_vars = n_vars
        self.constraints = constraints
        m = len(constraints)
        n = n_vars
        rows = []
        for c in constraints:
            coeffs, rel, rhs = c.coeffs.copy(), c.relation, c.rhs
            if rhs < 0:
                coeffs, rhs = -coeffs, -rhs
                rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
            rows.append((coeffs, rel, rhs))

        n_slack = sum(1 for _, rel, _ in rows if rel != "=")
        A = np.zeros((m, n + n_slack))
        b = np.zeros(m)
        slack_col = n
        slack_basis: dict[int, int] = {}
        for i, (coeffs, rel, rhs) in enumerate(rows):
            A[i, :n] = coeffs
            b[i] = rhs
            if rel == "<=":
                A[i, slack_col] = 1.0
                slack_basis[i] = slack_col
                slack_col += 1
            elif rel == ">=":
                A[i, slack_col] = -1.0
                slack_col += 1

        # artificials for rows without a usable slack in the initial basis
        art_rows = [i for i in range(m) if i not in slack_basis]
        self.n_structural = n + n_slack
        total = n + n_slack + len(art_rows)
        full = np.zeros((m, total))
        full[:, : n + n_slack] = A
        basis = [0] * m
        for k, i in enumerate(art_rows):
            full[i, n + n_slack + k] = 1.0
            basis[i] = n + n_slack + k
        for i, col in slack_basis.items():
            basis[i] = col

        tab = _Tableau(full, b, basis)
        self.bland_after = 50 + 10 * (m + total)
        self.max_iter = 500 + 100 * (m + total)
        self.infeasibility = 0.0
        if art_rows:
            phase1_cost = np.zeros(total)
            phase1_cost[n + n_slack :] = 1.0
            status = _run_simplex(
                tab, phase1_cost, range(total), self.bland_after, self.max_iter
            )
            assert status == "OPTIMAL"  # phase 1 objective is bounded below by 0
            self.infeasibility = float(phase1_cost @ _full_solution(tab, total))
            if self.infeasibility > TAU_LP:
                self._tab = None
                return
            _drive_out_artificials(tab, n + n_slack)
        tab.T.flags.writeable = False
        self._tab = tab

    @property
    def feasible(self) -> bool:
        return self._tab is not None

    def _fresh_tableau(self) -> _Tableau:
        t = _Tableau.__new__(_Tableau)
        t.T = self._tab.T.copy()
        t.basis = list(self._tab.basis)
        return t

    def feasible_point(self) -> np.ndarray | None:
        if self._tab is None:
            return None
        return self._tab.solution(self.n_vars)

    def optimize(self, objective, sense: str) -> LpResult:
        if self._tab is None:
            return LpResult("INFEASIBLE", infeasibility=self.infeasibility)
        obj = np.asarray(objective, dtype=float)
        tab = self._fresh_tableau()
        cost = np.zeros(tab.T.shape[1] - 1)
        cost[: self.n_vars] = obj if sense == "min" else -obj
        status = _run_simplex(
            tab, cost, range(self.n_structural), self.bland_after, self.max_iter
        )
        if status == "UNBOUNDED":
            return LpResult("UNBOUNDED", witness=tab.solution(self.n_vars))
        x = tab.solution(self.n_vars)
        value = float(obj @ x)
        lp = LinearProgram(self.n_vars, self.constraints, objective=obj, sense=sense)
        return LpResult("OPTIMAL", value=value, witness=_checked(lp, x))


def solve(lp: LinearProgram) -> LpResult:
    """Two-phase simplex. Witnesses are feasible within TAU_LP."""
    n = lp.n_vars
    if len(lp.constraints) == 0:
        # only x >= 0; the origin is feasible
        if lp.sense == "feasibility":
            return LpResult("OPTIMAL", value=0.0, witness=np.zeros(n))
        obj = lp.objective if lp.sense == "min" else -lp.objective
        if np.any(obj < -TAU_LP):
            return LpResult("UNBOUNDED")
        return LpResult("OPTIMAL", value=0.0, witness=np.zeros(n))

    prepared = PreparedLp(n, lp.constraints)
    if not prepared.feasible:
        return LpResult("INFEASIBLE", infeasibility=prepared.infeasibility)
    if lp.sense == "feasibility":
        x = prepared.feasible_point()
        return LpResult("OPTIMAL", value=0.0, witness=_checked(lp, x))
    return prepared.optimize(lp.objective, lp.sense)


def _full_solution(tab: _Tableau, total: int) -> np.ndarray:
    x = np.zeros(total)
    for row, col in enumerate(tab.basis):
        x[col] = tab.T[row, -1]
    return x


def _drive_out_artificials(tab: _Tableau, n_structural: int):
    """Pivot zero-level artificials out of the basis; drop redundant rows."""
    drop = []
    for row in range(len(tab.basis)):
        if tab.basis[row] < n_structural:
            continue
        pivots = np.where(np.abs(tab.T[row, :n_structural]) > PIVOT_TOL)[0]
        if pivots.size:
            tab.pivot(row, int(pivots[0]))
        else:
            drop.append(row)  # row is redundant: all-zero in structural cols
    if drop:
        keep = [r for r in range(len(tab.basis)) if r not in drop]
        tab.T = tab.T[keep]
        tab.basis = [tab.basis[r] for r in keep]


def _checked(lp: LinearProgram, x: np.ndarray) -> np.ndarray:
    for c in lp.constraints:
        if not c.satisfied_by(x, tol=10 * TAU_LP):
            raise NumericalFailureError("solver returned an infeasible witness")
    if np.any(x < -10 * TAU_LP):
        raise NumericalFailureError("solver returned a negative witness entry")
    return x


@dataclass(frozen=True, eq=False)
class HullMembership:
    inside: bool
    weights: np.ndarray | None = None  # convex coefficients when inside
    normal: np.ndarray | None = None  # separating hyperplane otherwise
    offset: float | None = None  # normal @ v_i <= offset < normal @ point
    margin: float | None = None


def hull_membership(point: Distribution, vertices: list[Distribution]) -> HullMembership:
    """Exact membership of a point in the convex hull of finitely many points.

    Inside yields convex weights; outside yields a separating hyperplane
    (normal, offset) with normal @ point > offset >= normal @ v_i.
    """
    if not vertices:
        raise ValueError("vertex list must be nonempty")
    space = point.space
    for v in vertices:
        if v.space != space:
            raise SpaceMismatchError("hull vertices live on a different space")
    V = np.stack([v.probs for v in vertices])  # k x n
    k, n = V.shape
    cons = [constraint(V[:, j], "=", point.probs[j]) for j in range(n)]
    cons.append(constraint(np.ones(k), "=", 1.0))
    res = solve(LinearProgram(k, tuple(cons), sense="feasibility"))
    if res.status == "OPTIMAL":
        return HullMembership(inside=True, weights=res.witness)

    # separation LP: max c @ x - t  s.t.  c @ v_i <= t, |c_j| <= 1,
    # with c = u - w and t = t+ - t- split into nonnegative parts
    nv = 2 * n + 2
    obj = np.concatenate([point.probs, -point.probs, [-1.0, 1.0]])
    cons = []
    for i in range(k):
        row = np.concatenate([V[i], -V[i], [-1.0, 1.0]])
        cons.append(constraint(row, "<=", 0.0))
    for j in range(2 * n):
        row = np.zeros(nv)
        row[j] = 1.0
        cons.append(constraint(row, "<=", 1.0))
    sep = solve(LinearProgram(nv, tuple(cons), objective=obj, sense="max"))
    if sep.status != "OPTIMAL":
        raise NumericalFailureError("separation LP failed")
    u, w = sep.witness[:n], sep.witness[n : 2 * n]
    normal = u - w
    offset = float(sep.witness[2 * n] - sep.witness[2 * n + 1])
    return HullMembership(
        inside=False, normal=normal, offset=offset, margin=float(sep.value)
    )


def prepare_fractional(
    n_vars: int, constraints: tuple[Constraint, ...], denominator: np.ndarray
) -> PreparedLp:
    """Phase-1-completed program for ratio objectives over a probability
    polytope with a fixed denominator event.

    Uses the standard substitution y = t p, t = 1 / (denominator @ p):
    the explicit rows become homogeneous in (y, t), the simplex row
    becomes sum(y) = t, and the denominator becomes the normalization
    y @ d = 1. Optimize with objectives of the form append(num, 0).
    """
    rows = []
    for c in constraints:
        rows.append(constraint(np.append(c.coeffs, -c.rhs), c.relation, 0.0))
    rows.append(constraint(np.append(np.ones(n_vars), -1.0), "=", 0.0))  # sum p = 1
    rows.append(constraint(np.append(denominator, 0.0), "=", 1.0))
    return PreparedLp(n_vars + 1, tuple(rows))


def fractional_optimize(
    prepared: PreparedLp, numerator: np.ndarray, sense: str
) -> tuple[float, np.ndarray | None]:
    """(bound, witness distribution or None) for one ratio objective."""
    if sense not in ("min", "max"):
        raise ValueError("sense must be min or max")
    n_vars = prepared.n_vars - 1
    res = prepared.optimize(np.append(numerator, 0.0), sense)
    if res.status != "OPTIMAL":
        return float("nan"), None
    y, t = res.witness[:n_vars], float(res.witness[n_vars])
    witness = y / t if t > TAU_ZERO else None
    return float(res.value), witness


def fractional_bounds_raw(
    n_vars: int,
    constraints: tuple[Constraint, ...],
    numerator: np.ndarray,
    denominator: np.ndarray,
    sense: str,
) -> tuple[float, np.ndarray | None]:
    """One-shot min or max of (numerator @ p) / (denominator @ p)."""
    return fractional_optimize(
        prepare_fractional(n_vars, constraints, denominator), numerator, sense
    )


def enumerate_polytope_vertices(
    n_vars: int,
    constraints: tuple[Constraint, ...],
    max_combinations: int = 2_000_000,
) -> np.ndarray:
    """Brute-force vertex enumeration of {x >= 0, constraints}.

    Tries every choice of n_vars tight hyperplanes among the constraint
    rows and the coordinate planes, keeping feasible solutions. Only
    intended for small systems (the combination count is guarded).
    """
    planes = []
    for c in constraints:
        planes.append((c.coeffs, c.rhs, c.relation == "="))
    for j in range(n_vars):
        e = np.zeros(n_vars)
        e[j] = 1.0
        planes.append((e, 0.0, False))
    forced = [i for i, p in enumerate(planes) if p[2]]
    optional = [i for i, p in enumerate(planes) if not p[2]]
    need = n_vars - len(forced)
    if need < 0:
        need = 0
    from math import comb

    if comb(len(optional), need) > max_combinations:
        raise NumericalFailureError("vertex enumeration would be too large")
    vertices = []
    for extra in itertools.combinations(optional, need):
        chosen = forced + list(extra)
        A = np.stack([planes[i][0] for i in chosen])
        b = np.array([planes[i][1] for i in chosen])
        if A.shape[0] != n_vars:
            continue
        try:
            x = np.linalg.solve(A, b)
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(x)):
            continue
        if np.any(x < -TAU_LP):
            continue
        if all(c.satisfied_by(x) for c in constraints):
            vertices.append(x)
    if not vertices:
        return np.zeros((0, n_vars))
    arr = np.array(vertices)
    # dedupe within tolerance
    unique: list[np.ndarray] = []
    for v in arr:
        if not any(np.all(np.abs(v - u) <= 1e-9) for u in unique):
            unique.append(v)
    return np.array(unique)
