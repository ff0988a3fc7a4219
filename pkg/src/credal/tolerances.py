"""Numerical tolerances shared across the library.

All comparisons in the library are absolute unless stated otherwise.
"""

# Validation tolerance for probability vectors (normalization, range).
TAU_NORM = 1e-9

# Threshold below which an event probability counts as zero evidence.
TAU_ZERO = 1e-12

# Feasibility / optimality tolerance of the LP kernel; also the tie
# tolerance for decision criteria.
TAU_LP = 1e-8

# Tolerance for comparing against rounded two-decimal printed tables.
# A 1e-12 slop absorbs binary64 representation noise at the boundary
# (e.g. 0.065 - 0.06 evaluates slightly above 5e-3).
TAU_PAPER = 5e-3
TAU_PAPER_SLOP = 1e-12

# Separates "expectation is zero on a boundary" from "zero on an
# interior region" in Dutch-book verdicts.
TAU_STRICT = 1e-6


def close(a: float, b: float, tol: float) -> bool:
    """Absolute comparison with representation slop."""
    return abs(a - b) <= tol + TAU_PAPER_SLOP
