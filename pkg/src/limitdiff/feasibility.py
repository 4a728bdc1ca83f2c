"""Exact rational linear feasibility with certificates.

Solves the one question the degeneration kernel needs: given an integer
matrix C, does ``C x = 0`` admit a solution with every coordinate strictly
negative? Scale invariance of the constraint set makes that equivalent to
the closed problem ``C x = 0, x <= -1``, which substituting ``x = -1 - s``
turns into standard-form feasibility ``C s = -C 1, s >= 0``. A phase-one
simplex over :class:`fractions.Fraction` with Bland's rule decides it; both
outcomes are validated post hoc, exactly:

* feasible: a rational vector x with C x = 0 and x <= -1 componentwise;
* infeasible: a row vector y with y C >= 0, y C != 0 (then any x < 0 would
  give (y C) x < 0 while y (C x) = 0, a contradiction).

Everything is exact; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class NegativeFeasibility:
    """Outcome of the strictly-negative feasibility problem for C x = 0."""

    feasible: bool
    solution: tuple[Fraction, ...] | None  # x <= -1 with C x = 0
    farkas: tuple[Fraction, ...] | None  # y with y C >= 0, y C != 0
    farkas_row: tuple[Fraction, ...] | None  # y C, componentwise >= 0


def _phase_one(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> tuple[list[Fraction], None] | tuple[None, list[Fraction]]:
    """Minimize the artificial sum for ``A s = b, s >= 0``.

    Returns (solution, None) when the system is feasible, else
    (None, y) where y certifies infeasibility: y A <= 0 and y b > 0.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    # Scale rows so the right-hand side is nonnegative, remembering signs.
    sign = [Fraction(1)] * m
    tab = []
    for i in range(m):
        if rhs[i] < 0:
            sign[i] = Fraction(-1)
        tab.append([sign[i] * v for v in rows[i]] + [Fraction(0)] * m + [sign[i] * rhs[i]])
        tab[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]
    total = n + m

    def reduced_cost(j: int) -> Fraction:
        # cost 1 on artificials, 0 on structural variables
        c_j = Fraction(1) if j >= n else Fraction(0)
        acc = c_j
        for i in range(m):
            if basis[i] >= n:
                acc -= tab[i][j]
        return acc

    while True:
        entering = -1
        for j in range(total):
            if j in basis:
                continue
            if reduced_cost(j) < 0:
                entering = j
                break  # Bland: smallest index
        if entering < 0:
            break
        leaving = -1
        best: Fraction | None = None
        for i in range(m):
            coef = tab[i][entering]
            if coef > 0:
                ratio = tab[i][total] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving < 0:
            raise ArithmeticError("phase-one objective unbounded; cannot happen")
        pivot = tab[leaving][entering]
        tab[leaving] = [v / pivot for v in tab[leaving]]
        for i in range(m):
            if i != leaving and tab[i][entering] != 0:
                factor = tab[i][entering]
                tab[i] = [a - factor * b for a, b in zip(tab[i], tab[leaving])]
        basis[leaving] = entering

    objective = sum(tab[i][total] for i in range(m) if basis[i] >= n)
    if objective == 0:
        solution = [Fraction(0)] * n
        for i in range(m):
            if basis[i] < n:
                solution[basis[i]] = tab[i][total]
        return solution, None
    # Dual certificate: y_i = (cost of basis) . (i-th column of B^-1); the
    # artificial block of the tableau holds B^-1 for the scaled system.
    y_scaled = []
    for i in range(m):
        acc = Fraction(0)
        for r in range(m):
            if basis[r] >= n:
                acc += tab[r][n + i]
        y_scaled.append(acc)
    y = [sign[i] * y_scaled[i] for i in range(m)]
    return None, y


def solve_negative_orthant(
    matrix: list[list[Fraction]], n_vars: int | None = None
) -> NegativeFeasibility:
    """Decide ``C x = 0`` with all ``x_j < 0`` (normalized to ``x <= -1``).

    ``n_vars`` pins the number of columns when the matrix has no rows.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else (n_vars or 0)
    if n == 0:
        return NegativeFeasibility(True, (), None, None)
    if m == 0:
        return NegativeFeasibility(True, tuple([Fraction(-1)] * n), None, None)

    rows = [[Fraction(v) for v in row] for row in matrix]
    rhs = [-sum(row) for row in rows]  # C s = -C 1
    solution, dual = _phase_one(rows, rhs)

    if solution is not None:
        x = tuple(Fraction(-1) - s for s in solution)
        for row in rows:
            if sum(c * v for c, v in zip(row, x)) != 0:
                raise ArithmeticError("simplex returned a non-solution; internal error")
        if any(v > -1 for v in x):
            raise ArithmeticError("simplex solution escapes the negative orthant")
        return NegativeFeasibility(True, x, None, None)

    assert dual is not None
    # dual has y C <= 0 and y b > 0 with b = -C 1, hence (-y) C >= 0 and
    # the row (-y) C has positive coordinate sum, so it is nonzero.
    y = [-v for v in dual]
    farkas_row = [sum(y[i] * rows[i][j] for i in range(m)) for j in range(n)]
    if any(v < 0 for v in farkas_row) or all(v == 0 for v in farkas_row):
        raise ArithmeticError("invalid infeasibility certificate; internal error")
    return NegativeFeasibility(False, None, tuple(y), tuple(farkas_row))
