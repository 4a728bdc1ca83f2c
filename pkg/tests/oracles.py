"""Independent reference computations used by the tests.

Everything here recomputes answers by a different route than the library:
feasibility by kernel plus Fourier-Motzkin elimination instead of a simplex
phase, spin counts by brute enumeration of a standard quadratic form, cone
angles by floating-point geometry instead of exact sector counting, and
residues by a quadrature with its own radius and sample count. Tests compare
the two routes; neither is allowed to call the other.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Sequence


# -- exact linear algebra ---------------------------------------------------------


def kernel_basis(matrix: Sequence[Sequence[Fraction]], n: int) -> list[list[Fraction]]:
    """Basis of the rational kernel of the given rows, vectors of length n.

    Full reduced row echelon form: every pivot column is cleared from every
    other row, which the free-column basis construction relies on.
    """
    rref: list[list[Fraction]] = []
    pivot_cols: list[int] = []
    for raw in matrix:
        row = list(map(Fraction, raw))
        for col, lead in zip(pivot_cols, rref):
            if row[col]:
                f = row[col]
                row = [a - f * b for a, b in zip(row, lead)]
        lead_col = next((j for j in range(n) if row[j]), None)
        if lead_col is None:
            continue
        inv = row[lead_col]
        row = [a / inv for a in row]
        for i, lead in enumerate(rref):
            if lead[lead_col]:
                f = lead[lead_col]
                rref[i] = [a - f * b for a, b in zip(lead, row)]
        rref.append(row)
        pivot_cols.append(lead_col)
    basis = []
    for j in range(n):
        if j in pivot_cols:
            continue
        v = [Fraction(0)] * n
        v[j] = Fraction(1)
        for col, lead in zip(pivot_cols, rref):
            v[col] = -lead[j]
        basis.append(v)
    return basis


def fourier_motzkin_feasible(
    ineqs: list[tuple[list[Fraction], Fraction]],
) -> bool:
    """Whether the system row . y <= rhs has a rational solution."""
    ineqs = [([Fraction(a) for a in row], Fraction(rhs)) for row, rhs in ineqs]
    n = len(ineqs[0][0]) if ineqs else 0
    for var in reversed(range(n)):
        pos, neg, rest = [], [], []
        for row, rhs in ineqs:
            c = row[var]
            target = pos if c > 0 else neg if c < 0 else rest
            target.append((row, rhs))
        combined = rest
        for prow, prhs in pos:
            for nrow, nrhs in neg:
                # scale so the eliminated coefficients are +1 and -1
                p = [a / prow[var] for a in prow], prhs / prow[var]
                q = [a / -nrow[var] for a in nrow], nrhs / -nrow[var]
                row = [a + b for a, b in zip(p[0], q[0])]
                row[var] = Fraction(0)
                combined.append((row, p[1] + q[1]))
        ineqs = combined
    return all(rhs >= 0 for _, rhs in ineqs)


def negative_orthant_feasible(matrix: Sequence[Sequence[Fraction]], n: int) -> bool:
    """Whether Cx = 0 has a solution with every coordinate at most -1."""
    basis = kernel_basis(matrix, n)
    ineqs = []
    for i in range(n):
        row = [basis[j][i] for j in range(len(basis))]
        ineqs.append((row, Fraction(-1)))
    return fourier_motzkin_feasible(ineqs)


# -- spin counts by brute force -----------------------------------------------------


def count_parities_brute(genus: int) -> tuple[int, int]:
    """(even, odd) theta characteristic counts by enumerating refinements.

    Refinements of the standard symplectic form are a torsor over F_2^{2g};
    the one shifted by v has Arf equal to q0(v) for the split form q0.
    """
    even = odd = 0
    for v in range(4**genus):
        bits = [(v >> k) & 1 for k in range(2 * genus)]
        q0 = sum(bits[2 * i] * bits[2 * i + 1] for i in range(genus)) % 2
        if q0:
            odd += 1
        else:
            even += 1
    return even, odd


# -- floating-point surface geometry ------------------------------------------------


def corner_orbits(polygons: dict, gluing: dict) -> list[list[tuple[str, int]]]:
    """Vertex classes by walking corners around each identified point."""
    def step(corner):
        pid, k = corner
        n = len(polygons[pid])
        incoming = (pid, (k - 1) % n)
        return gluing[incoming]

    seen = set()
    orbits = []
    for pid in sorted(polygons):
        for k in range(len(polygons[pid])):
            if (pid, k) in seen:
                continue
            orbit = []
            c = (pid, k)
            while c not in seen:
                seen.add(c)
                orbit.append(c)
                c = step(c)
            orbits.append(orbit)
    return orbits


def corner_angle(polygons: dict, corner: tuple[str, int]) -> float:
    pid, k = corner
    pts = polygons[pid]
    n = len(pts)
    ax, ay = pts[(k - 1) % n]
    bx, by = pts[k]
    cx, cy = pts[(k + 1) % n]
    into = math.atan2(ay - by, ax - bx)
    out = math.atan2(cy - by, cx - bx)
    angle = (into - out) % (2 * math.pi)
    return angle


def cone_multiples_numeric(polygons: dict, gluing: dict) -> list[int]:
    """Total angle of each vertex class divided by 2 pi, rounded."""
    multiples = []
    for orbit in corner_orbits(polygons, gluing):
        total = sum(corner_angle(polygons, c) for c in orbit)
        m = total / (2 * math.pi)
        if abs(m - round(m)) > 1e-9:
            raise AssertionError(f"cone angle {total} is not a multiple of 2 pi")
        multiples.append(round(m))
    return multiples


def genus_from_angles(polygons: dict, gluing: dict) -> int:
    total = sum(m - 1 for m in cone_multiples_numeric(polygons, gluing))
    if total % 2 != 0:
        raise AssertionError("odd total cone excess")
    return total // 2 + 1


# -- quadrature ----------------------------------------------------------------------


def residue_quadrature(f, radius: float = 0.8, samples: int = 2048) -> complex:
    """Mean of f(z) z over a circle, the coefficient of 1/z."""
    total = 0j
    for j in range(samples):
        z = radius * cmath.exp(2j * cmath.pi * j / samples)
        total += f(z) * z
    return total / samples
