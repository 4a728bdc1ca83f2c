"""Local model of a plumbed node and numeric checks of its gluing identity.

Near a node, the two branches carry coordinates z and w tied by z w = t for
a small complex scale t. A differential with a zero of order k on one branch
and a matching pole of order k + 2 on the other is realized in one formula
on the surface x y = t:

    eta = (x^(k+1) + t^(k+1) c) (x dx - y dy) / (x^2 + y^2)

with c the residue coefficient. Restricted to the first branch through
x = z, y = t / z this collapses to (z^k + t^(k+1) c / z) dz; through
x = t / w, y = w it collapses to t^(k+1) (-w^(-k-2) - c / w) dw. The two
residues at the node are t^(k+1) c and -t^(k+1) c, opposite as they must
be. Order k = -1 drops the monomial term and leaves two simple poles.

Everything here is plain complex arithmetic, checked on deterministic
sample grids in the overlap annulus plus a trapezoid residue quadrature,
so the identity above is verified numerically rather than assumed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class LocalModel:
    """One node of a plumbing, in local coordinates.

    zero_order is the order k >= -1 on the first branch; scale is the
    plumbing parameter t; residue_coefficient is the coefficient c on the
    simple-pole part (the actual residue picked up is t^(k+1) c).
    """

    zero_order: int
    scale: complex
    residue_coefficient: complex = 0

    def __post_init__(self) -> None:
        if self.zero_order < -1:
            raise ValueError("the local model needs zero order at least -1")
        if self.scale == 0 or abs(self.scale) >= 1:
            raise ValueError("the plumbing scale must satisfy 0 < |t| < 1")

    @property
    def monomial_coefficient(self) -> int:
        # k = -1 means no zero at all, only the residue part survives
        return 0 if self.zero_order == -1 else 1

    @property
    def node_residue(self) -> complex:
        return self.scale ** (self.zero_order + 1) * self.residue_coefficient


def coefficient_pair(model: LocalModel, x: complex, y: complex) -> tuple[complex, complex]:
    """(A, B) with eta = A dx + B dy at a point of the surface x y = t."""
    n = model.monomial_coefficient * x ** (model.zero_order + 1) + model.node_residue
    denom = x * x + y * y
    if denom == 0:
        raise ZeroDivisionError("the model formula degenerates where x^2 + y^2 = 0")
    return n * x / denom, -n * y / denom


def first_chart_value(model: LocalModel, z: complex) -> complex:
    """Coefficient of dz after substituting x = z, y = t / z."""
    if z == 0:
        raise ZeroDivisionError("z = 0 is the node")
    x, y = z, model.scale / z
    a, b = coefficient_pair(model, x, y)
    # dx = dz, dy = -t / z^2 dz
    return a + b * (-model.scale / (z * z))


def first_chart_closed_form(model: LocalModel, z: complex) -> complex:
    return model.monomial_coefficient * z**model.zero_order + model.node_residue / z


def second_chart_value(model: LocalModel, w: complex) -> complex:
    """Coefficient of dw after substituting x = t / w, y = w."""
    if w == 0:
        raise ZeroDivisionError("w = 0 is the node")
    x, y = model.scale / w, w
    a, b = coefficient_pair(model, x, y)
    return a * (-model.scale / (w * w)) + b


def second_chart_closed_form(model: LocalModel, w: complex) -> complex:
    k = model.zero_order
    return model.scale ** (k + 1) * (
        -model.monomial_coefficient * w ** (-(k + 2)) - model.residue_coefficient / w
    )


def overlap_samples(model: LocalModel, radii: int = 10, angles: int = 10) -> list[complex]:
    """Deterministic grid in the annulus sqrt|t| < |z| < 1."""
    inner = math.sqrt(abs(model.scale)) * 1.05
    outer = 0.95
    if inner >= outer:
        raise ValueError("the scale is too large for an overlap annulus")
    out = []
    for i in range(radii):
        r = inner * (outer / inner) ** (i / (radii - 1)) if radii > 1 else inner
        for j in range(angles):
            # the small offset keeps samples off the axes
            theta = 2 * math.pi * j / angles + 0.05
            out.append(r * cmath.exp(1j * theta))
    return out


def _relative_error(got: complex, want: complex) -> float:
    return abs(got - want) / max(abs(want), 1.0)


@dataclass(frozen=True)
class PullbackReport:
    max_error_first: float
    max_error_second: float
    residue_error: float
    samples: int

    def within(self, chart_tol: float, residue_tol: float) -> bool:
        return (
            self.max_error_first <= chart_tol
            and self.max_error_second <= chart_tol
            and self.residue_error <= residue_tol
        )


def residue_estimate(
    model: LocalModel, radius: float = 0.9, points: int = 1024
) -> complex:
    """Trapezoid quadrature of the first-chart residue at the node.

    On the circle |z| = radius the integral (2 pi i)^-1 closed-contour of
    f dz turns into the plain average of f(z_j) z_j over the roots of unity
    scaled to the circle.
    """
    total = 0j
    for j in range(points):
        z = radius * cmath.exp(2j * math.pi * j / points)
        total += first_chart_value(model, z) * z
    return total / points


def pullback_check(
    model: LocalModel, radii: int = 10, angles: int = 10, quad_points: int = 1024
) -> PullbackReport:
    """Compare the one-formula model against both chart-local closed forms."""
    err1 = 0.0
    err2 = 0.0
    samples = overlap_samples(model, radii, angles)
    for z in samples:
        err1 = max(err1, _relative_error(first_chart_value(model, z), first_chart_closed_form(model, z)))
        err2 = max(err2, _relative_error(second_chart_value(model, z), second_chart_closed_form(model, z)))
    res_err = abs(residue_estimate(model, points=quad_points) - model.node_residue)
    return PullbackReport(err1, err2, res_err, 2 * len(samples))
