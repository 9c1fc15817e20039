"""Weighted Lebesgue and Morrey norms on quadrature node layouts.

The Morrey seminorm takes a max over a finite ball family, so every reported
value is a lower bound for the true supremum; the refinement ladder in the
harness is what certifies stability.  Ball integrals of a compactly
supported field are routed through the support ball whenever the family
ball covers it: the node layout then depends only on (weight, support,
budget), which makes localized Lebesgue/Morrey comparisons exact instead of
agreeing only up to quadrature error.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .corpus import SmoothField
from .geometry import Ball, QuadratureBudget
from .weights import BallFamily, BallMassTable, Weight, ball_quadrature, mass_table_for_family

_GEOM_TOL = 1e-12


def overlap_case(ball: Ball, support: Ball) -> str:
    """'disjoint', 'covers' (support inside ball), 'inside', or 'partial'."""
    d = float(np.linalg.norm(ball.center - support.center))
    pad = _GEOM_TOL * max(ball.radius, support.radius)
    if d >= ball.radius + support.radius - pad:
        return "disjoint"
    if d + support.radius <= ball.radius + pad:
        return "covers"
    if d + ball.radius <= support.radius + pad:
        return "inside"
    return "partial"


def weighted_field_integral(f: SmoothField, omega: Weight, ball: Ball,
                            budget: QuadratureBudget, power: float = 1.0) -> float:
    """integral over ball of |f|^power * omega, overlap-routed (see module note)."""
    support = f.support
    case = overlap_case(ball, support)
    if case == "disjoint":
        return 0.0
    if case == "covers":
        target = support
        boost = 1
    else:
        target = ball
        # a small support seen from a much larger ball needs finer angles
        boost = 4 if (case == "partial" and ball.radius > 2.0 * support.radius) else 1
    pts, w = ball_quadrature(omega, target, budget, angular_boost=boost)
    vals = np.abs(f(pts))
    if power != 1.0:
        vals = vals ** power
    return float(np.dot(w, vals))


def weighted_lp_norm(f: SmoothField, p: float, omega: Weight, budget: QuadratureBudget,
                     domain: Optional[Ball] = None) -> float:
    """L^p(omega) norm over the domain ball (default: the support of f)."""
    if p < 1.0:
        raise ValueError(f"need p >= 1, got {p}")
    target = f.support if domain is None else domain
    return weighted_field_integral(f, omega, target, budget, power=p) ** (1.0 / p)


def weighted_morrey_norm(f: SmoothField, p: float, q: float, omega: Weight,
                         family: BallFamily, budget: QuadratureBudget,
                         table: Optional[BallMassTable] = None) -> float:
    """sup over the family of ( mass(B)^{p/q - 1} * integral_B |f|^p omega )^{1/p}.

    p = q collapses to the largest localized L^p(omega) mass; p < q rewards
    concentration at small balls.  The covering-ball integral is computed
    once and shared, so with the support ball in the family the p = q value
    matches weighted_lp_norm bit for bit.
    """
    if not (1.0 <= p <= q):
        raise ValueError(f"need 1 <= p <= q, got p={p}, q={q}")
    if table is None:
        table = mass_table_for_family(omega, family, budget)
    support = f.support
    exponent = p / q - 1.0
    cover_value: Optional[float] = None
    best = 0.0
    for k, center in enumerate(family.centers):
        d = float(np.linalg.norm(center - support.center))
        for j, r in enumerate(family.radii):
            if d >= r + support.radius:
                continue
            ball = Ball(center, float(r))
            if overlap_case(ball, support) == "covers":
                if cover_value is None:
                    cover_value = weighted_field_integral(f, omega, ball, budget, power=p)
                num = cover_value
            else:
                num = weighted_field_integral(f, omega, ball, budget, power=p)
            if num <= 0.0:
                continue
            term = table.masses[k, j] ** exponent * num
            if term > best:
                best = term
    return best ** (1.0 / p)
