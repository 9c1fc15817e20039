"""Compactly supported smooth fields used to exercise the operators.

Each field carries its support ball explicitly: the operators integrate in
polar coordinates out to |x - center| + support_radius and rely on the value
vanishing beyond the support.  Gradients are analytic; a finite-difference
check is provided because every inequality experiment feeds |grad f| into
the right-hand sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .geometry import Ball, QuadratureBudget, as_point
from .weights import Weight, ball_quadrature, const_weight

# leave a relative margin at the support edge: the bump profile underflows
# there and 1/(1-u) overflows in the gradient factor
_EDGE = 1e-9


@dataclass(frozen=True, eq=False)
class SmoothField:
    """Scalar field with an optional analytic gradient and a support ball."""

    label: str
    center: np.ndarray
    support_radius: float
    value: Callable[[np.ndarray], np.ndarray]
    gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not np.isfinite(self.support_radius) or self.support_radius <= 0.0:
            raise ValueError("support radius must be positive and finite")

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(self.value(np.asarray(points, dtype=float)), dtype=float)

    @property
    def dimension(self) -> int:
        return self.center.shape[0]

    @property
    def support(self) -> Ball:
        return Ball(self.center, self.support_radius)

    def gradient_at(self, points: np.ndarray) -> np.ndarray:
        if self.gradient is None:
            raise ValueError(f"field '{self.label}' carries no analytic gradient")
        return np.asarray(self.gradient(np.asarray(points, dtype=float)), dtype=float)

    def gradient_norm(self, points: np.ndarray) -> np.ndarray:
        return np.linalg.norm(self.gradient_at(points), axis=-1)


def _profile(u: np.ndarray) -> np.ndarray:
    """exp(-1/(1-u)) on u < 1, zero beyond."""
    out = np.zeros_like(u)
    inside = u < 1.0 - _EDGE
    t = 1.0 - u[inside]
    out[inside] = np.exp(-1.0 / t)
    return out


def _profile_factor(u: np.ndarray) -> np.ndarray:
    """exp(-1/(1-u)) / (1-u)^2 on u < 1, zero beyond (bounded: the profile wins)."""
    out = np.zeros_like(u)
    inside = u < 1.0 - _EDGE
    t = 1.0 - u[inside]
    out[inside] = np.exp(-1.0 / t) / t ** 2
    return out


def bump_field(center=(0.0, 0.0), radius: float = 1.0, amplitude: float = 1.0,
               label: str = "bump") -> SmoothField:
    """amplitude * exp(-1/(1 - |x-c|^2/R^2)) inside B(c, R), zero outside."""
    c = as_point(center)
    R = float(radius)
    A = float(amplitude)

    def value(p):
        u = np.sum((p - c) ** 2, axis=-1) / R ** 2
        return A * _profile(u)

    def gradient(p):
        d = p - c
        u = np.sum(d ** 2, axis=-1) / R ** 2
        return (-2.0 * A / R ** 2) * _profile_factor(u)[..., None] * d

    return SmoothField(label, c, R, value, gradient)


def anisotropic_bump_field(center=(0.0, 0.0), radius: float = 1.0, scales=(1.0, 1.6),
                           amplitude: float = 1.0, label: str = "anisobump") -> SmoothField:
    """Bump in the dilated variable s_i (x_i - c_i); support inside B(c, R/min s)."""
    c = as_point(center)
    s = np.asarray(scales, dtype=float)
    if s.shape != c.shape or np.any(s <= 0.0):
        raise ValueError("scales must be positive, one per coordinate")
    R = float(radius)
    A = float(amplitude)

    def value(p):
        u = np.sum((s * (p - c)) ** 2, axis=-1) / R ** 2
        return A * _profile(u)

    def gradient(p):
        d = p - c
        u = np.sum((s * d) ** 2, axis=-1) / R ** 2
        return (-2.0 * A / R ** 2) * _profile_factor(u)[..., None] * (s ** 2 * d)

    return SmoothField(label, c, R / float(s.min()), value, gradient)


def field_difference(f1: SmoothField, f2: SmoothField, label: str) -> SmoothField:
    """f1 - f2 with the smallest enclosing support ball."""
    if f1.dimension != f2.dimension:
        raise ValueError("dimension mismatch")
    lo = np.minimum(f1.center - f1.support_radius, f2.center - f2.support_radius)
    hi = np.maximum(f1.center + f1.support_radius, f2.center + f2.support_radius)
    c = 0.5 * (lo + hi)
    R = max(
        float(np.linalg.norm(f1.center - c)) + f1.support_radius,
        float(np.linalg.norm(f2.center - c)) + f2.support_radius,
    )
    grad = None
    if f1.gradient is not None and f2.gradient is not None:
        grad = lambda p: f1.gradient_at(p) - f2.gradient_at(p)
    return SmoothField(label, c, R, lambda p: f1(p) - f2(p), grad)


def dipole_field(center=(0.0, 0.0), separation: float = 0.55, radius: float = 0.55,
                 amplitude: float = 1.0, label: str = "dipole") -> SmoothField:
    c = as_point(center)
    off = np.zeros_like(c)
    off[0] = separation
    pos = bump_field(c + off, radius, amplitude)
    neg = bump_field(c - off, radius, amplitude)
    return field_difference(pos, neg, label)


def translated_field(f: SmoothField, shift) -> SmoothField:
    v = as_point(shift, f.dimension)
    grad = None if f.gradient is None else (lambda p: f.gradient_at(p - v))
    return SmoothField(f"{f.label}@shift", f.center + v, f.support_radius,
                       lambda p: f(p - v), grad)


def scaled_field(f: SmoothField, lam: float) -> SmoothField:
    """x -> f(lam x); support shrinks by 1/lam, gradient picks up a factor lam."""
    if lam <= 0.0:
        raise ValueError("dilation factor must be positive")
    grad = None if f.gradient is None else (lambda p: lam * f.gradient_at(lam * p))
    return SmoothField(f"{f.label}@dil{lam:g}", f.center / lam, f.support_radius / lam,
                       lambda p: f(lam * p), grad)


def gradient_magnitude_field(f: SmoothField, power: float = 1.0) -> SmoothField:
    """|grad f|^power as a value-only field on the same support."""
    return SmoothField(f"|grad {f.label}|^{power:g}", f.center, f.support_radius,
                       lambda p: f.gradient_norm(p) ** power)


def abs_power_field(f: SmoothField, power: float) -> SmoothField:
    return SmoothField(f"|{f.label}|^{power:g}", f.center, f.support_radius,
                       lambda p: np.abs(f(p)) ** power)


def indicator_field(center=(0.0, 0.0), radius: float = 1.0) -> SmoothField:
    """Sharp ball indicator; handy for closed-form operator checks."""
    c = as_point(center)

    def value(p):
        return (np.sum((p - c) ** 2, axis=-1) < radius ** 2).astype(float)

    return SmoothField(f"indicator:{radius:g}", c, float(radius), value)


def make_corpus(n: int = 2) -> list[SmoothField]:
    """Default battery: centered, off-center, sign-changing, anisotropic."""
    origin = np.zeros(n)
    off = np.array([0.6, 0.2, 0.1][:n])
    scales = np.array([1.0, 1.6, 1.3][:n])
    return [
        bump_field(origin, 1.0, 1.0),
        bump_field(off, 0.8, 1.0, label="offbump"),
        dipole_field(origin),
        anisotropic_bump_field(origin, 1.0, scales),
    ]


def field_from_spec(spec: str, n: int = 2) -> SmoothField:
    """Parse 'bump[:cx,cy[,cz][:R[:amp]]]' and the offbump/dipole/anisobump names."""
    parts = spec.split(":")
    name = parts[0]
    origin = np.zeros(n)

    def parse_center(idx):
        return as_point([float(v) for v in parts[idx].split(",")], n) if len(parts) > idx else origin

    if name == "bump":
        center = parse_center(1)
        R = float(parts[2]) if len(parts) > 2 else 1.0
        A = float(parts[3]) if len(parts) > 3 else 1.0
        return bump_field(center, R, A)
    if name == "offbump":
        center = parse_center(1) if len(parts) > 1 else np.array([0.6, 0.2, 0.1][:n])
        R = float(parts[2]) if len(parts) > 2 else 0.8
        return bump_field(center, R, 1.0, label="offbump")
    if name == "dipole":
        center = parse_center(1)
        return dipole_field(center)
    if name == "anisobump":
        center = parse_center(1)
        scales = np.array([1.0, 1.6, 1.3][:n])
        return anisotropic_bump_field(center, 1.0, scales)
    raise ValueError(f"unknown field spec '{spec}'")


CORPUS_CATALOG = ("bump", "offbump", "dipole", "anisobump")


def check_gradient_fd(f: SmoothField, seed: int = 0, n_points: int = 100,
                      step: float = 1e-4, interior: float = 0.9) -> float:
    """Max relative error between analytic gradient and central differences.

    Points are drawn inside interior * support_radius; the error at each
    point is measured against the gradient magnitude there, floored at 1e-3
    of the largest sampled magnitude so near-critical points do not blow up
    the quotient.
    """
    rng = np.random.default_rng(seed)
    n = f.dimension
    pts = rng.standard_normal((4 * n_points, n))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    pts *= rng.uniform(0.0, interior * f.support_radius, 4 * n_points)[:, None]
    pts = (f.center[None, :] + pts)[:n_points]
    grad = f.gradient_at(pts)
    fd = np.empty_like(grad)
    for i in range(n):
        e = np.zeros(n)
        e[i] = step
        fd[:, i] = (f(pts + e) - f(pts - e)) / (2.0 * step)
    scale = np.maximum(np.linalg.norm(grad, axis=1), 1e-3 * np.abs(grad).max())
    return float((np.linalg.norm(fd - grad, axis=1) / scale).max())


def poincare_sobolev_check(f: SmoothField, ball: Ball, q: float, s_exp: float,
                           budget: QuadratureBudget) -> tuple[float, float]:
    """Both sides (without the constant) of the q-mean oscillation bound.

    lhs = ( avg_B |f - f_B|^q )^{1/q},  rhs = r * ( avg_B |grad f|^s )^{1/s}.
    Requires 1 <= s < n and 1 <= q <= n s / (n - s), and B inside the support.
    """
    n = f.dimension
    if not (1.0 <= s_exp < n):
        raise ValueError(f"need 1 <= s < {n}, got {s_exp}")
    q_max = n * s_exp / (n - s_exp)
    if not (1.0 <= q <= q_max * (1.0 + 1e-12)):
        raise ValueError(f"need 1 <= q <= {q_max}, got {q}")
    if float(np.linalg.norm(ball.center - f.center)) + ball.radius > f.support_radius + 1e-12:
        raise ValueError("ball must sit inside the field support")
    pts, w = ball_quadrature(const_weight(1.0), ball, budget, include_weight=False)
    total = w.sum()
    vals = f(pts)
    favg = float(np.dot(w, vals) / total)
    lhs = float((np.dot(w, np.abs(vals - favg) ** q) / total) ** (1.0 / q))
    gvals = f.gradient_norm(pts)
    rhs = ball.radius * float((np.dot(w, gvals ** s_exp) / total) ** (1.0 / s_exp))
    return lhs, rhs
