"""Balls, shells, dyadic grids and the quadrature rules behind every integral.

Every integral in this package is reduced to polar form: a fixed rule on the
unit sphere S^{n-1} composed with Gauss-Legendre panels in the radius.  Radial
panels follow a geometric ladder anchored at powers of two, so integrands that
behave like a power of the radius near a truncation boundary are resolved
panel by panel and nested ladders share breakpoints bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from math import gamma, pi
from typing import Callable

import numpy as np

SUPPORTED_DIMENSIONS = (2, 3)


def sphere_area(n: int) -> float:
    """Surface measure of S^{n-1}: 2 pi^{n/2} / Gamma(n/2)."""
    return 2.0 * pi ** (n / 2.0) / gamma(n / 2.0)


def unit_ball_volume(n: int) -> float:
    """Volume of the unit ball: pi^{n/2} / Gamma(n/2 + 1)."""
    return pi ** (n / 2.0) / gamma(n / 2.0 + 1.0)


def as_point(x, n: int | None = None) -> np.ndarray:
    p = np.asarray(x, dtype=float)
    if p.ndim != 1:
        raise ValueError(f"point must be a flat coordinate array, got shape {p.shape}")
    if p.shape[0] not in SUPPORTED_DIMENSIONS:
        raise ValueError(f"dimension {p.shape[0]} unsupported, expected one of {SUPPORTED_DIMENSIONS}")
    if n is not None and p.shape[0] != n:
        raise ValueError(f"expected a point in dimension {n}, got {p.shape[0]}")
    if not np.all(np.isfinite(p)):
        raise ValueError("point coordinates must be finite")
    return p


@dataclass(frozen=True, eq=False)
class Ball:
    """Closed ball B(center, radius)."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not np.isfinite(self.radius) or self.radius <= 0.0:
            raise ValueError(f"ball radius must be positive and finite, got {self.radius}")

    @property
    def dimension(self) -> int:
        return self.center.shape[0]

    @property
    def volume(self) -> float:
        return unit_ball_volume(self.dimension) * self.radius ** self.dimension

    def contains_point(self, x) -> bool:
        return float(np.linalg.norm(as_point(x, self.dimension) - self.center)) < self.radius


@dataclass(frozen=True, eq=False)
class RadialShell:
    """Annulus inner < |y - center| <= outer (inner may be zero)."""

    center: np.ndarray
    inner: float
    outer: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not (0.0 <= self.inner < self.outer) or not np.isfinite(self.outer):
            raise ValueError(f"need 0 <= inner < outer < inf, got inner={self.inner} outer={self.outer}")

    @property
    def dimension(self) -> int:
        return self.center.shape[0]


@dataclass(frozen=True, eq=False)
class SphereQuadratureRule:
    """Nodes on the unit sphere with positive weights summing to sigma(S^{n-1})."""

    nodes: np.ndarray    # (M, n) unit vectors
    weights: np.ndarray  # (M,)
    exactness: int       # polynomial/trigonometric degree integrated exactly

    @property
    def dimension(self) -> int:
        return self.nodes.shape[1]

    @property
    def size(self) -> int:
        return self.nodes.shape[0]

    def validate(self, tol: float = 1e-12) -> None:
        norms = np.linalg.norm(self.nodes, axis=1)
        if not np.all(np.abs(norms - 1.0) <= tol):
            raise ValueError("sphere rule nodes are not unit vectors")
        if np.any(self.weights <= 0.0):
            raise ValueError("sphere rule weights must be positive")
        total = float(self.weights.sum())
        target = sphere_area(self.dimension)
        if abs(total - target) > tol * target:
            raise ValueError(f"sphere rule weights sum to {total}, expected {target}")


@lru_cache(maxsize=64)
def _leggauss(k: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(k)
    return x, w


@lru_cache(maxsize=128)
def sphere_rule(n: int, resolution: int = 64) -> SphereQuadratureRule:
    """Quadrature on S^{n-1}.

    n=2: midpoint rule on equally spaced angles (spectrally accurate for
    periodic integrands, exact for trigonometric degree < resolution).
    n=3: Gauss-Legendre in the polar cosine times a midpoint azimuthal rule.
    """
    if n not in SUPPORTED_DIMENSIONS:
        raise ValueError(f"dimension {n} unsupported")
    if resolution < 8:
        raise ValueError(f"resolution must be >= 8, got {resolution}")
    if n == 2:
        theta = 2.0 * np.pi * (np.arange(resolution) + 0.5) / resolution
        nodes = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        weights = np.full(resolution, 2.0 * np.pi / resolution)
        rule = SphereQuadratureRule(nodes, weights, exactness=resolution - 1)
    else:
        mu, wmu = _leggauss(resolution)
        n_az = 2 * resolution
        phi = 2.0 * np.pi * (np.arange(n_az) + 0.5) / n_az
        sin_polar = np.sqrt(np.maximum(0.0, 1.0 - mu ** 2))
        x = (sin_polar[:, None] * np.cos(phi)[None, :]).ravel()
        y = (sin_polar[:, None] * np.sin(phi)[None, :]).ravel()
        z = np.repeat(mu, n_az)
        nodes = np.stack([x, y, z], axis=1)
        weights = np.repeat(wmu, n_az) * (2.0 * np.pi / n_az)
        rule = SphereQuadratureRule(nodes, weights, exactness=2 * resolution - 1)
    rule.validate()
    return rule


@dataclass(frozen=True)
class DyadicTruncationGrid:
    """Truncation radii 2^{k/s} for k_min*s <= k <= k_max*s."""

    k_min: int
    k_max: int
    subdivisions_per_octave: int = 4

    def __post_init__(self):
        if self.k_min >= self.k_max:
            raise ValueError("need k_min < k_max")
        if self.subdivisions_per_octave < 1:
            raise ValueError("need at least one subdivision per octave")

    @property
    def octaves(self) -> int:
        return self.k_max - self.k_min

    @property
    def radii(self) -> np.ndarray:
        s = self.subdivisions_per_octave
        return 2.0 ** (np.arange(self.k_min * s, self.k_max * s + 1) / s)

    def refined(self) -> "DyadicTruncationGrid":
        return replace(self, subdivisions_per_octave=2 * self.subdivisions_per_octave)


def ceil_pow2(x: float) -> float:
    """Smallest power of two >= x.  Exact powers of two map to themselves."""
    if not x > 0.0:
        raise ValueError(f"need x > 0, got {x}")
    return 2.0 ** int(np.ceil(np.log2(x)))


def dyadic_ladder(lo: float, hi: float, per_octave: int) -> np.ndarray:
    """Points 2^{j/per_octave} strictly between lo and hi."""
    if not (0.0 < lo < hi):
        raise ValueError(f"need 0 < lo < hi, got {lo}, {hi}")
    s = per_octave
    j_lo = int(np.floor(np.log2(lo) * s)) - 1
    j_hi = int(np.ceil(np.log2(hi) * s)) + 1
    vals = 2.0 ** (np.arange(j_lo, j_hi + 1) / s)
    return vals[(vals > lo) & (vals < hi)]


def breakpoints_between(lo: float, hi: float, per_octave: int,
                        extra: np.ndarray | None = None) -> np.ndarray:
    """Panel breakpoints [lo, ladder ..., hi]; optional extra interior points."""
    parts = [np.array([lo, hi]), dyadic_ladder(lo, hi, per_octave)]
    if extra is not None:
        e = np.asarray(extra, dtype=float)
        parts.append(e[(e > lo) & (e < hi)])
    bp = np.unique(np.concatenate(parts))
    # drop panels of negligible width (duplicated breakpoints up to rounding)
    keep = np.ones(len(bp), dtype=bool)
    keep[1:] = np.diff(bp) > 1e-14 * bp[1:]
    return bp[keep]


def panel_nodes(breakpoints: np.ndarray, nodes_per_panel: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes/weights over consecutive panels, flattened."""
    if nodes_per_panel < 2:
        raise ValueError("need at least 2 Gauss nodes per panel")
    x, w = _leggauss(nodes_per_panel)
    a = breakpoints[:-1][:, None]
    b = breakpoints[1:][:, None]
    r = 0.5 * (a + b) + 0.5 * (b - a) * x[None, :]
    wr = 0.5 * (b - a) * w[None, :]
    return r.ravel(), wr.ravel()


@dataclass(frozen=True)
class QuadratureBudget:
    """Resolution knobs shared by the operator and weight quadratures."""

    sphere_resolution: int = 64
    radial_nodes: int = 8
    panels_per_octave: int = 2
    floor_octaves: int = 26        # graded ladders stop at outer * 2^-floor_octaves
    mass_radii_per_octave: int = 16
    smooth_panels: int = 6         # panels for integrands with no radial singularity

    def rule_for(self, n: int) -> SphereQuadratureRule:
        res = self.sphere_resolution if n == 2 else max(8, self.sphere_resolution // 4)
        return sphere_rule(n, res)

    def refined(self, steps: int = 1) -> "QuadratureBudget":
        """Double angular and radial resolution per step; deepen graded floors."""
        if steps <= 0:
            return self
        f = 2 ** steps
        return replace(
            self,
            sphere_resolution=self.sphere_resolution * f,
            radial_nodes=self.radial_nodes * f,
            floor_octaves=self.floor_octaves + 12 * steps,
            mass_radii_per_octave=self.mass_radii_per_octave * f,
            smooth_panels=self.smooth_panels * f,
        )


def integrate_polar(g: Callable[[np.ndarray], np.ndarray],
                    shell: RadialShell,
                    rule: SphereQuadratureRule,
                    radial_nodes: int = 8,
                    panels_per_octave: int = 2,
                    floor_octaves: int = 40) -> float:
    """Integrate g over the shell in polar coordinates about shell.center.

    The radial factor r^{n-1} is applied here; g must be finite at every
    sampled point (singularities belong outside the shell, or at the exact
    center, which the graded ladder never samples).
    """
    if radial_nodes < 4:
        raise ValueError("radial_nodes must be >= 4")
    if rule.dimension != shell.dimension:
        raise ValueError("sphere rule dimension does not match the shell")
    n = shell.dimension
    inner = shell.inner
    if inner == 0.0:
        inner = shell.outer * 2.0 ** (-floor_octaves)
    bp = breakpoints_between(inner, shell.outer, panels_per_octave)
    r, wr = panel_nodes(bp, radial_nodes)
    pts = shell.center[None, None, :] + r[:, None, None] * rule.nodes[None, :, :]
    vals = np.asarray(g(pts), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise ValueError("non-finite integrand sample inside the shell")
    angular = vals @ rule.weights
    return float(np.dot(wr * r ** (n - 1), angular))
