"""Weights, ball masses, and the Muckenhoupt / doubling / Ahlfors estimators.

A Weight is a strictly positive density on R^n.  Everything downstream needs
omega through one interface only: masses omega(B) of balls, and samples of
omega at quadrature nodes.  Ball masses are analytic where a closed form
exists and quadrature otherwise.

Quadrature layout rule: the node set for a ball depends only on
(weight, ball, budget), never on the integrand evaluated over it.  Two
integrands sharing a ball therefore share nodes exactly, which is what makes
the discrete Hoelder-type inequalities in the test suite hold to rounding
rather than to quadrature error.

For a power weight whose singular point sits inside the ball, the integral is
taken in polar coordinates about the singular point: the radial power is then
integrated on a geometric ladder graded toward it, and the angular limit
R(xi) of the ball in direction xi is smooth, so the sphere rule converges
spectrally.  Non-integrable radial powers (exponent <= -n, produced
internally by the A_delta dual weight) yield floor-truncated masses: the
graded ladder stops at a relative floor that deepens with the refinement
level, so a divergent quantity shows up as an estimate that keeps growing
under refinement instead of stabilizing.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .geometry import (
    Ball,
    QuadratureBudget,
    as_point,
    breakpoints_between,
    panel_nodes,
    sphere_area,
    sphere_rule,
    unit_ball_volume,
)

MASS_FLOOR = 1e-300


# ---------------------------------------------------------------------------
# the weight type and its catalog


@dataclass(frozen=True, eq=False)
class Weight:
    """Strictly positive density omega on R^n.

    kind is one of "const", "power", "smoothpower", "product".  power means
    coef * |y - center|^gamma; smoothpower means coef * (eps^2 + |y|^2)^{gamma/2}
    about center; product multiplies the factors (constant factors are folded
    into coef at construction).
    """

    label: str
    kind: str
    coef: float = 1.0
    gamma: float = 0.0
    center: Optional[np.ndarray] = None
    eps: float = 0.0
    factors: tuple["Weight", ...] = ()

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return self.evaluate(points)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        if self.kind == "const":
            return np.full(p.shape[:-1], self.coef)
        if self.kind == "power":
            r = np.linalg.norm(p - self.center, axis=-1)
            return self.coef * r ** self.gamma
        if self.kind == "smoothpower":
            r2 = np.sum((p - self.center) ** 2, axis=-1)
            return self.coef * (self.eps ** 2 + r2) ** (self.gamma / 2.0)
        out = np.full(p.shape[:-1], self.coef)
        for f in self.factors:
            out = out * f.evaluate(p)
        return out

    def kink_point(self) -> Optional[np.ndarray]:
        """Location where omega is non-smooth (power weights), if any."""
        if self.kind == "power" and self.gamma != 0.0:
            return self.center
        if self.kind == "product":
            for f in self.factors:
                k = f.kink_point()
                if k is not None:
                    return k
        return None


def const_weight(c: float) -> Weight:
    if not (np.isfinite(c) and c > 0.0):
        raise ValueError(f"constant weight must be positive and finite, got {c}")
    return Weight(label=f"const:{c:g}", kind="const", coef=float(c))


def _power_any(gamma: float, center, coef: float = 1.0, label: str | None = None) -> Weight:
    center = as_point(center)
    return Weight(
        label=label or f"power:{gamma:g}",
        kind="power",
        coef=float(coef),
        gamma=float(gamma),
        center=center,
    )


def power_weight(gamma: float, center=(0.0, 0.0), coef: float = 1.0) -> Weight:
    """omega(y) = coef * |y - center|^gamma.  Requires gamma > -n for local integrability."""
    center = as_point(center)
    n = center.shape[0]
    if not np.isfinite(gamma) or gamma <= -n:
        raise ValueError(f"power exponent must satisfy gamma > -{n}, got {gamma}")
    if coef <= 0.0:
        raise ValueError("power weight coefficient must be positive")
    return _power_any(gamma, center, coef)


def smooth_power_weight(gamma: float, eps: float, center=(0.0, 0.0), coef: float = 1.0) -> Weight:
    if eps <= 0.0:
        raise ValueError("smoothing scale eps must be positive")
    if coef <= 0.0:
        raise ValueError("weight coefficient must be positive")
    return Weight(
        label=f"smoothpower:{gamma:g}:{eps:g}",
        kind="smoothpower",
        coef=float(coef),
        gamma=float(gamma),
        center=as_point(center),
        eps=float(eps),
    )


def product_weight(*parts: Weight) -> Weight:
    """Pointwise product; constant factors are folded into the coefficient."""
    coef = 1.0
    factors: list[Weight] = []
    for p in parts:
        if p.kind == "const":
            coef *= p.coef
        elif p.kind == "product":
            coef *= p.coef
            factors.extend(p.factors)
        else:
            factors.append(p)
    if not factors:
        return const_weight(coef)
    if len(factors) == 1 and coef == 1.0:
        return factors[0]
    label = "*".join(f.label for f in factors)
    if coef != 1.0:
        label = f"{coef:g}*{label}"
    return Weight(label=label, kind="product", coef=coef, factors=tuple(factors))


def weight_power(omega: Weight, s: float) -> Weight:
    """omega^s as a Weight.  May produce a non-integrable power (handled as
    floor-truncated masses downstream), so no integrability check here."""
    if omega.kind == "const":
        return const_weight(omega.coef ** s)
    if omega.kind == "power":
        return _power_any(omega.gamma * s, omega.center, omega.coef ** s,
                          label=f"({omega.label})^{s:g}")
    if omega.kind == "smoothpower":
        w = smooth_power_weight(omega.gamma * s, omega.eps, omega.center, omega.coef ** s)
        return w
    return Weight(
        label=f"({omega.label})^{s:g}",
        kind="product",
        coef=omega.coef ** s,
        factors=tuple(weight_power(f, s) for f in omega.factors),
    )


def weight_from_spec(spec: str, n: int = 2) -> Weight:
    """Parse 'const:c', 'power:gamma[:x0]', 'smoothpower:gamma:eps', and '*' products."""
    if "*" in spec:
        return product_weight(*(weight_from_spec(s, n) for s in spec.split("*")))
    parts = spec.split(":")
    name = parts[0]
    origin = np.zeros(n)
    if name == "const" and len(parts) == 2:
        return const_weight(float(parts[1]))
    if name == "power" and len(parts) in (2, 3):
        center = origin if len(parts) == 2 else as_point([float(v) for v in parts[2].split(",")], n)
        return power_weight(float(parts[1]), center)
    if name == "smoothpower" and len(parts) == 3:
        return smooth_power_weight(float(parts[1]), float(parts[2]), origin)
    raise ValueError(f"unknown weight spec '{spec}'")


def analytic_mass_fn(omega: Weight, center: np.ndarray) -> Optional[Callable[[np.ndarray], np.ndarray]]:
    """Closed-form r -> omega(B(center, r)) when one exists, else None."""
    center = np.asarray(center, dtype=float)
    n = center.shape[0]
    if omega.kind == "const":
        vn = unit_ball_volume(n)
        return lambda r, _c=omega.coef, _vn=vn, _n=n: _c * _vn * np.asarray(r, dtype=float) ** _n
    if omega.kind == "power":
        if omega.gamma <= -n or not np.allclose(center, omega.center, rtol=0.0, atol=1e-15):
            return None
        sig = sphere_area(n)
        g = omega.gamma

        def fn(r, _c=omega.coef, _sig=sig, _g=g, _n=n):
            return _c * _sig * np.asarray(r, dtype=float) ** (_n + _g) / (_n + _g)

        return fn
    if omega.kind == "smoothpower" and n == 2:
        if not np.allclose(center, omega.center, rtol=0.0, atol=1e-15):
            return None
        g, e, c = omega.gamma, omega.eps, omega.coef
        if g == -2.0:
            return lambda r: c * np.pi * (np.log(e ** 2 + np.asarray(r, float) ** 2) - 2.0 * np.log(e))

        def fn(r, _g=g, _e=e, _c=c):
            r = np.asarray(r, dtype=float)
            return _c * 2.0 * np.pi * ((_e ** 2 + r ** 2) ** ((_g + 2.0) / 2.0) - _e ** (_g + 2.0)) / (_g + 2.0)

        return fn
    return None


# ---------------------------------------------------------------------------
# ball quadrature: node layouts keyed by (weight, ball, budget)


def _power_split(omega: Weight) -> tuple[float, float, Optional[np.ndarray], Optional[Weight]]:
    """Factor omega = coef * |y - x0|^gamma * rest, taking x0 from the kink."""
    if omega.kind == "power":
        return omega.coef, omega.gamma, omega.center, None
    if omega.kind == "product":
        rest_factors = []
        coef, gamma, x0 = omega.coef, 0.0, None
        for f in omega.factors:
            if x0 is None and f.kind == "power" and f.gamma != 0.0:
                coef *= f.coef
                gamma = f.gamma
                x0 = f.center
            else:
                rest_factors.append(f)
        if x0 is not None:
            rest = Weight(label="rest", kind="product", coef=1.0,
                          factors=tuple(rest_factors)) if rest_factors else None
            return coef, gamma, x0, rest
    return omega.coef if omega.kind == "const" else 1.0, 0.0, None, omega if omega.kind != "const" else None


def ball_quadrature(omega: Weight, ball: Ball, budget: QuadratureBudget,
                    include_weight: bool = True,
                    angular_boost: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights discretizing integral over B of g(y) omega(y) dy.

    Returns (points (Q, n), w (Q,)) with sum w * g(points) the integral.
    With include_weight=False the same geometric nodes carry plain volume
    weights, so weighted and unweighted averages over one ball share samples.
    """
    n = ball.dimension
    res = budget.sphere_resolution if n == 2 else max(8, budget.sphere_resolution // 4)
    rule = sphere_rule(n, res * angular_boost)
    kink = omega.kink_point()
    if kink is not None and kink.shape[0] == n:
        dist = float(np.linalg.norm(kink - ball.center))
    else:
        dist = np.inf

    if dist < 0.999 * ball.radius:
        # polar about the singular point with exact angular radius of the ball
        coef, gam, x0, rest = _power_split(omega)
        m = ball.center - x0
        proj = rule.nodes @ m
        disc = proj ** 2 + ball.radius ** 2 - float(m @ m)
        radial_limit = proj + np.sqrt(disc)            # (M,)
        floor_oct = 16 if gam >= 0.0 else budget.floor_octaves
        unit_bp = breakpoints_between(2.0 ** (-floor_oct), 1.0, budget.panels_per_octave)
        ur, uw = panel_nodes(unit_bp, budget.radial_nodes)   # (J,)
        r = radial_limit[:, None] * ur[None, :]              # (M, J)
        wr = radial_limit[:, None] * uw[None, :]
        w = rule.weights[:, None] * wr * r ** (n - 1)
        if include_weight:
            w = w * (coef * r ** gam)
        pts = x0[None, None, :] + r[:, :, None] * rule.nodes[:, None, :]
        if include_weight and rest is not None:
            w = w * rest.evaluate(pts)
    else:
        # polar about the ball center; integrand smooth in the radius
        bp = np.linspace(0.0, ball.radius, budget.smooth_panels + 1)
        r, wr = panel_nodes(bp, budget.radial_nodes)         # (J,)
        pts = ball.center[None, None, :] + r[:, None, None] * rule.nodes[None, :, :]
        w = wr[:, None] * r[:, None] ** (n - 1) * rule.weights[None, :]
        if include_weight:
            w = w * omega.evaluate(pts)

    pts = pts.reshape(-1, n)
    w = np.asarray(w, dtype=float).ravel()
    if include_weight and (not np.all(np.isfinite(w)) or np.any(w < 0.0)):
        raise ValueError(f"weight '{omega.label}' is not positive and finite on ball samples")
    return pts, w


def ball_mass(omega: Weight, ball: Ball, budget: QuadratureBudget,
              use_analytic: bool = True) -> float:
    """omega(B): analytic when a closed form applies, else quadrature."""
    if use_analytic:
        fn = analytic_mass_fn(omega, ball.center)
        if fn is not None:
            mass = float(fn(np.asarray(ball.radius)))
            if mass < MASS_FLOOR:
                raise ValueError(f"ball mass {mass} below the numerical floor")
            return mass
    _, w = ball_quadrature(omega, ball, budget, include_weight=True)
    mass = float(w.sum())
    if not np.isfinite(mass) or mass < MASS_FLOOR:
        raise ValueError(f"ball mass {mass} is not a positive finite value")
    return mass


# ---------------------------------------------------------------------------
# ball families and mass tables


@dataclass(frozen=True, eq=False)
class BallFamily:
    """Finite family of balls: a center set crossed with a geometric radius ladder."""

    centers: np.ndarray   # (K, n)
    radii: np.ndarray     # (R,) increasing

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.centers, dtype=float))
        object.__setattr__(self, "centers", c)
        r = np.asarray(self.radii, dtype=float)
        if r.ndim != 1 or np.any(r <= 0.0) or np.any(np.diff(r) <= 0.0):
            raise ValueError("radii must be positive and strictly increasing")
        object.__setattr__(self, "radii", r)

    @property
    def dimension(self) -> int:
        return self.centers.shape[1]

    @property
    def size(self) -> int:
        return self.centers.shape[0] * self.radii.shape[0]

    def balls(self) -> Iterator[Ball]:
        for c in self.centers:
            for r in self.radii:
                yield Ball(c, float(r))

    def radii_octave_span(self) -> float:
        return float(np.log2(self.radii[-1] / self.radii[0]))

    def with_centers(self, extra: np.ndarray) -> "BallFamily":
        extra = np.atleast_2d(np.asarray(extra, dtype=float))
        merged = np.vstack([self.centers, extra])
        _, idx = np.unique(np.round(merged, 12), axis=0, return_index=True)
        return BallFamily(merged[np.sort(idx)], self.radii)

    def refined(self) -> "BallFamily":
        """Double the radius density and extend one octave deeper.

        Centers stay fixed so refined families nest: every coarse ball is
        also a refined ball, which keeps maxima over the family monotone.
        """
        lo = np.log2(self.radii[0]) - 1.0
        hi = np.log2(self.radii[-1])
        step = np.log2(self.radii[1] / self.radii[0]) / 2.0
        k = int(round((hi - lo) / step))
        radii = 2.0 ** (lo + step * np.arange(k + 1))
        radii[-1] = self.radii[-1]
        return BallFamily(self.centers, radii)


def standard_ball_family(n: int, half_width: float = 4.0, per_axis: int = 9,
                         octave_min: int = -6, octave_max: int = 3,
                         radii_per_octave: int = 2) -> BallFamily:
    """Grid centers on [-L, L]^n (origin included) with a geometric radius ladder."""
    axis = np.linspace(-half_width, half_width, per_axis)
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    centers = np.stack([g.ravel() for g in grids], axis=1)
    if not np.any(np.all(centers == 0.0, axis=1)):
        centers = np.vstack([centers, np.zeros(n)])
    s = radii_per_octave
    radii = 2.0 ** (np.arange(octave_min * s, octave_max * s + 1) / s)
    return BallFamily(centers, radii)


@dataclass(eq=False)
class BallMassTable:
    """Masses omega(B(c_k, r_j)) over a center set and a shared radius ladder.

    Lookup between tabulated radii interpolates log-mass linearly in
    log-radius, which is exact for pure power masses; beyond the tabulated
    range it extrapolates with the edge slope.
    """

    weight_label: str
    centers: np.ndarray    # (K, n)
    radii: np.ndarray      # (R,)
    masses: np.ndarray     # (K, R)
    _log_r: np.ndarray = field(init=False, repr=False)
    _log_m: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if np.any(self.masses <= 0.0):
            raise ValueError("mass table entries must be positive")
        if np.any(np.diff(self.masses, axis=1) < 0.0):
            raise ValueError("mass must be nondecreasing in the radius")
        self._log_r = np.log(self.radii)
        self._log_m = np.log(self.masses)

    def center_index(self, point) -> int:
        p = as_point(point, self.centers.shape[1])
        d = np.linalg.norm(self.centers - p[None, :], axis=1)
        k = int(np.argmin(d))
        if d[k] > 1e-12 * (1.0 + float(np.linalg.norm(p))):
            raise KeyError(f"no tabulated center at {p}")
        return k

    def mass(self, center_index: int, r) -> np.ndarray:
        """Interpolated masses at radii r for one tabulated center."""
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0.0):
            raise ValueError("mass requested at a nonpositive radius")
        lr = np.log(r)
        lR, lM = self._log_r, self._log_m[center_index]
        out = np.interp(lr, lR, lM)
        lo_slope = (lM[1] - lM[0]) / (lR[1] - lR[0])
        hi_slope = (lM[-1] - lM[-2]) / (lR[-1] - lR[-2])
        out = np.where(lr < lR[0], lM[0] + lo_slope * (lr - lR[0]), out)
        out = np.where(lr > lR[-1], lM[-1] + hi_slope * (lr - lR[-1]), out)
        return np.exp(out)


def build_mass_table(omega: Weight, centers, radii, budget: QuadratureBudget) -> BallMassTable:
    """Tabulate omega(B(c, r)) for every center and ladder radius.

    Quadrature path builds each column cumulatively: the innermost ball plus
    shell increments, so masses are exactly nondecreasing in the radius.  The
    radius of the weight's kink is inserted as a panel breakpoint so no shell
    straddles it.
    """
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    radii = np.asarray(radii, dtype=float)
    if radii.ndim != 1 or np.any(np.diff(radii) <= 0.0) or radii[0] <= 0.0:
        raise ValueError("radii must be positive and strictly increasing")
    n = centers.shape[1]
    res = budget.sphere_resolution if n == 2 else max(8, budget.sphere_resolution // 4)
    rule = sphere_rule(n, res)
    kink = omega.kink_point()
    masses = np.empty((centers.shape[0], radii.shape[0]))
    for k, c in enumerate(centers):
        fn = analytic_mass_fn(omega, c)
        if fn is not None:
            masses[k] = fn(radii)
            continue
        base = ball_mass(omega, Ball(c, float(radii[0])), budget)
        extra = radii[1:]
        if kink is not None and kink.shape[0] == n:
            d0 = float(np.linalg.norm(kink - c))
            if radii[0] < d0 < radii[-1]:
                extra = np.append(extra, d0)
        bp = breakpoints_between(float(radii[0]), float(radii[-1]),
                                 budget.panels_per_octave, extra=extra)
        r, wr = panel_nodes(bp, budget.radial_nodes)
        pts = c[None, None, :] + r[:, None, None] * rule.nodes[None, :, :]
        angular = omega.evaluate(pts) @ rule.weights
        panel_vals = (wr * r ** (n - 1) * angular).reshape(len(bp) - 1, -1).sum(axis=1)
        # cumulative mass at each tabulated radius
        cum = np.concatenate([[0.0], np.cumsum(panel_vals)])
        pos = np.searchsorted(bp, radii[1:], side="left")
        masses[k, 0] = base
        masses[k, 1:] = base + cum[pos]
    return BallMassTable(omega.label, centers, radii, masses)


def mass_table_for_family(omega: Weight, family: BallFamily, budget: QuadratureBudget) -> BallMassTable:
    return build_mass_table(omega, family.centers, family.radii, budget)


def export_mass_table_csv(table: BallMassTable, path: str) -> None:
    n = table.centers.shape[1]
    header = [f"x{i + 1}" for i in range(n)] + ["radius", "mass"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for k in range(table.centers.shape[0]):
            for j in range(table.radii.shape[0]):
                row = [f"{v:.17g}" for v in table.centers[k]]
                row += [f"{table.radii[j]:.17g}", f"{table.masses[k, j]:.17g}"]
                writer.writerow(row)


# ---------------------------------------------------------------------------
# Muckenhoupt, doubling, Ahlfors, Hoelder-average estimators


@dataclass(frozen=True)
class MuckenhouptEstimate:
    """Lower estimate of [omega]_{A_delta} over a finite ball family."""

    delta: float
    value: float
    family_size: int

    def __post_init__(self):
        if not np.isfinite(self.value) or self.value < 1.0 - 1e-10:
            raise ValueError(f"A_delta estimate must be >= 1, got {self.value}")


def estimate_muckenhoupt_constant(omega: Weight, delta: float, family: BallFamily,
                                  budget: QuadratureBudget) -> MuckenhouptEstimate:
    """Max over the family of the A_delta product (delta > 1) or the A_1 product.

    A finite family max is a lower bound of the true constant; refinement can
    only push it up.  For delta = 1 the essential supremum of 1/omega is
    estimated by the maximum over the ball's quadrature nodes.
    """
    if delta < 1.0:
        raise ValueError(f"need delta >= 1, got {delta}")
    best = -np.inf
    if delta > 1.0:
        dual = weight_power(omega, -1.0 / (delta - 1.0))
        for ball in family.balls():
            vol = ball.volume
            avg = ball_mass(omega, ball, budget) / vol
            avg_dual = ball_mass(dual, ball, budget) / vol
            best = max(best, avg * avg_dual ** (delta - 1.0))
    else:
        for ball in family.balls():
            avg = ball_mass(omega, ball, budget) / ball.volume
            pts, _ = ball_quadrature(omega, ball, budget, include_weight=False)
            inv_sup = float(np.max(1.0 / omega.evaluate(pts)))
            best = max(best, avg * inv_sup)
    # rounding guard: the exact per-ball product is >= 1
    return MuckenhouptEstimate(delta, max(best, 1.0), family.size)


def ball_muckenhoupt_product(omega: Weight, delta: float, ball: Ball,
                             budget: QuadratureBudget) -> float:
    """A_delta product of one ball, sampled on the ball's shared node layout."""
    pts, wvol = ball_quadrature(omega, ball, budget, include_weight=False)
    total = wvol.sum()
    vals = omega.evaluate(pts)
    avg = float(np.dot(wvol, vals) / total)
    if delta == 1.0:
        return avg * float(np.max(1.0 / vals))
    avg_dual = float(np.dot(wvol, vals ** (-1.0 / (delta - 1.0))) / total)
    return avg * avg_dual ** (delta - 1.0)


def check_doubling(omega: Weight, delta: float, a_const: float,
                   samples: Sequence[tuple[Ball, float]],
                   budget: QuadratureBudget) -> list[dict]:
    """Check omega(B(x, lam r)) <= lam^{n delta} * a_const * omega(B(x, r)).

    Returns one record per sample; 'violated' is True when the ratio exceeds
    the bound beyond a 1e-6 relative buffer.
    """
    out = []
    for ball, lam in samples:
        if lam <= 1.0:
            raise ValueError("doubling factors must exceed 1")
        n = ball.dimension
        small = ball_mass(omega, ball, budget)
        big = ball_mass(omega, Ball(ball.center, ball.radius * lam), budget)
        bound = lam ** (n * delta) * a_const * small
        out.append({
            "center": ball.center,
            "radius": ball.radius,
            "lam": lam,
            "mass_small": small,
            "mass_big": big,
            "bound": bound,
            "violated": bool(big > bound * (1.0 + 1e-6)),
        })
    return out


def estimate_lower_ahlfors(omega: Weight, d: float, family: BallFamily,
                           budget: QuadratureBudget,
                           table: BallMassTable | None = None) -> float:
    """min over the family of omega(B)/r^d, a candidate lower Ahlfors constant."""
    if d <= 0.0:
        raise ValueError(f"Ahlfors exponent must be positive, got {d}")
    if family.radii_octave_span() < 3.0:
        raise ValueError("ball family must span at least 3 octaves of radii")
    if table is None:
        table = mass_table_for_family(omega, family, budget)
    ratios = table.masses / table.radii[None, :] ** d
    return float(ratios.min())


def check_holder_average(omega: Weight, delta: float, f_abs: Callable[[np.ndarray], np.ndarray],
                         ball: Ball, a_const: float, budget: QuadratureBudget) -> tuple[float, float]:
    """Both sides of the Hoelder-average bound on one ball.

    lhs = plain average of |f| over B; rhs = a_const^{1/delta} times the
    delta-mean of |f| against omega/omega(B).  Samples share one node layout,
    so the inequality holds discretely whenever a_const dominates the ball's
    own A_delta product.
    """
    if delta <= 1.0:
        raise ValueError("the average bound needs delta > 1")
    pts, wvol = ball_quadrature(omega, ball, budget, include_weight=False)
    vals = np.abs(np.asarray(f_abs(pts), dtype=float))
    wv = omega.evaluate(pts) * wvol
    lhs = float(np.dot(wvol, vals) / wvol.sum())
    mass = float(wv.sum())
    inner = float(np.dot(wv, vals ** delta) / mass)
    rhs = a_const ** (1.0 / delta) * inner ** (1.0 / delta)
    return lhs, rhs
