"""Angular kernels on the unit sphere: catalog, mean-zero projection, norms.

The truncated singular integrals take an angular density Omega defined on
S^{n-1}.  Omega is stored as a vectorized closure over unit direction vectors
together with the integrability exponent it is declared to live in.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .geometry import SphereQuadratureRule, sphere_area


@dataclass(frozen=True, eq=False)
class KernelOnSphere:
    """Angular density on S^{n-1}.

    fn maps an array of unit directions (..., n) to values (...).
    declared_rho records the Lebesgue exponent the kernel is declared to
    belong to; it is metadata, not enforced here.
    """

    label: str
    fn: Callable[[np.ndarray], np.ndarray]
    dimension: int
    declared_rho: float = np.inf

    def __call__(self, directions: np.ndarray) -> np.ndarray:
        return np.asarray(self.fn(np.asarray(directions, dtype=float)), dtype=float)


def kernel_mean(omega: KernelOnSphere, rule: SphereQuadratureRule) -> float:
    """Quadrature value of (1/sigma) * integral of Omega over the sphere."""
    vals = omega(rule.nodes)
    if not np.all(np.isfinite(vals)):
        raise ValueError("kernel sample is not finite on the sphere rule nodes")
    return float(np.dot(vals, rule.weights) / rule.weights.sum())


def project_mean_zero(omega: KernelOnSphere, rule: SphereQuadratureRule) -> KernelOnSphere:
    """Subtract the quadrature mean so the projected kernel integrates to zero."""
    m = kernel_mean(omega, rule)
    base = omega.fn
    return replace(
        omega,
        label=f"meanzero({omega.label})",
        fn=lambda xi, _base=base, _m=m: np.asarray(_base(xi), dtype=float) - _m,
    )


def require_mean_zero(omega: KernelOnSphere, rule: SphereQuadratureRule, tol: float = 1e-8) -> None:
    scale = float(np.max(np.abs(omega(rule.nodes)))) or 1.0
    m = kernel_mean(omega, rule)
    if abs(m) > tol * scale:
        raise ValueError(
            f"kernel '{omega.label}' has nonzero spherical mean {m:.3e}; "
            "project it with project_mean_zero or choose a cancelling kernel"
        )


def lrho_norm(omega: KernelOnSphere, rho: float, rule: SphereQuadratureRule) -> float:
    """Quadrature L^rho(S^{n-1}) norm of Omega."""
    if rho < 1.0:
        raise ValueError(f"need rho >= 1, got {rho}")
    vals = np.abs(omega(rule.nodes))
    if not np.all(np.isfinite(vals)):
        raise ValueError("kernel sample is not finite on the sphere rule nodes")
    return float(np.dot(vals ** rho, rule.weights) ** (1.0 / rho))


def lorentz_weak_norm(omega: KernelOnSphere, p: float, rule: SphereQuadratureRule,
                      lambda_grid_size: int = 256) -> float:
    """Weak L^{p,infty}(S^{n-1}) norm: sup over lambda of lambda * sigma(|Omega| >= lambda)^{1/p}.

    The supremum is taken over a geometric lambda grid spanning the sampled
    range of |Omega|; at each grid level the inclusive measure sigma(|Omega| >= lambda)
    is used, which reproduces step distributions exactly and is always a lower
    bound for the true supremum.
    """
    if p <= 0.0:
        raise ValueError(f"need p > 0, got {p}")
    if lambda_grid_size < 32:
        raise ValueError(f"lambda grid too coarse: {lambda_grid_size} < 32")
    vals = np.abs(omega(rule.nodes))
    if not np.all(np.isfinite(vals)):
        raise ValueError("kernel sample is not finite on the sphere rule nodes")
    vmax = float(vals.max())
    if vmax == 0.0:
        warnings.warn(f"kernel '{omega.label}' vanishes on every node; weak norm is 0")
        return 0.0
    vmin = float(vals[vals > 0.0].min())
    lams = np.geomspace(vmin, vmax, lambda_grid_size)
    measures = (rule.weights[None, :] * (vals[None, :] >= lams[:, None])).sum(axis=1)
    return float(np.max(lams * measures ** (1.0 / p)))


def lorentz_control_constant(rho: float, n: int) -> float:
    """C(rho, n) with ||Omega||_{L^rho} <= C(rho,n) ||Omega||_{L^{n,infty}} for rho < n.

    Obtained by integrating the distribution-function bound
    sigma(|Omega| > lam) <= min(sigma(S^{n-1}), (N/lam)^n).
    """
    if not (0.0 < rho < n):
        raise ValueError(f"inclusion constant needs 0 < rho < n, got rho={rho}, n={n}")
    sigma = sphere_area(n)
    return float((n / (n - rho)) ** (1.0 / rho) * sigma ** (1.0 / rho - 1.0 / n))


# ---------------------------------------------------------------------------
# catalog

def cosine_kernel(n: int = 2) -> KernelOnSphere:
    """Omega(xi) = xi_1; mean zero by symmetry, bounded."""
    return KernelOnSphere("cosine", lambda xi: xi[..., 0], n, declared_rho=np.inf)


def sign_kernel(n: int = 2) -> KernelOnSphere:
    """Omega(xi) = sign(xi_1) with sign(0) = 0; odd, mean zero, bounded."""
    return KernelOnSphere("sign", lambda xi: np.sign(xi[..., 0]), n, declared_rho=np.inf)


def harmonic_kernel(k: int, n: int = 2) -> KernelOnSphere:
    """Degree-k spherical harmonic: cos(k theta) on S^1, Legendre P_k(xi_3) on S^2."""
    if k < 1:
        raise ValueError("harmonic order must be >= 1 for a mean-zero kernel")
    if n == 2:
        def fn(xi, _k=k):
            theta = np.arctan2(xi[..., 1], xi[..., 0])
            return np.cos(_k * theta)
    else:
        coeffs = np.zeros(k + 1)
        coeffs[k] = 1.0

        def fn(xi, _c=coeffs):
            return np.polynomial.legendre.legval(xi[..., 2], _c)
    return KernelOnSphere(f"harmonic:{k}", fn, n, declared_rho=np.inf)


def constant_kernel(c: float, n: int = 2) -> KernelOnSphere:
    """Omega identically c; fails the mean-zero requirement unless projected."""
    return KernelOnSphere(
        f"constant:{c:g}",
        lambda xi, _c=float(c): np.full(xi.shape[:-1], _c),
        n,
        declared_rho=np.inf,
    )


def kernel_from_spec(spec: str, n: int = 2) -> KernelOnSphere:
    """Parse catalog strings: 'cosine', 'sign', 'harmonic:k', 'constant:c'."""
    parts = spec.split(":")
    name = parts[0]
    if name == "cosine" and len(parts) == 1:
        return cosine_kernel(n)
    if name == "sign" and len(parts) == 1:
        return sign_kernel(n)
    if name == "harmonic" and len(parts) == 2:
        return harmonic_kernel(int(parts[1]), n)
    if name == "constant" and len(parts) == 2:
        return constant_kernel(float(parts[1]), n)
    raise ValueError(f"unknown kernel spec '{spec}'")


KERNEL_CATALOG = ("cosine", "sign", "harmonic:2", "harmonic:3", "constant:1")
