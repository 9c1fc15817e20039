"""Exponent bookkeeping: derived indices and per-inequality hypothesis checks.

One dataclass holds every exponent the inequalities use; derivation is pure
arithmetic with explicit division-by-zero errors (a boundary parameter), and
validation returns named constraints with signed slacks instead of a bare
boolean so reports and the CLI can show exactly what failed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Optional

_EQ_TOL = 1e-12

POINTWISE_IDS = ("thm1", "thm2", "thm3", "cor1a", "cor1b", "subrep", "frac_subrep", "hoang_a1")
SOBOLEV_IDS = ("cor2a", "cor2b", "cor2c")
EXPERIMENT_IDS = POINTWISE_IDS + SOBOLEV_IDS


@dataclass(frozen=True)
class HypothesisSet:
    """Every exponent of the pointwise and Sobolev inequalities in one place.

    alpha is always the product s * delta.  Unset Morrey/auxiliary exponents
    default to the Lebesgue exponent q (the collapse that recovers the
    Lebesgue statements); a_frak/b_frak default to the identification
    alpha*q_frak/(1-vartheta) that collapses the Morrey-to-Morrey bound to
    the two-norm Sobolev bound.
    """

    n: int = 2
    rho: float = 1.5
    delta: float = 1.0
    s: float = 1.2
    q: float = 4.0 / 3.0
    a: Optional[float] = None
    b: Optional[float] = None
    p_frak: Optional[float] = None
    q_frak: Optional[float] = None
    a_frak: Optional[float] = None
    b_frak: Optional[float] = None
    d: Optional[float] = None
    beta: Optional[float] = None
    weight: str = "const:1"
    kernel: str = "cosine"

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {self.n}")
        defaults = {
            "a": self.q, "b": self.q, "p_frak": self.q, "q_frak": self.q,
            "d": float(self.n), "beta": self.q,
        }
        for name, val in defaults.items():
            if getattr(self, name) is None:
                object.__setattr__(self, name, float(val))
        if self.a_frak is None or self.b_frak is None:
            # identification a_frak = b_frak = alpha*q_frak/(1-vartheta), the
            # collapse to the two-norm Sobolev bound; fall back to n when the
            # Sobolev window is closed (validation will reject such runs)
            gap = self.n / self.q_frak - self.alpha
            ident = self.alpha * self.q_frak * (self.n / self.q_frak) / gap if gap > 0.0 else float(self.n)
            if self.a_frak is None:
                object.__setattr__(self, "a_frak", ident)
            if self.b_frak is None:
                object.__setattr__(self, "b_frak", max(ident, self.a_frak))
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, float) and not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"exponent {f.name} must be finite and positive, got {v}")

    @property
    def alpha(self) -> float:
        return self.s * self.delta

    def as_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["alpha"] = self.alpha
        return out


def ahlfors_exponent(n: int, delta: float, beta: float) -> float:
    """d(delta, beta) = n(1/beta + delta(1 - 1/beta)), the scaling-neutral choice."""
    if beta == 0.0:
        raise ZeroDivisionError("beta = 0 is a boundary parameter")
    return n * (1.0 / beta + delta * (1.0 - 1.0 / beta))


def interpolation_index(alpha: float, d: float, n: int, delta: float, exponent: float) -> float:
    """alpha / (d - n delta (1 - 1/exponent)); theta and vartheta both have this shape."""
    denom = d - n * delta * (1.0 - 1.0 / exponent)
    if denom == 0.0:
        raise ZeroDivisionError("d - n delta (1 - 1/exponent) = 0 is a boundary parameter")
    return alpha / denom


def sobolev_exponent(alpha: float, n: int, delta: float, exponent: float) -> float:
    """alpha*q*(d(delta,q) - n delta(1-1/q)) / (same - alpha); the gap equals n/q."""
    gap = ahlfors_exponent(n, delta, exponent) - n * delta * (1.0 - 1.0 / exponent)
    if gap == alpha:
        raise ZeroDivisionError("Sobolev denominator vanishes (alpha equals the Ahlfors gap)")
    return alpha * exponent * gap / (gap - alpha)


@dataclass(frozen=True)
class DerivedExponents:
    rho_bar: float
    rho_conj: float
    theta: float
    vartheta: float
    r: float
    s: float
    d_of_beta: float

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def derive_exponents(h: HypothesisSet) -> DerivedExponents:
    """All derived indices by the literal formulas; no validation here."""
    denom = h.rho * h.n + h.rho - h.n
    if denom == 0.0:
        raise ZeroDivisionError("rho*n + rho - n = 0 is a boundary parameter")
    if h.rho == 1.0:
        raise ZeroDivisionError("rho = 1 has no conjugate exponent")
    return DerivedExponents(
        rho_bar=h.rho * h.n / denom,
        rho_conj=h.rho / (h.rho - 1.0),
        theta=interpolation_index(h.alpha, h.d, h.n, h.delta, h.q),
        vartheta=interpolation_index(h.alpha, h.d, h.n, h.delta, h.b),
        r=sobolev_exponent(h.alpha, h.n, h.delta, h.q),
        s=sobolev_exponent(h.alpha, h.n, h.delta, h.q_frak),
        d_of_beta=ahlfors_exponent(h.n, h.delta, h.beta),
    )


@dataclass(frozen=True)
class ConstraintCheck:
    name: str
    satisfied: bool
    slack: float
    detail: str


@dataclass(eq=False)
class ValidationReport:
    theorem: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.satisfied for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.satisfied]

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            mark = "ok  " if c.satisfied else "FAIL"
            out.append(f"  [{mark}] {c.name}: slack {c.slack:+.6g}  ({c.detail})")
        return out


def _strict(name: str, slack: float, detail: str) -> ConstraintCheck:
    return ConstraintCheck(name, slack > 0.0, slack, detail)


def _nonstrict(name: str, slack: float, detail: str) -> ConstraintCheck:
    return ConstraintCheck(name, slack >= -_EQ_TOL, slack, detail)


def _equality(name: str, deviation: float, detail: str) -> ConstraintCheck:
    return ConstraintCheck(name, abs(deviation) <= _EQ_TOL, deviation, detail)


def _kernel_window(h: HypothesisSet) -> list[ConstraintCheck]:
    return [
        _strict("rho > 1", h.rho - 1.0, f"kernel integrability exponent rho = {h.rho}"),
        _strict("rho < n", h.n - h.rho, f"rho = {h.rho} against dimension {h.n}"),
    ]


def _poincare_window(h: HypothesisSet) -> list[ConstraintCheck]:
    rho_bar = h.rho * h.n / (h.rho * h.n + h.rho - h.n)
    return [
        _strict("rho_bar > 1", rho_bar - 1.0, f"rho_bar = {rho_bar:.6g}"),
        _nonstrict("rho_bar <= s", h.s - rho_bar,
                   f"s = {h.s} must dominate rho_bar = {rho_bar:.6g} (equality allowed)"),
        _strict("s < n", h.n - h.s, f"s = {h.s}"),
    ]


def _alpha_window(h: HypothesisSet) -> list[ConstraintCheck]:
    return [
        _strict("alpha > 1", h.alpha - 1.0, f"alpha = s*delta = {h.alpha:.6g}"),
        _strict("alpha < n", h.n - h.alpha, f"alpha = {h.alpha:.6g}"),
        _nonstrict("delta >= 1", h.delta - 1.0, f"delta = {h.delta}"),
    ]


def _lebesgue_window(h: HypothesisSet, exponent: float, label: str) -> list[ConstraintCheck]:
    slack = h.d - h.n * h.delta * (1.0 - 1.0 / exponent) - h.alpha
    return [
        _strict(f"{label} > 1", exponent - 1.0, f"{label} = {exponent}"),
        _strict(f"window d - n delta (1 - 1/{label}) > alpha", slack,
                f"violated by {-slack:.6g}" if slack <= 0.0 else f"margin {slack:.6g}"),
    ]


def _ahlfors_window(h: HypothesisSet) -> list[ConstraintCheck]:
    return [_strict("d > 1", h.d - 1.0, f"Ahlfors exponent d = {h.d}")]


def _sobolev_window(h: HypothesisSet, exponent: float, label: str) -> list[ConstraintCheck]:
    # with d pinned to d(delta, exponent) the window reduces to n/exponent > alpha
    slack = h.n / exponent - h.alpha
    return [
        _strict(f"{label} > 1", exponent - 1.0, f"{label} = {exponent}"),
        _strict(f"window n/{label} > alpha", slack,
                f"alpha*{label} = {h.alpha * exponent:.6g} against n = {h.n}"),
    ]


def validate_hypotheses(h: HypothesisSet, theorem: str) -> ValidationReport:
    """Named constraints with signed slacks for one inequality id."""
    checks: list[ConstraintCheck] = []
    if theorem == "thm1":
        checks += _kernel_window(h) + _poincare_window(h) + _alpha_window(h)
    elif theorem == "thm2":
        checks += _alpha_window(h) + _ahlfors_window(h) + _lebesgue_window(h, h.q, "q")
    elif theorem == "thm3":
        checks += _alpha_window(h) + _ahlfors_window(h) + _lebesgue_window(h, h.b, "b")
        checks.append(_strict("a > 1", h.a - 1.0, f"a = {h.a}"))
        checks.append(_nonstrict("a <= b", h.b - h.a, f"a = {h.a}, b = {h.b}"))
    elif theorem == "cor1a":
        checks += (_kernel_window(h) + _poincare_window(h) + _alpha_window(h)
                   + _ahlfors_window(h) + _lebesgue_window(h, h.q, "q"))
    elif theorem == "cor1b":
        checks += (_kernel_window(h) + _poincare_window(h) + _alpha_window(h)
                   + _ahlfors_window(h) + _lebesgue_window(h, h.q_frak, "q_frak"))
        checks.append(_strict("p_frak > 1", h.p_frak - 1.0, f"p_frak = {h.p_frak}"))
        checks.append(_nonstrict("p_frak <= q_frak", h.q_frak - h.p_frak,
                                 f"p_frak = {h.p_frak}, q_frak = {h.q_frak}"))
    elif theorem in ("cor2a", "cor2b", "cor2c"):
        checks += _kernel_window(h) + _poincare_window(h) + _alpha_window(h)
        checks.append(_strict("beta > 1", h.beta - 1.0, f"beta = {h.beta}"))
        dev = h.d - ahlfors_exponent(h.n, h.delta, h.beta)
        checks.append(_equality("d = d(delta, beta)", dev,
                                f"d = {h.d}, d(delta, beta) = {ahlfors_exponent(h.n, h.delta, h.beta):.12g}"))
        if theorem == "cor2a":
            checks += _sobolev_window(h, h.q, "q")
        else:
            checks += _sobolev_window(h, h.q_frak, "q_frak")
            checks.append(_strict("p_frak > 1", h.p_frak - 1.0, f"p_frak = {h.p_frak}"))
            checks.append(_nonstrict("p_frak <= q_frak", h.q_frak - h.p_frak,
                                     f"p_frak = {h.p_frak}, q_frak = {h.q_frak}"))
        if theorem == "cor2c":
            vt = interpolation_index(h.alpha, ahlfors_exponent(h.n, h.delta, h.q_frak),
                                     h.n, h.delta, h.q_frak)
            scale = (1.0 - vt) / h.alpha
            checks.append(_strict("vartheta < 1", 1.0 - vt, f"vartheta = {vt:.6g}"))
            checks.append(_strict("(1-vartheta)/alpha * a_frak > 1", scale * h.a_frak - 1.0,
                                  f"scaled a_frak = {scale * h.a_frak:.6g}"))
            checks.append(_nonstrict("a_frak <= b_frak", h.b_frak - h.a_frak,
                                     f"a_frak = {h.a_frak:.6g}, b_frak = {h.b_frak:.6g}"))
    elif theorem == "subrep":
        checks.append(_nonstrict("n >= 2", float(h.n - 2), f"n = {h.n}"))
    elif theorem == "frac_subrep":
        checks.append(_strict("alpha > 0", h.alpha, f"alpha = {h.alpha:.6g}"))
        checks.append(_strict("alpha < n", h.n - h.alpha, f"alpha = {h.alpha:.6g}"))
    elif theorem == "hoang_a1":
        checks.append(_equality("delta = 1", h.delta - 1.0, f"delta = {h.delta}"))
        checks.append(_equality("alpha = 1", h.alpha - 1.0, f"alpha = s*delta = {h.alpha:.6g}"))
    else:
        raise ValueError(f"unknown inequality id '{theorem}'; known: {EXPERIMENT_IDS}")
    return ValidationReport(theorem, checks)
