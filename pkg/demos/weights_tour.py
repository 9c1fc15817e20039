"""Tour of the weight layer: Muckenhoupt-type estimates, doubling, ball-mass
tables, the lower Ahlfors floor, and the averaged Hoelder bound.

Run: python3 demos/weights_tour.py        (finishes in about half a minute)
"""

import numpy as np

from roughriesz import (
    Ball,
    QuadratureBudget,
    ball_mass,
    ball_muckenhoupt_product,
    check_doubling,
    check_holder_average,
    const_weight,
    estimate_lower_ahlfors,
    estimate_muckenhoupt_constant,
    power_weight,
    standard_ball_family,
    weight_from_spec,
)

budget = QuadratureBudget()
family = standard_ball_family(2, half_width=2.0, per_axis=5,
                              octave_min=-4, octave_max=2, radii_per_octave=1)

# 1. the finite-family A_delta estimate is a lower bound of the true constant;
#    refining the family and the quadrature can only push it up.  A weight in
#    the class stabilizes; one outside blows up as the dual mass diverges.
print("A_2 estimates over", family.size, "balls (then refined)")
for spec in ("const:1", "power:0.4", "power:1", "power:2.5"):
    w = weight_from_spec(spec)
    v0 = estimate_muckenhoupt_constant(w, 2.0, family, budget).value
    v1 = estimate_muckenhoupt_constant(w, 2.0, family.refined(), budget.refined(1)).value
    trend = "stable" if abs(v1 - v0) / v0 < 0.05 else "growing"
    print(f"  {spec:10s}  level0 = {v0:12.4f}  level1 = {v1:12.4f}  [{trend}]")

# 2. doubling: omega(lam B) <= lam^{n delta} [omega]_A_delta omega(B); the
#    checker replays the bound on sampled (ball, lam) pairs
w = power_weight(1.0)
a2 = estimate_muckenhoupt_constant(w, 2.0, family, budget).value
samples = [(b, 2.0) for b in list(family.balls())[::9]]
records = check_doubling(w, 2.0, a2, samples, budget)
print("\ndoubling for |x| with a =", round(a2, 4), ":",
      sum(r["violated"] for r in records), "violations on", len(records), "samples")

# 3. masses: centered power weights have closed-form ball masses, and the
#    quadrature path reproduces them; off-center masses fall back to polar
#    integration about the singular point
ball0 = Ball(np.zeros(2), 1.5)
print("\nmasses for |x|^0.4 on B(0, 1.5):",
      f"analytic = {ball_mass(w, ball0, budget):.10f}",
      f"quadrature = {ball_mass(w, ball0, budget, use_analytic=False):.10f}")
ball_off = Ball(np.array([0.4, 0.0]), 1.0)
print("off-center mass (kink inside):", f"{ball_mass(power_weight(0.4), ball_off, budget):.10f}")

# 4. lower Ahlfors floor: min over the family of omega(B)/r^d; for the unit
#    weight at d = n this is exactly the unit-ball volume
floor = estimate_lower_ahlfors(const_weight(1.0), 2.0, family, budget)
print("\nlower Ahlfors floor of the unit weight at d = 2:", floor, "(pi expected)")

# 5. averaged Hoelder bound: the plain average of |f| on a ball is controlled
#    by the weighted delta-mean once the ball's own A_delta product is paid;
#    sampled on one node layout the inequality is a finite-dimensional fact
rng = np.random.default_rng(5)
wq = power_weight(0.4)
worst = 0.0
for _ in range(10):
    ball = Ball(rng.uniform(-1.5, 1.5, size=2), float(2.0 ** rng.uniform(-2.0, 0.5)))
    v, c = rng.normal(size=2), float(rng.normal())
    f_abs = lambda pts, v=v, c=c: np.abs(pts @ v + c)
    a = ball_muckenhoupt_product(wq, 1.5, ball, budget)
    lhs, rhs = check_holder_average(wq, 1.5, f_abs, ball, a, budget)
    worst = max(worst, lhs / rhs)
print("\naveraged Hoelder bound on 10 random (f, B) pairs: worst lhs/rhs =", round(worst, 6))
