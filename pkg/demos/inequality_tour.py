"""Tour of the pointwise inequality harness: the hypothesis gate, the two
main ratio experiments, exclusion accounting, and the refinement ladder.

Run: python3 demos/inequality_tour.py        (finishes in about a minute)
"""

import numpy as np

from roughriesz import (
    GridSpec,
    HypothesisSet,
    HypothesisValidationError,
    bump_field,
    const_weight,
    cosine_kernel,
    derive_exponents,
    dipole_field,
    run_pointwise_experiment,
    validate_hypotheses,
)

# 1. exponent algebra first: everything downstream is parameterized by the
#    derived indices, so print them for the default hypothesis set
h = HypothesisSet()   # n=2, rho=1.5, delta=1, s=1.2, q=4/3
d = derive_exponents(h)
print("derived exponents at the defaults:")
for name in ("rho_bar", "rho_conj", "theta", "vartheta", "r", "s"):
    print(f"  {name:8s} = {getattr(d, name):.12g}")

# 2. the gate: constraints are checked before any operator is evaluated, and
#    each check carries a signed slack so near-misses are visible
report = validate_hypotheses(HypothesisSet(q=4.0), "thm2")
print("\nvalidation of the q = 4 set (rejected):")
for line in report.lines():
    print(line)

# 3. the maximal-operator bound: T* against the weighted gradient potential,
#    ratio per corpus point, with a two-level refinement ladder.  The grid
#    includes exterior ring points; the far field is where the potential
#    route has to work hardest.
corpus = [bump_field((0.0, 0.0), 1.0), dipole_field((0.0, 0.0))]
rep = run_pointwise_experiment("thm1", h, cosine_kernel(2), const_weight(1.0),
                               corpus, grid_spec=GridSpec(per_axis=5, exterior_points=8))
print("\nmaximal-vs-potential experiment:")
print("  ladder:", [round(v, 6) for v in rep.ladder], " stable:", rep.passed)
print("  max ratio:", round(rep.max_ratio, 6), " median:", round(rep.median_ratio, 6),
      " excluded:", rep.excluded_count)

# 4. the interpolation bound: |F(f)| against M(f)^{1-theta} ||f||_q^theta;
#    with the unit weight both sides are nearly quadrature-exact, so the two
#    ladder levels all but coincide
rep2 = run_pointwise_experiment("thm2", h, None, const_weight(1.0),
                                [bump_field((0.0, 0.0), 1.0)],
                                grid_spec=GridSpec(per_axis=5, exterior_points=8))
print("\ninterpolation experiment: ladder", [round(v, 8) for v in rep2.ladder],
      " max ratio", round(rep2.max_ratio, 6))

# 5. gate behavior inside the runner: a bad hypothesis set never reaches the
#    operators; the raised error carries the full constraint report
try:
    run_pointwise_experiment("thm2", HypothesisSet(q=4.0), None, const_weight(1.0),
                             [bump_field((0.0, 0.0), 1.0)])
except HypothesisValidationError as err:
    lines = str(err).splitlines()
    reason = next((ln.strip() for ln in lines if "violated" in ln), lines[0])
    print("\nrunner rejected the invalid set before evaluation:")
    print(" ", reason)

# 6. ratios near a symmetry point: at the center of a radial bump the rough
#    integral vanishes; the record stays included (the bound's right side is
#    healthy there) and simply contributes a ~0 ratio
spec = GridSpec(per_axis=3, exterior_points=0, extra_points=np.zeros((1, 2)))
rep3 = run_pointwise_experiment("thm1", h, cosine_kernel(2), const_weight(1.0),
                                [bump_field((0.0, 0.0), 1.0)], grid_spec=spec)
center = [r for r in rep3.records if np.all(r.x == 0.0)][0]
print("\nratio at the radial-kill center:", center.ratio, " excluded:", center.excluded)
