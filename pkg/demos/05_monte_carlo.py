"""
Simulating the guessing game
============================

Draw the box content from the prior, send the probe through, measure with
the Helstrom projectors and guess. The error rate should settle on the
analytic cost within a few standard errors.
"""

import numpy as np

import opdisc as od
from opdisc.measurement import composite_outputs, projective_measurement, simulate_error_rate

problem = od.DecisionProblem(np.eye(2), od.phase_shift(0.3), prior=0.5, particles=3)

for strategy in ("product", "entangled"):
    res = simulate_error_rate(problem, strategy, trials=10**6, seed=42)
    print(
        f"{strategy:<10} empirical {res.empirical_error_rate:.5f} +- {res.std_error:.5f}"
        f"  analytic {res.predicted_cost:.5f}  ({res.deviation_sigmas:.2f} sigma)"
    )

# A naive measurement, projecting onto the u2 output, is visibly worse.
_, psi2 = composite_outputs(problem, "entangled")
res = simulate_error_rate(problem, "entangled", 10**6, 42, measurement=projective_measurement(psi2))
print(f"naive      empirical {res.empirical_error_rate:.5f}  vs bound {res.predicted_cost:.5f}")
