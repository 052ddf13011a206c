"""
Telling a phase shift apart from the identity
=============================================

The box either does nothing or applies ``diag(1, exp(2i delta))``. One qubit
in the ``|+>`` state picks up a relative phase in the second case, and the
squared overlap of the two outputs is ``cos^2(delta)``.
"""

import numpy as np

import opdisc as od

delta = 0.3
u1, u2 = np.eye(2), od.phase_shift(delta)

# The eigenphases of u1^dagger u2 are 0 and 2 delta; the best probe sits
# halfway between the two eigenvectors.
probe = od.optimal_probe(u1, u2)
print("optimal probe        ", np.round(probe.amplitudes, 6))
print("transition prob.     ", od.transition_probability(u1, u2, probe))
print("cos^2(delta)         ", np.cos(delta) ** 2)

# Equal priors: the Helstrom measurement errs with this probability.
problem = od.DecisionProblem(u1, u2, prior=0.5, particles=1)
print("minimum error        ", od.unentangled_cost(problem).bayes_cost)

# A skewed prior makes the decision easier.
for xi in (0.5, 0.3, 0.1):
    rep = od.unentangled_cost(problem.replace(prior=xi))
    print(f"prior {xi:.1f}  cost {rep.bayes_cost:.6f}")
