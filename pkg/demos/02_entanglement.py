"""
Product probes against one entangled register
=============================================

With ``N`` particles, independent probes multiply the overlap,
``cos^(2N)(delta)``, while a GHZ-type register accumulates the phase
coherently, ``cos^2(N delta)``. As long as ``N delta <= pi/2`` the
entangled register is never worse, and at ``N delta = pi/2`` it
discriminates perfectly.
"""

import numpy as np

import opdisc as od
from opdisc.oracle import partition_table

delta = 0.2
u1, u2 = np.eye(2), od.phase_shift(delta)

print(" N   product      entangled")
for n in range(1, 9):
    problem = od.DecisionProblem(u1, u2, particles=n)
    un = od.unentangled_cost(problem).bayes_cost
    ent = od.entangled_cost(problem).bayes_cost
    print(f"{n:2d}   {un:.6f}     {ent:.6f}")

# Intermediate strategies split the register into entangled blocks.
# Inside the regime above, one big block is always cheapest.
problem = od.DecisionProblem(u1, u2, particles=5)
for row in partition_table(problem).rows:
    print(f"{str(row.partition):<22} {row.bayes_cost:.6f}")

# Past N * 2 delta = pi the ordering breaks: more phase is not always better.
problem = od.DecisionProblem(u1, od.phase_shift(1.0), particles=3)
best = partition_table(problem).minimal
print("delta = 1, N = 3: cheapest partition is", best.partition)
