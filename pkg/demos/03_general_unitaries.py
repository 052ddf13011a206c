"""
Arbitrary unitaries and a brute-force check
===========================================

For general ``u1`` and ``u2`` only the spectrum of ``u1^dagger u2``
matters. The best single probe mixes the two eigenvectors whose eigenphases
are furthest apart on the circle. A grid search over all probe states
should never beat it.
"""

import numpy as np

import opdisc as od
from opdisc.oracle import GridSpec, brute_force_min_transition


def haar(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


rng = np.random.default_rng(3)
u1, u2 = haar(rng, 2), haar(rng, 2)

pg = od.phase_spectrum(u1, u2)
print("eigenphases          ", np.round(pg.eigenphases, 6))
print("gap                  ", round(pg.gap, 6))
print("cos^2(gap/2)         ", np.cos(pg.gap / 2) ** 2)

best, _ = brute_force_min_transition(u1, u2, GridSpec(64, 2))
print("grid minimum (64)    ", best)

# In three or more dimensions the eigenvalues can surround the origin.
# Then a three-component probe makes the outputs exactly orthogonal.
u3 = np.diag(np.exp(1j * np.array([0.0, 2.1, 4.2])))
pg3 = od.phase_spectrum(np.eye(3), u3)
probe = od.optimal_probe(np.eye(3), u3)
print("encloses origin      ", pg3.encloses_origin)
print("overlap of best probe", od.transition_probability(np.eye(3), u3, probe))
