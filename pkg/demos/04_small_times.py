"""
Short dwell times
=================

When each particle sees ``exp(i H_k t)`` for a short time ``t``, the
overlap operator is ``exp(iG)`` with ``G ~ (H2 - H1) t``. The gap of ``G``
is what the probe exploits; the next term ``(i/2) [H2, H1] t^2`` only
matters when the first one is a multiple of the identity.
"""

import numpy as np

import opdisc as od
from opdisc.linalg import matrix_exp_hermitian

rng = np.random.default_rng(11)


def hermitian(n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


h1, h2 = hermitian(3), hermitian(3)
print("    t        exact gap      first order    rel. error")
for t in (1e-1, 1e-2, 1e-3, 1e-4):
    exact = od.phase_spectrum(matrix_exp_hermitian(h1, t), matrix_exp_hermitian(h2, t)).gap
    approx = od.generator_gap(od.bch_generator(h1, h2, t, 1))
    print(f"{t:7.0e}   {exact:.6e}   {approx:.6e}   {abs(approx - exact) / exact:.1e}")

# The second-order generator tracks the full overlap operator more closely.
t = 1e-2
target = matrix_exp_hermitian(h1, -t) @ matrix_exp_hermitian(h2, t)
for order in (1, 2):
    g = od.bch_generator(h1, h2, t, order)
    print(f"order {order}: |exp(iG) - U1^dag U2| = {np.linalg.norm(matrix_exp_hermitian(g) - target):.2e}")

# A difference that is pure identity carries no gap; the generator falls
# back to second order.
g, order = od.effective_generator(h1, h1 + 0.5 * np.eye(3), t)
print("scalar difference -> order", order)
