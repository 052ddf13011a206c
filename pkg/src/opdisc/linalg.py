"""Dense complex linear algebra for small operators.

Hermitian eigenproblems are solved with a cyclic complex Jacobi method, which
is accurate and deterministic for the matrix sizes used here (dim <= 64).
Matrix functions of Hermitian and unitary operators are computed spectrally
on top of it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotHermitian, NotUnitary, ResourceLimit

DEFAULT_TOL = 1e-10
MAX_DIM = 64
MAX_SWEEPS = 100
JACOBI_THRESHOLD = 1e-13
# eigenvalues closer than this (relative) are treated as degenerate for ordering
DEGENERACY_TOL = 1e-14
# components smaller than this do not fix an eigenvector's phase
_PHASE_FIX_TOL = 1e-8


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_matrix(m) -> np.ndarray:
    """Return a complex copy of ``m``, raising ``ValueError`` unless square."""
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(m))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def is_unitary(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``max |M^dagger M - I| <= tol``. Non-square input is not unitary."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        return False
    dev = dagger(a) @ a - np.eye(a.shape[0])
    return bool(np.max(np.abs(dev)) <= tol)


def is_hermitian(m, tol: float = DEFAULT_TOL) -> bool:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a - dagger(a)), initial=0.0) <= tol)


def _check_hermitian(h, tol: float) -> np.ndarray:
    a = as_matrix(h)
    dev = np.max(np.abs(a - dagger(a)))
    if dev > tol:
        raise NotHermitian(f"matrix is not Hermitian: max |H - H^dagger| = {dev:.3g} > {tol:.3g}")
    return 0.5 * (a + dagger(a))


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Spectrum of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; column ``k`` of ``eigenvectors``
    belongs to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)

    def residual(self, h) -> float:
        """Frobenius norm of ``sum_k lam_k v_k v_k^dagger - H``."""
        return float(np.linalg.norm(self.reconstruct() - np.asarray(h, dtype=complex)))


def _rotate_all(a: np.ndarray, v: np.ndarray, skip: float) -> None:
    """One cyclic row-order sweep of complex Jacobi rotations, in place."""
    n = a.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            g = abs(apq)
            if g <= skip:
                continue
            phase = apq / g
            app = a[p, p].real
            aqq = a[q, q].real
            theta = (aqq - app) / (2.0 * g)
            if theta == 0.0:
                t = 1.0
            else:
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # W = diag(1, conj(phase)) @ [[c, s], [-s, c]]
            w00, w01 = c, s
            w10, w11 = -s * np.conj(phase), c * np.conj(phase)

            col_p = a[:, p].copy()
            col_q = a[:, q]
            a[:, p] = col_p * w00 + col_q * w10
            a[:, q] = col_p * w01 + col_q * w11
            row_p = a[p, :].copy()
            row_q = a[q, :]
            a[p, :] = np.conj(w00) * row_p + np.conj(w10) * row_q
            a[q, :] = np.conj(w01) * row_p + np.conj(w11) * row_q
            a[p, q] = 0.0
            a[q, p] = 0.0
            a[p, p] = app - t * g
            a[q, q] = aqq + t * g

            vp = v[:, p].copy()
            vq = v[:, q]
            v[:, p] = vp * w00 + vq * w10
            v[:, q] = vp * w01 + vq * w11


def _jacobi_sweeps(a: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize Hermitian ``a`` in place by cyclic row-order Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm is below
    ``JACOBI_THRESHOLD * ||a||``. Convergence is quadratic by then, so one
    more sweep that rotates every entry above machine precision costs little
    and resolves eigenvalue clusters split by less than the threshold.

    Returns the diagonal (real) and the accumulated unitary ``v`` with
    ``v^dagger A v`` diagonal.
    """
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    norm = np.linalg.norm(a)
    thresh = JACOBI_THRESHOLD * norm
    offdiag = ~np.eye(n, dtype=bool)

    for _ in range(max_sweeps):
        if np.linalg.norm(a[offdiag]) <= thresh:
            break
        _rotate_all(a, v, thresh / n)
    else:
        if np.linalg.norm(a[offdiag]) > thresh:
            raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    _rotate_all(a, v, np.finfo(float).eps * norm)
    return np.real(np.diag(a)).copy(), v


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    big = np.nonzero(np.abs(vec) > _PHASE_FIX_TOL)[0]
    if big.size == 0:
        return vec
    lead = vec[big[0]]
    return vec * (np.conj(lead) / abs(lead))


def _lex_key(vec: np.ndarray) -> tuple:
    return tuple(x for z in vec for x in (z.real, z.imag))


def hermitian_eigen(
    h,
    tol: float = DEFAULT_TOL,
    *,
    max_sweeps: int = MAX_SWEEPS,
    max_dim: int = MAX_DIM,
) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Eigenvalues come back ascending. Each eigenvector is phase-fixed so that
    its first non-negligible component is real positive; inside a degenerate
    cluster (eigenvalues equal to roundoff, ``DEGENERACY_TOL`` relative) the
    pairs are ordered lexicographically by the (re, im) components of the
    vectors, so identical input always yields identical output.

    Raises:
        NotHermitian: if ``max |H - H^dagger| > tol``.
        NoConvergence: if ``max_sweeps`` sweeps do not reduce the off-diagonal
            Frobenius norm below ``1e-13 * ||H||_F``.
        ResourceLimit: if ``dim > max_dim``.
    """
    a = _check_hermitian(h, tol)
    n = a.shape[0]
    if n > max_dim:
        raise ResourceLimit(f"hermitian_eigen limited to dim <= {max_dim}, got {n}")
    values, vectors = _jacobi_sweeps(a, max_sweeps)

    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = np.stack([_fix_phase(vectors[:, k]) for k in order], axis=1)

    scale = float(np.max(np.abs(values), initial=0.0))
    start = 0
    for k in range(1, n + 1):
        if k == n or values[k] - values[k - 1] > DEGENERACY_TOL * scale:
            if k - start > 1:
                # the values agree to roundoff, so only the vectors move
                block = sorted(range(start, k), key=lambda j: _lex_key(vectors[:, j]))
                vectors[:, start:k] = vectors[:, block]
            start = k
    return EigenDecomposition(_freeze(values), _freeze(vectors))


def matrix_exp_hermitian(h, scale: float = 1.0, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Return ``exp(i * scale * H)`` for Hermitian ``H``, computed spectrally."""
    eig = hermitian_eigen(h, tol)
    v = eig.eigenvectors
    return (v * np.exp(1j * scale * eig.eigenvalues)) @ dagger(v)


@dataclass(frozen=True, eq=False)
class HermitianGeneratorResult:
    """Principal logarithm of a unitary: ``exp(i * generator) == U``.

    ``eigenphases`` are ascending in (-pi, pi]; column ``k`` of
    ``eigenvectors`` is the eigenvector of ``U`` with eigenvalue
    ``exp(i * eigenphases[k])``.
    """

    generator: np.ndarray
    eigenphases: np.ndarray
    eigenvectors: np.ndarray


def _principal(theta: np.ndarray) -> np.ndarray:
    theta = np.angle(np.exp(1j * theta))
    return np.where(theta <= -np.pi + 1e-15, np.pi, theta)


def _cayley_shift(u: np.ndarray, tol: float) -> float:
    """Pick ``beta`` so that ``exp(-i beta) U`` has no eigenvalue near -1.

    The eigenvalues of ``(U + U^dagger) / 2`` are ``cos(theta_k)``; placing
    ``beta + pi`` in the widest gap between the candidate phases
    ``+-arccos(cos theta_k)`` keeps it at least ``pi / (2 dim)`` away from
    every true eigenphase.
    """
    re = hermitian_eigen(0.5 * (u + dagger(u)), tol).eigenvalues
    base = np.arccos(np.clip(re, -1.0, 1.0))
    pts = np.sort(np.mod(np.concatenate([base, -base]), 2 * np.pi))
    gaps = np.diff(np.append(pts, pts[0] + 2 * np.pi))
    k = int(np.argmax(gaps))
    mid = pts[k] + 0.5 * gaps[k]
    return float(mid - np.pi)


def unitary_log(u, tol: float = DEFAULT_TOL) -> HermitianGeneratorResult:
    """Hermitian ``H`` with ``exp(iH) = U``, eigenphases in the principal branch.

    The unitary is first rotated by a global phase away from -1 and then
    mapped to the Hermitian Cayley transform ``K = i (I - W)(I + W)^-1``,
    whose eigenvalues ``tan(psi / 2)`` are an injective function of the
    eigenphase. Diagonalizing ``K`` with the Jacobi solver therefore resolves
    every eigenspace of ``U`` without clustering heuristics. Eigenphases are
    read back as Rayleigh quotients of ``U``.

    Raises:
        NotUnitary: if ``U`` fails :func:`is_unitary` at ``tol``.
    """
    a = as_matrix(u)
    if not is_unitary(a, tol):
        raise NotUnitary("unitary_log requires a unitary matrix")
    n = a.shape[0]
    beta = _cayley_shift(a, tol)
    w = np.exp(-1j * beta) * a
    eye = np.eye(n)
    k = 1j * np.linalg.solve(eye + w, eye - w)
    k = 0.5 * (k + dagger(k))
    vectors = np.array(hermitian_eigen(k, tol).eigenvectors)

    rayleigh = np.einsum("ij,ik,kj->j", np.conj(vectors), a, vectors)
    phases = _principal(np.angle(rayleigh))
    order = np.argsort(phases, kind="stable")
    phases = phases[order]
    vectors = vectors[:, order]
    gen = (vectors * phases) @ dagger(vectors)
    gen = 0.5 * (gen + dagger(gen))
    return HermitianGeneratorResult(_freeze(gen), _freeze(phases), _freeze(vectors))


def apply_tensor_power(u: np.ndarray, amplitudes: np.ndarray, arity: int) -> np.ndarray:
    """Apply ``U`` to every factor of an ``arity``-particle register.

    ``amplitudes`` is the flattened vector of the register in big-endian order
    (first particle is the most significant index).
    """
    d = u.shape[0]
    psi = np.asarray(amplitudes, dtype=complex).reshape((d,) * arity)
    for axis in range(arity):
        psi = np.moveaxis(np.tensordot(u, psi, axes=([1], [axis])), 0, axis)
    return psi.reshape(-1)
