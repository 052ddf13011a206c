"""Helstrom measurement and Monte Carlo check of the analytic costs.

The probe and the black box interact completely before anything is
measured, so each trial is one joint two-outcome measurement on the full
register output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .discrimination import (
    DecisionProblem,
    ProbeState,
    Strategy,
    check_register_size,
    partition_cost,
    phase_spectrum,
    resolve_strategy,
    strategy_probe,
)
from .errors import DimensionMismatch, DomainError, NotNormalized

# eigenvalues of the decision operator below -this are negative
_SIGN_TOL = 1e-14
BATCH_SIZE = 1 << 18


def _vector(state) -> np.ndarray:
    if isinstance(state, ProbeState):
        return np.asarray(state.amplitudes)
    v = np.asarray(state, dtype=complex).reshape(-1)
    if abs(np.linalg.norm(v) - 1.0) > 1e-10:
        raise NotNormalized("measurement states must be normalized")
    return v


@dataclass(frozen=True, eq=False)
class BinaryMeasurement:
    """Two-outcome projective measurement ``P1 + P2 = I``.

    ``P2`` (decide "u2") is stored as an orthonormal basis of its range in the
    columns of ``decide_u2_basis``; it has rank at most one for the Helstrom
    measurement, which keeps huge registers cheap. The dense projectors are
    available as properties for small dimensions.
    """

    decide_u2_basis: np.ndarray
    dim: int

    @property
    def projector_2(self) -> np.ndarray:
        b = self.decide_u2_basis
        return b @ linalg.dagger(b) if b.size else np.zeros((self.dim, self.dim), dtype=complex)

    @property
    def projector_1(self) -> np.ndarray:
        return np.eye(self.dim) - self.projector_2

    def prob_decide_u2(self, state) -> float:
        v = _vector(state)
        if v.size != self.dim:
            raise DimensionMismatch(f"state has {v.size} amplitudes, measurement acts on {self.dim}")
        if not self.decide_u2_basis.size:
            return 0.0
        return float(min(np.sum(np.abs(linalg.dagger(self.decide_u2_basis) @ v) ** 2), 1.0))

    def error_probability(self, psi1, psi2, prior: float) -> float:
        """``xi tr(P2 rho1) + (1 - xi) tr(P1 rho2)``."""
        return prior * self.prob_decide_u2(psi1) + (1.0 - prior) * (1.0 - self.prob_decide_u2(psi2))


def projective_measurement(vector) -> BinaryMeasurement:
    """Measurement that decides "u2" on the ray of ``vector``; any unit vector works."""
    v = _vector(vector)
    return BinaryMeasurement(v.reshape(-1, 1).copy(), v.size)


def helstrom_measurement(psi1, psi2, prior: float) -> BinaryMeasurement:
    """Minimum-error measurement for ``psi1`` (prior ``xi``) against ``psi2``.

    ``P1`` projects onto the non-negative eigenspace of
    ``xi |psi1><psi1| - (1 - xi) |psi2><psi2|`` and ``P2`` onto the rest.
    That operator lives in the span of the two states, so it is diagonalized
    as a 2x2 matrix in an orthonormal basis of the span.
    """
    a = _vector(psi1)
    b = _vector(psi2)
    if a.size != b.size:
        raise DimensionMismatch(f"states have {a.size} and {b.size} amplitudes")
    if not 0.0 <= prior <= 1.0:
        raise DomainError(f"prior must lie in [0, 1], got {prior}")
    resid = b - np.vdot(a, b) * a
    rnorm = np.linalg.norm(resid)
    basis = np.stack([a, resid / rnorm], axis=1) if rnorm > 1e-12 else a.reshape(-1, 1)
    ca = linalg.dagger(basis) @ a
    cb = linalg.dagger(basis) @ b
    gamma = prior * np.outer(ca, ca.conj()) - (1.0 - prior) * np.outer(cb, cb.conj())
    eig = linalg.hermitian_eigen(gamma)
    neg = eig.eigenvectors[:, eig.eigenvalues < -_SIGN_TOL]
    return BinaryMeasurement(basis @ neg, a.size)


def composite_outputs(problem: DecisionProblem, strategy: Strategy) -> tuple[ProbeState, ProbeState]:
    """The two possible register states after the box, under ``u1`` and ``u2``.

    The strategy's probe is built in full and each particle is sent through
    the box once, i.e. ``u^{(x) N}`` is applied factor by factor.

    Raises:
        ResourceLimit: if ``dim^N`` exceeds the amplitude cap.
    """
    partition = resolve_strategy(strategy, problem.particles)
    check_register_size(problem.dim, problem.particles)
    pg = phase_spectrum(problem.u1, problem.u2, problem.tol)
    probe = strategy_probe(pg, partition)
    outs = []
    for u in (problem.u1, problem.u2):
        amps = linalg.apply_tensor_power(u, probe.amplitudes, probe.arity)
        outs.append(ProbeState.from_vector(amps, probe.arity, probe.local_dim))
    return outs[0], outs[1]


@dataclass(frozen=True)
class SimulationResult:
    trials: int
    errors: int
    empirical_error_rate: float
    predicted_cost: float
    std_error: float
    seed: int
    strategy: str = ""

    @property
    def deviation_sigmas(self) -> float:
        diff = self.empirical_error_rate - self.predicted_cost
        if self.std_error == 0.0:
            return 0.0 if diff == 0.0 else float("inf")
        return abs(diff) / self.std_error

    def within(self, sigmas: float = 4.0) -> bool:
        diff = abs(self.empirical_error_rate - self.predicted_cost)
        return diff <= sigmas * self.std_error or diff == 0.0

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "errors": self.errors,
            "empirical_error_rate": self.empirical_error_rate,
            "predicted_cost": self.predicted_cost,
            "std_error": self.std_error,
            "seed": self.seed,
            "strategy": self.strategy,
        }


def _batch_errors(rng: np.random.Generator, size: int, prior: float, q2: np.ndarray) -> int:
    # hypothesis 0 = u1 (probability prior), 1 = u2
    hyp = (rng.random(size) >= prior).astype(np.intp)
    decide_u2 = rng.random(size) < q2[hyp]
    return int(np.count_nonzero(decide_u2 != hyp.astype(bool)))


def simulate_error_rate(
    problem: DecisionProblem,
    strategy: Strategy,
    trials: int,
    seed: int,
    *,
    measurement: BinaryMeasurement | None = None,
    batch_size: int = BATCH_SIZE,
) -> SimulationResult:
    """Monte Carlo estimate of the error probability of the decide-measure-guess loop.

    Each trial draws the box content from the prior and samples the
    measurement outcome from the Born probabilities of the corresponding
    register output; the guess is the operator named by the outcome. The
    Helstrom measurement is used unless ``measurement`` is given.

    Randomness comes from numpy's PCG64. Trials are processed in batches of
    ``batch_size``; batch ``k`` uses the ``k``-th child of
    ``SeedSequence(seed)``, so results depend only on ``(seed, trials,
    batch_size)`` and the problem.
    """
    if int(trials) != trials or trials < 1:
        raise DomainError(f"trials must be a positive integer, got {trials}")
    trials = int(trials)
    psi1, psi2 = composite_outputs(problem, strategy)
    if measurement is None:
        measurement = helstrom_measurement(psi1, psi2, problem.prior)
    q2 = np.array([measurement.prob_decide_u2(psi1), measurement.prob_decide_u2(psi2)])

    nbatch = -(-trials // batch_size)
    children = np.random.SeedSequence(seed).spawn(nbatch)
    errors = 0
    for k, child in enumerate(children):
        size = min(batch_size, trials - k * batch_size)
        errors += _batch_errors(np.random.Generator(np.random.PCG64(child)), size, problem.prior, q2)

    rate = errors / trials
    report = partition_cost(problem, strategy)
    return SimulationResult(
        trials=trials,
        errors=errors,
        empirical_error_rate=rate,
        predicted_cost=report.bayes_cost,
        std_error=float(np.sqrt(rate * (1.0 - rate) / trials)),
        seed=seed,
        strategy=report.strategy,
    )
