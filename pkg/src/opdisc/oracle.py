"""Brute-force checks that share no code path with the analytic results.

* a grid search over probe states for the minimum output overlap,
* exhaustive integer partitions for the block-entanglement comparison.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .discrimination import (
    DecisionProblem,
    PartitionStrategy,
    ProbeState,
    partition_cost,
    phase_spectrum,
)
from .errors import DomainError, PartitionInequalityViolation, ResourceLimit

MAX_EVALUATIONS = 10**8
MAX_PARTITION_N = 30
_CHUNK = 1 << 21


@dataclass(frozen=True)
class GridSpec:
    """``resolution`` points per angular parameter for ``dim``-dimensional probes."""

    resolution: int
    dim: int

    def __post_init__(self):
        if self.resolution < 2 or self.dim < 1:
            raise DomainError("grid needs resolution >= 2 and dim >= 1")


def _moduli_grid(dim: int, resolution: int) -> np.ndarray:
    """Hyperspherical moduli: ``dim - 1`` polar angles, each on ``[0, pi/2]``."""
    if dim == 1:
        return np.ones((1, 1))
    angles = np.linspace(0.0, 0.5 * np.pi, resolution)
    grids = np.meshgrid(*([angles] * (dim - 1)), indexing="ij")
    alpha = np.stack([g.reshape(-1) for g in grids], axis=1)
    out = np.empty((alpha.shape[0], dim))
    sin_prod = np.ones(alpha.shape[0])
    for k in range(dim - 1):
        out[:, k] = sin_prod * np.cos(alpha[:, k])
        sin_prod = sin_prod * np.sin(alpha[:, k])
    out[:, dim - 1] = sin_prod
    return out


def _phase_grid(dim: int, resolution: int) -> np.ndarray:
    """Phase factors; component 0 stays real to drop the global phase."""
    phases = 2 * np.pi * np.arange(resolution) / resolution
    if dim == 1:
        return np.ones((1, 1), dtype=complex)
    grids = np.meshgrid(*([phases] * (dim - 1)), indexing="ij")
    beta = np.stack([np.zeros(grids[0].size)] + [g.reshape(-1) for g in grids], axis=1)
    return np.exp(1j * beta)


def grid_size(grid: GridSpec, basis: str = "computational") -> int:
    free = 2 * grid.dim - 2 if basis == "computational" else grid.dim - 1
    return grid.resolution**free


def brute_force_min_transition(
    u1,
    u2,
    grid: GridSpec,
    *,
    basis: str = "computational",
    max_evaluations: int = MAX_EVALUATIONS,
) -> tuple[float, ProbeState]:
    """Minimum of ``|<phi| u1^dagger u2 |phi>|^2`` over a uniform grid of probes.

    ``basis="computational"`` grids every state ``phi`` directly:
    ``dim - 1`` hyperspherical angles for the moduli and ``dim - 1`` phases,
    ``resolution^(2 dim - 2)`` points in all.

    ``basis="eigen"`` expresses ``phi`` in an orthonormal eigenbasis of
    ``u1^dagger u2`` obtained from LAPACK (``numpy.linalg.eig`` followed by a
    QR orthonormalization) rather than from this package's solver. In those
    coordinates the overlap ``|sum_k |c_k|^2 exp(i theta_k)|^2`` does not
    depend on the phases of ``c_k``, so the phase axes of the grid are
    constant and only the ``resolution^(dim - 1)`` moduli points are
    evaluated. The minimum equals that of the full grid in those coordinates.

    Ties go to the lowest grid index.

    Raises:
        ResourceLimit: if the grid has more than ``max_evaluations`` points.
    """
    u1 = np.asarray(u1, dtype=complex)
    u2 = np.asarray(u2, dtype=complex)
    dim = u1.shape[0]
    if grid.dim != dim:
        raise DomainError(f"grid is for dim {grid.dim}, operators have dim {dim}")
    if basis not in ("computational", "eigen"):
        raise DomainError(f"unknown basis {basis!r}")
    size = grid_size(grid, basis)
    if size > max_evaluations:
        raise ResourceLimit(f"grid of {size} points exceeds {max_evaluations} evaluations")

    w = u1.conj().T @ u2
    moduli = _moduli_grid(dim, grid.resolution)
    if basis == "eigen":
        vals, vecs = np.linalg.eig(w)
        q, r = np.linalg.qr(vecs)
        lam = np.diag(q.conj().T @ w @ q)
        best, arg = math.inf, 0
        for start in range(0, moduli.shape[0], _CHUNK):
            m = moduli[start:start + _CHUNK]
            f = np.abs((m * m) @ lam) ** 2
            k = int(np.argmin(f))
            if f[k] < best:
                best, arg = float(f[k]), start + k
        return min(best, 1.0), ProbeState.from_vector(q @ moduli[arg])

    phases = _phase_grid(dim, grid.resolution)
    rows = max(1, _CHUNK // phases.shape[0])
    best, arg = math.inf, (0, 0)
    for start in range(0, moduli.shape[0], rows):
        m = moduli[start:start + rows]
        c = m[:, None, :] * phases[None, :, :]
        z = np.einsum("qpj,jk,qpk->qp", c.conj(), w, c, optimize=True)
        f = (z.real**2 + z.imag**2).reshape(-1)
        k = int(np.argmin(f))
        if f[k] < best:
            best, arg = float(f[k]), divmod(k, phases.shape[0])
            arg = (start + arg[0], arg[1])
    i, j = arg
    return min(best, 1.0), ProbeState.from_vector(moduli[i] * phases[j])


def enumerate_partitions(n: int) -> list[PartitionStrategy]:
    """All integer partitions of ``n`` as ``(block_size, multiplicity)`` lists.

    Order is reverse lexicographic in the parts, so ``[(n, 1)]`` comes first
    and ``[(1, n)]`` last.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if n > MAX_PARTITION_N:
        raise ResourceLimit(f"partition enumeration limited to n <= {MAX_PARTITION_N}")

    def parts(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in parts(remaining - first, first):
                yield (first,) + rest

    out = []
    for p in parts(int(n), int(n)):
        blocks = tuple((size, len(list(group))) for size, group in itertools.groupby(p))
        out.append(PartitionStrategy(blocks))
    return out


@dataclass(frozen=True)
class PartitionRow:
    partition: PartitionStrategy
    transition_probability: float
    bayes_cost: float


@dataclass(frozen=True)
class PartitionReport:
    """Cost of every partition of ``N``, cheapest first (ties keep enumeration order)."""

    particles: int
    gap: float
    rows: tuple[PartitionRow, ...]

    @property
    def minimal(self) -> PartitionRow:
        return self.rows[0]

    @property
    def entangled(self) -> PartitionRow:
        return next(r for r in self.rows if r.partition.blocks == ((self.particles, 1),))


def partition_table(problem: DecisionProblem) -> PartitionReport:
    """Evaluate every partition of ``problem.particles`` without asserting anything."""
    pg = phase_spectrum(problem.u1, problem.u2, problem.tol)
    rows = []
    for part in enumerate_partitions(problem.particles):
        rep = partition_cost(problem, part, gap=pg)
        rows.append(PartitionRow(part, rep.transition_probability, rep.bayes_cost))
    rows.sort(key=lambda r: r.bayes_cost)
    return PartitionReport(problem.particles, pg.gap, tuple(rows))


def verify_partition_inequality(problem: DecisionProblem, tol: float = 1e-12) -> PartitionReport:
    """Check that full entanglement is the cheapest partition.

    Only meaningful while ``N * gap <= pi``, where
    ``prod_j cos^(2 n_j)(m_j gap / 2) >= cos^2(N gap / 2)`` holds.

    Raises:
        DomainError: outside that regime.
        PartitionInequalityViolation: naming the first partition that beats
            ``[(N, 1)]`` by more than ``tol``.
    """
    report = partition_table(problem)
    if problem.particles * report.gap > np.pi + 1e-12:
        raise DomainError(
            f"N * gap = {problem.particles * report.gap:.6g} exceeds pi; ordering is not guaranteed"
        )
    ent = report.entangled
    for row in report.rows:
        if row.bayes_cost < ent.bayes_cost - tol:
            raise PartitionInequalityViolation(
                f"partition {row.partition} costs {row.bayes_cost!r} < entangled {ent.bayes_cost!r}",
                row.partition,
            )
    if report.minimal is not ent:
        rows = (ent,) + tuple(r for r in report.rows if r is not ent)
        report = PartitionReport(report.particles, report.gap, rows)
    return report
