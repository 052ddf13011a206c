"""Binary discrimination between two unitary black boxes.

A probe passes through the box, which applies either ``u1`` (prior ``xi``)
or ``u2``. The two possible outputs are pure states whose squared overlap
``p`` fixes the minimum error probability (the Helstrom bound)
``(1 - sqrt(1 - 4 xi (1 - xi) p)) / 2``. Everything here is about making
``p`` small: picking the single-particle probe from the extremal eigenphases
of ``u1^dagger u2`` and combining particles as products, one entangled
GHZ-type register, or a partition into entangled blocks.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    DomainError,
    NotNormalized,
    NotOrthogonal,
    NotUnitary,
    PartitionMismatch,
    ResourceLimit,
)
from .linalg import DEFAULT_TOL, dagger

NORM_TOL = 1e-12
# circular separations at or below this are treated as zero
GAP_TOL = 1e-12
# pairs within this fraction of the maximal separation count as ties
TIE_TOL = 1e-12
DEFAULT_MAX_AMPLITUDES = 2**20


def max_amplitudes() -> int:
    """Composite register cap, overridable through ``OPDISC_MAX_AMPLITUDES``."""
    raw = os.environ.get("OPDISC_MAX_AMPLITUDES")
    if raw is None:
        return DEFAULT_MAX_AMPLITUDES
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"OPDISC_MAX_AMPLITUDES must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError("OPDISC_MAX_AMPLITUDES must be positive")
    return value


def check_register_size(local_dim: int, arity: int) -> int:
    size = local_dim**arity
    cap = max_amplitudes()
    if size > cap:
        raise ResourceLimit(
            f"composite register of {local_dim}^{arity} = {size} amplitudes exceeds cap {cap}"
            " (set OPDISC_MAX_AMPLITUDES to raise it)"
        )
    return size


def phase_shift(delta: float) -> np.ndarray:
    """``diag(1, exp(2i delta))``: leaves |0> alone and shifts |1> by ``2 delta``."""
    return np.diag([1.0, np.exp(2j * delta)])


@dataclass(frozen=True, eq=False)
class ProbeState:
    """Normalized pure state of an ``arity``-particle register."""

    amplitudes: np.ndarray
    arity: int = 1
    local_dim: int = 0

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if self.arity < 1:
            raise DomainError("arity must be positive")
        local_dim = self.local_dim or round(amps.size ** (1.0 / self.arity))
        if local_dim < 1 or local_dim**self.arity != amps.size:
            raise DimensionMismatch(
                f"{amps.size} amplitudes do not form a register of {self.arity} particles"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"probe norm is {norm!r}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "local_dim", local_dim)

    @classmethod
    def from_vector(cls, vec, arity: int = 1, local_dim: int = 0) -> ProbeState:
        """Normalize ``vec`` and wrap it."""
        v = np.asarray(vec, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise NotNormalized("cannot normalize the zero vector")
        return cls(v / norm, arity, local_dim)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __len__(self):
        return self.dim


@dataclass(frozen=True)
class PartitionStrategy:
    """Particles split into entangled blocks.

    ``blocks`` holds ``(block_size, multiplicity)`` pairs; the register uses
    ``sum(size * count)`` particles. ``((1, N),)`` is the product strategy,
    ``((N, 1),)`` full entanglement.
    """

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        blocks = tuple((int(m), int(n)) for m, n in self.blocks)
        if not blocks or any(m < 1 or n < 1 for m, n in blocks):
            raise DomainError(f"partition blocks must be positive (size, count) pairs: {self.blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def particles(self) -> int:
        return sum(m * n for m, n in self.blocks)

    @classmethod
    def product(cls, n: int) -> PartitionStrategy:
        return cls(((1, n),))

    @classmethod
    def entangled(cls, n: int) -> PartitionStrategy:
        return cls(((n, 1),))

    @property
    def kind(self) -> str:
        if len(self.blocks) == 1 and self.blocks[0][0] == 1:
            return "product"
        if len(self.blocks) == 1 and self.blocks[0][1] == 1:
            return "entangled"
        return "partition"

    def expand(self) -> list[int]:
        """Block sizes in register order, largest blocks first as given."""
        return [m for m, n in self.blocks for _ in range(n)]

    def __str__(self):
        return "[" + ",".join(f"({m},{n})" for m, n in self.blocks) + "]"


Strategy = Union[str, PartitionStrategy]


def resolve_strategy(strategy: Strategy, particles: int) -> PartitionStrategy:
    """Turn ``"product"``, ``"entangled"`` or a partition into blocks for ``particles``."""
    if isinstance(strategy, PartitionStrategy):
        if strategy.particles != particles:
            raise PartitionMismatch(
                f"partition {strategy} covers {strategy.particles} particles, problem has {particles}"
            )
        return strategy
    if strategy == "product":
        return PartitionStrategy.product(particles)
    if strategy == "entangled":
        return PartitionStrategy.entangled(particles)
    raise DomainError(f"unknown strategy {strategy!r}")


@dataclass(frozen=True, eq=False)
class DecisionProblem:
    """Two candidate unitaries, the prior of ``u1`` and the particle budget.

    ``u1`` and ``u2`` are the complete action of the box on one particle.
    ``dwell_time`` records how long a particle spends inside; it enters the
    unitaries when they are built with :meth:`from_hamiltonians` and is
    otherwise bookkeeping.
    """

    u1: np.ndarray
    u2: np.ndarray
    prior: float = 0.5
    particles: int = 1
    dwell_time: float = 1.0
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        u1 = np.array(self.u1, dtype=complex)
        u2 = np.array(self.u2, dtype=complex)
        if u1.shape != u2.shape:
            raise DimensionMismatch(f"operator shapes differ: {u1.shape} vs {u2.shape}")
        for name, u in (("u1", u1), ("u2", u2)):
            if not linalg.is_unitary(u, self.tol):
                raise NotUnitary(f"{name} is not unitary to tolerance {self.tol:g}")
            u.setflags(write=False)
        if not 0.0 <= self.prior <= 1.0:
            raise DomainError(f"prior must lie in [0, 1], got {self.prior}")
        if int(self.particles) != self.particles or self.particles < 1:
            raise DomainError(f"particles must be a positive integer, got {self.particles}")
        if not self.dwell_time > 0:
            raise DomainError(f"dwell_time must be positive, got {self.dwell_time}")
        object.__setattr__(self, "u1", u1)
        object.__setattr__(self, "u2", u2)
        object.__setattr__(self, "particles", int(self.particles))

    @classmethod
    def from_hamiltonians(cls, h1, h2, prior=0.5, particles=1, dwell_time=1.0, tol=DEFAULT_TOL):
        """Build ``u_k = exp(i H_k t)`` with ``t = dwell_time``."""
        u1 = linalg.matrix_exp_hermitian(h1, dwell_time, tol)
        u2 = linalg.matrix_exp_hermitian(h2, dwell_time, tol)
        return cls(u1, u2, prior, particles, dwell_time, tol)

    @property
    def dim(self) -> int:
        return self.u1.shape[0]

    def replace(self, **changes) -> DecisionProblem:
        kw = dict(
            u1=self.u1, u2=self.u2, prior=self.prior, particles=self.particles,
            dwell_time=self.dwell_time, tol=self.tol,
        )
        kw.update(changes)
        return DecisionProblem(**kw)


def helstrom_cost(prior: float, transition_prob: float) -> float:
    """Minimum error probability for two pure states with squared overlap ``p``.

    >>> round(helstrom_cost(0.5, 0.5), 6)
    0.146447
    """
    if not 0.0 <= prior <= 1.0:
        raise DomainError(f"prior must lie in [0, 1], got {prior}")
    if not 0.0 <= transition_prob <= 1.0:
        raise DomainError(f"transition probability must lie in [0, 1], got {transition_prob}")
    disc = 1.0 - 4.0 * prior * (1.0 - prior) * transition_prob
    return 0.5 * (1.0 - math.sqrt(max(disc, 0.0)))


def _as_probe(probe) -> ProbeState:
    return probe if isinstance(probe, ProbeState) else ProbeState(probe)


def overlap_operator(u1, u2) -> np.ndarray:
    """``u1^dagger u2``; its action on the probe fixes the output overlap."""
    return dagger(np.asarray(u1, dtype=complex)) @ np.asarray(u2, dtype=complex)


def transition_probability(u1, u2, probe) -> float:
    """``|<phi| u1^dagger u2 |phi>|^2``, with the operators acting on every particle.

    A single-particle probe is the common case. For a register of ``arity``
    particles the operators act as ``u^{(x) arity}``.
    """
    probe = _as_probe(probe)
    u1 = np.asarray(u1, dtype=complex)
    u2 = np.asarray(u2, dtype=complex)
    if u1.shape != u2.shape or u1.ndim != 2:
        raise DimensionMismatch(f"operator shapes differ: {u1.shape} vs {u2.shape}")
    if probe.local_dim != u1.shape[0]:
        raise DimensionMismatch(
            f"probe local dimension {probe.local_dim} does not match operator dimension {u1.shape[0]}"
        )
    w = overlap_operator(u1, u2)
    image = linalg.apply_tensor_power(w, probe.amplitudes, probe.arity)
    amp = np.vdot(probe.amplitudes, image)
    return float(min(abs(amp) ** 2, 1.0))


def circular_distance(a: float, b: float) -> float:
    d = abs(a - b) % (2 * np.pi)
    return min(d, 2 * np.pi - d)


@dataclass(frozen=True, eq=False)
class PhaseGap:
    """Where the eigenphases of ``u1^dagger u2`` sit on the circle.

    ``index_min < index_max`` pick the most separated pair of the ascending
    ``eigenphases`` (circular distance, ties to the smallest index pair).

    Single-particle overlaps ``<phi|u1^dagger u2|phi>`` fill the convex hull
    of the eigenvalues ``exp(i theta_k)``. If all eigenphases fit in a closed
    half circle, the hull point nearest the origin is the midpoint of the
    chord between the pair, and ``gap`` is their separation. Otherwise the
    origin lies strictly inside the hull (``encloses_origin``): ``gap`` is
    ``pi`` and the zero-overlap superposition uses three eigenvectors.
    ``support`` and ``weights`` give the optimal probe
    ``sum_k sqrt(w_k) v_k`` in either case.
    """

    theta_min: float
    theta_max: float
    gap: float
    index_min: int
    index_max: int
    eigenphases: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    support: tuple[int, ...] = ()
    weights: tuple[float, ...] = ()
    encloses_origin: bool = False

    @property
    def v_min(self) -> np.ndarray:
        return self.eigenvectors[:, self.index_min]

    @property
    def v_max(self) -> np.ndarray:
        return self.eigenvectors[:, self.index_max]

    @property
    def is_degenerate(self) -> bool:
        return self.gap <= GAP_TOL

    @property
    def single_shot_overlap(self) -> float:
        return block_overlap(self, 1)


def block_overlap(pg: PhaseGap, m: int) -> float:
    """Output overlap of one entangled block of ``m`` particles.

    The block probe is ``sum_k sqrt(w_k) v_k^{(x)m}``, giving
    ``|sum_k w_k exp(i m theta_k)|^2``; for the two-point support this is
    exactly ``cos^2(m gap / 2)``.
    """
    if pg.is_degenerate:
        return 1.0
    if not pg.encloses_origin:
        return math.cos(m * 0.5 * pg.gap) ** 2
    theta = pg.eigenphases[list(pg.support)]
    amp = np.dot(pg.weights, np.exp(1j * m * theta))
    return float(min(abs(amp) ** 2, 1.0))


def _check_pair(u1, u2, tol):
    u1 = np.asarray(u1, dtype=complex)
    u2 = np.asarray(u2, dtype=complex)
    if u1.shape != u2.shape:
        raise DimensionMismatch(f"operator shapes differ: {u1.shape} vs {u2.shape}")
    for name, u in (("u1", u1), ("u2", u2)):
        if not linalg.is_unitary(u, tol):
            raise NotUnitary(f"{name} is not unitary to tolerance {tol:g}")
    return u1, u2


def _enclosing_triangle(phases: np.ndarray) -> tuple[tuple[int, ...], tuple[float, ...]]:
    """Three eigenphases whose chord triangle contains the origin, with barycentric weights.

    Anchored at the first eigenphase ``a``: ``b`` is the last phase within
    half a turn counterclockwise of ``a`` and ``c`` the first one beyond. All
    three arcs are shorter than ``pi`` when no circular gap exceeds ``pi``.
    """
    rel = np.mod(phases - phases[0], 2 * np.pi)
    ahead = [k for k in range(1, rel.size) if rel[k] < np.pi]
    behind = [k for k in range(1, rel.size) if rel[k] > np.pi]
    b = max(ahead, key=lambda k: (rel[k], -k))
    c = min(behind, key=lambda k: (rel[k], k))
    idx = (0, b, c)
    z = np.exp(1j * phases[list(idx)])
    lhs = np.vstack([z.real, z.imag, np.ones(3)])
    w = np.clip(np.linalg.solve(lhs, np.array([0.0, 0.0, 1.0])), 0.0, None)
    w = w / w.sum()
    order = sorted(range(3), key=lambda k: idx[k])
    return tuple(idx[k] for k in order), tuple(float(w[k]) for k in order)


def phase_spectrum(u1, u2, tol: float = DEFAULT_TOL) -> PhaseGap:
    """Eigenphases of ``u1^dagger u2`` and their widest circular separation.

    The separation of a pair is ``min(|a - b| mod 2pi, 2pi - |a - b| mod 2pi)``,
    so ``gap`` lies in ``[0, pi]`` and does not depend on the branch the
    eigenphases were taken in. See :class:`PhaseGap` for the case where the
    spectrum does not fit in a half circle.
    """
    u1, u2 = _check_pair(u1, u2, tol)
    log = linalg.unitary_log(overlap_operator(u1, u2), tol)
    phases = log.eigenphases
    n = phases.size
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)] or [(0, 0)]
    dist = [circular_distance(phases[i], phases[j]) for i, j in pairs]
    peak = max(dist)
    k = next(k for k, d in enumerate(dist) if d >= peak * (1.0 - TIE_TOL))
    (i, j), gap = pairs[k], float(dist[k])

    circle = np.sort(np.mod(phases, 2 * np.pi))
    widest = float(np.max(np.diff(np.append(circle, circle[0] + 2 * np.pi))))
    encloses = n >= 3 and widest < np.pi - TIE_TOL and gap < np.pi - TIE_TOL
    if encloses:
        support, weights, gap = *_enclosing_triangle(phases), float(np.pi)
    else:
        support, weights = (i, j), (0.5, 0.5)
    return PhaseGap(
        theta_min=float(phases[i]),
        theta_max=float(phases[j]),
        gap=gap,
        index_min=i,
        index_max=j,
        eigenphases=phases,
        eigenvectors=log.eigenvectors,
        support=support,
        weights=weights,
        encloses_origin=encloses,
    )


def _single_probe(pg: PhaseGap) -> ProbeState:
    vecs = pg.eigenvectors[:, list(pg.support)]
    return ProbeState.from_vector(vecs @ np.sqrt(pg.weights))


def optimal_probe(u1, u2, tol: float = DEFAULT_TOL) -> ProbeState:
    """Single-particle probe with the smallest output overlap.

    Normally the equal superposition of the two eigenvectors spanning the
    phase gap. When the operators differ only by a global phase every probe
    is equally useless and that superposition is still returned.
    """
    pg = phase_spectrum(u1, u2, tol)
    if pg.eigenvectors.shape[0] == 1:
        return ProbeState(pg.eigenvectors[:, 0])
    return _single_probe(pg)


def ghz_probe(v_min, v_max, n: int, tol: float = DEFAULT_TOL) -> ProbeState:
    """``(v_min^{(x)n} + v_max^{(x)n}) / sqrt(2)`` as an ``n``-particle register."""
    a = np.asarray(v_min, dtype=complex).reshape(-1)
    b = np.asarray(v_max, dtype=complex).reshape(-1)
    if a.shape != b.shape:
        raise DimensionMismatch("GHZ components must have equal dimension")
    for name, v in (("v_min", a), ("v_max", b)):
        if abs(np.linalg.norm(v) - 1.0) > tol:
            raise NotNormalized(f"{name} is not normalized")
    if abs(np.vdot(a, b)) > tol:
        raise NotOrthogonal(f"|<v_min|v_max>| = {abs(np.vdot(a, b)):.3g} exceeds {tol:g}")
    if n < 1:
        raise DomainError("n must be positive")
    check_register_size(a.size, n)
    return ProbeState.from_vector(_tensor_power(a, n) + _tensor_power(b, n), n, a.size)


def _tensor_power(v: np.ndarray, n: int) -> np.ndarray:
    out = np.ones(1, dtype=complex)
    for _ in range(n):
        out = np.kron(out, v)
    return out


@dataclass(frozen=True, eq=False)
class CostReport:
    """Analytic result for one strategy.

    ``probe`` is the single-particle superposition every block is built from
    (``None`` when the operators are indistinguishable); assemble the full
    register with :meth:`composite_probe`. ``moot`` flags a prior of exactly
    0 or 1, where no measurement is needed.
    """

    transition_probability: float
    bayes_cost: float
    strategy: str
    partition: PartitionStrategy
    phase_gap: PhaseGap
    probe: ProbeState | None
    prior: float
    particles: int
    moot: bool = False
    indistinguishable: bool = False

    def composite_probe(self) -> ProbeState:
        return strategy_probe(self.phase_gap, self.partition)

    def to_dict(self) -> dict:
        pg = self.phase_gap
        probe = None
        if self.probe is not None:
            probe = [[z.real, z.imag] for z in self.probe.amplitudes]
        return {
            "strategy": self.strategy,
            "partition": [list(b) for b in self.partition.blocks],
            "prior": self.prior,
            "particles": self.particles,
            "transition_probability": self.transition_probability,
            "bayes_cost": self.bayes_cost,
            "phase_gap": {
                "gap": pg.gap,
                "theta_min": pg.theta_min,
                "theta_max": pg.theta_max,
                "index_min": pg.index_min,
                "index_max": pg.index_max,
                "encloses_origin": pg.encloses_origin,
            },
            "probe": probe,
            "moot": self.moot,
            "indistinguishable": self.indistinguishable,
        }


def weighted_ghz(vectors, weights, n: int) -> ProbeState:
    """``sum_k sqrt(w_k) v_k^{(x)n}`` for orthonormal columns ``v_k``."""
    vectors = np.asarray(vectors, dtype=complex)
    check_register_size(vectors.shape[0], n)
    amps = sum(math.sqrt(w) * _tensor_power(vectors[:, k], n) for k, w in enumerate(weights))
    return ProbeState.from_vector(amps, n, vectors.shape[0])


def strategy_probe(pg: PhaseGap, partition: PartitionStrategy) -> ProbeState:
    """Full register probe: one GHZ-type state per block, blocks in tensor product.

    Indistinguishable operators get the product of the first eigenvector.
    """
    d = pg.eigenvectors.shape[0]
    n = partition.particles
    check_register_size(d, n)
    if pg.is_degenerate or d == 1:
        return ProbeState.from_vector(_tensor_power(pg.eigenvectors[:, 0], n), n, d)
    vecs = pg.eigenvectors[:, list(pg.support)]
    amps = np.ones(1, dtype=complex)
    for m in partition.expand():
        if len(pg.support) == 2:
            block = ghz_probe(vecs[:, 0], vecs[:, 1], m)
        else:
            block = weighted_ghz(vecs, pg.weights, m)
        amps = np.kron(amps, block.amplitudes)
    return ProbeState.from_vector(amps, n, d)


def partition_overlap(gap: float, partition: PartitionStrategy) -> float:
    """``prod_j cos^(2 n_j)(m_j gap / 2)`` for blocks ``(m_j, n_j)``."""
    half = 0.5 * gap
    p = 1.0
    for m, n in partition.blocks:
        p *= (math.cos(m * half) ** 2) ** n
    return min(p, 1.0)


def partition_cost(problem: DecisionProblem, strategy: Strategy, *, gap: PhaseGap | None = None) -> CostReport:
    """Helstrom cost when the particles are grouped into entangled blocks.

    Raises:
        PartitionMismatch: if the blocks do not use exactly ``problem.particles``.
    """
    partition = resolve_strategy(strategy, problem.particles)
    pg = gap if gap is not None else phase_spectrum(problem.u1, problem.u2, problem.tol)
    indistinguishable = pg.is_degenerate
    if indistinguishable:
        p, probe = 1.0, None
    elif pg.encloses_origin:
        p = 1.0
        for m, n in partition.blocks:
            p *= block_overlap(pg, m) ** n
        probe = _single_probe(pg)
    else:
        p = partition_overlap(pg.gap, partition)
        probe = _single_probe(pg)
    return CostReport(
        transition_probability=p,
        bayes_cost=helstrom_cost(problem.prior, p),
        strategy=partition.kind,
        partition=partition,
        phase_gap=pg,
        probe=probe,
        prior=problem.prior,
        particles=problem.particles,
        moot=problem.prior in (0.0, 1.0),
        indistinguishable=indistinguishable,
    )


def unentangled_cost(problem: DecisionProblem, *, gap: PhaseGap | None = None) -> CostReport:
    """Every particle carries its own copy of the optimal single-particle probe."""
    return partition_cost(problem, PartitionStrategy.product(problem.particles), gap=gap)


def entangled_cost(problem: DecisionProblem, *, gap: PhaseGap | None = None) -> CostReport:
    """All particles in one GHZ-type register built from the gap eigenvectors."""
    return partition_cost(problem, PartitionStrategy.entangled(problem.particles), gap=gap)


def generator_gap(h) -> float:
    """Spread ``lambda_max - lambda_min`` of a Hermitian matrix."""
    vals = linalg.hermitian_eigen(h).eigenvalues
    return float(vals[-1] - vals[0])


def bch_generator(h1, h2, t: float, order: int = 1) -> np.ndarray:
    """Small-``t`` generator ``G`` with ``exp(-i H1 t) exp(i H2 t) ~ exp(iG)``.

    Order 1 gives ``(H2 - H1) t``; order 2 adds ``(i/2) [H2, H1] t^2``, which
    is Hermitian because the commutator of Hermitian matrices is
    anti-Hermitian.
    """
    a = np.asarray(h1, dtype=complex)
    b = np.asarray(h2, dtype=complex)
    if a.shape != b.shape or a.ndim != 2:
        raise DimensionMismatch(f"Hamiltonian shapes differ: {a.shape} vs {b.shape}")
    if order not in (1, 2):
        raise DomainError(f"order must be 1 or 2, got {order}")
    g = (b - a) * t
    if order == 2:
        g = g + 0.5j * linalg.commutator(b, a) * t * t
    return 0.5 * (g + dagger(g))


def rank_escalation_check(h, tol: float = DEFAULT_TOL, *, reference_norm: float | None = None) -> int:
    """Numerical rank: number of eigenvalues with ``|lambda| > tol * ||h||``.

    ``reference_norm`` replaces the spectral norm of ``h`` itself, which is
    what a caller wants when ``h`` is a difference of larger matrices.
    """
    vals = linalg.hermitian_eigen(h).eigenvalues
    ref = float(np.max(np.abs(vals), initial=0.0)) if reference_norm is None else reference_norm
    if ref == 0.0:
        return 0
    return int(np.sum(np.abs(vals) > tol * ref))


def effective_generator(h1, h2, t: float, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, int]:
    """First-order generator, escalated to second order when it carries no gap.

    The identity component of ``G`` is a global phase, so the escalation test
    is applied to the traceless part, measured against ``t * max(||H1||, ||H2||)``.
    Returns ``(G, order_used)``.
    """
    g = bch_generator(h1, h2, t, 1)
    d = g.shape[0]
    traceless = g - (np.trace(g).real / d) * np.eye(d)
    ref = abs(t) * max(
        float(np.max(np.abs(linalg.hermitian_eigen(h).eigenvalues))) for h in (h1, h2)
    )
    if rank_escalation_check(traceless, tol, reference_norm=ref) >= 1:
        return g, 1
    return bch_generator(h1, h2, t, 2), 2
