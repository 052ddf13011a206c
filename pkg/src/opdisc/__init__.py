"""opdisc: minimum-error discrimination between two unitary operators.

A black box applies one of two known unitaries ``u1`` (prior ``xi``) or
``u2``. Probing it with ``N`` particles and measuring the output optimally
gives an error probability fixed by the squared overlap of the two possible
output states. The package computes the best probes and the resulting costs
for product, entangled and block-partitioned registers, and checks them by
brute force and Monte Carlo simulation.

Modules
-------
linalg
    Jacobi Hermitian eigensolver, spectral exp/log of Hermitian/unitary matrices.
discrimination
    Transition probabilities, Helstrom cost, optimal probes, strategy costs,
    small-time generators.
measurement
    Helstrom measurement and the Monte Carlo simulator.
oracle
    Grid search over probes and exhaustive partition checks.
config, cli
    JSON problem files and the ``opdisc`` command.

>>> import numpy as np
>>> import opdisc as od
>>> problem = od.DecisionProblem(np.eye(2), od.phase_shift(0.3), prior=0.5, particles=3)
>>> p = od.entangled_cost(problem).transition_probability
>>> round(p, 12), round(float(np.cos(0.9) ** 2), 12)
(0.386398952653, 0.386398952653)
"""

from .discrimination import (
    CostReport,
    DecisionProblem,
    PartitionStrategy,
    PhaseGap,
    ProbeState,
    bch_generator,
    block_overlap,
    effective_generator,
    entangled_cost,
    generator_gap,
    ghz_probe,
    helstrom_cost,
    optimal_probe,
    partition_cost,
    phase_shift,
    phase_spectrum,
    rank_escalation_check,
    transition_probability,
    unentangled_cost,
)
from .errors import (
    ConfigError,
    DimensionMismatch,
    DomainError,
    NoConvergence,
    NotHermitian,
    NotNormalized,
    NotOrthogonal,
    NotUnitary,
    OpdiscError,
    PartitionInequalityViolation,
    PartitionMismatch,
    ResourceLimit,
)
from .linalg import (
    EigenDecomposition,
    hermitian_eigen,
    is_unitary,
    matrix_exp_hermitian,
    unitary_log,
)
from .measurement import (
    BinaryMeasurement,
    SimulationResult,
    composite_outputs,
    helstrom_measurement,
    simulate_error_rate,
)
from .oracle import (
    GridSpec,
    brute_force_min_transition,
    enumerate_partitions,
    verify_partition_inequality,
)

__version__ = "0.1.0"
