import math

import numpy as np
import pytest

from conftest import haar_unitary
from opdisc import DecisionProblem, PartitionStrategy, phase_shift, phase_spectrum
from opdisc import oracle
from opdisc.errors import DomainError, PartitionInequalityViolation, ResourceLimit
from opdisc.oracle import (
    GridSpec,
    brute_force_min_transition,
    enumerate_partitions,
    grid_size,
    partition_table,
    verify_partition_inequality,
)


def euler_partition_counts(n_max):
    """p(n) from the pentagonal number recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        k, total = 1, 0
        while True:
            g1, g2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


class TestPartitions:
    def test_order_for_four(self):
        got = [p.blocks for p in enumerate_partitions(4)]
        assert got == [((4, 1),), ((3, 1), (1, 1)), ((2, 2),), ((2, 1), (1, 2)), ((1, 4),)]

    def test_p_of_ten(self):
        assert len(enumerate_partitions(10)) == 42

    def test_counts_match_pentagonal_recurrence(self):
        counts = euler_partition_counts(20)
        for n in range(1, 21):
            parts = enumerate_partitions(n)
            assert len(parts) == counts[n]
            assert all(p.particles == n for p in parts)
            assert len({p.blocks for p in parts}) == counts[n]

    def test_limits(self):
        with pytest.raises(ResourceLimit):
            enumerate_partitions(31)
        with pytest.raises(DomainError):
            enumerate_partitions(0)


class TestPartitionInequality:
    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_entangled_is_minimal(self, n):
        problem = DecisionProblem(np.eye(2), phase_shift(math.pi / (2 * n) * 0.9), particles=n)
        report = verify_partition_inequality(problem)
        assert report.minimal.partition.blocks == ((n, 1),)
        assert len(report.rows) == len(enumerate_partitions(n))

    def test_outside_regime(self):
        problem = DecisionProblem(np.eye(2), phase_shift(1.0), particles=3)
        with pytest.raises(DomainError):
            verify_partition_inequality(problem)

    def test_table_outside_regime_can_prefer_other_partitions(self):
        problem = DecisionProblem(np.eye(2), phase_shift(1.0), particles=3)
        report = partition_table(problem)
        assert report.minimal.partition.blocks != ((3, 1),)

    def test_detects_injected_violation(self, monkeypatch):
        from opdisc import discrimination

        real = discrimination.partition_overlap

        def broken(gap, partition):
            if partition.blocks == ((2, 1), (1, 1)):
                return 0.0
            return real(gap, partition)

        monkeypatch.setattr(oracle, "partition_cost", lambda problem, part, gap=None: _patched(
            problem, part, gap, broken
        ))
        problem = DecisionProblem(np.eye(2), phase_shift(0.2), particles=3)
        with pytest.raises(PartitionInequalityViolation) as exc:
            verify_partition_inequality(problem)
        assert exc.value.partition.blocks == ((2, 1), (1, 1))
        assert isinstance(exc.value, AssertionError)


def _patched(problem, part, pg, overlap):
    from opdisc.discrimination import CostReport, helstrom_cost

    p = overlap(pg.gap, part)
    return CostReport(p, helstrom_cost(problem.prior, p), part.kind, part, pg, None, problem.prior, problem.particles)


class TestBruteForce:
    def test_phase_shift(self, shift_pair, delta):
        best, probe = brute_force_min_transition(*shift_pair, GridSpec(64, 2))
        assert best == pytest.approx(math.cos(delta) ** 2, abs=1e-3)
        assert probe.dim == 2

    def test_grid_size(self):
        assert grid_size(GridSpec(64, 3)) == 64**4
        assert grid_size(GridSpec(64, 3), "eigen") == 64**2

    def test_resource_limit(self):
        u = np.eye(4)
        with pytest.raises(ResourceLimit):
            brute_force_min_transition(u, u, GridSpec(64, 4))

    def test_dim_mismatch(self):
        with pytest.raises(DomainError):
            brute_force_min_transition(np.eye(2), np.eye(2), GridSpec(8, 3))

    def test_refinement_converges(self, rng):
        u1, u2 = haar_unitary(rng, 2), haar_unitary(rng, 2)
        exact = phase_spectrum(u1, u2).single_shot_overlap
        errs = [brute_force_min_transition(u1, u2, GridSpec(r, 2))[0] - exact for r in (16, 32, 64, 128)]
        assert all(e >= -1e-12 for e in errs)
        assert errs[-1] <= errs[0]
        assert errs[-1] < 1e-3

    @pytest.mark.parametrize("dim", [2, 3])
    def test_bases_agree(self, rng, dim):
        u1, u2 = haar_unitary(rng, dim), haar_unitary(rng, dim)
        comp, _ = brute_force_min_transition(u1, u2, GridSpec(24, dim))
        eig, _ = brute_force_min_transition(u1, u2, GridSpec(24, dim), basis="eigen")
        exact = phase_spectrum(u1, u2).single_shot_overlap
        assert comp == pytest.approx(exact, abs=2e-2)
        assert eig == pytest.approx(exact, abs=2e-2)

    def test_returned_probe_attains_minimum(self, rng):
        from opdisc import transition_probability

        u1, u2 = haar_unitary(rng, 3), haar_unitary(rng, 3)
        for basis in ("computational", "eigen"):
            best, probe = brute_force_min_transition(u1, u2, GridSpec(16, 3), basis=basis)
            assert transition_probability(u1, u2, probe) == pytest.approx(best, abs=1e-12)
