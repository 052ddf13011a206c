import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import haar_unitary, random_hermitian
from opdisc import (
    DecisionProblem,
    PartitionStrategy,
    ProbeState,
    bch_generator,
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
from opdisc.discrimination import block_overlap, partition_overlap, resolve_strategy
from opdisc.errors import (
    DimensionMismatch,
    DomainError,
    NotNormalized,
    NotOrthogonal,
    NotUnitary,
    PartitionMismatch,
    ResourceLimit,
)
from opdisc.linalg import matrix_exp_hermitian

seeds = st.integers(0, 2**32 - 1)
priors = st.floats(0.0, 1.0)
probs = st.floats(0.0, 1.0)


def trace_norm_cost(prior, psi1, psi2):
    """Minimum error via the trace norm of the weighted density difference."""
    gamma = prior * np.outer(psi1, psi1.conj()) - (1 - prior) * np.outer(psi2, psi2.conj())
    return 0.5 * (1 - np.sum(np.abs(np.linalg.eigvalsh(gamma))))


def kron_power(u, n):
    out = np.ones((1, 1))
    for _ in range(n):
        out = np.kron(out, u)
    return out


class TestHelstromCost:
    def test_identical_states_equal_prior(self):
        assert helstrom_cost(0.5, 1.0) == 0.5

    def test_orthogonal_states(self):
        assert helstrom_cost(0.3, 0.0) == 0.0

    def test_certain_prior(self):
        assert helstrom_cost(0.0, 0.7) == 0.0
        assert helstrom_cost(1.0, 0.7) == 0.0

    def test_identical_states_guess_likelier(self):
        assert helstrom_cost(0.2, 1.0) == pytest.approx(0.2, abs=1e-15)

    @pytest.mark.parametrize("bad", [(-0.1, 0.5), (1.1, 0.5), (0.5, -0.01), (0.5, 1.01)])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            helstrom_cost(*bad)

    @given(priors, probs, probs)
    def test_monotone_in_overlap(self, xi, p, q):
        lo, hi = sorted((p, q))
        assert helstrom_cost(xi, lo) <= helstrom_cost(xi, hi) + 1e-15

    @given(priors, probs)
    def test_symmetric_in_prior_and_bounded(self, xi, p):
        c = helstrom_cost(xi, p)
        assert c == pytest.approx(helstrom_cost(1 - xi, p), abs=1e-15)
        assert 0.0 <= c <= min(xi, 1 - xi) + 1e-15

    @given(priors, seeds)
    def test_matches_trace_norm(self, xi, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=3) + 1j * rng.normal(size=3)
        b = rng.normal(size=3) + 1j * rng.normal(size=3)
        a, b = a / np.linalg.norm(a), b / np.linalg.norm(b)
        p = abs(np.vdot(a, b)) ** 2
        assert helstrom_cost(xi, min(p, 1.0)) == pytest.approx(trace_norm_cost(xi, a, b), abs=1e-12)


class TestTransitionProbability:
    def test_phase_shift_on_basis_states(self, delta):
        u2 = phase_shift(delta)
        assert transition_probability(np.eye(2), u2, [1, 0]) == 1.0
        assert transition_probability(np.eye(2), u2, [0, 1]) == pytest.approx(1.0, abs=1e-15)

    def test_phase_shift_on_plus(self, delta):
        plus = np.array([1, 1]) / math.sqrt(2)
        p = transition_probability(np.eye(2), phase_shift(delta), plus)
        assert p == pytest.approx(math.cos(delta) ** 2, abs=1e-15)

    def test_composite_register(self, rng):
        u1, u2 = haar_unitary(rng, 2), haar_unitary(rng, 2)
        psi = rng.normal(size=8) + 1j * rng.normal(size=8)
        probe = ProbeState.from_vector(psi, 3)
        direct = abs(np.vdot(kron_power(u1, 3) @ probe.amplitudes, kron_power(u2, 3) @ probe.amplitudes)) ** 2
        assert transition_probability(u1, u2, probe) == pytest.approx(direct, abs=1e-12)

    def test_unnormalized_probe(self):
        with pytest.raises(NotNormalized):
            transition_probability(np.eye(2), np.eye(2), [1, 1])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            transition_probability(np.eye(2), np.eye(3), [1, 0])
        with pytest.raises(DimensionMismatch):
            transition_probability(np.eye(3), np.eye(3), [1, 0])

    @given(seeds, st.integers(1, 5))
    def test_symmetric(self, seed, n):
        rng = np.random.default_rng(seed)
        u1, u2 = haar_unitary(rng, n), haar_unitary(rng, n)
        probe = ProbeState.from_vector(rng.normal(size=n) + 1j * rng.normal(size=n))
        assert transition_probability(u1, u2, probe) == pytest.approx(
            transition_probability(u2, u1, probe), abs=1e-12
        )

    @given(seeds, st.integers(1, 5), st.floats(-10, 10), st.floats(-10, 10))
    def test_global_phase_invariance(self, seed, n, a, b):
        rng = np.random.default_rng(seed)
        u1, u2 = haar_unitary(rng, n), haar_unitary(rng, n)
        probe = ProbeState.from_vector(rng.normal(size=n) + 1j * rng.normal(size=n))
        base = transition_probability(u1, u2, probe)
        moved = transition_probability(np.exp(1j * a) * u1, np.exp(1j * b) * u2, probe)
        assert moved == pytest.approx(base, abs=1e-12)


class TestPhaseSpectrum:
    def test_phase_shift_gap(self, delta):
        pg = phase_spectrum(np.eye(2), phase_shift(delta))
        assert pg.gap == pytest.approx(2 * delta, abs=1e-14)
        assert pg.theta_min == pytest.approx(0.0, abs=1e-15)
        assert pg.single_shot_overlap == pytest.approx(math.cos(delta) ** 2, abs=1e-14)

    def test_gap_wraps_around(self):
        u = np.diag(np.exp(1j * np.array([-3.0, 3.0])))
        pg = phase_spectrum(np.eye(2), u)
        assert pg.gap == pytest.approx(2 * math.pi - 6.0, abs=1e-12)

    def test_global_phase_is_degenerate(self, rng):
        u = haar_unitary(rng, 3)
        pg = phase_spectrum(u, np.exp(0.7j) * u)
        assert pg.is_degenerate

    def test_tied_pairs_take_lowest_indices(self):
        u = np.diag(np.exp(1j * np.array([0.0, 1.0, 2.0, 3.0])))
        pg = phase_spectrum(np.eye(4), u)
        assert (pg.index_min, pg.index_max) == (0, 3)
        assert pg.gap == pytest.approx(3.0, abs=1e-12)

    def test_tiny_spread_is_resolved(self, rng):
        """A spread near 1e-12 must not be swallowed by the tie rule."""
        q = haar_unitary(rng, 3)
        theta = 0.2 + np.array([0.0, 4e-13, 1.1e-12])
        u = q @ np.diag(np.exp(1j * theta)) @ q.conj().T
        pg = phase_spectrum(np.eye(3), u)
        assert (pg.index_min, pg.index_max) == (0, 2)
        assert pg.gap == pytest.approx(1.1e-12, rel=1e-3)

    def test_origin_inside_hull(self):
        u = np.diag(np.exp(1j * np.array([0.0, 2.0, 4.0])))
        pg = phase_spectrum(np.eye(3), u)
        assert pg.encloses_origin and pg.gap == math.pi
        assert pg.single_shot_overlap <= 1e-24
        probe = optimal_probe(np.eye(3), u)
        assert transition_probability(np.eye(3), u, probe) <= 1e-24

    def test_not_unitary(self):
        with pytest.raises(NotUnitary):
            phase_spectrum(np.eye(2), np.diag([1.0, 1.1]))

    @given(seeds, st.integers(2, 5))
    def test_optimal_probe_beats_random_probes(self, seed, n):
        rng = np.random.default_rng(seed)
        u1, u2 = haar_unitary(rng, n), haar_unitary(rng, n)
        best = transition_probability(u1, u2, optimal_probe(u1, u2))
        assert best == pytest.approx(phase_spectrum(u1, u2).single_shot_overlap, abs=1e-10)
        for _ in range(20):
            probe = ProbeState.from_vector(rng.normal(size=n) + 1j * rng.normal(size=n))
            assert best <= transition_probability(u1, u2, probe) + 1e-10

    @given(seeds, st.integers(2, 5))
    def test_optimum_is_hull_distance(self, seed, n):
        """The minimal overlap is the squared distance from 0 to the hull of the eigenvalues."""
        rng = np.random.default_rng(seed)
        u1, u2 = haar_unitary(rng, n), haar_unitary(rng, n)
        lam = np.linalg.eigvals(u1.conj().T @ u2)
        circle = np.sort(np.mod(np.angle(lam), 2 * np.pi))
        widest = np.max(np.diff(np.append(circle, circle[0] + 2 * np.pi)))
        expected = 0.0 if widest < math.pi else math.cos(0.5 * (2 * math.pi - widest)) ** 2
        assert phase_spectrum(u1, u2).single_shot_overlap == pytest.approx(expected, abs=1e-10)


class TestGhzProbe:
    def test_two_qubits(self):
        probe = ghz_probe([1, 0], [0, 1], 2)
        np.testing.assert_allclose(probe.amplitudes, np.array([1, 0, 0, 1]) / math.sqrt(2))
        assert probe.arity == 2 and probe.local_dim == 2

    def test_not_orthogonal(self):
        with pytest.raises(NotOrthogonal):
            ghz_probe([1, 0], np.array([1, 1]) / math.sqrt(2), 3)

    def test_not_normalized(self):
        with pytest.raises(NotNormalized):
            ghz_probe([1, 0], [0, 2], 2)

    def test_register_cap(self):
        with pytest.raises(ResourceLimit):
            ghz_probe([1, 0], [0, 1], 21)

    def test_register_cap_override(self, monkeypatch):
        monkeypatch.setenv("OPDISC_MAX_AMPLITUDES", "16")
        ghz_probe([1, 0], [0, 1], 4)
        with pytest.raises(ResourceLimit):
            ghz_probe([1, 0], [0, 1], 5)


class TestStrategies:
    def test_resolve(self):
        assert resolve_strategy("product", 3).blocks == ((1, 3),)
        assert resolve_strategy("entangled", 3).blocks == ((3, 1),)
        with pytest.raises(DomainError):
            resolve_strategy("bogus", 3)

    def test_partition_mismatch(self, shift_pair):
        u1, u2 = shift_pair
        problem = DecisionProblem(u1, u2, particles=4)
        with pytest.raises(PartitionMismatch):
            partition_cost(problem, PartitionStrategy(((2, 1), (1, 1))))

    def test_partition_rendering(self):
        assert str(PartitionStrategy(((2, 2), (1, 1)))) == "[(2,2),(1,1)]"

    def test_unentangled_phase_shift(self, delta):
        problem = DecisionProblem(np.eye(2), phase_shift(delta), particles=3)
        rep = unentangled_cost(problem)
        assert rep.transition_probability == pytest.approx(math.cos(delta) ** 6, abs=1e-14)
        assert rep.strategy == "product"

    def test_entangled_phase_shift(self, delta):
        problem = DecisionProblem(np.eye(2), phase_shift(delta), particles=3)
        rep = entangled_cost(problem)
        assert rep.transition_probability == pytest.approx(math.cos(3 * delta) ** 2, abs=1e-14)
        assert rep.strategy == "entangled"

    def test_zero_overlap_at_quarter_turn(self):
        problem = DecisionProblem(np.eye(2), phase_shift(math.pi / 4), particles=2)
        assert entangled_cost(problem).bayes_cost == pytest.approx(0.0, abs=1e-15)
        assert unentangled_cost(problem).bayes_cost > 0.01

    def test_indistinguishable(self, rng):
        u = haar_unitary(rng, 3)
        rep = entangled_cost(DecisionProblem(u, np.exp(0.4j) * u, prior=0.3, particles=2))
        assert rep.indistinguishable and rep.probe is None
        assert rep.transition_probability == 1.0
        assert rep.bayes_cost == pytest.approx(0.3, abs=1e-15)

    def test_moot_prior(self, shift_pair):
        rep = unentangled_cost(DecisionProblem(*shift_pair, prior=1.0))
        assert rep.moot and rep.bayes_cost == 0.0

    @pytest.mark.parametrize("blocks", [((1, 4),), ((2, 2),), ((3, 1), (1, 1)), ((2, 1), (1, 2)), ((4, 1),)])
    def test_composite_probe_matches_analytic(self, rng, blocks):
        u1, u2 = haar_unitary(rng, 2), haar_unitary(rng, 2)
        problem = DecisionProblem(u1, u2, particles=4)
        rep = partition_cost(problem, PartitionStrategy(blocks))
        probe = rep.composite_probe()
        a = kron_power(u1, 4) @ probe.amplitudes
        b = kron_power(u2, 4) @ probe.amplitudes
        assert rep.transition_probability == pytest.approx(abs(np.vdot(a, b)) ** 2, abs=1e-12)

    def test_composite_probe_with_origin_in_hull(self):
        u = np.diag(np.exp(1j * np.array([0.0, 2.2, 4.1])))
        problem = DecisionProblem(np.eye(3), u, particles=3)
        for blocks in [((1, 3),), ((2, 1), (1, 1)), ((3, 1),)]:
            rep = partition_cost(problem, PartitionStrategy(blocks))
            probe = rep.composite_probe()
            p = transition_probability(np.eye(3), u, probe)
            assert rep.transition_probability == pytest.approx(p, abs=1e-12)

    @given(seeds, st.integers(1, 6))
    def test_one_particle_strategies_agree(self, seed, n):
        rng = np.random.default_rng(seed)
        problem = DecisionProblem(haar_unitary(rng, n), haar_unitary(rng, n), prior=rng.random())
        a, b = unentangled_cost(problem), entangled_cost(problem)
        assert a.bayes_cost == b.bayes_cost
        assert a.transition_probability == b.transition_probability

    @given(st.floats(1e-3, math.pi / 2), st.integers(1, 12))
    def test_entanglement_never_hurts_below_half_turn(self, gap, n):
        assume(n * gap <= math.pi)
        assert partition_overlap(gap, PartitionStrategy.entangled(n)) <= partition_overlap(
            gap, PartitionStrategy.product(n)
        ) + 1e-15

    @given(st.floats(0, math.pi / 2), st.lists(st.integers(1, 4), min_size=1, max_size=4))
    def test_partition_inequality(self, gap, sizes):
        n = sum(sizes)
        assume(n * gap <= math.pi)
        blocks = tuple((m, 1) for m in sorted(sizes, reverse=True))
        assert partition_overlap(gap, PartitionStrategy(blocks)) >= math.cos(0.5 * n * gap) ** 2 - 1e-15

    def test_block_overlap_two_point(self, shift_pair):
        pg = phase_spectrum(*shift_pair)
        for m in range(1, 6):
            assert block_overlap(pg, m) == pytest.approx(math.cos(0.5 * m * pg.gap) ** 2, abs=1e-15)


class TestDecisionProblem:
    def test_validation(self):
        with pytest.raises(NotUnitary):
            DecisionProblem(np.eye(2), np.diag([1, 2]))
        with pytest.raises(DimensionMismatch):
            DecisionProblem(np.eye(2), np.eye(3))
        with pytest.raises(DomainError):
            DecisionProblem(np.eye(2), np.eye(2), prior=1.5)
        with pytest.raises(DomainError):
            DecisionProblem(np.eye(2), np.eye(2), particles=0)
        with pytest.raises(DomainError):
            DecisionProblem(np.eye(2), np.eye(2), dwell_time=0)

    def test_input_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            DecisionProblem(np.eye(2), np.eye(3))

    def test_from_hamiltonians_uses_dwell_time(self, delta):
        h = np.diag([0.0, 2 * delta])
        problem = DecisionProblem.from_hamiltonians(np.zeros((2, 2)), h, dwell_time=0.5)
        np.testing.assert_allclose(problem.u2, phase_shift(0.5 * delta), atol=1e-15)

    def test_replace(self, shift_pair):
        problem = DecisionProblem(*shift_pair).replace(particles=5)
        assert problem.particles == 5


class TestSmallTime:
    def test_order_one(self, rng):
        h1, h2 = random_hermitian(rng, 3), random_hermitian(rng, 3)
        np.testing.assert_allclose(bch_generator(h1, h2, 0.1), 0.1 * (h2 - h1), atol=1e-15)

    def test_order_two_is_hermitian(self, rng):
        h1, h2 = random_hermitian(rng, 3), random_hermitian(rng, 3)
        g = bch_generator(h1, h2, 0.1, 2)
        np.testing.assert_allclose(g, g.conj().T, atol=1e-15)

    def test_bad_order(self):
        with pytest.raises(DomainError):
            bch_generator(np.eye(2), np.eye(2), 0.1, 3)

    @pytest.mark.parametrize("seed", range(5))
    def test_second_order_sign(self, seed):
        """exp(iG) reproduces exp(-iH1 t) exp(iH2 t) to O(t^3) only with the + sign."""
        rng = np.random.default_rng(seed)
        h1, h2 = random_hermitian(rng, 3), random_hermitian(rng, 3)
        errs, flipped = [], []
        for t in (1e-1, 1e-2):
            exact = matrix_exp_hermitian(h1, -t) @ matrix_exp_hermitian(h2, t)
            g = bch_generator(h1, h2, t, 2)
            g_flip = 2 * bch_generator(h1, h2, t, 1) - g
            errs.append(np.linalg.norm(matrix_exp_hermitian(g) - exact))
            flipped.append(np.linalg.norm(matrix_exp_hermitian(g_flip) - exact))
        # error falls by ~1000 per decade for the right sign, ~100 for the wrong one
        assert errs[0] / errs[1] > 500
        assert flipped[0] / flipped[1] < 200

    def test_rank(self):
        assert rank_escalation_check(np.diag([1.0, 0.0, 1e-14])) == 1
        assert rank_escalation_check(np.zeros((3, 3))) == 0
        assert rank_escalation_check(np.diag([1e-6, 0.0]), reference_norm=1e6) == 0

    def test_escalates_when_difference_is_scalar(self, rng):
        h1 = random_hermitian(rng, 3)
        _, order = effective_generator(h1, h1 + 0.5 * np.eye(3), 1e-3)
        assert order == 2

    def test_keeps_first_order(self, rng):
        h1, h2 = random_hermitian(rng, 3), random_hermitian(rng, 3)
        g, order = effective_generator(h1, h2, 1e-3)
        assert order == 1
        assert generator_gap(g) == pytest.approx(1e-3 * generator_gap(h2 - h1), rel=1e-12)
