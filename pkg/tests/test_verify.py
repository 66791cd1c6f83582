import numpy as np
import pytest

from holosynth import (
    Controller,
    OpenLoop,
    SampledLoop,
    SingularInput,
    TooFewSamples,
    catalog_get,
    cross_validate,
    curve_samples,
    gauge_invariance_check,
    holonomy_analytic,
    length_analytic,
    loop_length_numeric,
    numeric_holonomy,
    sample_loop,
    synthesize,
)
from helpers import random_haar

HADAMARD = catalog_get("hadamard").matrix
HALF_TURN = np.array([[np.exp(1j * np.pi)]], dtype=complex)


def _warped_loop(ctrl, steps, strength=0.15):
    """Same geometric loop, resampled along a smooth monotone time warp."""
    times = np.linspace(0.0, 1.0, steps + 1)
    warped = times - strength * np.sin(2 * np.pi * times) / (2 * np.pi)
    frames = curve_samples(ctrl, warped)
    projs = np.einsum("mik,mjk->mij", frames, frames.conj())
    return SampledLoop(times=times, projectors=projs, rank=ctrl.k)


class TestSampleLoop:
    def test_zero_coupling_gives_constant_loop(self):
        ctrl = Controller(
            omega=np.array([[2j * np.pi]], dtype=complex),
            coupling=np.array([[0.0]], dtype=complex),
        )
        loop = sample_loop(ctrl, 10)
        p0 = np.diag([1.0, 0.0]).astype(complex)
        for p in loop.projectors:
            np.testing.assert_allclose(p, p0, atol=1e-12)

    def test_hadamard_endpoints(self):
        ctrl = synthesize(HADAMARD).controller
        loop = sample_loop(ctrl, 4)
        assert loop.projectors.shape == (5, 4, 4)
        p0 = np.zeros((4, 4), dtype=complex)
        p0[:2, :2] = np.eye(2)
        np.testing.assert_allclose(loop.projectors[0], p0, atol=1e-12)
        np.testing.assert_allclose(loop.projectors[-1], p0, atol=1e-10)

    def test_half_turn_midpoint_reaches_antipode(self):
        ctrl = synthesize(HALF_TURN).controller
        loop = sample_loop(ctrl, 2)
        np.testing.assert_allclose(
            loop.projectors[1], np.diag([0.0, 1.0]), atol=1e-12
        )

    def test_open_controller_rejected(self):
        good = synthesize(HALF_TURN).controller
        bad = Controller(omega=good.omega, coupling=0.9 * good.coupling)
        with pytest.raises(OpenLoop):
            sample_loop(bad, 100)

    def test_too_few_steps(self):
        ctrl = synthesize(HALF_TURN).controller
        with pytest.raises(TooFewSamples):
            sample_loop(ctrl, 1)


class TestNumericHolonomy:
    def test_constant_loop_is_identity(self):
        ctrl = Controller(
            omega=np.array([[2j * np.pi]], dtype=complex),
            coupling=np.array([[0.0]], dtype=complex),
        )
        gamma = numeric_holonomy(sample_loop(ctrl, 50))
        np.testing.assert_allclose(gamma, [[1.0]], atol=1e-12)

    def test_half_turn_phase(self):
        ctrl = synthesize(HALF_TURN).controller
        gamma = numeric_holonomy(sample_loop(ctrl, 1000))
        assert abs(gamma[0, 0] + 1.0) < 1e-3

    def test_hadamard(self):
        ctrl = synthesize(HADAMARD).controller
        gamma = numeric_holonomy(sample_loop(ctrl, 1000))
        assert np.linalg.norm(gamma - HADAMARD) < 1e-3

    def test_random_gate_agrees_with_analytic(self):
        rng = np.random.default_rng(7)
        gate = random_haar(rng, 2)
        ctrl = synthesize(gate).controller
        gamma = numeric_holonomy(sample_loop(ctrl, 2000))
        assert np.linalg.norm(gamma - holonomy_analytic(ctrl)) < 1e-4

    def test_output_is_unitary(self):
        rng = np.random.default_rng(8)
        gate = random_haar(rng, 3)
        ctrl = synthesize(gate).controller
        gamma = numeric_holonomy(sample_loop(ctrl, 500))
        assert np.linalg.norm(gamma.conj().T @ gamma - np.eye(3)) < 1e-12

    def test_too_coarse_sampling_is_singular(self):
        # two steps put a single orthogonal projector in the chain
        ctrl = synthesize(HALF_TURN).controller
        with pytest.raises(SingularInput):
            numeric_holonomy(sample_loop(ctrl, 2))


class TestCrossValidate:
    def test_identity_gate_sits_at_roundoff(self):
        gate = np.eye(2, dtype=complex)
        report = cross_validate(synthesize(gate).controller, gate, (100, 1000))
        assert all(d < 1e-12 for d in report.deviations)
        assert np.isnan(report.convergence_order_estimate)
        assert not report.anomalous
        assert report.target_error < 1e-12

    def test_generic_gate_converges_quadratically(self):
        rng = np.random.default_rng(9)
        gate = random_haar(rng, 2)
        report = cross_validate(synthesize(gate).controller, gate, (200, 2000))
        assert report.deviations[0] > report.deviations[1]
        assert report.deviation < 1e-4
        # polar unitarization cancels the first-order error term, so the
        # chain converges at second order and the report flags the slope
        # as outside the expected first-order window
        assert report.convergence_order_estimate == pytest.approx(-2.0, abs=0.2)
        assert report.anomalous
        assert report.steps == 2000

    def test_schedule_recorded(self):
        gate = np.eye(1, dtype=complex)
        report = cross_validate(synthesize(gate).controller, gate, (10, 20, 40))
        assert report.schedule == (10, 20, 40)
        assert len(report.deviations) == 3


class TestGaugeInvariance:
    def test_constant_loop(self):
        ctrl = Controller(
            omega=np.array([[2j * np.pi]], dtype=complex),
            coupling=np.array([[0.0]], dtype=complex),
        )
        assert gauge_invariance_check(sample_loop(ctrl, 40), 3, seed=0) < 1e-12

    def test_hadamard_loop(self):
        ctrl = synthesize(HADAMARD).controller
        loop = sample_loop(ctrl, 200)
        assert gauge_invariance_check(loop, 5, seed=1) < 1e-12

    def test_half_turn_loop(self):
        ctrl = synthesize(HALF_TURN).controller
        loop = sample_loop(ctrl, 200)
        assert gauge_invariance_check(loop, 5, seed=2) < 1e-12


class TestOracleAgreementEnsemble:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_random_gates_converge_along_schedule(self, k):
        rng = np.random.default_rng(20 + k)
        floor = 1e-12
        for _ in range(6):
            gate = random_haar(rng, k)
            report = cross_validate(
                synthesize(gate).controller, gate, (500, 2000, 8000)
            )
            assert report.deviation < 2e-3
            above_floor = [d for d in report.deviations if d > floor]
            assert all(
                a > b for a, b in zip(above_floor, above_floor[1:])
            ), report.deviations


class TestReparametrizationInvariance:
    def test_time_warp_changes_little(self):
        rng = np.random.default_rng(10)
        gate = random_haar(rng, 2)
        ctrl = synthesize(gate).controller
        straight = numeric_holonomy(sample_loop(ctrl, 2000))
        warped = numeric_holonomy(_warped_loop(ctrl, 2000))
        assert np.linalg.norm(straight - warped) < 5e-3


class TestLengthOracle:
    def test_sampled_loop_length_matches_analytic(self):
        rng = np.random.default_rng(11)
        gate = random_haar(rng, 2)
        ctrl = synthesize(gate).controller
        loop = sample_loop(ctrl, 20000)
        got = loop_length_numeric(loop.projectors)
        assert abs(got - length_analytic(ctrl)) < 1e-6
