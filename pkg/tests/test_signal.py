import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kerrparity.metrology import model_fwhm
from kerrparity.signal import (
    DetectorModel,
    InterferometerSpec,
    LossModel,
    ParityModel,
    SignalTrace,
    even_odd_probabilities,
    parity_detector,
    parity_ideal,
    parity_joint,
    parity_linear_reference,
    parity_lossy,
    sample_trace,
    visibility,
)


def double_sum_parity(n_photons, phi, eta_a=1.0, eta_b=1.0, n_max=100, dps=40):
    """Literal two-index sum over (n, m), with no factorisation."""
    with mpmath.workdps(dps):
        N, phi = mpmath.mpf(n_photons), mpmath.mpf(phi)
        amp = mpmath.sqrt(mpmath.mpf(eta_a) * eta_b) * N / 2
        a = [amp**n / mpmath.factorial(n) * mpmath.expj(n * n * phi) for n in range(n_max + 1)]
        b = [amp**m / mpmath.factorial(m) * mpmath.expj(-m * m * phi) for m in range(n_max + 1)]
        total = mpmath.fsum(x * y for x in a for y in b)
        return float(mpmath.re(mpmath.exp(-N * (mpmath.mpf(eta_a) + eta_b) / 2) * total))


K2_10 = InterferometerSpec(10.0, 2)


class TestTypes:
    def test_spec_validation(self):
        with pytest.raises(ValueError):
            InterferometerSpec(-1.0)
        with pytest.raises(ValueError):
            InterferometerSpec(math.inf)
        with pytest.raises(ValueError):
            InterferometerSpec(1.0, 3)

    def test_loss_validation_and_convention(self):
        loss = LossModel(0.7, 0.4)
        assert loss.loss_a == pytest.approx(0.3)
        assert loss.loss_b == pytest.approx(0.6)
        assert LossModel.from_losses(0.3, 0.6) == LossModel(0.7, 0.4)
        with pytest.raises(ValueError):
            LossModel(1.1, 0.5)
        with pytest.raises(ValueError):
            LossModel(0.5, -0.1)

    def test_detector_effective_rate(self):
        det = DetectorModel(0.005)
        assert det.effective_rate == pytest.approx(0.05)
        assert DetectorModel.from_effective_rate(0.05).dark_count_rate == pytest.approx(0.005)
        with pytest.raises(ValueError):
            DetectorModel(0.5)  # d = 5
        with pytest.raises(ValueError):
            DetectorModel(-1e-3)


class TestIdeal:
    @pytest.mark.parametrize("n", [0.0, 0.3, 1.0, 2.0, 5.0, 10.0, 20.0, 30.0])
    def test_unit_peak(self, n):
        assert parity_ideal(InterferometerSpec(n, 2), 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_linear_at_pi(self):
        assert parity_ideal(InterferometerSpec(10.0, 1), math.pi) == pytest.approx(math.exp(-20), rel=1e-6, abs=1e-15)

    @pytest.mark.parametrize("phi", [0.05, 0.2, 1.3])
    def test_against_literal_double_sum(self, phi):
        assert parity_ideal(K2_10, phi) == pytest.approx(double_sum_parity(10, phi), abs=1e-10)

    def test_vectorised_matches_pointwise(self):
        phases = np.array([-0.4, 0.0, 0.1, 2.5])
        batch = parity_ideal(K2_10, phases)
        assert isinstance(batch, np.ndarray)
        assert batch.tolist() == [parity_ideal(K2_10, float(p)) for p in phases]

    @settings(max_examples=50, deadline=None)
    @given(st.floats(0, 20), st.floats(-6, 6))
    def test_even_in_phase(self, n, phi):
        spec = InterferometerSpec(n, 2)
        assert parity_ideal(spec, phi) == pytest.approx(parity_ideal(spec, -phi), abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(0, 20), st.floats(-3, 3))
    def test_two_pi_periodic(self, n, phi):
        spec = InterferometerSpec(n, 2)
        assert parity_ideal(spec, phi) == pytest.approx(parity_ideal(spec, phi + 2 * math.pi), abs=1e-10)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(0, 25), st.floats(-4, 4))
    def test_range(self, n, phi):
        v = parity_ideal(InterferometerSpec(n, 2), phi)
        assert 0.0 <= v <= 1.0


class TestLinearReference:
    def test_values(self):
        assert parity_linear_reference(10.0, 0.0) == 1.0
        assert parity_linear_reference(10.0, math.pi / 2) == pytest.approx(4.539992976248485e-05, rel=1e-12)

    def test_agrees_with_series(self):
        rng = np.random.default_rng(3)
        for n, phi in zip(rng.uniform(0, 20, 200), rng.uniform(-math.pi, math.pi, 200)):
            assert parity_ideal(InterferometerSpec(n, 1), phi) == pytest.approx(
                parity_linear_reference(n, phi), abs=1e-10
            )

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            parity_linear_reference(-1.0, 0.0)


class TestLossy:
    @pytest.mark.parametrize("eta", [0.2, 0.6, 0.95])
    def test_equal_loss_unit_peak(self, eta):
        assert parity_lossy(K2_10, LossModel(eta, eta), 0.0) == pytest.approx(1.0, abs=1e-10)

    def test_lossless_limit(self):
        phases = np.linspace(-1, 1, 41)
        np.testing.assert_allclose(parity_lossy(K2_10, LossModel(1, 1), phases), parity_ideal(K2_10, phases), atol=1e-15)

    def test_unequal_peak(self):
        assert parity_lossy(K2_10, LossModel(1.0, 0.6), 0.0) == pytest.approx(
            math.exp(-10 * (1 - math.sqrt(0.6)) ** 2 / 2), abs=1e-10
        )
        assert parity_lossy(K2_10, LossModel(1.0, 0.6), 0.0) == pytest.approx(0.77567, abs=5e-6)

    @pytest.mark.parametrize("phi", [0.03, 0.4])
    def test_against_literal_double_sum(self, phi):
        got = parity_lossy(K2_10, LossModel(0.8, 0.55), phi)
        assert got == pytest.approx(double_sum_parity(10, phi, 0.8, 0.55), abs=1e-10)

    def test_linear_order_rejected(self):
        with pytest.raises(ValueError):
            parity_lossy(InterferometerSpec(10.0, 1), LossModel(0.9, 0.9), 0.1)


class TestDetector:
    def test_perfect_detector(self):
        assert parity_detector(0.37, DetectorModel(0.0)) == 0.37

    def test_damping(self):
        assert parity_detector(1.0, DetectorModel.from_effective_rate(0.05)) == pytest.approx(0.9048374180359595)

    def test_zero_fixed_point(self):
        assert parity_detector(0.0, DetectorModel.from_effective_rate(0.9)) == 0.0

    def test_range_check(self):
        with pytest.raises(ValueError):
            parity_detector(1.5, DetectorModel(0.0))

    def test_linear_in_signal(self):
        det = DetectorModel.from_effective_rate(0.02)
        assert parity_detector(0.6, det) == pytest.approx(3 * parity_detector(0.2, det), rel=1e-15)


class TestJoint:
    def test_noiseless_limit(self):
        got = parity_joint(K2_10, LossModel(1, 1), DetectorModel(0.0), 0.07)
        assert got == pytest.approx(parity_ideal(K2_10, 0.07), abs=1e-15)

    def test_equal_loss_peak(self):
        det = DetectorModel.from_effective_rate(0.03)
        assert parity_joint(K2_10, LossModel(0.7, 0.7), det, 0.0) == pytest.approx(math.exp(-0.06), abs=1e-12)

    def test_factorises(self):
        loss, det = LossModel(0.8, 0.8), DetectorModel.from_effective_rate(0.01)
        assert parity_joint(K2_10, loss, det, 0.05) == pytest.approx(
            math.exp(-0.02) * parity_lossy(K2_10, loss, 0.05), rel=1e-14
        )


class TestProbabilities:
    @pytest.mark.parametrize(
        "v,expected", [(1.0, (1.0, 0.0)), (0.0, (0.5, 0.5)), (math.exp(-0.1), (0.952419, 0.047581))]
    )
    def test_values(self, v, expected):
        p_e, p_o = even_odd_probabilities(v)
        assert p_e == pytest.approx(expected[0], abs=5e-7)
        assert p_o == pytest.approx(expected[1], abs=5e-7)
        assert p_e + p_o == 1.0

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            even_odd_probabilities(1.01)


class TestTraceAndVisibility:
    def test_visibility_examples(self):
        assert visibility([1.0, 0.0, 0.3]) == 1.0
        assert visibility([0.9, 0.9]) == 0.0
        with pytest.raises(ValueError):
            visibility([0.0, 0.0])
        with pytest.raises(ValueError):
            visibility([])

    def test_full_visibility_n10(self):
        trace = sample_trace(K2_10, np.linspace(0, 2 * np.pi, 4096, endpoint=False))
        assert visibility(trace) >= 0.999

    def test_single_point(self):
        trace = sample_trace(K2_10, [0.0])
        assert trace.values == pytest.approx((1.0,), abs=1e-12)

    def test_batch_is_pointwise(self):
        grid = [-0.3, 0.01, 0.2]
        trace = sample_trace(K2_10, grid)
        assert list(trace.values) == [parity_ideal(K2_10, p) for p in grid]
        assert trace.truncation_used == ParityModel(K2_10).n_max

    def test_grid_must_increase(self):
        with pytest.raises(ValueError):
            sample_trace(K2_10, [0.0, 0.0])
        with pytest.raises(ValueError):
            SignalTrace((0.1, 0.0), (1.0, 1.0), K2_10)

    def test_to_dict(self):
        d = sample_trace(K2_10, [0.0, 0.1], LossModel(0.9, 0.9)).to_dict()
        assert set(d) == {"spec", "noise", "truncation_used", "points"}
        assert d["noise"]["loss"] == {"transmissivity_a": 0.9, "transmissivity_b": 0.9}
        assert d["points"][0]["phase"] == 0.0

    def test_side_peaks_grow_with_n(self):
        """Main peak at 0; lower side peaks around it, more of them for larger N."""
        phases = np.linspace(-1, 1, 4001)
        counts = {}
        for n in (2, 5, 10):
            values = parity_ideal(InterferometerSpec(n, 2), phases)
            assert phases[int(np.argmax(values))] == pytest.approx(0.0, abs=1e-12)
            inner = values[1:-1]
            peaks = (inner > values[:-2]) & (inner > values[2:])
            side = inner[peaks & (np.abs(phases[1:-1]) > 1e-9)]
            assert np.all(side < 1.0 - 1e-6)
            counts[n] = side.size
        assert counts[2] < counts[5] < counts[10]


class TestSignalProperties:
    def test_detector_keeps_fwhm(self):
        base = model_fwhm(K2_10).fwhm
        for d in (0.001, 0.05, 0.3):
            degraded = model_fwhm(K2_10, detector=DetectorModel.from_effective_rate(d)).fwhm
            assert degraded == pytest.approx(base, abs=1e-9)

    def test_equal_loss_minimises_fwhm(self):
        widths = {}
        for la in np.linspace(0, 0.4, 9):
            widths[round(la, 3)] = model_fwhm(K2_10, LossModel.from_losses(la, 0.4 - la)).fwhm
        best = min(widths, key=widths.get)
        assert best == pytest.approx(0.2, abs=0.05 + 1e-12)

    @pytest.mark.parametrize("la,lb", [(0.0, 0.4), (0.3, 0.1), (0.6, 0.6)])
    def test_lossy_range(self, la, lb):
        v = parity_lossy(K2_10, LossModel.from_losses(la, lb), np.linspace(-2, 2, 801))
        assert np.all((v >= 0) & (v <= 1))
