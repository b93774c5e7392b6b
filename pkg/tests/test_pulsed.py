import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqzsim import (
    PiecewiseSpectrum,
    PulsedWindow,
    Spectrum,
    clamp_to_shot_below,
    flat_window_variance,
    improvement_factor,
    pulsed_variance,
    pulsed_variance_with_error,
)

T_1US = PulsedWindow(duration=1e-6)

# 3 dB squeezed above a 50 kHz knee, shot-limited below
EXAMPLE = PiecewiseSpectrum(breakpoints=(50e3,), values=(1.0,), tail_value=10 ** (-3 / 10))

# frozen brute-force value for EXAMPLE at T = 1 us: piecewise-split trapezoid
# (1e7 points per segment up to 1e9 Hz) plus the exact flat-tail remainder
EXAMPLE_ORACLE = 2.754660138921e-07


def test_flat_closed_form_over_window_decades():
    for t in np.logspace(-8, -3, 11):
        w = PulsedWindow(duration=t)
        value = pulsed_variance(Spectrum.flat(1.0), w)
        assert abs(value - t / 2) <= 1e-9 * (t / 2)


def test_half_level_is_half_variance():
    v1 = pulsed_variance(Spectrum.flat(1.0), T_1US)
    v2 = pulsed_variance(Spectrum.flat(0.5), T_1US)
    assert v2 == pytest.approx(0.5 * v1, rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1e3))
def test_linearity_in_spectrum_scale(a):
    base = pulsed_variance(EXAMPLE, T_1US)
    scaled_spec = PiecewiseSpectrum(
        breakpoints=(50e3,), values=(a,), tail_value=a * 10 ** (-3 / 10)
    )
    assert pulsed_variance(scaled_spec, T_1US) == pytest.approx(a * base, rel=1e-9)


def test_monotone_in_spectrum():
    lo = PiecewiseSpectrum(breakpoints=(50e3,), values=(0.5,), tail_value=0.4)
    hi = PiecewiseSpectrum(breakpoints=(50e3,), values=(0.9,), tail_value=0.5)
    assert pulsed_variance(lo, T_1US) <= pulsed_variance(hi, T_1US)


def test_window_scaling_for_flat_spectra():
    durations = np.logspace(-8, -4, 5)
    values = [
        pulsed_variance(Spectrum.flat(1.0), PulsedWindow(duration=t))
        for t in durations
    ]
    ratios = np.diff(np.log10(values))
    np.testing.assert_allclose(ratios, 1.0, atol=1e-9)


def test_example_matches_brute_force_oracle():
    value, err = pulsed_variance_with_error(EXAMPLE, T_1US)
    assert abs(value - EXAMPLE_ORACLE) / EXAMPLE_ORACLE < 1e-5
    assert err < 1e-6 * value


def test_example_improvement_factor():
    factor = improvement_factor(EXAMPLE, T_1US)
    assert 1.6 <= factor <= 2.0
    assert factor == pytest.approx(1.8151, abs=2e-3)


def test_constant_spectrum_improvement_factors():
    assert improvement_factor(Spectrum.flat(1.0), T_1US) == pytest.approx(1.0, rel=1e-9)
    factor = improvement_factor(Spectrum.flat(10 ** (-3 / 10)), T_1US)
    assert factor == pytest.approx(10 ** (3 / 10), rel=1e-9)


def test_flat_window_variance_helper():
    assert flat_window_variance(1.0, T_1US) == 5e-7
    assert flat_window_variance(0.5, PulsedWindow(2e-6)) == 5e-7


def test_negative_and_unbounded_spectra_rejected():
    with pytest.raises(ValueError, match="negative"):
        pulsed_variance(Spectrum.flat(-0.1), T_1US)
    diverging = Spectrum(lambda f: np.where(f > 1e8, np.inf, 1.0))
    with pytest.raises(ValueError, match="unbounded"):
        pulsed_variance(diverging, T_1US)


def test_low_frequency_divergence_reported():
    # technical 1/f^2 noise makes the window variance ill-defined unless a
    # feedback clamp flattens it
    noisy = Spectrum(lambda f: 1.0 + (50e3 / np.asarray(f)) ** 2)
    with pytest.raises((ValueError, RuntimeError), match="clamp"):
        pulsed_variance(noisy, T_1US)
    clamped = clamp_to_shot_below(noisy, 50e3)
    assert pulsed_variance(clamped, T_1US) > 0


def test_clamp_only_acts_below_knee():
    spec = Spectrum(lambda f: np.full_like(np.asarray(f, dtype=float), 1.7))
    clamped = clamp_to_shot_below(spec, 1e5)
    assert clamped(5e4) == 1.0
    assert clamped(2e5) == 1.7


def test_window_validation():
    with pytest.raises(ValueError):
        PulsedWindow(duration=0.0)
    with pytest.raises(ValueError):
        PulsedWindow(duration=-1e-6)
