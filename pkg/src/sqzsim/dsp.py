"""Time-series synthesis, Welch estimation and swept-analyzer emulation.

Conventions, fixed so golden outputs stay stable:

* One-sided PSDs everywhere; for a series of variance V the PSD integrates
  to V over [0, fs/2]. Unit-variance white noise is flat at 2/fs.
* A shot-normalized spectrum value of 1.0 synthesizes to samples of unit
  variance (SHOT_NOISE_VARIANCE below).
* Welch: Hann window, 50% overlap, no detrending.
* Analyzer emulation: Gaussian resolution-bandwidth kernel (FWHM = rbw),
  video bandwidth modeled as post-detection power averaging over
  n_avg = max(1, round(rbw / (2 vbw))) looks (RMS detector).

Every stochastic routine takes an explicit integer seed and is reproducible
bit for bit from (inputs, seed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import signal

from .spectra import Spectrum, TabulatedSpectrum

__all__ = [
    "SHOT_NOISE_VARIANCE",
    "TimeSeries",
    "Trace",
    "SweepConfig",
    "synthesize",
    "welch_psd",
    "rbw_convolve",
    "emulate_sweep",
    "normalize_to_shot",
]

# sample variance produced by a flat spectrum of value 1.0
SHOT_NOISE_VARIANCE = 1.0

# fixed kernel discretization for the RBW convolution: +-4 sigma, 257 points
_KERNEL_HALF_WIDTH_SIGMAS = 4.0
_KERNEL_POINTS = 257

# FWHM of a Gaussian in units of its sigma
_FWHM = 2.0 * np.sqrt(2.0 * np.log(2.0))


@dataclass(frozen=True)
class TimeSeries:
    """Sampled photocurrent record in shot-noise-normalized units."""

    sample_rate: float
    samples: np.ndarray
    seed: int

    def __post_init__(self):
        if not self.sample_rate > 0:
            raise ValueError("sample_rate must be positive")
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a non-empty 1-d array")
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return self.samples.size


@dataclass(frozen=True)
class Trace:
    """Analyzer-style trace: dB values on an ascending frequency grid."""

    freqs: np.ndarray
    values_db: np.ndarray
    rbw: float
    vbw: float

    def __post_init__(self):
        freqs = np.asarray(self.freqs, dtype=np.float64)
        values = np.asarray(self.values_db, dtype=np.float64)
        if freqs.ndim != 1 or freqs.shape != values.shape:
            raise ValueError("freqs and values_db must be 1-d arrays of equal length")
        if np.any(np.diff(freqs) <= 0):
            raise ValueError("freqs must be strictly ascending")
        if not (self.rbw >= self.vbw > 0):
            raise ValueError("need rbw >= vbw > 0")
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "values_db", values)


@dataclass(frozen=True)
class SweepConfig:
    """Swept-measurement settings; defaults match the broadband trace
    (300 kHz to 10 MHz at RBW 100 kHz / VBW 300 Hz)."""

    start: float = 300e3
    stop: float = 10e6
    n_points: int = 512
    rbw: float = 100e3
    vbw: float = 300.0

    def __post_init__(self):
        if not 0 < self.start < self.stop:
            raise ValueError("need 0 < start < stop")
        if self.n_points < 2:
            raise ValueError("n_points must be at least 2")
        if not (self.rbw >= self.vbw > 0):
            raise ValueError("need rbw >= vbw > 0")

    @property
    def freqs(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.n_points)


def synthesize(spectrum, sample_rate: float, n_samples: int, seed: int) -> TimeSeries:
    """Stationary Gaussian series with a prescribed one-sided spectrum.

    Independent complex Gaussian Fourier bins are scaled by the square root
    of the target spectrum, Hermitian-symmetrized and inverse-transformed.
    The DC bin carries no power (the series is mean-free), so the spectrum
    is never evaluated at f = 0. A flat spectrum of value 1.0 yields sample
    variance SHOT_NOISE_VARIANCE.
    """
    if not sample_rate > 0:
        raise ValueError("sample_rate must be positive")
    n_samples = int(n_samples)
    if n_samples < 2 or n_samples & (n_samples - 1):
        raise ValueError(f"n_samples must be a power of two >= 2, got {n_samples}")

    freqs = np.fft.rfftfreq(n_samples, d=1.0 / sample_rate)
    target = np.asarray(spectrum(freqs[1:]), dtype=float)
    if np.any(~np.isfinite(target)):
        raise ValueError("spectrum must be finite on (0, sample_rate/2]")
    if np.any(target < 0):
        f_bad = float(freqs[1:][target < 0][0])
        raise ValueError(f"spectrum is negative at {f_bad:.6g} Hz")

    rng = np.random.default_rng(seed)
    n_interior = n_samples // 2 - 1
    re = rng.standard_normal(n_interior)
    im = rng.standard_normal(n_interior)
    nyq = rng.standard_normal(1)

    amps = np.sqrt(n_samples * target)
    bins = np.empty(n_samples // 2 + 1, dtype=complex)
    bins[0] = 0.0
    bins[1:-1] = amps[:-1] * (re + 1j * im) / np.sqrt(2.0)
    bins[-1] = amps[-1] * nyq[0]
    samples = np.fft.irfft(bins, n_samples)
    return TimeSeries(sample_rate=sample_rate, samples=samples, seed=int(seed))


def _welch_nperseg(sample_rate: float, rbw: float) -> int:
    """Smallest power of two whose bin spacing is at most rbw / 2."""
    return 1 << int(np.ceil(np.log2(2.0 * sample_rate / rbw)))


def welch_psd(ts: TimeSeries, rbw: float) -> TabulatedSpectrum:
    """Averaged periodogram of a series, tabulated as a one-sided PSD in 1/Hz.

    Segment length is the power of two giving bin spacing <= rbw/2; Hann
    window, 50% overlap, no detrending, density normalization (the PSD
    integrates to the sample variance over [0, fs/2]).
    """
    if not rbw > 0:
        raise ValueError("rbw must be positive")
    nperseg = _welch_nperseg(ts.sample_rate, rbw)
    n_min = int(np.ceil(1.5 * nperseg))
    if len(ts) < n_min:
        raise ValueError(
            f"record of {len(ts)} samples is too short for rbw={rbw:.6g} Hz: "
            f"need at least {n_min} samples (two 50%-overlapped segments of {nperseg})"
        )
    freqs, psd = signal.welch(
        ts.samples,
        fs=ts.sample_rate,
        window="hann",
        nperseg=nperseg,
        noverlap=nperseg // 2,
        detrend=False,
        scaling="density",
        return_onesided=True,
    )
    return TabulatedSpectrum(freqs, psd, label=f"welch rbw={rbw:.6g}")


def rbw_convolve(spectrum, freqs, rbw: float) -> np.ndarray:
    """Convolve a spectrum with the Gaussian resolution kernel (FWHM = rbw).

    The kernel is discretized on a fixed +-4 sigma grid; offsets that fall
    at or below zero frequency are dropped and the weights renormalized.
    """
    freqs = np.atleast_1d(np.asarray(freqs, dtype=float))
    sigma = rbw / _FWHM
    offsets = np.linspace(
        -_KERNEL_HALF_WIDTH_SIGMAS * sigma,
        _KERNEL_HALF_WIDTH_SIGMAS * sigma,
        _KERNEL_POINTS,
    )
    weights = np.exp(-0.5 * (offsets / sigma) ** 2)
    grid = freqs[:, None] + offsets[None, :]
    valid = grid > 0.0
    values = np.zeros_like(grid)
    values[valid] = np.asarray(spectrum(grid[valid]), dtype=float)
    w = np.where(valid, weights[None, :], 0.0)
    return (values * w).sum(axis=1) / w.sum(axis=1)


def emulate_sweep(spectrum, cfg: SweepConfig, seed: int) -> Trace:
    """Swept spectrum-analyzer trace of a shot-normalized spectrum, in dB.

    At each grid frequency the RBW-convolved target is jittered with the
    estimator statistics of an RMS detector averaging n_avg looks: a gamma
    draw with mean equal to the target and relative variance 1/n_avg.
    """
    target = rbw_convolve(spectrum, cfg.freqs, cfg.rbw)
    if np.any(target <= 0):
        f_bad = float(cfg.freqs[target <= 0][0])
        raise ValueError(f"convolved spectrum is not positive at {f_bad:.6g} Hz")
    n_avg = max(1, round(cfg.rbw / (2.0 * cfg.vbw)))
    rng = np.random.default_rng(seed)
    drawn = rng.gamma(shape=float(n_avg), scale=target / n_avg)
    return Trace(
        freqs=cfg.freqs,
        values_db=10.0 * np.log10(drawn),
        rbw=cfg.rbw,
        vbw=cfg.vbw,
    )


def normalize_to_shot(trace: Trace, shot: Trace) -> Trace:
    """Pointwise dB subtraction of a shot-reference trace."""
    if trace.freqs.shape != shot.freqs.shape or not np.array_equal(
        trace.freqs, shot.freqs
    ):
        raise ValueError("trace and shot reference have different frequency grids")
    return Trace(
        freqs=trace.freqs,
        values_db=trace.values_db - shot.values_db,
        rbw=trace.rbw,
        vbw=trace.vbw,
    )
