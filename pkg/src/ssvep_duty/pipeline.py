"""Band-pass -> 1 s epochs -> FFT magnitude -> per-epoch maximum amplitude.

Conventions (fixed, shared with the simulator's calibration):

* 4th-order Butterworth band-pass of 2 Hz width centred on the stimulus
  frequency, run forward and backward (zero phase). Gustafsson's initial
  conditions are used so the first and last epochs of a trial carry no
  start-up transient.
* Rectangular window, unnormalized forward DFT; a bin-aligned sinusoid of
  amplitude ``A`` in an ``N``-sample epoch peaks at ``A * N / 2``.
* The maximum is taken over every bin except DC and Nyquist.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import signal

from .edf import SampleSeries

log = logging.getLogger(__name__)

DEFAULT_BANDWIDTH_HZ = 2.0
DEFAULT_ORDER = 4
EPOCH_S = 1.0
#: Shortest series the forward-backward filter accepts.
MIN_FILTER_SECONDS = 3.0


@dataclass(frozen=True)
class FilterSpec:
    center_hz: float
    bandwidth_hz: float = DEFAULT_BANDWIDTH_HZ
    order: int = DEFAULT_ORDER
    zero_phase: bool = True

    @property
    def band(self) -> tuple[float, float]:
        half = self.bandwidth_hz / 2
        return self.center_hz - half, self.center_hz + half

    def check(self, sample_rate_hz: float) -> None:
        lo, hi = self.band
        if self.bandwidth_hz <= 0 or lo <= 0 or hi >= sample_rate_hz / 2:
            raise ValueError(
                f"band {lo:g}-{hi:g} Hz must lie inside (0, {sample_rate_hz / 2:g}) Hz"
            )
        if self.order < 1:
            raise ValueError("filter order must be >= 1")


@dataclass(frozen=True, eq=False)
class Epoch:
    samples: np.ndarray
    origin: tuple[int, int]
    sample_rate_hz: float = 128.0


@dataclass(frozen=True, eq=False)
class AmplitudeSet:
    condition: tuple
    amplitudes: np.ndarray
    peak_hz: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.amplitudes)


def design_bandpass(spec: FilterSpec, sample_rate_hz: float):
    spec.check(sample_rate_hz)
    return signal.butter(spec.order, spec.band, btype="bandpass", fs=sample_rate_hz)


def bandpass(series: SampleSeries, spec: FilterSpec) -> SampleSeries:
    fs = series.sample_rate_hz
    b, a = design_bandpass(spec, fs)
    if series.duration_s < MIN_FILTER_SECONDS:
        raise ValueError(
            f"series of {series.duration_s:g} s is shorter than the "
            f"{MIN_FILTER_SECONDS:g} s filter warm-up"
        )
    if spec.zero_phase:
        out = signal.filtfilt(b, a, series.values, method="gust")
    else:
        out = signal.lfilter(b, a, series.values)
    return SampleSeries(out, fs, series.label)


def segment(series: SampleSeries, epoch_s: float = EPOCH_S,
            trial_index: int = 0) -> list[Epoch]:
    """Split into contiguous, non-overlapping epochs; a short tail is dropped."""
    size = int(round(epoch_s * series.sample_rate_hz))
    n = len(series) // size
    if n == 0:
        raise ValueError(f"series of {len(series)} samples is shorter than one epoch ({size})")
    leftover = len(series) - n * size
    if leftover:
        log.warning("dropping %d trailing samples (less than one epoch)", leftover)
    blocks = series.values[: n * size].reshape(n, size)
    return [Epoch(blocks[i].copy(), (trial_index, i), series.sample_rate_hz) for i in range(n)]


def amplitude_spectrum(samples: np.ndarray) -> np.ndarray:
    """|X[k]| for k = 0..N/2 of the unnormalized, rectangular-window DFT."""
    return np.abs(np.fft.rfft(samples, axis=-1))


def _max_over_bins(spectra: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    # bins 1 .. ceil(n/2)-1: DC and (for even n) Nyquist excluded
    top = (n + 1) // 2
    search = spectra[..., 1:top]
    k = np.argmax(search, axis=-1)
    amp = np.take_along_axis(search, k[..., None], axis=-1)[..., 0]
    return k + 1, amp


def fft_max_amplitude(epoch: Epoch) -> tuple[float, float]:
    """Return ``(peak frequency in Hz, maximal FFT magnitude)`` of one epoch."""
    x = np.asarray(epoch.samples, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("epoch contains non-finite samples")
    n = len(x)
    if n < 3:
        raise ValueError("epoch too short for a non-DC spectrum")
    k, amp = _max_over_bins(amplitude_spectrum(x), n)
    return float(k * epoch.sample_rate_hz / n), float(amp)


def epoch_amplitudes(series: SampleSeries, epoch_s: float = EPOCH_S) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``fft_max_amplitude`` over every epoch of a series."""
    epochs = segment(series, epoch_s)
    block = np.stack([e.samples for e in epochs])
    n = block.shape[1]
    k, amp = _max_over_bins(amplitude_spectrum(block), n)
    return k * series.sample_rate_hz / n, amp


def process_trial(series: SampleSeries, stimulus_freq: float,
                  filter_spec: FilterSpec | None = None) -> tuple[np.ndarray, np.ndarray]:
    spec = filter_spec or FilterSpec(center_hz=stimulus_freq)
    return epoch_amplitudes(bandpass(series, spec))


def process_condition(trials: Sequence[SampleSeries], stimulus_freq: float,
                      condition: tuple = (),
                      filter_spec: FilterSpec | None = None) -> AmplitudeSet:
    """Amplitudes of every epoch of every trial, ordered (trial, segment)."""
    if not trials:
        raise ValueError("no trials given")
    peaks, amps = [], []
    for trial in trials:
        p, a = process_trial(trial, stimulus_freq, filter_spec)
        peaks.append(p)
        amps.append(a)
    return AmplitudeSet(condition=tuple(condition) or (None, stimulus_freq, None),
                        amplitudes=np.concatenate(amps), peak_hz=np.concatenate(peaks))
