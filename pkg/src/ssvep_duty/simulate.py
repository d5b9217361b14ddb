"""Synthetic single-channel SSVEP recordings with a planted duty-cycle effect.

Each trial is a sinusoid at the stimulus frequency (plus an optional second
harmonic) in a pink/white noise background. The fundamental amplitude is
``target / 64``, so the analysis pipeline recovers ``target`` as the maximal
FFT magnitude of a noiseless 128-sample epoch.

``noise_sd`` is given in the same FFT-amplitude units as the targets: the
time-domain noise has standard deviation ``noise_sd / sqrt(64)``, which
perturbs each real/imaginary FFT bin component of a white-noise epoch by
``noise_sd``. The default of 8 gives per-condition amplitude spreads of the
size seen in real recordings (SD of a few units on targets of ~500).

Random streams are keyed, not sequential: every trial draws from
``SeedSequence(seed, spawn_key=(subject, mHz, milli-duty, trial))``, so the
output of a trial does not depend on which other trials are generated or in
what order.
"""

from __future__ import annotations

import csv
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from . import reference
from .edf import SampleSeries, recording_from_series, write_edf_file

FS_HZ = 128
TRIAL_S = 30
EPOCH_SAMPLES = 128
#: Pipeline gain for a bin-aligned tone: |X[k]| = amplitude * N / 2.
FFT_GAIN = EPOCH_SAMPLES / 2

EMOTIV_CHANNELS = ("AF3", "F7", "F3", "FC5", "T7", "P7", "O1",
                   "O2", "P8", "T8", "FC6", "F4", "F8", "AF4")

FILENAME_RE = re.compile(
    r"S(?P<subject>\d+)_f(?P<freq>[0-9.]+)_d(?P<duty>[0-9.]+)_t(?P<trial>\d+)\.edf$"
)


class Condition(NamedTuple):
    frequency_hz: float
    duty_pct: float
    subject_id: int = 1
    trial_index: int = 1


@dataclass(frozen=True)
class ResponseModel:
    """Target maximal-FFT amplitude per (frequency, duty) cell."""

    amplitude_table: Mapping[tuple[float, float], float]

    def __post_init__(self):
        table = {(float(f), float(d)): float(a) for (f, d), a in self.amplitude_table.items()}
        if not table:
            raise ValueError("empty amplitude table")
        bad = [k for k, a in table.items() if not a > 0]
        if bad:
            raise ValueError(f"amplitudes must be positive: {bad}")
        object.__setattr__(self, "amplitude_table", table)

    @classmethod
    def default(cls) -> "ResponseModel":
        """Across-subject mean of the published averages for every cell."""
        return cls.from_reference(None)

    @classmethod
    def from_reference(cls, subject: int | None = None) -> "ResponseModel":
        subjects = reference.SUBJECTS if subject is None else (subject,)
        table = {}
        for f in reference.FREQUENCIES_HZ:
            for j, d in enumerate(reference.DUTIES_PCT):
                vals = [reference.PUBLISHED[(s, f)][j][1] for s in subjects]
                table[(f, d)] = float(np.mean(vals))
        return cls(table)

    @classmethod
    def from_csv(cls, path: str | os.PathLike) -> "ResponseModel":
        with open(path, newline="") as f:
            rows = list(csv.DictReader(f))
        return cls({(float(r["frequency_hz"]), float(r["duty_pct"])): float(r["amplitude"])
                    for r in rows})

    def to_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["frequency_hz", "duty_pct", "amplitude"])
            for (fr, d), a in sorted(self.amplitude_table.items()):
                w.writerow([f"{fr:g}", f"{d:g}", repr(a)])

    def amplitude(self, frequency_hz: float, duty_pct: float) -> float:
        try:
            return self.amplitude_table[(float(frequency_hz), float(duty_pct))]
        except KeyError:
            raise KeyError(f"no response for {frequency_hz:g} Hz / {duty_pct:g}%") from None

    def scaled(self, factor: float) -> "ResponseModel":
        return ResponseModel({k: a * factor for k, a in self.amplitude_table.items()})

    @property
    def frequencies(self) -> list[float]:
        return sorted({f for f, _ in self.amplitude_table})

    def duties(self, frequency_hz: float) -> list[float]:
        return sorted(d for f, d in self.amplitude_table if f == float(frequency_hz))

    def peak_duty(self, frequency_hz: float) -> float:
        return max(self.duties(frequency_hz), key=lambda d: self.amplitude(frequency_hz, d))


@dataclass(frozen=True)
class SimConfig:
    noise_sd: float = 8.0
    pink_fraction: float = 0.5
    harmonic_fraction: float = 0.2
    seed: int = 0
    fs_hz: int = FS_HZ
    trial_s: int = TRIAL_S

    def __post_init__(self):
        if self.noise_sd < 0:
            raise ValueError("noise_sd must be >= 0")
        if not 0 <= self.pink_fraction <= 1:
            raise ValueError("pink_fraction must lie in [0, 1]")
        if not 0 <= self.harmonic_fraction < 1:
            raise ValueError("harmonic_fraction must lie in [0, 1)")
        if self.fs_hz <= 0 or self.trial_s <= 0:
            raise ValueError("fs_hz and trial_s must be positive")

    @property
    def n_samples(self) -> int:
        return int(self.fs_hz * self.trial_s)

    @property
    def time_noise_sd(self) -> float:
        return self.noise_sd / np.sqrt(FFT_GAIN)


@dataclass(frozen=True)
class TrialSignal:
    series: SampleSeries
    condition: Condition


def gen_pink_noise(n: int, seed: int) -> np.ndarray:
    """Zero-mean, unit-variance noise with a 1/f power spectrum."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return np.zeros(1)
    rng = np.random.default_rng(seed)
    spectrum = np.fft.rfft(rng.standard_normal(n))
    k = np.arange(len(spectrum), dtype=float)
    k[0] = 1.0
    spectrum /= np.sqrt(k)
    spectrum[0] = 0.0
    x = np.fft.irfft(spectrum, n)
    x -= x.mean()
    sd = x.std()
    return x / sd if sd > 0 else x


def trial_rng(condition: Condition, seed: int) -> np.random.Generator:
    key = (int(condition.subject_id),
           int(round(condition.frequency_hz * 1000)),
           int(round(condition.duty_pct * 1000)),
           int(condition.trial_index))
    if min(key) < 0:
        raise ValueError(f"condition fields must be non-negative: {condition}")
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def synth_trial(condition: Condition, model: ResponseModel, config: SimConfig) -> TrialSignal:
    condition = Condition(*condition)
    target = model.amplitude(condition.frequency_hz, condition.duty_pct)
    a = target / FFT_GAIN
    rng = trial_rng(condition, config.seed)
    phase, phase2 = rng.uniform(0, 2 * np.pi, size=2)
    pink_seed = int(rng.integers(2 ** 63))
    n = config.n_samples
    t = np.arange(n) / config.fs_hz
    w = 2 * np.pi * condition.frequency_hz

    x = a * np.sin(w * t + phase)
    if config.harmonic_fraction:
        x += config.harmonic_fraction * a * np.sin(2 * w * t + phase2)
    if config.noise_sd:
        white = rng.standard_normal(n)
        pink = gen_pink_noise(n, pink_seed)
        mix = np.sqrt(config.pink_fraction) * pink + np.sqrt(1 - config.pink_fraction) * white
        x += config.time_noise_sd * mix
    return TrialSignal(SampleSeries(x, config.fs_hz, "O2"), condition)


def trial_filename(condition: Condition) -> str:
    c = Condition(*condition)
    return f"S{c.subject_id}_f{c.frequency_hz:g}_d{c.duty_pct:g}_t{c.trial_index}.edf"


def parse_trial_filename(name: str) -> Condition | None:
    m = FILENAME_RE.search(os.path.basename(str(name)))
    if not m:
        return None
    return Condition(float(m["freq"]), float(m["duty"]), int(m["subject"]), int(m["trial"]))


def trial_recording(trial: TrialSignal, config: SimConfig,
                    channels: Sequence[str] = ("O2",)):
    """EDF recording of one trial; channels other than O2 carry noise only."""
    c = trial.condition
    series = []
    for label in channels:
        if label == "O2":
            series.append(trial.series)
        else:
            ch_idx = EMOTIV_CHANNELS.index(label) if label in EMOTIV_CHANNELS else len(label)
            rng = np.random.default_rng(np.random.SeedSequence(
                config.seed, spawn_key=(c.subject_id, int(round(c.frequency_hz * 1000)),
                                        int(round(c.duty_pct * 1000)), c.trial_index,
                                        1000 + ch_idx)))
            series.append(SampleSeries(config.time_noise_sd * rng.standard_normal(config.n_samples),
                                       config.fs_hz, label))
    return recording_from_series(
        series,
        record_duration_s=1.0,
        physical_dimension="units",
        patient_id=f"S{c.subject_id}",
        recording_id=f"f={c.frequency_hz:g}Hz duty={c.duty_pct:g}% trial={c.trial_index}",
    )


def synth_session(subject_ids: Iterable[int], model: ResponseModel, config: SimConfig,
                  plan, out_dir: str | os.PathLike,
                  channels: Sequence[str] = ("O2",)) -> list[Path]:
    """Write one EDF file per planned trial and subject.

    Files are named ``S<subject>_f<freq>_d<duty>_t<trial>.edf`` with 1-based
    trial numbers. Returns the paths in (subject, plan order).
    """
    if "O2" not in channels:
        raise ValueError("channels must include O2")
    for freq, duty, _ in plan.schedule:
        model.amplitude(freq, duty)   # raises on plan/model mismatch
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for subject in subject_ids:
        for freq, duty, trial in plan.schedule:
            cond = Condition(float(freq), float(duty), int(subject), int(trial))
            rec = trial_recording(synth_trial(cond, model, config), config, channels)
            path = out / trial_filename(cond)
            write_edf_file(rec, path)
            paths.append(path)
    return paths
