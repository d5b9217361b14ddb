"""Tick-quantized PWM flicker schedules.

A stimulus is described by its flicker frequency and duty cycle. The
schedule realizes it on a fixed-rate timer: every cycle is rounded to the
nearest tick independently (no error diffusion), as a fixed-reload hardware
timer would do, so all cycles are identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterator

import numpy as np

DEFAULT_TICK_RATE_HZ = 1_000_000

#: Accuracy bounds the generated flicker must honour.
FREQ_TOLERANCE_HZ = 0.1
DUTY_TOLERANCE_PP = 0.1

#: Minimum ratio of timer rate to flicker frequency.
MIN_TICKS_PER_CYCLE = 10_000


class Level(IntEnum):
    OFF = 0
    ON = 1


@dataclass(frozen=True)
class StimulusSpec:
    frequency_hz: float
    duty_pct: float
    tick_rate_hz: int = DEFAULT_TICK_RATE_HZ
    duration_s: float = 30.0

    def __post_init__(self):
        if not (self.frequency_hz > 0 and math.isfinite(self.frequency_hz)):
            raise ValueError(f"frequency_hz must be positive, got {self.frequency_hz}")
        if not 0 < self.duty_pct < 100:
            raise ValueError(f"duty_pct must lie in (0, 100), got {self.duty_pct}")
        if not (self.duration_s > 0 and math.isfinite(self.duration_s)):
            raise ValueError(f"duration_s must be positive, got {self.duration_s}")
        if int(self.tick_rate_hz) != self.tick_rate_hz or self.tick_rate_hz <= 0:
            raise ValueError(f"tick_rate_hz must be a positive integer, got {self.tick_rate_hz}")
        if self.tick_rate_hz < MIN_TICKS_PER_CYCLE * self.frequency_hz:
            raise ValueError(
                f"tick_rate_hz={self.tick_rate_hz} is too coarse for {self.frequency_hz} Hz "
                f"(need >= {MIN_TICKS_PER_CYCLE} ticks per cycle)"
            )

    @property
    def period_s(self) -> float:
        return 1.0 / self.frequency_hz


@dataclass(frozen=True)
class OnOffPeriods:
    t_on_s: float
    t_off_s: float

    @property
    def period_s(self) -> float:
        return self.t_on_s + self.t_off_s

    @property
    def duty_pct(self) -> float:
        return duty_cycle_pct(self.t_on_s, self.t_off_s)


@dataclass(frozen=True, eq=False)
class EdgeSchedule:
    """Alternating ON/OFF transitions on an integer tick grid.

    ``ticks[i]`` is the tick at which the output switches to ``levels[i]``.
    ``end_tick`` closes the final cycle so every cycle has a known length.
    """

    ticks: np.ndarray
    levels: np.ndarray
    tick_rate_hz: int
    end_tick: int

    def __iter__(self) -> Iterator[tuple[int, Level]]:
        return self.edges()

    def __len__(self) -> int:
        return len(self.ticks)

    def __eq__(self, other):
        if not isinstance(other, EdgeSchedule):
            return NotImplemented
        return (
            self.tick_rate_hz == other.tick_rate_hz
            and self.end_tick == other.end_tick
            and np.array_equal(self.ticks, other.ticks)
            and np.array_equal(self.levels, other.levels)
        )

    def edges(self) -> Iterator[tuple[int, Level]]:
        for tick, level in zip(self.ticks.tolist(), self.levels.tolist()):
            yield tick, Level(level)

    @property
    def duration_s(self) -> float:
        return self.end_tick / self.tick_rate_hz

    def to_csv_lines(self) -> Iterator[str]:
        yield "tick,level"
        for tick, level in self.edges():
            yield f"{tick},{level.name}"


@dataclass(frozen=True)
class MeasuredWaveform:
    measured_freq_hz: float
    measured_duty_pct: float
    freq_error_hz: float
    duty_error_pp: float

    def within(self, freq_tol_hz: float = FREQ_TOLERANCE_HZ,
               duty_tol_pp: float = DUTY_TOLERANCE_PP) -> bool:
        return self.freq_error_hz <= freq_tol_hz and self.duty_error_pp <= duty_tol_pp


def duty_cycle_pct(t_on_s: float, t_off_s: float) -> float:
    """Percentage of the flicker period during which the stimulus is on."""
    if t_on_s <= 0 or t_off_s <= 0:
        raise ValueError("on and off periods must both be positive")
    return t_on_s / (t_on_s + t_off_s) * 100.0


def compute_on_off(spec: StimulusSpec) -> OnOffPeriods:
    period = 1.0 / spec.frequency_hz
    t_on = spec.duty_pct / 100.0 * period
    return OnOffPeriods(t_on_s=t_on, t_off_s=period - t_on)


def _exact(x: float) -> Fraction:
    # decimal reading of the float, so 0.2 s means exactly 1/5 s
    return Fraction(repr(float(x)))


def _round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def cycle_ticks(spec: StimulusSpec) -> tuple[int, int]:
    """Return ``(ticks per cycle, on-ticks per cycle)`` after nearest-tick rounding."""
    rate = Fraction(int(spec.tick_rate_hz))
    freq = _exact(spec.frequency_hz)
    duty = _exact(spec.duty_pct)
    period = _round_half_up(rate / freq)
    on = _round_half_up(duty * rate / (100 * freq))
    return period, on


def build_edge_schedule(spec: StimulusSpec) -> EdgeSchedule:
    period, on = cycle_ticks(spec)
    if on <= 0:
        raise ValueError(f"duty {spec.duty_pct}% rounds to zero on-ticks at {spec.tick_rate_hz} Hz")
    if on >= period:
        raise ValueError(f"duty {spec.duty_pct}% rounds to zero off-ticks at {spec.tick_rate_hz} Hz")

    total = _exact(spec.duration_s) * int(spec.tick_rate_hz)
    n_cycles = max(1, math.ceil(total / period))
    starts = np.arange(n_cycles, dtype=np.int64) * period
    ticks = np.empty(2 * n_cycles, dtype=np.int64)
    ticks[0::2] = starts
    ticks[1::2] = starts + on
    levels = np.tile(np.array([Level.ON, Level.OFF], dtype=np.int8), n_cycles)
    return EdgeSchedule(ticks=ticks, levels=levels, tick_rate_hz=int(spec.tick_rate_hz),
                        end_tick=int(n_cycles * period))


def _validate_schedule(schedule: EdgeSchedule) -> None:
    ticks, levels = schedule.ticks, schedule.levels
    if len(ticks) != len(levels):
        raise ValueError("ticks and levels differ in length")
    if len(ticks) == 0:
        raise ValueError("empty schedule")
    if ticks[0] != 0 or levels[0] != Level.ON:
        raise ValueError("schedule must start with an ON edge at tick 0")
    if np.any(np.diff(levels) == 0) or not np.all(np.isin(levels, (Level.ON, Level.OFF))):
        raise ValueError("edge levels must strictly alternate ON/OFF")
    if np.any(np.diff(ticks) <= 0):
        raise ValueError("edge ticks must be strictly increasing")
    if schedule.end_tick <= ticks[-1]:
        raise ValueError("end_tick must follow the last edge")
    if levels[-1] != Level.OFF:
        raise ValueError("schedule must end on an OFF edge (incomplete final cycle)")


def measure_schedule(schedule: EdgeSchedule, nominal: StimulusSpec) -> MeasuredWaveform:
    """Measure frequency and duty cycle of a schedule, as a scope would."""
    _validate_schedule(schedule)
    on_edges = schedule.ticks[0::2]
    off_edges = schedule.ticks[1::2]
    if len(on_edges) < 2:
        raise ValueError("need at least two full cycles to measure")

    cycle_lengths = np.diff(np.append(on_edges, schedule.end_tick))
    on_lengths = off_edges - on_edges
    freq = schedule.tick_rate_hz / cycle_lengths.mean()
    duty = float(np.mean(on_lengths / cycle_lengths) * 100.0)
    return MeasuredWaveform(
        measured_freq_hz=float(freq),
        measured_duty_pct=duty,
        freq_error_hz=abs(float(freq) - nominal.frequency_hz),
        duty_error_pp=abs(duty - nominal.duty_pct),
    )


def render(schedule: EdgeSchedule, sample_rate_hz: float) -> np.ndarray:
    """Sample the schedule as a 0/1 waveform (mainly for plotting)."""
    n = int(math.floor(schedule.duration_s * sample_rate_hz))
    sample_ticks = np.arange(n) * (schedule.tick_rate_hz / sample_rate_hz)
    idx = np.searchsorted(schedule.ticks, sample_ticks, side="right") - 1
    return schedule.levels[idx].astype(float)
