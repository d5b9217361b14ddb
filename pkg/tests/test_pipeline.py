import logging

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ssvep_duty.edf import SampleSeries
from scipy import signal

from ssvep_duty.pipeline import (Epoch, FilterSpec, bandpass, design_bandpass,
                                 epoch_amplitudes, fft_max_amplitude, process_condition, segment)

FS = 128


def tone(freq, amp=1.0, seconds=30, phase=0.3):
    t = np.arange(int(seconds * FS)) / FS
    return amp * np.sin(2 * np.pi * freq * t + phase)


def rms(x):
    return np.sqrt(np.mean(np.square(x)))


def test_centre_tone_preserved():
    x = tone(8, 5.0)
    y = bandpass(SampleSeries(x, FS), FilterSpec(8)).values
    assert len(y) == len(x)
    assert rms(y) / rms(x) == pytest.approx(1.0, rel=0.01)


def test_out_of_band_tone_attenuated():
    x = tone(12, 5.0)
    y = bandpass(SampleSeries(x, FS), FilterSpec(8)).values
    assert 20 * np.log10(rms(y) / rms(x)) <= -20
    # also per epoch, edges included
    _, amps = epoch_amplitudes(SampleSeries(y, FS))
    assert amps.max() <= 0.1 * 5.0 * 64


@pytest.mark.parametrize("offset", [3, -3, 5])
def test_stopband_three_hz_away(offset):
    x = tone(9 + offset)
    y = bandpass(SampleSeries(x, FS), FilterSpec(9)).values
    assert 20 * np.log10(rms(y) / rms(x)) <= -20


def test_passband_edge_within_3db():
    spec = FilterSpec(8)
    for f in (7.5, 8.0, 8.5):
        y = bandpass(SampleSeries(tone(f, seconds=60), FS), spec).values
        gain_db = 20 * np.log10(rms(y[FS * 10:-FS * 10]) / rms(tone(f, seconds=40)))
        assert gain_db > -3.0 * 2   # two passes of a filter that is > -3 dB inside the band


@pytest.mark.parametrize("centre", [7, 8, 9, 10])
def test_design_matches_analytic_butterworth(centre):
    # bilinear map of the analog prototype: |H|^2 = 1 / (1 + ((W^2 - W0^2) / (W B))^(2n))
    spec = FilterSpec(centre)
    b, a = design_bandpass(spec, FS)
    f = np.linspace(0.5, 30, 200)
    _, h = signal.freqz(b, a, worN=f, fs=FS)
    warp = lambda x: 2 * FS * np.tan(np.pi * np.asarray(x) / FS)
    lo, hi = warp(spec.band)
    w = warp(f)
    expected = 1 / np.sqrt(1 + ((w ** 2 - lo * hi) / (w * (hi - lo))) ** (2 * spec.order))
    assert np.allclose(np.abs(h), expected, atol=1e-6)


def test_zero_phase_no_shift():
    x = tone(9, phase=1.1)
    y = bandpass(SampleSeries(x, FS), FilterSpec(9)).values
    mid = slice(10 * FS, 20 * FS)
    assert np.max(np.abs(y[mid] - x[mid])) < 0.01


def test_zero_in_zero_out():
    y = bandpass(SampleSeries(np.zeros(3840), FS), FilterSpec(10)).values
    assert np.all(y == 0)


def test_filter_errors():
    with pytest.raises(ValueError, match="inside"):
        bandpass(SampleSeries(np.zeros(3840), FS), FilterSpec(0.5))
    with pytest.raises(ValueError, match="inside"):
        bandpass(SampleSeries(np.zeros(3840), FS), FilterSpec(63.5))
    with pytest.raises(ValueError, match="warm-up"):
        bandpass(SampleSeries(np.zeros(2 * FS), FS), FilterSpec(8))


def test_segment_counts(caplog):
    assert len(segment(SampleSeries(np.zeros(3840), FS))) == 30
    x = np.arange(128.0)
    (only,) = segment(SampleSeries(x, FS))
    assert np.array_equal(only.samples, x)
    with caplog.at_level(logging.WARNING):
        eps = segment(SampleSeries(np.zeros(200), FS))
    assert len(eps) == 1
    assert "72" in caplog.text
    with pytest.raises(ValueError):
        segment(SampleSeries(np.zeros(100), FS))


def test_segment_origin_and_contiguity():
    x = np.arange(3 * 128.0)
    eps = segment(SampleSeries(x, FS), trial_index=4)
    assert [e.origin for e in eps] == [(4, 0), (4, 1), (4, 2)]
    assert np.array_equal(np.concatenate([e.samples for e in eps]), x)


def test_fft_max_bin_aligned_sine():
    n = np.arange(128)
    hz, amp = fft_max_amplitude(Epoch(2 * np.sin(2 * np.pi * 9 * n / 128), (0, 0)))
    assert hz == 9
    assert amp == pytest.approx(128, rel=1e-12)


def test_fft_max_constant_signal():
    _, amp = fft_max_amplitude(Epoch(np.full(128, 7.0), (0, 0)))
    assert amp == pytest.approx(0, abs=1e-9)


def test_fft_max_superposition():
    n = np.arange(128)
    x = 3 * np.sin(2 * np.pi * 7 * n / 128) + np.sin(2 * np.pi * 9 * n / 128)
    hz, amp = fft_max_amplitude(Epoch(x, (0, 0)))
    assert hz == 7
    assert amp == pytest.approx(192, rel=1e-12)


def test_fft_max_excludes_nyquist():
    x = np.cos(np.pi * np.arange(128))     # pure Nyquist
    _, amp = fft_max_amplitude(Epoch(x, (0, 0)))
    assert amp == pytest.approx(0, abs=1e-9)


def test_fft_max_rejects_nan():
    with pytest.raises(ValueError):
        fft_max_amplitude(Epoch(np.r_[np.zeros(127), np.nan], (0, 0)))


def test_vectorized_matches_scalar():
    rng = np.random.default_rng(3)
    s = SampleSeries(rng.normal(size=640), FS)
    hz, amps = epoch_amplitudes(s)
    for e, h, a in zip(segment(s), hz, amps):
        assert (h, a) == pytest.approx(fft_max_amplitude(e))


@pytest.mark.parametrize("freq", [7, 8, 9, 10])
def test_filter_neutral_at_centre(freq):
    x = tone(freq, 4.0, phase=0.7)
    filtered = process_condition([SampleSeries(x, FS)], freq).amplitudes
    _, raw = epoch_amplitudes(SampleSeries(x, FS))
    assert np.max(np.abs(filtered / raw - 1)) < 0.01


def test_process_condition_counts_and_order():
    trials = [SampleSeries(tone(8, a), FS) for a in (1, 2, 3, 4, 5)]
    out = process_condition(trials, 8, (1, 8, 85))
    assert len(out) == 150
    assert out.condition == (1, 8, 85)
    assert np.allclose(out.amplitudes.reshape(5, 30).mean(axis=1), 64 * np.arange(1, 6), rtol=0.01)
    assert np.all(out.peak_hz == 8)


def test_process_condition_zero():
    out = process_condition([SampleSeries(np.zeros(3840), FS)] * 5, 9)
    assert len(out) == 150
    assert np.all(out.amplitudes == 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 63), st.floats(0.1, 100), st.floats(0, 2 * np.pi))
def test_peak_bin_property(k, amp, phase):
    n = np.arange(128)
    hz, a = fft_max_amplitude(Epoch(amp * np.sin(2 * np.pi * k * n / 128 + phase), (0, 0)))
    assert hz == k
    assert a == pytest.approx(amp * 64, rel=0.01)


@settings(max_examples=20, deadline=None)
@given(st.floats(0, 50), st.integers(0, 2 ** 32 - 1))
def test_linearity_before_max(c, seed):
    rng = np.random.default_rng(seed)
    x = tone(8, 3.0) + rng.normal(size=3840)
    a = process_condition([SampleSeries(x, FS)], 8).amplitudes
    b = process_condition([SampleSeries(c * x, FS)], 8).amplitudes
    assert np.allclose(b, c * a, rtol=1e-6, atol=1e-9)
