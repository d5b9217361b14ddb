"""Reader and writer for plain EDF (European Data Format) recordings.

Layout: a 256-byte main header, 256 bytes of per-signal header fields
(stored field-major: all labels, then all transducers, ...), then data
records of little-endian int16 samples, each record holding
``samples_per_record`` samples for every signal in turn.

EDF+ annotation channels and BDF are not handled.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

DIGITAL_MIN = -32768
DIGITAL_MAX = 32767

# (name, width) of the main header fields
_MAIN_FIELDS = (
    ("version", 8),
    ("patient_id", 80),
    ("recording_id", 80),
    ("start_date", 8),
    ("start_time", 8),
    ("header_bytes", 8),
    ("reserved", 44),
    ("n_records", 8),
    ("record_duration_s", 8),
    ("n_signals", 4),
)

# (name, width) of each per-signal field
_SIGNAL_FIELDS = (
    ("label", 16),
    ("transducer", 80),
    ("physical_dimension", 8),
    ("physical_min", 8),
    ("physical_max", 8),
    ("digital_min", 8),
    ("digital_max", 8),
    ("prefiltering", 80),
    ("samples_per_record", 8),
    ("reserved", 32),
)


class EdfError(ValueError):
    """Raised for malformed or unencodable EDF content."""


@dataclass(frozen=True)
class EdfFileHeader:
    n_signals: int
    n_records: int
    record_duration_s: float = 1.0
    version: str = "0"
    patient_id: str = ""
    recording_id: str = ""
    start_date: str = "01.01.00"
    start_time: str = "00.00.00"
    reserved: str = ""

    @property
    def header_bytes(self) -> int:
        return 256 * (1 + self.n_signals)


@dataclass(frozen=True)
class SignalHeader:
    label: str
    physical_min: float
    physical_max: float
    samples_per_record: int
    digital_min: int = DIGITAL_MIN
    digital_max: int = DIGITAL_MAX
    transducer: str = ""
    physical_dimension: str = ""
    prefiltering: str = ""
    reserved: str = ""

    def __post_init__(self):
        if not self.digital_min < self.digital_max:
            raise EdfError(f"{self.label!r}: digital_min must be < digital_max")
        if self.physical_min == self.physical_max:
            raise EdfError(f"{self.label!r}: physical_min equals physical_max")
        if self.samples_per_record < 1:
            raise EdfError(f"{self.label!r}: samples_per_record must be >= 1")

    @property
    def gain(self) -> float:
        return (self.physical_max - self.physical_min) / (self.digital_max - self.digital_min)

    def to_physical(self, digital: np.ndarray) -> np.ndarray:
        digital = np.asarray(digital, dtype=float)
        return (digital - self.digital_min) * self.gain + self.physical_min

    def to_digital(self, physical: np.ndarray) -> np.ndarray:
        """Quantize physical values to the nearest digital code, clipped to range."""
        physical = np.asarray(physical, dtype=float)
        dig = np.rint((physical - self.physical_min) / self.gain + self.digital_min)
        return np.clip(dig, self.digital_min, self.digital_max).astype(np.int16)


@dataclass(frozen=True, eq=False)
class EdfRecording:
    file_header: EdfFileHeader
    signal_headers: tuple[SignalHeader, ...]
    samples: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "signal_headers", tuple(self.signal_headers))
        object.__setattr__(self, "samples",
                           tuple(np.asarray(s, dtype=np.int16) for s in self.samples))
        if self.file_header.n_signals < 1:
            raise EdfError("a recording needs at least one signal")
        if len(self.signal_headers) != self.file_header.n_signals:
            raise EdfError("signal header count does not match n_signals")
        if len(self.samples) != self.file_header.n_signals:
            raise EdfError("sample array count does not match n_signals")
        for sh, s in zip(self.signal_headers, self.samples):
            expected = self.file_header.n_records * sh.samples_per_record
            if s.ndim != 1 or len(s) != expected:
                raise EdfError(f"{sh.label!r}: expected {expected} samples, got {s.shape}")

    def __eq__(self, other):
        if not isinstance(other, EdfRecording):
            return NotImplemented
        return (
            self.file_header == other.file_header
            and self.signal_headers == other.signal_headers
            and all(np.array_equal(a, b) for a, b in zip(self.samples, other.samples))
        )

    @property
    def labels(self) -> list[str]:
        return [sh.label for sh in self.signal_headers]

    @property
    def n_bytes(self) -> int:
        per_record = sum(sh.samples_per_record for sh in self.signal_headers)
        return self.file_header.header_bytes + self.file_header.n_records * per_record * 2


@dataclass(frozen=True, eq=False)
class SampleSeries:
    values: np.ndarray
    sample_rate_hz: float
    label: str = ""

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError("series values must be one-dimensional")
        if not self.sample_rate_hz > 0:
            raise ValueError(f"sample_rate_hz must be positive, got {self.sample_rate_hz}")
        if not np.all(np.isfinite(values)):
            raise ValueError("series contains non-finite values")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def duration_s(self) -> float:
        return len(self.values) / self.sample_rate_hz


# --- field encoding -------------------------------------------------------

def _format_number(value: float, width: int) -> str:
    """Shortest text of at most ``width`` chars that parses back to ``value``."""
    if isinstance(value, (int, np.integer)) or float(value).is_integer():
        text = str(int(value))
        if len(text) <= width:
            return text
    else:
        text = repr(float(value))
        if "e" not in text and len(text) <= width:
            return text
        for digits in range(width, 0, -1):
            text = f"{float(value):.{digits}f}".rstrip("0").rstrip(".")
            if len(text) <= width and float(text) == float(value):
                return text
    raise EdfError(f"{value!r} cannot be represented exactly in {width} characters")


def _encode_text(value: str, width: int, name: str) -> bytes:
    try:
        raw = value.encode("ascii")
    except UnicodeEncodeError:
        raise EdfError(f"{name}: non-ASCII text {value!r}") from None
    if len(raw) > width:
        raise EdfError(f"{name}: {value!r} exceeds {width} characters")
    if any(b < 32 or b > 126 for b in raw):
        raise EdfError(f"{name}: non-printable characters in {value!r}")
    return raw.ljust(width, b" ")


def _encode_field(value, width: int, name: str) -> bytes:
    if isinstance(value, str):
        return _encode_text(value, width, name)
    return _encode_text(_format_number(value, width), width, name)


def _decode_text(raw: bytes) -> str:
    return raw.decode("ascii", errors="replace").rstrip(" ")


def _decode_int(raw: bytes, name: str) -> int:
    text = raw.decode("ascii", errors="replace").strip()
    try:
        return int(text)
    except ValueError:
        try:
            as_float = float(text)
        except ValueError:
            raise EdfError(f"{name}: non-numeric field {text!r}") from None
        if not as_float.is_integer():
            raise EdfError(f"{name}: expected an integer, got {text!r}")
        return int(as_float)


def _decode_float(raw: bytes, name: str) -> float:
    text = raw.decode("ascii", errors="replace").strip()
    try:
        value = float(text)
    except ValueError:
        raise EdfError(f"{name}: non-numeric field {text!r}") from None
    if not math.isfinite(value):
        raise EdfError(f"{name}: non-finite field {text!r}")
    return value


# --- parse / write --------------------------------------------------------

def parse_edf(data: bytes) -> EdfRecording:
    data = bytes(data)
    if len(data) < 256:
        raise EdfError(f"truncated file: {len(data)} bytes, need at least 256")

    raw = {}
    pos = 0
    for name, width in _MAIN_FIELDS:
        raw[name] = data[pos:pos + width]
        pos += width

    header_bytes = _decode_int(raw["header_bytes"], "header_bytes")
    n_records = _decode_int(raw["n_records"], "n_records")
    n_signals = _decode_int(raw["n_signals"], "n_signals")
    duration = _decode_float(raw["record_duration_s"], "record_duration_s")
    if n_signals < 1:
        raise EdfError(f"n_signals must be >= 1, got {n_signals}")
    if header_bytes != 256 * (1 + n_signals):
        raise EdfError(f"header_bytes={header_bytes} inconsistent with {n_signals} signals")
    if len(data) < header_bytes:
        raise EdfError("truncated file: signal headers incomplete")
    if n_records < -1:
        raise EdfError(f"invalid n_records {n_records}")

    sig_raw: dict[str, list[bytes]] = {}
    pos = 256
    for name, width in _SIGNAL_FIELDS:
        sig_raw[name] = [data[pos + i * width:pos + (i + 1) * width] for i in range(n_signals)]
        pos += width * n_signals

    signal_headers = []
    for i in range(n_signals):
        label = _decode_text(sig_raw["label"][i])
        signal_headers.append(SignalHeader(
            label=label,
            transducer=_decode_text(sig_raw["transducer"][i]),
            physical_dimension=_decode_text(sig_raw["physical_dimension"][i]),
            physical_min=_decode_float(sig_raw["physical_min"][i], f"{label}.physical_min"),
            physical_max=_decode_float(sig_raw["physical_max"][i], f"{label}.physical_max"),
            digital_min=_decode_int(sig_raw["digital_min"][i], f"{label}.digital_min"),
            digital_max=_decode_int(sig_raw["digital_max"][i], f"{label}.digital_max"),
            prefiltering=_decode_text(sig_raw["prefiltering"][i]),
            samples_per_record=_decode_int(sig_raw["samples_per_record"][i],
                                           f"{label}.samples_per_record"),
            reserved=_decode_text(sig_raw["reserved"][i]),
        ))

    per_record = sum(sh.samples_per_record for sh in signal_headers)
    payload = len(data) - header_bytes
    record_bytes = 2 * per_record
    if n_records == -1:
        if payload % record_bytes:
            raise EdfError(f"payload of {payload} bytes ends in a partial record")
        n_records = payload // record_bytes
    elif payload != n_records * record_bytes:
        raise EdfError(
            f"payload is {payload} bytes, header declares {n_records} x {record_bytes}"
        )

    flat = np.frombuffer(data, dtype="<i2", offset=header_bytes).reshape(n_records, per_record)
    samples = []
    col = 0
    for sh in signal_headers:
        block = flat[:, col:col + sh.samples_per_record]
        samples.append(block.reshape(-1).astype(np.int16))
        col += sh.samples_per_record

    file_header = EdfFileHeader(
        version=_decode_text(raw["version"]),
        patient_id=_decode_text(raw["patient_id"]),
        recording_id=_decode_text(raw["recording_id"]),
        start_date=_decode_text(raw["start_date"]),
        start_time=_decode_text(raw["start_time"]),
        reserved=_decode_text(raw["reserved"]),
        n_records=n_records,
        record_duration_s=duration,
        n_signals=n_signals,
    )
    return EdfRecording(file_header, tuple(signal_headers), tuple(samples))


def write_edf(recording: EdfRecording) -> bytes:
    fh = recording.file_header
    if fh.n_records < 0:
        raise EdfError("n_records must be known when writing")
    values = {
        "version": fh.version,
        "patient_id": fh.patient_id,
        "recording_id": fh.recording_id,
        "start_date": fh.start_date,
        "start_time": fh.start_time,
        "header_bytes": fh.header_bytes,
        "reserved": fh.reserved,
        "n_records": fh.n_records,
        "record_duration_s": fh.record_duration_s,
        "n_signals": fh.n_signals,
    }
    parts = [_encode_field(values[name], width, name) for name, width in _MAIN_FIELDS]
    for name, width in _SIGNAL_FIELDS:
        for sh in recording.signal_headers:
            parts.append(_encode_field(getattr(sh, name), width, f"{sh.label}.{name}"))

    if fh.n_records:
        blocks = []
        for sh, s in zip(recording.signal_headers, recording.samples):
            if s.size and (s.min() < sh.digital_min or s.max() > sh.digital_max):
                raise EdfError(f"{sh.label!r}: samples outside digital range")
            blocks.append(s.reshape(fh.n_records, sh.samples_per_record))
        parts.append(np.hstack(blocks).astype("<i2").tobytes())
    out = b"".join(parts)
    assert len(out) == recording.n_bytes
    return out


def read_edf(path: str | os.PathLike) -> EdfRecording:
    with open(path, "rb") as f:
        return parse_edf(f.read())


def write_edf_file(recording: EdfRecording, path: str | os.PathLike) -> None:
    data = write_edf(recording)
    with open(path, "wb") as f:
        f.write(data)


def extract_channel(recording: EdfRecording, label: str) -> SampleSeries:
    """Physical-unit series of the signal whose trimmed label equals ``label``."""
    wanted = label.strip()
    hits = [i for i, sh in enumerate(recording.signal_headers) if sh.label.strip() == wanted]
    if not hits:
        raise KeyError(f"no channel {wanted!r}; available: {recording.labels}")
    if len(hits) > 1:
        raise EdfError(f"channel label {wanted!r} is ambiguous ({len(hits)} signals)")
    i = hits[0]
    sh = recording.signal_headers[i]
    rate = sh.samples_per_record / recording.file_header.record_duration_s
    return SampleSeries(sh.to_physical(recording.samples[i]), rate, sh.label.strip())


def recording_from_series(
    series: Sequence[SampleSeries],
    record_duration_s: float = 1.0,
    physical_ranges: Sequence[tuple[float, float]] | None = None,
    physical_dimension: str = "uV",
    **header_fields,
) -> EdfRecording:
    """Quantize physical series into an EDF recording.

    All series must cover a whole number of records. When no physical range
    is given, a symmetric power-of-two range enclosing the data is used.
    """
    if not series:
        raise EdfError("need at least one series")
    signal_headers, samples = [], []
    n_records = None
    for k, s in enumerate(series):
        spr = s.sample_rate_hz * record_duration_s
        if not float(spr).is_integer():
            raise EdfError(f"{s.label!r}: {s.sample_rate_hz} Hz is not a whole number "
                           f"of samples per {record_duration_s} s record")
        spr = int(spr)
        if len(s) % spr:
            raise EdfError(f"{s.label!r}: length {len(s)} is not a multiple of {spr}")
        if n_records is None:
            n_records = len(s) // spr
        elif len(s) // spr != n_records:
            raise EdfError("series cover different numbers of records")
        if physical_ranges is not None:
            pmin, pmax = physical_ranges[k]
        else:
            peak = float(np.max(np.abs(s.values), initial=0.0))
            pmax = 2.0 ** max(0, math.ceil(math.log2(peak * 1.01))) if peak > 0 else 1.0
            pmin = -pmax
        sh = SignalHeader(label=s.label, physical_min=pmin, physical_max=pmax,
                          samples_per_record=spr, physical_dimension=physical_dimension)
        signal_headers.append(sh)
        samples.append(sh.to_digital(s.values))
    fh = EdfFileHeader(n_signals=len(series), n_records=n_records,
                       record_duration_s=record_duration_s, **header_fields)
    return EdfRecording(fh, tuple(signal_headers), tuple(samples))
