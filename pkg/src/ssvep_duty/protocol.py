"""Session planning, file-level analysis, reporting and the end-to-end run."""

from __future__ import annotations

import csv
import hashlib
import json
import os
import shutil
import tempfile
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from . import reference
from .edf import extract_channel, read_edf
from .pipeline import process_condition
from .simulate import ResponseModel, SimConfig, parse_trial_filename, synth_session
from .stats import KwResult, analyze, select_best_duty

DEFAULT_SEED = 2018


@dataclass(frozen=True)
class ProtocolConfig:
    frequencies: tuple[float, ...] = tuple(float(f) for f in reference.FREQUENCIES_HZ)
    duties: tuple[float, ...] = tuple(float(d) for d in reference.DUTIES_PCT)
    trials: int = 5
    trial_s: int = 30
    rest_s: float = 60.0
    seed: int = DEFAULT_SEED
    noise_sd: float = 8.0
    subjects: int = 10
    model_path: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "frequencies", tuple(float(f) for f in self.frequencies))
        object.__setattr__(self, "duties", tuple(float(d) for d in self.duties))
        if not self.frequencies:
            raise ValueError("no stimulus frequencies configured")
        if not self.duties:
            raise ValueError("no duty cycles configured")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "ProtocolConfig":
        """Read flat ``key = value`` lines; ``#`` starts a comment."""
        kwargs = {}
        lists = {"frequencies", "duties"}
        ints = {"trials", "trial_s", "seed", "subjects"}
        floats = {"rest_s", "noise_sd"}
        for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            sep = "=" if "=" in line else ":"
            if sep not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split(sep, 1))
            if key in lists:
                kwargs[key] = tuple(float(v) for v in value.replace(",", " ").split())
            elif key in ints:
                kwargs[key] = int(value)
            elif key in floats:
                kwargs[key] = float(value)
            elif key == "model_path":
                kwargs[key] = value or None
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        return cls(**kwargs)

    def digest(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass(frozen=True)
class ProtocolPlan:
    frequencies: tuple[float, ...]
    duties: tuple[float, ...]
    trials_per_condition: int
    trial_s: int
    rest_s: float
    seed: int
    schedule: tuple[tuple[float, float, int], ...]

    def __len__(self) -> int:
        return len(self.schedule)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schedule"] = [list(s) for s in self.schedule]
        return d


def plan_session(config: ProtocolConfig | None = None, seed: int | None = None) -> ProtocolPlan:
    """Frequencies in ascending order; duty order shuffled within each block.

    Every duty's trials run back to back before the next duty starts.
    """
    config = config or ProtocolConfig()
    seed = config.seed if seed is None else seed
    freqs = tuple(sorted(config.frequencies))
    duties = tuple(sorted(set(config.duties)))
    rng = np.random.default_rng(seed)
    schedule = []
    for f in freqs:
        for i in rng.permutation(len(duties)):
            for trial in range(1, config.trials + 1):
                schedule.append((f, duties[i], trial))
    return ProtocolPlan(freqs, duties, config.trials, config.trial_s, config.rest_s,
                        seed, tuple(schedule))


# --- amplitude tables -----------------------------------------------------

class AmplitudeRow(NamedTuple):
    subject: int
    frequency_hz: float
    duty_pct: float
    trial: int
    segment: int
    amplitude: float


AMPLITUDE_COLUMNS = AmplitudeRow._fields


def analyze_files(paths: Iterable[str | os.PathLike], channel: str = "O2",
                  freq: float | None = None) -> list[AmplitudeRow]:
    """Run the pipeline over trial files named by the simulator's scheme.

    Trials are grouped by (subject, frequency, duty); with ``freq`` set, other
    frequencies are skipped. Output is sorted by subject, frequency, duty,
    trial, segment.
    """
    groups = defaultdict(list)
    for p in paths:
        cond = parse_trial_filename(p)
        if cond is None:
            raise ValueError(f"cannot infer condition from file name {os.fspath(p)!r}")
        if freq is not None and cond.frequency_hz != float(freq):
            continue
        groups[(cond.subject_id, cond.frequency_hz, cond.duty_pct)].append((cond.trial_index, p))

    rows = []
    for (subject, f, d), items in sorted(groups.items()):
        items.sort()
        series = [extract_channel(read_edf(p), channel) for _, p in items]
        amps = process_condition(series, f, (subject, f, d)).amplitudes
        per_trial = len(amps) // len(items)
        for i, a in enumerate(amps):
            rows.append(AmplitudeRow(subject, f, d, items[i // per_trial][0], i % per_trial,
                                     float(a)))
    return rows


def expand_inputs(inputs: Sequence[str | os.PathLike]) -> list[Path]:
    paths = []
    for item in inputs:
        p = Path(item)
        paths.extend(sorted(p.glob("*.edf")) if p.is_dir() else [p])
    return paths


def write_amplitudes(rows: Sequence[AmplitudeRow], path: str | os.PathLike) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(AMPLITUDE_COLUMNS)
        for r in rows:
            w.writerow([r.subject, f"{r.frequency_hz:g}", f"{r.duty_pct:g}", r.trial,
                        r.segment, repr(r.amplitude)])


def read_amplitudes(path: str | os.PathLike) -> list[AmplitudeRow]:
    with open(path, newline="") as f:
        return [AmplitudeRow(int(r["subject"]), float(r["frequency_hz"]), float(r["duty_pct"]),
                             int(r["trial"]), int(r["segment"]), float(r["amplitude"]))
                for r in csv.DictReader(f)]


def _stat_rows(rows):
    return [(r.subject, r.frequency_hz, r.duty_pct, r.amplitude) for r in rows]


def stats_report(rows: Sequence[AmplitudeRow], scope: str = "subject") -> list[dict]:
    results = analyze(_stat_rows(rows), scope)
    best = select_best_duty(results)
    out = []
    for key, res in results.items():
        entry = {"subject": key[0], "frequency_hz": key[1]} if scope == "subject" \
            else {"frequency_hz": key}
        entry.update(res.as_dict())
        entry["best_duty_pct"] = best.selected[key]
        entry["best_tied"] = best.tied[key]
        out.append(entry)
    return out


# --- summaries ------------------------------------------------------------

class BoxStats(NamedTuple):
    median: float
    q25: float
    q75: float
    n: int


def box_stats(values) -> BoxStats:
    """Median and quartiles by linear interpolation between order statistics."""
    x = np.asarray(values, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("box_stats of empty input")
    q25, med, q75 = np.percentile(x, [25, 50, 75], method="linear")
    return BoxStats(float(med), float(q25), float(q75), int(x.size))


@dataclass(frozen=True)
class ComfortRatings:
    ratings: Mapping[tuple[int, float, float], int]

    def __post_init__(self):
        clean = {}
        for (s, f, d), r in self.ratings.items():
            if int(r) != r or not 1 <= r <= 10:
                raise ValueError(f"rating {r!r} for subject {s}, {f:g} Hz, {d:g}% not in 1..10")
            clean[(int(s), float(f), float(d))] = int(r)
        object.__setattr__(self, "ratings", clean)

    @classmethod
    def from_csv(cls, path: str | os.PathLike) -> "ComfortRatings":
        ratings = {}
        with open(path, newline="") as f:
            for r in csv.DictReader(f):
                rating = float(r["rating"])
                key = (int(r["subject"]), float(r["frequency_hz"]), float(r["duty_pct"]))
                ratings[key] = int(rating) if rating.is_integer() else rating
        return cls(ratings)


def aggregate_comfort(ratings: ComfortRatings) -> dict[float, float]:
    """Mean rating per duty over subjects and frequencies, duty ascending."""
    by_duty = defaultdict(list)
    for (_, _, d), r in ratings.ratings.items():
        by_duty[d].append(r)
    return {d: float(np.mean(by_duty[d])) for d in sorted(by_duty)}


def comfort_non_decreasing(means: Mapping[float, float]) -> bool:
    vals = [means[d] for d in sorted(means)]
    return all(a <= b for a, b in zip(vals, vals[1:]))


@dataclass
class ReportBundle:
    box: dict                 # (freq, duty) -> BoxStats
    pooled: dict              # freq -> KwResult
    selected: dict            # freq -> duty
    subject_results: dict     # (subject, freq) -> KwResult
    subject_selected: dict    # (subject, freq) -> duty
    comfort_means: dict | None = None
    provenance: dict = field(default_factory=dict)

    def subject_majority(self) -> dict:
        votes = defaultdict(Counter)
        for (_, f), d in self.subject_selected.items():
            votes[f][d] += 1
        return {f: c.most_common(1)[0][0] for f, c in sorted(votes.items())}

    def cells_selecting(self, duty: float) -> int:
        return sum(d == duty for d in self.subject_selected.values())

    def to_dict(self) -> dict:
        freqs = sorted(self.pooled)
        return {
            "provenance": self.provenance,
            "frequencies": [
                {
                    "frequency_hz": f,
                    "kruskal_wallis": self.pooled[f].as_dict(),
                    "best_duty_pct": self.selected[f],
                    "box": [{"duty_pct": d, **b._asdict()}
                            for (ff, d), b in sorted(self.box.items()) if ff == f],
                }
                for f in freqs
            ],
            "subjects": [
                {"subject": s, "frequency_hz": f, "best_duty_pct": self.subject_selected[(s, f)],
                 **self.subject_results[(s, f)].as_dict()}
                for s, f in sorted(self.subject_results)
            ],
            "subject_majority": {f"{f:g}": d for f, d in self.subject_majority().items()},
            "comfort_means": None if self.comfort_means is None
            else {f"{d:g}": m for d, m in self.comfort_means.items()},
            "comfort_non_decreasing": None if self.comfort_means is None
            else comfort_non_decreasing(self.comfort_means),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def write_box_csvs(self, out_dir: str | os.PathLike) -> list[Path]:
        paths = []
        for f in sorted(self.pooled):
            path = Path(out_dir) / f"box_{f:g}hz.csv"
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["duty_pct", "median", "q25", "q75", "n"])
                for (ff, d), b in sorted(self.box.items()):
                    if ff == f:
                        w.writerow([f"{d:g}", repr(b.median), repr(b.q25), repr(b.q75), b.n])
            paths.append(path)
        return paths


def build_report(rows: Sequence[AmplitudeRow], comfort: ComfortRatings | None = None,
                 provenance: Mapping | None = None) -> ReportBundle:
    cells = defaultdict(list)
    for r in rows:
        cells[(r.frequency_hz, r.duty_pct)].append(r.amplitude)
    box = {k: box_stats(v) for k, v in sorted(cells.items())}
    stat_rows = _stat_rows(rows)
    pooled = analyze(stat_rows, "pooled")
    subject = analyze(stat_rows, "subject")
    return ReportBundle(
        box=box,
        pooled=pooled,
        selected=select_best_duty(pooled).selected,
        subject_results=subject,
        subject_selected=select_best_duty(subject).selected,
        comfort_means=aggregate_comfort(comfort) if comfort else None,
        provenance=dict(provenance or {}),
    )


def reproduce(seed: int = DEFAULT_SEED, out_dir: str | os.PathLike = "reproduction",
              config: ProtocolConfig | None = None,
              comfort: ComfortRatings | None = None) -> ReportBundle:
    """Simulate, analyze from the written EDF files, test, and report.

    Output layout under ``out_dir``: ``plan.json``, ``edf/*.edf``,
    ``amplitudes.csv``, ``stats_subject.json``, ``stats_pooled.json``,
    ``report.json`` and ``box_<freq>hz.csv``. The directory is assembled
    elsewhere and moved into place, so a failed run leaves nothing behind.
    """
    config = config or ProtocolConfig(seed=seed)
    out = Path(out_dir)
    if out.exists() and (not out.is_dir() or any(out.iterdir())):
        raise FileExistsError(f"{out} exists and is not an empty directory")
    out.parent.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=".reproduce-", dir=out.parent))
    try:
        plan = plan_session(config, seed)
        model = ResponseModel.from_csv(config.model_path) if config.model_path \
            else ResponseModel.default()
        sim = SimConfig(noise_sd=config.noise_sd, seed=seed, trial_s=config.trial_s)
        (staging / "plan.json").write_text(json.dumps(plan.to_dict(), indent=2) + "\n")
        paths = synth_session(range(1, config.subjects + 1), model, sim, plan, staging / "edf")

        rows = analyze_files(paths)
        write_amplitudes(rows, staging / "amplitudes.csv")
        for scope in ("subject", "pooled"):
            (staging / f"stats_{scope}.json").write_text(
                json.dumps(stats_report(rows, scope), indent=2, sort_keys=True) + "\n")

        bundle = build_report(rows, comfort, provenance={
            "seed": seed, "config_hash": config.digest(), "n_files": len(paths),
        })
        (staging / "report.json").write_text(bundle.to_json())
        bundle.write_box_csvs(staging)
        if out.exists():
            out.rmdir()
        os.replace(staging, out)
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise
    return bundle
