"""Kruskal-Wallis rank statistics over duty-cycle groups."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy import special


@dataclass(frozen=True)
class GroupedAmplitudes:
    labels: tuple
    groups: tuple[np.ndarray, ...]
    scope: str = "subject"

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "groups",
                           tuple(np.asarray(g, dtype=float).ravel() for g in self.groups))
        if len(self.labels) != len(self.groups):
            raise ValueError("one label per group required")
        if len(self.groups) < 2:
            raise ValueError("need at least two groups")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("group labels must be unique")
        for label, g in zip(self.labels, self.groups):
            if len(g) == 0:
                raise ValueError(f"group {label!r} is empty")

    @classmethod
    def from_mapping(cls, data: Mapping, scope: str = "subject") -> "GroupedAmplitudes":
        return cls(tuple(data), tuple(data.values()), scope)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.groups)

    @property
    def n_total(self) -> int:
        return sum(self.sizes)


@dataclass(frozen=True)
class KwResult:
    labels: tuple
    h_statistic: float
    df: int
    p_value: float
    mean_ranks: tuple[float, ...]
    group_summaries: tuple[tuple[float, float], ...]
    group_sizes: tuple[int, ...]
    n_total: int
    tie_correction: float = 1.0
    p_underflow: bool = False

    def mean_rank(self, label) -> float:
        return self.mean_ranks[self.labels.index(label)]

    def as_dict(self) -> dict:
        return {
            "H": self.h_statistic,
            "df": self.df,
            "p": self.p_value,
            "p_underflow": self.p_underflow,
            "N": self.n_total,
            "tie_correction": self.tie_correction,
            "groups": [
                {"duty_pct": label, "n": n, "mean_rank": mr, "mean": m, "sd": sd}
                for label, n, mr, (m, sd) in zip(self.labels, self.group_sizes,
                                                 self.mean_ranks, self.group_summaries)
            ],
        }


@dataclass(frozen=True)
class BestDutySelection:
    selected: dict = field(default_factory=dict)   # key -> duty label
    tied: dict = field(default_factory=dict)       # key -> bool


def rank_with_ties(values) -> np.ndarray:
    """Ranks 1..N, tied values sharing the average of the ranks they span."""
    x = np.asarray(values, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("cannot rank an empty sequence")
    if not np.all(np.isfinite(x)):
        raise ValueError("cannot rank non-finite values")
    order = np.argsort(x, kind="mergesort")
    sorted_x = x[order]
    # boundaries of runs of equal values
    starts = np.flatnonzero(np.r_[True, sorted_x[1:] != sorted_x[:-1]])
    ends = np.r_[starts[1:], x.size]
    avg = (starts + ends + 1) / 2.0          # mean of ranks starts+1 .. ends
    run_ranks = np.repeat(avg, ends - starts)
    ranks = np.empty_like(run_ranks)
    ranks[order] = run_ranks
    return ranks


def tie_counts(values) -> np.ndarray:
    _, counts = np.unique(np.asarray(values, dtype=float), return_counts=True)
    return counts


def chi_square_sf_even(x: float, df: int) -> float:
    """Closed-form chi-square upper tail, exp(-x/2) * sum_{i<df/2} (x/2)^i / i!, for even df."""
    if df < 2 or df % 2:
        raise ValueError(f"closed form needs an even df, got {df}")
    if x < 0:
        raise ValueError(f"x must be non-negative, got {x}")
    half = x / 2.0
    term, total = 1.0, 1.0
    for i in range(1, df // 2):
        term *= half / i
        total += term
    return math.exp(-half) * total


def chi_square_sf(x: float, df: int) -> float:
    """Upper-tail probability of the chi-square distribution.

    Computed as the regularized upper incomplete gamma Q(df/2, x/2). Values
    below the smallest double come back as exactly 0.0.
    """
    if df < 1 or int(df) != df:
        raise ValueError(f"df must be a positive integer, got {df}")
    if not x >= 0:
        raise ValueError(f"x must be non-negative, got {x}")
    if x == 0:
        return 1.0
    return float(special.gammaincc(df / 2.0, x / 2.0))


def summarize_group(values) -> tuple[float, float]:
    """Mean and sample standard deviation (n - 1 denominator)."""
    x = np.asarray(values, dtype=float).ravel()
    if x.size < 2:
        raise ValueError("need at least two values for a standard deviation")
    return float(x.mean()), float(x.std(ddof=1))


def kruskal_wallis(data: GroupedAmplitudes) -> KwResult:
    sizes = np.array(data.sizes)
    n = int(sizes.sum())
    if n < 3:
        raise ValueError(f"need at least 3 observations, got {n}")
    pooled = np.concatenate(data.groups)
    ranks = rank_with_ties(pooled)
    bounds = np.cumsum(sizes)[:-1]
    rank_sums = np.array([r.sum() for r in np.split(ranks, bounds)])
    mean_ranks = rank_sums / sizes

    t = tie_counts(pooled)
    correction = 1.0 - float(np.sum(t ** 3 - t)) / (n ** 3 - n)
    df = len(sizes) - 1
    if correction <= 0:
        h, p = 0.0, 1.0
    else:
        h = 12.0 / (n * (n + 1)) * float(np.sum(rank_sums ** 2 / sizes)) - 3.0 * (n + 1)
        h = max(h / correction, 0.0)
        p = chi_square_sf(h, df)

    summaries = tuple(
        summarize_group(g) if len(g) > 1 else (float(g[0]), float("nan"))
        for g in data.groups
    )
    return KwResult(
        labels=data.labels,
        h_statistic=h,
        df=df,
        p_value=p,
        mean_ranks=tuple(float(m) for m in mean_ranks),
        group_summaries=summaries,
        group_sizes=tuple(int(s) for s in sizes),
        n_total=n,
        tie_correction=correction,
        p_underflow=(p == 0.0),
    )


def select_best_duty(results: Mapping) -> BestDutySelection:
    """Per key (frequency, or (subject, frequency)), the label of the highest mean rank.

    Exact ties are flagged; the first-listed label wins.
    """
    selected, tied = {}, {}
    for key, res in results.items():
        ranks = np.asarray(res.mean_ranks)
        best = int(np.argmax(ranks))
        selected[key] = res.labels[best]
        tied[key] = bool(np.count_nonzero(ranks == ranks[best]) > 1)
    return BestDutySelection(selected, tied)


def group_by_duty(rows: Sequence[tuple], scope: str = "subject") -> dict:
    """Group ``(subject, frequency, duty, amplitude)`` rows for testing.

    ``scope="subject"`` keys by (subject, frequency); ``"pooled"`` by frequency.
    Duty groups are ordered ascending.
    """
    if scope not in ("subject", "pooled"):
        raise ValueError(f"unknown scope {scope!r}")
    buckets: dict = {}
    for subject, freq, duty, amp in rows:
        key = (subject, freq) if scope == "subject" else freq
        buckets.setdefault(key, {}).setdefault(duty, []).append(amp)
    return {
        key: GroupedAmplitudes.from_mapping(
            {d: np.asarray(groups[d]) for d in sorted(groups)}, scope
        )
        for key, groups in sorted(buckets.items(), key=lambda kv: kv[0])
    }


def analyze(rows: Sequence[tuple], scope: str = "subject") -> dict:
    """Kruskal-Wallis result per key; see :func:`group_by_duty`."""
    return {key: kruskal_wallis(g) for key, g in group_by_duty(rows, scope).items()}
