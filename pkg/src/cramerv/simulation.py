"""Seeded Monte Carlo over random r x c tables with V and modified V summaries.

Draw ``i`` of a run depends only on ``(seed, i)``: all draws of a run are
generated together as a batch of independent xoshiro256** streams.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .bounds import extremal_table
from .measures import (
    ExpectationModel,
    FixedGiven,
    IndependenceMargins,
    chi_square_counts,
    max_modified_v,
    max_v,
    modified_v_from_chi_square,
    v_from_chi_square,
)
from .rng import Xoshiro256
from .tables import ContingencyTable

DISCREPANCY_NOTE = (
    "Only the Max. row of the published summary table is reproducible "
    "(by the extremal one-hot table under the uniform model). The Min., "
    "1st Qu., Median, Mean and 3rd Qu. values depend on an unstated table "
    "generator; none of the shipped generators (multinomial with equal cell "
    "probabilities, uniform weak composition) reproduces them, so they are "
    "not expected to match."
)


@dataclass(frozen=True)
class MultinomialUniform:
    """n equiprobable categorical draws, one uniform per item (inverse CDF)."""

    name = "multinomial"


@dataclass(frozen=True)
class UniformComposition:
    """A uniformly random weak composition of n into rc parts."""

    name = "composition"


@dataclass(frozen=True)
class IncludeExtremal:
    """Wraps another generator; the last draw of a run is the one-hot table."""

    inner: MultinomialUniform | UniformComposition = MultinomialUniform()
    name = "include-extremal"


Generator = MultinomialUniform | UniformComposition | IncludeExtremal

GENERATORS = {
    "multinomial": MultinomialUniform(),
    "composition": UniformComposition(),
    "include-extremal": IncludeExtremal(MultinomialUniform()),
}


def _multinomial_batch(rng: Xoshiro256, k: int, n: int) -> np.ndarray:
    draws = rng.size
    counts = np.zeros((draws, k), dtype=np.int64)
    rows = np.arange(draws)
    for _ in range(n):
        cell = np.minimum((rng.next_double() * k).astype(np.int64), k - 1)
        counts[rows, cell] += 1
    return counts


def _composition_batch(rng: Xoshiro256, k: int, n: int) -> np.ndarray:
    # Stars and bars: the k-1 slots with the smallest random keys among
    # n+k-1 become bars; a stable sort makes ties deterministic.
    slots = n + k - 1
    keys = np.stack([rng.next_double() for _ in range(slots)], axis=1)
    bars = np.sort(np.argsort(keys, axis=1, kind="stable")[:, : k - 1], axis=1)
    edges = np.concatenate(
        [np.full((rng.size, 1), -1), bars, np.full((rng.size, 1), slots)], axis=1)
    return np.diff(edges, axis=1) - 1


def generate_tables(r: int, c: int, n: int, generator: Generator, seed: int,
                    indices, final_index: int | None = None) -> np.ndarray:
    """Count arrays of shape ``(len(indices), r, c)`` for the given draws.

    ``final_index`` marks the last draw of the run; :class:`IncludeExtremal`
    replaces that draw with the one-hot table.
    """
    if r < 1 or c < 1 or n < 1:
        raise ValueError(f"need r, c, n >= 1, got r={r} c={c} n={n}")
    indices = np.atleast_1d(np.asarray(indices, dtype=np.int64))
    inner = generator.inner if isinstance(generator, IncludeExtremal) else generator
    rng = Xoshiro256.for_draws(seed, indices.astype(np.uint64))
    k = r * c
    if isinstance(inner, MultinomialUniform):
        flat = _multinomial_batch(rng, k, n)
    elif isinstance(inner, UniformComposition):
        flat = _composition_batch(rng, k, n)
    else:
        raise TypeError(f"unknown generator {generator!r}")
    tables = flat.reshape(-1, r, c)
    if isinstance(generator, IncludeExtremal) and final_index is not None:
        tables[indices == final_index] = extremal_table(r, c, n).counts
    return tables


def generate_table(r: int, c: int, n: int, generator: Generator, seed: int,
                   index: int = 0, final: bool = False) -> ContingencyTable:
    """Draw ``index`` of a run seeded with ``seed``.

    Pass ``final=True`` for the last draw of a run so that
    :class:`IncludeExtremal` can substitute the one-hot table.
    """
    counts = generate_tables(r, c, n, generator, seed, [index],
                             final_index=index if final else None)
    return ContingencyTable(counts[0])


@dataclass(frozen=True)
class StatSummary:
    min: float
    q1: float
    median: float
    mean: float
    q3: float
    max: float

    LABELS = ("Min.", "1st Qu.", "Median", "Mean", "3rd Qu.", "Max.")

    def as_tuple(self) -> tuple[float, ...]:
        return (self.min, self.q1, self.median, self.mean, self.q3, self.max)

    def is_ordered(self) -> bool:
        return (self.min <= self.q1 <= self.median <= self.q3 <= self.max
                and self.min <= self.mean <= self.max)

    def to_dict(self) -> dict:
        return dict(zip(("min", "q1", "median", "mean", "q3", "max"), self.as_tuple()))


def six_number_summary(values) -> StatSummary:
    """Min, quartiles, mean and max; quartiles use linear interpolation.

    The interpolation is the usual default (Hyndman-Fan type 7): the k-th
    quartile sits at 1-based order-statistic position ``1 + k(m-1)/4``.
    """
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        raise ValueError("empty sample")
    q1, med, q3 = np.quantile(x, [0.25, 0.5, 0.75], method="linear")
    # float rounding in the mean can step just outside [min, max] on
    # constant samples
    lo, hi = float(x.min()), float(x.max())
    mean = min(max(float(x.mean()), lo), hi)
    return StatSummary(lo, float(q1), float(med), mean, float(q3), hi)


@dataclass(frozen=True)
class Histogram:
    edges: tuple[float, ...]
    counts: tuple[int, ...]
    underflow: int = 0
    overflow: int = 0

    @property
    def bins(self) -> list[tuple[float, float, int]]:
        return [(self.edges[i], self.edges[i + 1], self.counts[i])
                for i in range(len(self.counts))]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bin_start", "bin_end", "count"])
        for lo, hi, n in self.bins:
            w.writerow([repr(lo), repr(hi), n])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"edges": list(self.edges), "counts": list(self.counts),
                "underflow": self.underflow, "overflow": self.overflow}


def histogram(values, bins: int, range: tuple[float, float]) -> Histogram:
    """Equal-width bins over ``range``.

    Bins are half-open ``[start, end)`` except the last, which is closed.
    Values below or above the range go to ``underflow``/``overflow``.
    """
    lo, hi = float(range[0]), float(range[1])
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    if not lo < hi:
        raise ValueError(f"invalid range [{lo}, {hi}]")
    x = np.asarray(values, dtype=float)
    counts, edges = np.histogram(x, bins=bins, range=(lo, hi))
    return Histogram(
        edges=tuple(float(e) for e in edges),
        counts=tuple(int(v) for v in counts),
        underflow=int(np.count_nonzero(x < lo)),
        overflow=int(np.count_nonzero(x > hi)),
    )


@dataclass(frozen=True)
class SimulationConfig:
    rows: int
    cols: int
    n: int
    reps: int
    seed: int
    generator: Generator
    model: ExpectationModel
    bins: int = 20

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError(f"reps must be >= 1, got {self.reps}")
        if self.rows < 1 or self.cols < 1 or self.rows * self.cols < 2:
            raise ValueError(f"need rc >= 2, got {self.rows}x{self.cols}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if isinstance(self.model, FixedGiven):
            raise ValueError("simulation supports the independence and uniform models")
        if self.bins < 1:
            raise ValueError(f"bins must be >= 1, got {self.bins}")

    def to_dict(self) -> dict:
        gen = self.generator.name
        if isinstance(self.generator, IncludeExtremal):
            gen = f"{gen}({self.generator.inner.name})"
        return {"rows": self.rows, "cols": self.cols, "n": self.n, "reps": self.reps,
                "seed": self.seed, "generator": gen, "model": self.model.tag,
                "bins": self.bins}


@dataclass(frozen=True)
class SimulationReport:
    config: SimulationConfig
    v: StatSummary
    modified_v: StatSummary
    v_values: np.ndarray = field(repr=False)
    modified_v_values: np.ndarray = field(repr=False)
    v_histogram: Histogram
    modified_v_histogram: Histogram
    note: str = DISCREPANCY_NOTE

    def to_dict(self, include_samples: bool = False) -> dict:
        d = {
            "config": self.config.to_dict(),
            "summary": {"v": self.v.to_dict(), "modified_v": self.modified_v.to_dict()},
            "histogram": {"v": self.v_histogram.to_dict(),
                          "modified_v": self.modified_v_histogram.to_dict()},
            "note": self.note,
        }
        if include_samples:
            d["samples"] = {"v": self.v_values.tolist(),
                            "modified_v": self.modified_v_values.tolist()}
        return d

    def to_json(self, include_samples: bool = False) -> str:
        return json.dumps(self.to_dict(include_samples), indent=2) + "\n"

    def samples_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["draw", "v", "modified_v"])
        for i, (v, mv) in enumerate(zip(self.v_values.tolist(),
                                        self.modified_v_values.tolist())):
            w.writerow([i, repr(v), repr(mv)])
        return buf.getvalue()

    def summary_text(self) -> str:
        """Six-number summaries in the published row order, 4 decimals."""
        lines = [f"{'':<8} {'V':>10} {'modified V':>12}"]
        for label, a, b in zip(StatSummary.LABELS, self.v.as_tuple(),
                               self.modified_v.as_tuple()):
            lines.append(f"{label:<8} {a:>10.4f} {b:>12.4f}")
        return "\n".join(lines) + "\n"


def simulate_statistics(cfg: SimulationConfig) -> tuple[np.ndarray, np.ndarray]:
    """Per-draw V and modified V for every draw of the run."""
    tables = generate_tables(cfg.rows, cfg.cols, cfg.n, cfg.generator, cfg.seed,
                             np.arange(cfg.reps), final_index=cfg.reps - 1)
    chi2 = chi_square_counts(tables, cfg.model)
    v = v_from_chi_square(chi2, cfg.n, cfg.rows, cfg.cols)
    mv = modified_v_from_chi_square(chi2, cfg.n, cfg.rows, cfg.cols)
    return np.asarray(v, dtype=float), np.asarray(mv, dtype=float)


def run_simulation(cfg: SimulationConfig) -> SimulationReport:
    """Run ``cfg.reps`` draws and summarize V and modified V.

    Histograms use ``cfg.bins`` equal bins from 0 to the largest value the
    statistic can take under ``cfg.model``.
    """
    v, mv = simulate_statistics(cfg)
    r, c = cfg.rows, cfg.cols
    return SimulationReport(
        config=cfg,
        v=six_number_summary(v),
        modified_v=six_number_summary(mv),
        v_values=v,
        modified_v_values=mv,
        v_histogram=histogram(v, cfg.bins, (0.0, max_v(r, c, cfg.model))),
        modified_v_histogram=histogram(mv, cfg.bins, (0.0, max_modified_v(r, c, cfg.model))),
    )
