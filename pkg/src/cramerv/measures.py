"""Chi-square, mean square contingency, Cramer's V and the rc-1 normalized V.

Every statistic takes an explicit expectation model. There is no default:
the expected counts used for chi-square are a modelling choice, and the
two common choices give very different maxima.

* :class:`IndependenceMargins` uses ``e_ij = x_i. * x_.j / n``.
* :class:`FixedUniform` uses ``e_ij = n / (r c)``.
* :class:`FixedGiven` uses caller-supplied expectations.

Under independence margins V lies in [0, 1]. Under the uniform model V can
reach ``sqrt((rc - 1) / min(r - 1, c - 1))`` while the modified V stays in
[0, 1].
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .tables import ContingencyTable, ProbabilityTable, TableError, as_table


class ModelError(ValueError):
    """An expectation model is incompatible with the table it is applied to."""


class DegenerateDimensionError(ValueError):
    """The statistic's normalizer is zero for this table shape."""


@dataclass(frozen=True)
class IndependenceMargins:
    tag = "independence"


@dataclass(frozen=True)
class FixedUniform:
    tag = "uniform"


@dataclass(frozen=True, eq=False)
class FixedGiven:
    """Caller-supplied expected counts; all entries must be positive."""

    expected: np.ndarray
    tag = "given"

    def __post_init__(self):
        e = np.array(self.expected, dtype=float)
        if e.ndim != 2:
            raise ModelError("expected counts must be a 2-d grid")
        if not np.all(np.isfinite(e)) or np.any(e <= 0):
            raise ModelError("expected counts must be finite and positive")
        e.setflags(write=False)
        object.__setattr__(self, "expected", e)


ExpectationModel = IndependenceMargins | FixedUniform | FixedGiven

INDEPENDENCE = IndependenceMargins()
UNIFORM = FixedUniform()

_BY_NAME = {"independence": INDEPENDENCE, "uniform": UNIFORM}


def model_from_name(name: str) -> ExpectationModel:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ModelError(f"unknown expectation model {name!r}; "
                         f"choose from {sorted(_BY_NAME)}") from None


def _check_model(model) -> None:
    if not isinstance(model, (IndependenceMargins, FixedUniform, FixedGiven)):
        raise TypeError(f"expected an ExpectationModel, got {type(model).__name__}")


def expected_counts(t: ContingencyTable, model: ExpectationModel) -> np.ndarray:
    """Expected counts ``e_ij`` for ``t`` under ``model``."""
    t = as_table(t)
    _check_model(model)
    n = t.total
    if n == 0:
        raise TableError("empty table: total count is zero")
    if isinstance(model, IndependenceMargins):
        return np.outer(t.row_sums, t.col_sums) / n
    if isinstance(model, FixedUniform):
        return np.full(t.shape, n / (t.rows * t.cols))
    e = model.expected
    if e.shape != t.shape:
        raise ModelError(f"expected grid has shape {e.shape}, table has {t.shape}")
    if abs(e.sum() - n) > 1e-6 * n:
        raise ModelError(f"expected counts sum to {e.sum()!r}, table total is {n}")
    return e.copy()


def chi_square_counts(counts: np.ndarray, model: ExpectationModel) -> np.ndarray:
    """Chi-square over the trailing two axes of an integer count array.

    Works on a single ``(r, c)`` grid or a stack ``(..., r, c)``. For the
    independence and uniform models the deviations are formed from exact
    integer numerators, ``(x n - x_i. x_.j)`` and ``(rc x - n)``, so a table
    that matches its expectation exactly gives exactly zero. Cells with zero
    expectation contribute nothing.
    """
    x = np.asarray(counts, dtype=np.int64)
    r, c = x.shape[-2:]
    n = x.sum(axis=(-2, -1))
    if np.any(n == 0):
        raise TableError("empty table: total count is zero")
    if np.max(n) >= 2**31:
        x = x.astype(object)
        n = x.sum(axis=(-2, -1))
    n_cell = np.asarray(n)[..., None, None]

    if isinstance(model, IndependenceMargins):
        rows = x.sum(axis=-1)[..., :, None]
        cols = x.sum(axis=-2)[..., None, :]
        rc = rows * cols
        dev = (x * n_cell - rc).astype(float)
        denom = n_cell.astype(float) * rc.astype(float)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(denom > 0, dev * dev / denom, 0.0)
        return terms.sum(axis=(-2, -1))
    if isinstance(model, FixedUniform):
        k = r * c
        dev = (x * k - n_cell).astype(float)
        return (dev * dev).sum(axis=(-2, -1)) / (k * np.asarray(n).astype(float))
    if isinstance(model, FixedGiven):
        if x.ndim != 2:
            raise ModelError("FixedGiven applies to a single table, not a stack")
        e = expected_counts(ContingencyTable(x), model)
        xf = x.astype(float)
        return float((((xf - e) ** 2) / e).sum())
    _check_model(model)


def chi_square(t: ContingencyTable, model: ExpectationModel) -> float:
    """Pearson's chi-square of ``t`` against the model's expected counts."""
    t = as_table(t)
    _check_model(model)
    return float(chi_square_counts(t.counts, model))


def mean_square_contingency(p: ProbabilityTable) -> float:
    """Mean square contingency (phi squared) of a probability table.

    Cells whose row or column margin is zero contribute nothing.
    """
    if not isinstance(p, ProbabilityTable):
        p = ProbabilityTable(np.asarray(p, dtype=float))
    indep = np.outer(p.row_margins, p.col_margins)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(indep > 0, (p.probs - indep) ** 2 / indep, 0.0)
    return float(terms.sum())


def _min_dim(r: int, c: int) -> int:
    return min(r - 1, c - 1)


def v_from_chi_square(chi2, n, r: int, c: int):
    m = _min_dim(r, c)
    if m < 1:
        raise DegenerateDimensionError(
            f"degenerate dimension: V undefined for a {r}x{c} table")
    return np.sqrt(chi2 / (n * m))


def modified_v_from_chi_square(chi2, n, r: int, c: int):
    if r * c < 2:
        raise DegenerateDimensionError(
            f"degenerate dimension: modified V undefined for a {r}x{c} table")
    return np.sqrt(chi2 / (n * (r * c - 1)))


def cramers_v(t: ContingencyTable, model: ExpectationModel) -> float:
    """Cramer's V: ``sqrt(chi2 / (n * min(r - 1, c - 1)))``."""
    t = as_table(t)
    v_from_chi_square(0.0, 1, t.rows, t.cols)  # dimension check before any work
    return float(v_from_chi_square(chi_square(t, model), t.total, t.rows, t.cols))


def modified_v(t: ContingencyTable, model: ExpectationModel) -> float:
    """V normalized by ``rc - 1`` instead of ``min(r - 1, c - 1)``.

    Reaches exactly 1 on a one-hot table under :data:`UNIFORM`.
    """
    t = as_table(t)
    modified_v_from_chi_square(0.0, 1, t.rows, t.cols)
    return float(modified_v_from_chi_square(chi_square(t, model), t.total, t.rows, t.cols))


@dataclass(frozen=True)
class StatResult:
    chi_square: float
    phi_square: float
    v: float
    modified_v: float
    model: str
    rows: int
    cols: int
    n: int

    @property
    def dims(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        # json uses repr for floats, which round-trips exactly
        return json.dumps(self.to_dict())


def compute_all(t: ContingencyTable, model: ExpectationModel) -> StatResult:
    """All four statistics from one chi-square evaluation."""
    t = as_table(t)
    _check_model(model)
    r, c, n = t.rows, t.cols, t.total
    v_from_chi_square(0.0, 1, r, c)
    chi2 = chi_square(t, model)
    return StatResult(
        chi_square=chi2,
        phi_square=chi2 / n,
        v=float(v_from_chi_square(chi2, n, r, c)),
        modified_v=float(modified_v_from_chi_square(chi2, n, r, c)),
        model=model.tag,
        rows=r,
        cols=c,
        n=n,
    )


def max_v(r: int, c: int, model: ExpectationModel) -> float:
    """Largest value V can take on an r x c table under ``model``."""
    if isinstance(model, IndependenceMargins):
        return 1.0
    if isinstance(model, FixedUniform):
        return math.sqrt((r * c - 1) / _min_dim(r, c))
    raise ModelError("no closed-form maximum for a given-expectation model")


def max_modified_v(r: int, c: int, model: ExpectationModel) -> float:
    """Largest value modified V can take on an r x c table under ``model``."""
    if isinstance(model, IndependenceMargins):
        return math.sqrt(min(r - 1, c - 1) / (r * c - 1))
    if isinstance(model, FixedUniform):
        return 1.0
    raise ModelError("no closed-form maximum for a given-expectation model")
