"""Exhaustive certification of chi-square maxima over integer tables.

Every r x c table with total n is a weak composition of n into rc ordered
parts. :func:`enumerate_tables` walks them all, :func:`certify_max` keeps
the exact maximum of chi-square under a model, and
:func:`sup_phi_square_scan` probes phi squared on a rational grid of
probability tables.

Comparisons are exact. Under the uniform model chi-square is
``rc * sum(x**2) / n - n`` so ranking by ``sum(x**2)`` is enough. Under
independence margins chi-square is ``n * (S - 1)`` with
``S = sum(x_ij**2 / (x_i. x_.j))``; ``S`` is kept as an integer fraction.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .measures import (
    ExpectationModel,
    FixedUniform,
    IndependenceMargins,
    ModelError,
    mean_square_contingency,
)
from .tables import ContingencyTable, ProbabilityTable

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "ASSOC_BUDGET"


class BudgetExceeded(RuntimeError):
    """Enumeration would visit more tables than the budget allows."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} tables, budget is {budget}")


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"{BUDGET_ENV} must be nonnegative, got {value}")
    return value


def count_tables(r: int, c: int, n: int) -> int:
    """Number of r x c tables with total n: ``C(n + rc - 1, rc - 1)``."""
    k = r * c
    return math.comb(n + k - 1, k - 1)


def _check_budget(required: int, budget: int | None) -> None:
    if budget is None:
        budget = default_budget()
    if required > budget:
        raise BudgetExceeded(required, budget)


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``n`` into ``k`` parts.

    Ordered lexicographically with the leading part descending, so the
    first composition is ``(n, 0, ..., 0)`` and the last ``(0, ..., 0, n)``.
    """
    if k == 1:
        yield (n,)
        return
    parts = [0] * k
    parts[0] = n
    yield tuple(parts)
    while parts[-1] != n:
        # Rightmost nonzero part among the first k-1 gives one unit to its
        # right neighbour, which then absorbs everything after it.
        j = k - 2
        while parts[j] == 0:
            j -= 1
        parts[j] -= 1
        tail = parts[-1] + 1
        parts[j + 1:] = [0] * (k - j - 1)
        parts[j + 1] = tail
        yield tuple(parts)


def enumerate_tables(r: int, c: int, n: int,
                     visitor: Callable[[ContingencyTable], object] | None = None,
                     budget: int | None = None) -> int:
    """Visit every r x c nonnegative integer table with total ``n`` once.

    Tables are visited in the order of :func:`compositions` over the
    row-major cells. Returns the number visited.

    Raises:
        BudgetExceeded: if the table count exceeds ``budget`` (default
            10**8, or ``$ASSOC_BUDGET``). Nothing is visited in that case.
    """
    if r < 1 or c < 1:
        raise ValueError(f"need r, c >= 1, got {r}x{c}")
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    _check_budget(count_tables(r, c, n), budget)
    seen = 0
    for parts in compositions(n, r * c):
        if visitor is not None:
            visitor(ContingencyTable(np.array(parts, dtype=np.int64).reshape(r, c)))
        seen += 1
    return seen


def _uniform_key(parts, r, c):
    return sum(v * v for v in parts)


def _independence_key(parts, r, c):
    rows = [sum(parts[i * c:(i + 1) * c]) for i in range(r)]
    cols = [sum(parts[j::c]) for j in range(c)]
    num = 0
    den = 1
    for i in range(r):
        ri = rows[i]
        if ri == 0:
            continue
        for j in range(c):
            x = parts[i * c + j]
            if x:
                d = ri * cols[j]
                # num/den += x*x/d, kept unreduced
                num = num * d + x * x * den
                den *= d
    return Fraction(num, den)


def _key_fn(model):
    if isinstance(model, FixedUniform):
        return _uniform_key
    if isinstance(model, IndependenceMargins):
        return _independence_key
    raise ModelError("certify_max supports the independence and uniform models only")


def _chi_from_key(key, model, r, c, n) -> Fraction:
    if isinstance(model, FixedUniform):
        return Fraction(r * c * key, n) - n
    return n * (key - 1) if key else Fraction(0)


def _best_with_first(args) -> tuple[object, tuple[int, ...], int]:
    """Best (key, parts) among tables whose first cell equals ``first``."""
    r, c, n, first, model = args
    key_fn = _key_fn(model)
    best_key, best_parts, seen = None, None, 0
    k = r * c
    rest_iter = compositions(n - first, k - 1) if k > 1 else iter([()])
    for rest in rest_iter:
        parts = (first,) + rest
        key = key_fn(parts, r, c)
        seen += 1
        if best_key is None or key > best_key:
            best_key, best_parts = key, parts
    return best_key, best_parts, seen


def _merge(results):
    # results arrive in enumeration order (first cell descending); strict >
    # keeps the earliest table on ties
    best_key, best_parts, seen = None, None, 0
    for key, parts, count in results:
        seen += count
        if parts is None:
            continue
        if best_key is None or key > best_key:
            best_key, best_parts = key, parts
    return best_key, best_parts, seen


@dataclass(frozen=True)
class MaxCertificate:
    rows: int
    cols: int
    n: int
    model: str
    max_chi_square: float
    max_chi_square_exact: Fraction
    argmax_table: ContingencyTable
    tables_examined: int
    theoretical_claim: float

    @property
    def dims(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def total(self) -> int:
        return self.n

    @property
    def claim_label(self) -> str:
        return "n(rc-1)" if self.model == "uniform" else "n(min(r,c)-1)"

    @property
    def verdict(self) -> str:
        """``"matches"``, ``"below"`` or ``"exceeds"`` the theoretical claim."""
        claim = Fraction(self.theoretical_claim)
        if self.max_chi_square_exact == claim:
            return "matches"
        return "below" if self.max_chi_square_exact < claim else "exceeds"

    def is_one_hot(self) -> bool:
        return int(np.count_nonzero(self.argmax_table.counts)) <= 1

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "n": self.n,
            "model": self.model,
            "max_chi_square": self.max_chi_square,
            "argmax": self.argmax_table.tolist(),
            "tables_examined": self.tables_examined,
            "theoretical_claim": self.theoretical_claim,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def theoretical_claim(r: int, c: int, n: int, model: ExpectationModel) -> int:
    """Claimed chi-square maximum: n(rc-1) uniform, n(min(r,c)-1) independence."""
    if isinstance(model, FixedUniform):
        return n * (r * c - 1)
    if isinstance(model, IndependenceMargins):
        return n * (min(r, c) - 1)
    raise ModelError("no claimed maximum for a given-expectation model")


def certify_max(r: int, c: int, n: int, model: ExpectationModel,
                budget: int | None = None, workers: int = 1) -> MaxCertificate:
    """Exact maximum of chi-square over every r x c table with total ``n``.

    Ties go to the table visited first, i.e. the lexicographically largest
    row-major count vector. With ``workers > 1`` the search is split by the
    value of the first cell across processes; the result is identical to
    the sequential one.
    """
    if r < 1 or c < 1:
        raise ValueError(f"need r, c >= 1, got {r}x{c}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    _key_fn(model)
    _check_budget(count_tables(r, c, n), budget)

    tasks = [(r, c, n, first, model) for first in range(n, -1, -1)]
    if r * c == 1:
        tasks = tasks[:1]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_best_with_first, tasks))
    else:
        results = [_best_with_first(t) for t in tasks]
    best_key, best_parts, seen = _merge(results)

    exact = _chi_from_key(best_key, model, r, c, n)
    return MaxCertificate(
        rows=r,
        cols=c,
        n=n,
        model=model.tag,
        max_chi_square=float(exact),
        max_chi_square_exact=Fraction(exact),
        argmax_table=ContingencyTable(np.array(best_parts, dtype=np.int64).reshape(r, c)),
        tables_examined=seen,
        theoretical_claim=float(theoretical_claim(r, c, n, model)),
    )


def extremal_table(r: int, c: int, n: int) -> ContingencyTable:
    """The one-hot table with all ``n`` counts in the top-left cell."""
    if r < 1 or c < 1:
        raise ValueError(f"need r, c >= 1, got {r}x{c}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    counts = np.zeros((r, c), dtype=np.int64)
    counts[0, 0] = n
    return ContingencyTable(counts)


@dataclass(frozen=True)
class PhiScan:
    """Largest phi squared found on the 1/grid lattice of probability tables.

    Both candidate ceilings are carried alongside the value: ``min(r,c)-1``
    and ``rc-1``. No judgement is made about which one is attained.
    """

    rows: int
    cols: int
    grid: int
    sup_phi_square: float
    argmax: ProbabilityTable
    tables_examined: int
    ceiling_min_dim: int
    ceiling_cells: int

    def __float__(self):
        return self.sup_phi_square

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "grid": self.grid,
            "sup_phi_square": self.sup_phi_square,
            "argmax": self.argmax.probs.tolist(),
            "tables_examined": self.tables_examined,
            "ceiling_min_dim": self.ceiling_min_dim,
            "ceiling_cells": self.ceiling_cells,
        }


def sup_phi_square_scan(r: int, c: int, grid_resolution: int,
                        budget: int | None = None) -> PhiScan:
    """Maximize phi squared over probability tables with entries in k/g.

    Each candidate is evaluated with :func:`mean_square_contingency` on the
    normalized table. Ties keep the first table in enumeration order.
    """
    g = grid_resolution
    if r < 2 or c < 2:
        raise ValueError(f"need r, c >= 2, got {r}x{c}")
    if g < 2:
        raise ValueError(f"grid resolution must be >= 2, got {g}")
    _check_budget(count_tables(r, c, g), budget)

    best, best_parts, seen = -1.0, None, 0
    for parts in compositions(g, r * c):
        p = ProbabilityTable(np.array(parts, dtype=float).reshape(r, c) / g)
        val = mean_square_contingency(p)
        seen += 1
        if val > best:
            best, best_parts = val, parts
    return PhiScan(
        rows=r,
        cols=c,
        grid=g,
        sup_phi_square=best,
        argmax=ProbabilityTable(np.array(best_parts, dtype=float).reshape(r, c) / g),
        tables_examined=seen,
        ceiling_min_dim=min(r, c) - 1,
        ceiling_cells=r * c - 1,
    )
