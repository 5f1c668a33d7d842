import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cramerv.tables import (
    ContingencyTable,
    ProbabilityTable,
    TableError,
    margins,
    parse_table,
    serialize,
    to_probability,
)

grids = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 1000), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def test_parse_one_hot():
    t = parse_table("200,0\n0,0")
    assert t.shape == (2, 2)
    assert t.total == 200
    assert t.row_sums.tolist() == [200, 0]
    assert t.col_sums.tolist() == [200, 0]


def test_parse_diagonal():
    t = parse_table("10,0\n0,10")
    assert t.total == 20
    assert t.row_sums.tolist() == [10, 10]
    assert t.col_sums.tolist() == [10, 10]


def test_parse_skips_header_and_blank_lines():
    t = parse_table("B1,B2\n1, 2\n\n3,4\n")
    assert t.tolist() == [[1, 2], [3, 4]]


@pytest.mark.parametrize("text, fragment", [
    ("1,2,x\n4,5,6", "non-integer"),
    ("1,2\n3", "ragged"),
    ("1,-2\n3,4", "negative"),
    ("1.5,2\n3,4", "non-integer"),
    ("", "empty"),
    ("a,b\n", "empty"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(TableError, match=fragment):
        parse_table(text)


def test_parse_error_names_line():
    with pytest.raises(TableError, match="line 3"):
        parse_table("r,c\n1,2\n3,x\n")


@pytest.mark.parametrize("counts, rows, cols, n", [
    ([[1, 2], [3, 4]], [3, 7], [4, 6], 10),
    ([[5]], [5], [5], 5),
    ([[0, 7], [0, 0]], [7, 0], [0, 7], 7),
])
def test_margins(counts, rows, cols, n):
    t = ContingencyTable(np.array(counts))
    r, c, total = margins(t)
    assert r.tolist() == rows and c.tolist() == cols and total == n
    assert margins(t)[2] == total


def test_to_probability():
    p = to_probability(ContingencyTable(np.array([[10, 0], [0, 10]])))
    assert p.probs.tolist() == [[0.5, 0.0], [0.0, 0.5]]
    assert p.row_margins.tolist() == [0.5, 0.5]
    p = to_probability(ContingencyTable(np.array([[200, 0], [0, 0]])))
    assert p.probs.tolist() == [[1.0, 0.0], [0.0, 0.0]]


def test_to_probability_empty():
    with pytest.raises(TableError, match="empty table"):
        to_probability(ContingencyTable(np.zeros((2, 2), dtype=int)))


def test_tables_are_immutable():
    t = ContingencyTable(np.array([[1, 2], [3, 4]]))
    with pytest.raises(ValueError):
        t.counts[0, 0] = 9
    with pytest.raises(AttributeError):
        t.total = 3


def test_construction_rejects_bad_counts():
    with pytest.raises(TableError):
        ContingencyTable(np.array([[1, -1]]))
    with pytest.raises(TableError):
        ContingencyTable(np.array([[0.5, 1]]))
    with pytest.raises(TableError):
        ContingencyTable(np.array([1, 2]))


def test_probability_table_validation():
    with pytest.raises(TableError):
        ProbabilityTable(np.array([[0.5, 0.4]]))
    with pytest.raises(TableError):
        ProbabilityTable(np.array([[1.5, -0.5]]))
    ProbabilityTable(np.array([[0.5, 0.5 + 5e-10]]))


def test_json_round_trip():
    t = ContingencyTable(np.array([[1, 2], [3, 4]]))
    assert json.loads(t.to_json()) == {"counts": [[1, 2], [3, 4]], "n": 10}
    assert ContingencyTable.from_json(t.to_json()) == t
    with pytest.raises(TableError, match="disagrees"):
        ContingencyTable.from_json('{"counts": [[1]], "n": 2}')


@given(grids)
def test_csv_round_trip(grid):
    t = ContingencyTable(np.array(grid))
    assert parse_table(serialize(t)).tolist() == grid


@given(grids)
def test_probability_round_trip(grid):
    t = ContingencyTable(np.array(grid))
    if t.total == 0:
        return
    p = to_probability(t)
    assert np.array_equal(np.rint(p.probs * t.total).astype(int), t.counts)
    assert np.allclose(p.row_margins, p.probs.sum(axis=1))


@given(grids)
def test_cached_margins_match_recomputed(grid):
    t = ContingencyTable(np.array(grid))
    assert t.row_sums.tolist() == [sum(row) for row in grid]
    assert t.col_sums.tolist() == [sum(col) for col in zip(*grid)]
    assert t.total == sum(map(sum, grid))
