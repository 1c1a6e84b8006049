"""Edge-list text format: parsing, errors with line numbers, round trips."""

from __future__ import annotations

import pytest

from rrobust.edgelist import (
    EdgeListError,
    format_edgelist,
    parse_edgelist,
    read_edgelist,
    write_edgelist,
)
from helpers import d3

D3_TEXT = "3 5\n1 2\n1 3\n2 1\n3 1\n3 2\n"


def test_format_is_sorted_and_stable():
    assert format_edgelist(d3()) == D3_TEXT


def test_parse_round_trip():
    assert parse_edgelist(D3_TEXT.splitlines(keepends=True)) == d3()


def test_file_round_trip(tmp_path):
    path = tmp_path / "g.txt"
    write_edgelist(d3(), path)
    assert path.read_text() == D3_TEXT
    assert read_edgelist(path) == d3()


def test_comments_ignored_anywhere():
    text = "# a comment\n2 1\n# another\n1 2\n"
    d = parse_edgelist(text.splitlines())
    assert d.n == 2 and d.has_edge(1, 2)


def test_empty_graph():
    assert parse_edgelist(["0 0"]).n == 0


@pytest.mark.parametrize(
    "lines,bad_line",
    [
        (["nope"], 1),
        (["1 2 3"], 1),
        (["2 1", "1"], 2),
        (["2 1", "1 x"], 2),
        (["-1 0"], 1),
        (["# only a comment"], 1),
    ],
)
def test_malformed_reports_line(lines, bad_line):
    with pytest.raises(EdgeListError) as err:
        parse_edgelist(lines)
    assert err.value.line == bad_line
    assert f"line {bad_line}" in str(err.value)


def test_self_loop_reports_line():
    with pytest.raises(EdgeListError) as err:
        parse_edgelist(["# hi", "2 1", "1 1"])
    assert err.value.line == 3


def test_out_of_range_reports_line():
    with pytest.raises(EdgeListError) as err:
        parse_edgelist(["2 1", "1 3"])
    assert err.value.line == 2


def test_edge_count_must_match():
    with pytest.raises(EdgeListError):
        parse_edgelist(["2 2", "1 2"])
    with pytest.raises(EdgeListError):
        parse_edgelist(["2 1", "1 2", "2 1"])


def test_duplicate_edge_rejected_with_line():
    with pytest.raises(EdgeListError) as err:
        parse_edgelist(["2 2", "1 2", "1 2"])
    assert err.value.line == 3


def test_missing_header():
    with pytest.raises(EdgeListError):
        parse_edgelist([])
