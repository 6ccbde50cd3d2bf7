"""Snippet window selection and highlighting."""

import pytest

from luandri.snippets import SnippetConfig, generate_snippet


def test_short_document_rendered_whole():
    got = generate_snippet(["a", "b", "c"], {1})
    assert got == "a <b>b</b> c"


def test_no_matches_yields_plain_prefix():
    tokens = [f"w{i}" for i in range(40)]
    got = generate_snippet(tokens, set())
    assert got.startswith("w0 w1")
    assert got.endswith(" ...")
    assert "<b>" not in got


def test_window_maximizes_match_count():
    tokens = ["x"] * 50 + ["hit", "x", "hit"] + ["x"] * 50
    got = generate_snippet(tokens, {50, 52})
    assert got.count("<b>hit</b>") == 2


def test_leftmost_window_wins_ties():
    tokens = ["x"] * 100
    tokens[10] = "first"
    tokens[80] = "second"
    got = generate_snippet(tokens, {10, 80})
    assert "<b>first</b>" in got
    assert "second" not in got


def test_ellipsis_affixes():
    tokens = [f"w{i}" for i in range(100)]
    middle = generate_snippet(tokens, {50})
    assert middle.startswith("... ")
    assert middle.endswith(" ...")
    start = generate_snippet(tokens, {0})
    assert not start.startswith("... ")
    assert start.endswith(" ...")
    end = generate_snippet(tokens, {99})
    assert end.startswith("... ")
    assert not end.endswith(" ...")


def test_empty_document():
    assert generate_snippet([], set()) == ""


def test_custom_markers_and_width():
    config = SnippetConfig(window_width=3, highlight_open="[", highlight_close="]")
    got = generate_snippet(["a", "b", "c", "d", "e"], {2}, config)
    assert "[c]" in got
    assert len(got.replace("... ", "").replace(" ...", "").split(" ")) == 3


def test_width_must_be_positive():
    with pytest.raises(ValueError):
        generate_snippet(["a"], set(), SnippetConfig(window_width=0))
