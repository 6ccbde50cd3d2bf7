"""The index and search commands."""

import json
import subprocess
import sys

import pytest

from luandri.cli import main

from conftest import TOY_TREC


@pytest.fixture
def toy_corpus_file(tmp_path):
    path = tmp_path / "corpus.trec"
    path.write_bytes(TOY_TREC)
    return path


@pytest.fixture
def built_index(toy_corpus_file, tmp_path, capsys):
    out = tmp_path / "idx"
    rc = main(
        [
            "index",
            "--corpus",
            str(toy_corpus_file),
            "--format",
            "trec",
            "--out",
            str(out),
            "--fields",
            "year",
        ]
    )
    assert rc == 0
    capsys.readouterr()
    return out


def test_index_reports_statistics(toy_corpus_file, tmp_path, capsys):
    rc = main(
        ["index", "--corpus", str(toy_corpus_file), "--out", str(tmp_path / "idx"), "--fields", "year"]
    )
    captured = capsys.readouterr()
    assert rc == 0
    lines = dict(line.split() for line in captured.out.strip().splitlines())
    assert lines["doc_count"] == "6"
    assert int(lines["total_terms"]) > 0
    assert int(lines["vocab_size"]) > 0


def test_index_text_directory(tmp_path, capsys):
    corpus = tmp_path / "texts"
    corpus.mkdir()
    (corpus / "one.txt").write_text("water the garden")
    (corpus / "two.txt").write_text("deep learning garden")
    rc = main(
        ["index", "--corpus", str(corpus), "--format", "text", "--out", str(tmp_path / "idx")]
    )
    captured = capsys.readouterr()
    assert rc == 0
    assert "doc_count 2" in captured.out


def test_index_unreadable_corpus_fails(tmp_path, capsys):
    rc = main(["index", "--corpus", str(tmp_path / "missing"), "--out", str(tmp_path / "idx")])
    captured = capsys.readouterr()
    assert rc != 0
    assert "error" in captured.err


def test_search_single_query(built_index, capsys):
    rc = main(
        [
            "search",
            "--index",
            str(built_index),
            "--query",
            "#syn( #od1(neural networks) #od1(deep learning)) #greater(year 2009)",
        ]
    )
    captured = capsys.readouterr()
    assert rc == 0
    lines = captured.out.strip().splitlines()
    assert lines[0].startswith("1 ")
    names = [line.split()[2] for line in lines if line[0].isdigit()]
    assert names == ["doc-a", "doc-b"]


def test_search_results_match_library_calls(built_index, capsys):
    from luandri.index import open_index
    from luandri.retrieval import SearchRequest, run_query

    rc = main(["search", "--index", str(built_index), "--query", "deep learning", "--json"])
    captured = capsys.readouterr()
    assert rc == 0
    got = json.loads(captured.out)["results"]
    expected = run_query(open_index(built_index), SearchRequest(query="deep learning"))
    assert len(got) == len(expected)
    for g, e in zip(got, expected):
        assert g["docid"] == e.docid
        assert g["documentName"] == e.document_name
        assert g["snippet"] == e.snippet
        assert g["score"] == e.score


def test_search_parse_error_exits_2(built_index, capsys):
    rc = main(["search", "--index", str(built_index), "--query", "#od0(a b)"])
    captured = capsys.readouterr()
    assert rc == 2
    assert "parse error at byte" in captured.err


def test_search_n_zero(built_index, capsys):
    rc = main(["search", "--index", str(built_index), "--query", "neural", "-n", "0"])
    captured = capsys.readouterr()
    assert rc == 0
    assert captured.out.strip() == ""


def test_batch_mode_run_lines(built_index, tmp_path, capsys):
    batch = tmp_path / "queries.tsv"
    batch.write_text("q1\tneural networks\nq2\tdeep learning\n")
    rc = main(
        ["search", "--index", str(built_index), "--batch", str(batch), "-n", "3", "--run-tag", "trial"]
    )
    captured = capsys.readouterr()
    assert rc == 0
    lines = [line.split() for line in captured.out.strip().splitlines()]
    assert all(len(parts) == 6 for parts in lines)
    assert all(parts[1] == "Q0" for parts in lines)
    assert all(parts[5] == "trial" for parts in lines)
    by_qid = {}
    for parts in lines:
        by_qid.setdefault(parts[0], []).append(parts)
    for qid, rows in by_qid.items():
        ranks = [int(parts[3]) for parts in rows]
        assert ranks == list(range(1, len(rows) + 1)), qid
        scores = [float(parts[4]) for parts in rows]
        assert scores == sorted(scores, reverse=True)
    assert list(by_qid) == ["q1", "q2"]


def test_batch_empty_file(built_index, tmp_path, capsys):
    batch = tmp_path / "empty.tsv"
    batch.write_text("")
    rc = main(["search", "--index", str(built_index), "--batch", str(batch)])
    captured = capsys.readouterr()
    assert rc == 0
    assert captured.out == ""


def test_batch_malformed_line_fails(built_index, tmp_path, capsys):
    batch = tmp_path / "bad.tsv"
    batch.write_text("no tab separator here\n")
    rc = main(["search", "--index", str(built_index), "--batch", str(batch)])
    captured = capsys.readouterr()
    assert rc != 0
    assert "qid" in captured.err


def test_stopwords_file(built_index, tmp_path, capsys):
    stop = tmp_path / "stop.txt"
    stop.write_text("the\nand\nin\n")
    rc = main(
        ["search", "--index", str(built_index), "--query", "the deep learning", "--stopwords", str(stop), "--json"]
    )
    captured = capsys.readouterr()
    assert rc == 0
    with_stop = json.loads(captured.out)["results"]

    rc = main(["search", "--index", str(built_index), "--query", "deep learning", "--json"])
    captured = capsys.readouterr()
    assert rc == 0
    plain = json.loads(captured.out)["results"]
    assert [r["docid"] for r in with_stop] == [r["docid"] for r in plain]
    assert [r["score"] for r in with_stop] == [r["score"] for r in plain]


def test_missing_index_fails(tmp_path, capsys):
    rc = main(["search", "--index", str(tmp_path / "nope"), "--query", "x"])
    captured = capsys.readouterr()
    assert rc == 1
    assert "error" in captured.err


def test_console_script_round_trip(tmp_path):
    corpus = tmp_path / "corpus.trec"
    corpus.write_bytes(TOY_TREC)
    idx = tmp_path / "idx"
    build = subprocess.run(
        [sys.executable, "-m", "luandri", "index", "--corpus", str(corpus), "--out", str(idx), "--fields", "year"],
        capture_output=True,
        text=True,
    )
    assert build.returncode == 0, build.stderr
    search = subprocess.run(
        [sys.executable, "-m", "luandri", "search", "--index", str(idx), "--query", "gardening", "--json"],
        capture_output=True,
        text=True,
    )
    assert search.returncode == 0, search.stderr
    results = json.loads(search.stdout)["results"]
    assert results[0]["documentName"] == "doc-f"


def test_library_path_subcommand(capsys):
    rc = main(["library-path"])
    captured = capsys.readouterr()
    assert rc == 0
    assert captured.out.strip().endswith(".so")


def test_header_path_subcommand(capsys):
    rc = main(["header-path"])
    captured = capsys.readouterr()
    assert rc == 0
    assert captured.out.strip().endswith("luandri.h")
