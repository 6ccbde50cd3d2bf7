"""Tokenizer and corpus parsing."""

import pytest

from luandri.errors import DuplicateDocumentError, IngestError
from luandri.index import build_index
from luandri.ingest import parse_plaintext, parse_trec, tokenize


def test_tokenize_lowercases_and_splits_on_nonalnum():
    assert tokenize("Neural-networks, DEEP learning!") == [
        "neural",
        "networks",
        "deep",
        "learning",
    ]


def test_tokenize_keeps_digits_and_drops_underscores():
    assert tokenize("od12 a_b 2009") == ["od12", "a", "b", "2009"]


def test_tokenize_unicode_words():
    assert tokenize("Schrödinger's cat café") == ["schrödinger", "s", "cat", "café"]


def test_tokenize_empty_and_punctuation_only():
    assert tokenize("") == []
    assert tokenize("..., --- !!") == []


def test_parse_trec_basic():
    docs = parse_trec(
        b"<DOC>\n<DOCNO>d1</DOCNO>\n<TEXT>Hello world</TEXT>\n</DOC>\n"
    )
    assert len(docs) == 1
    assert docs[0].name == "d1"
    assert docs[0].tokens == ["hello", "world"]
    assert docs[0].fields == {}


def test_parse_trec_extracts_numeric_fields():
    data = (
        b"<DOC>\n<DOCNO>d1</DOCNO>\n<YEAR>2009</YEAR>\n<TEXT>a</TEXT>\n</DOC>\n"
        b"<DOC>\n<DOCNO>d2</DOCNO>\n<PRICE>-3</PRICE>\n<TEXT>b</TEXT>\n</DOC>\n"
    )
    docs = parse_trec(data, {"year", "price"})
    assert docs[0].fields == {"year": 2009}
    assert docs[1].fields == {"price": -3}


def test_parse_trec_missing_docno_is_an_error():
    with pytest.raises(IngestError) as err:
        parse_trec(b"<DOC>\n<TEXT>orphan</TEXT>\n</DOC>\n")
    assert "DOCNO" in str(err.value)


def test_parse_trec_unterminated_doc_is_an_error():
    with pytest.raises(IngestError):
        parse_trec(b"<DOC>\n<DOCNO>d1</DOCNO>\n<TEXT>never closed")


def test_parse_trec_non_numeric_field_warns_and_skips(caplog):
    data = b"<DOC>\n<DOCNO>d1</DOCNO>\n<YEAR>MMIX</YEAR>\n<TEXT>a</TEXT>\n</DOC>\n"
    with caplog.at_level("WARNING", logger="luandri.ingest"):
        docs = parse_trec(data, {"year"})
    assert docs[0].fields == {}
    assert any("not an integer" in r.message for r in caplog.records)


def test_parse_trec_undeclared_fields_are_ignored():
    data = b"<DOC>\n<DOCNO>d1</DOCNO>\n<YEAR>2009</YEAR>\n<TEXT>a</TEXT>\n</DOC>\n"
    docs = parse_trec(data)
    assert docs[0].fields == {}


def test_parse_trec_field_tags_match_any_case():
    data = b"<DOC><DOCNO>d1</DOCNO><year>2010</year><TEXT>deep learning</TEXT></DOC>"
    docs = parse_trec(data, {"year"})
    assert docs[0].fields == {"year": 2010}
    assert docs[0].tokens == ["deep", "learning"]


def test_parse_trec_empty_input():
    assert parse_trec(b"") == []


def test_parse_trec_duplicate_docno_rejected():
    data = (
        b"<DOC>\n<DOCNO>d1</DOCNO>\n<TEXT>a</TEXT>\n</DOC>\n"
        b"<DOC>\n<DOCNO>d1</DOCNO>\n<TEXT>b</TEXT>\n</DOC>\n"
    )
    with pytest.raises(DuplicateDocumentError):
        parse_trec(data)


def test_parse_plaintext_invalid_utf8_is_an_error():
    with pytest.raises(IngestError):
        parse_plaintext("c.txt", b"\xff\xfe")


def test_parse_plaintext_empty_document_permitted():
    doc = parse_plaintext("b.txt", b"")
    assert doc.tokens == []


def test_parse_plaintext_uses_given_name():
    doc = parse_plaintext("notes.txt", "Water DEEPLY, but rarely.".encode())
    assert doc.name == "notes.txt"
    assert doc.tokens == ["water", "deeply", "but", "rarely"]


def test_duplicate_document_names_rejected_at_build():
    docs = [parse_plaintext("same", b"one"), parse_plaintext("same", b"two")]
    with pytest.raises(DuplicateDocumentError):
        build_index(docs)
