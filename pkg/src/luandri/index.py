"""Immutable positional index: build, persist, load, read postings.

A built or loaded :class:`IndexSnapshot` keeps postings in their encoded
on-disk form and decodes a term's block on access, so the in-memory and
persisted representations are observationally identical by construction.
Snapshots are immutable and safe for concurrent readers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from luandri import storage
from luandri.errors import (
    DuplicateDocumentError,
    IndexFormatError,
    MissingManifestError,
    VersionMismatchError,
)
from luandri.ingest import RawDocument
from luandri.kernels import decode_postings_block


@dataclass(frozen=True)
class PostingList:
    term: str
    entries: tuple  # ((docid, (positions...)), ...) docids ascending

    @property
    def df(self) -> int:
        return len(self.entries)

    @property
    def cf(self) -> int:
        return sum(len(p) for _, p in self.entries)


@dataclass(frozen=True)
class DocumentRecord:
    docid: int
    name: str
    doclen: int
    text_span: tuple[int, int]  # (byte offset, byte length) into stored text


@dataclass(frozen=True)
class CollectionStats:
    doc_count: int
    total_terms: int
    vocab_size: int


@dataclass(frozen=True)
class LexiconEntry:
    cf: int
    df: int
    offset: int
    byte_len: int


class IndexSnapshot:
    """Searchable state: lexicon, postings, documents, fields, statistics."""

    def __init__(self, lexicon, postings_payload, documents, fields, stored_text):
        self._lexicon: dict[str, LexiconEntry] = lexicon
        self._postings: bytes = postings_payload
        self.documents: tuple[DocumentRecord, ...] = tuple(documents)
        self.fields: dict[str, dict[int, int]] = fields
        self._stored: bytes = stored_text
        self.stats = CollectionStats(
            doc_count=len(self.documents),
            total_terms=sum(d.doclen for d in self.documents),
            vocab_size=len(self._lexicon),
        )

    @property
    def vocabulary(self):
        return self._lexicon.keys()

    def term_stats(self, term: str) -> LexiconEntry | None:
        return self._lexicon.get(term)

    def postings(self, term: str) -> PostingList | None:
        entry = self._lexicon.get(term)
        if entry is None:
            return None
        decoded = decode_postings_block(self._postings, entry.offset, entry.byte_len)
        return PostingList(term=term, entries=tuple((d, tuple(p)) for d, p in decoded))

    def term_occurrences(self, term: str) -> dict[int, list[int]]:
        """Positions per docid; empty dict for out-of-vocabulary terms."""
        entry = self._lexicon.get(term)
        if entry is None:
            return {}
        return dict(decode_postings_block(self._postings, entry.offset, entry.byte_len))

    def document(self, docid: int) -> DocumentRecord:
        if not 1 <= docid <= len(self.documents):
            raise KeyError(f"unknown docid {docid}")
        return self.documents[docid - 1]

    def has_docid(self, docid: int) -> bool:
        return 1 <= docid <= len(self.documents)

    def doc_text(self, docid: int) -> str:
        off, length = self.document(docid).text_span
        return self._stored[off:off + length].decode("utf-8")

    def doc_tokens(self, docid: int) -> list[str]:
        text = self.doc_text(docid)
        return text.split(" ") if text else []

    def field_value(self, field: str, docid: int) -> int | None:
        table = self.fields.get(field)
        return None if table is None else table.get(docid)


def build_index(docs: list[RawDocument]) -> IndexSnapshot:
    """Assemble a snapshot from documents, assigning docids in input order."""
    by_term: dict[str, list[tuple[int, list[int]]]] = {}
    documents: list[DocumentRecord] = []
    fields: dict[str, dict[int, int]] = {}
    seen: set[str] = set()
    stored = bytearray()

    for docid, doc in enumerate(docs, start=1):
        if doc.name in seen:
            raise DuplicateDocumentError(doc.name)
        seen.add(doc.name)

        positions: dict[str, list[int]] = {}
        for pos, term in enumerate(doc.tokens):
            positions.setdefault(term, []).append(pos)
        for term, plist in positions.items():
            by_term.setdefault(term, []).append((docid, plist))

        text = " ".join(doc.tokens).encode("utf-8")
        documents.append(
            DocumentRecord(
                docid=docid,
                name=doc.name,
                doclen=len(doc.tokens),
                text_span=(len(stored), len(text)),
            )
        )
        stored.extend(text)

        for fname, value in doc.fields.items():
            fields.setdefault(fname, {})[docid] = value

    lexicon: dict[str, LexiconEntry] = {}
    payload = bytearray()
    for term in sorted(by_term):
        entries = by_term[term]
        block = storage.encode_postings_block(entries)
        lexicon[term] = LexiconEntry(
            cf=sum(len(p) for _, p in entries),
            df=len(entries),
            offset=len(payload),
            byte_len=len(block),
        )
        payload.extend(block)

    return IndexSnapshot(lexicon, bytes(payload), documents, fields, bytes(stored))


def write_index(snapshot: IndexSnapshot, directory) -> None:
    """Persist a snapshot; rewriting the same snapshot is byte-identical."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    manifest = {
        "version": storage.FORMAT_VERSION,
        "doc_count": snapshot.stats.doc_count,
        "total_terms": snapshot.stats.total_terms,
        "vocab_size": snapshot.stats.vocab_size,
        "fields": sorted(snapshot.fields),
    }
    (directory / storage.MANIFEST_NAME).write_bytes(
        (json.dumps(manifest, sort_keys=True, indent=2) + "\n").encode("utf-8")
    )

    lex = bytearray()
    for term in sorted(snapshot._lexicon):
        entry = snapshot._lexicon[term]
        raw = term.encode("utf-8")
        storage.write_varint(lex, len(raw))
        lex.extend(raw)
        storage.write_varint(lex, entry.cf)
        storage.write_varint(lex, entry.df)
        lex.extend(entry.offset.to_bytes(8, "little"))
        lex.extend(entry.byte_len.to_bytes(8, "little"))
    storage.write_framed(directory / "lexicon.bin", bytes(lex))

    storage.write_framed(directory / "postings.bin", snapshot._postings)

    docs = bytearray()
    storage.write_varint(docs, len(snapshot.documents))
    for rec in snapshot.documents:
        raw = rec.name.encode("utf-8")
        storage.write_varint(docs, len(raw))
        docs.extend(raw)
        storage.write_varint(docs, rec.doclen)
        storage.write_varint(docs, rec.text_span[0])
        storage.write_varint(docs, rec.text_span[1])
    storage.write_framed(directory / "docs.bin", bytes(docs))

    flds = bytearray()
    storage.write_varint(flds, len(snapshot.fields))
    for fname in sorted(snapshot.fields):
        raw = fname.encode("utf-8")
        storage.write_varint(flds, len(raw))
        flds.extend(raw)
        table = snapshot.fields[fname]
        storage.write_varint(flds, len(table))
        prev = 0
        for docid in sorted(table):
            storage.write_varint(flds, docid - prev)
            prev = docid
            storage.write_varint(flds, storage.zigzag(table[docid]))
    storage.write_framed(directory / "fields.bin", bytes(flds))

    storage.write_framed(directory / "store.bin", snapshot._stored)


def open_index(directory) -> IndexSnapshot:
    """Load and verify an index directory written by :func:`write_index`."""
    directory = Path(directory)
    manifest_path = directory / storage.MANIFEST_NAME
    if not manifest_path.is_file():
        raise MissingManifestError(f"{directory}: no {storage.MANIFEST_NAME}")
    try:
        manifest = json.loads(manifest_path.read_bytes())
    except ValueError as exc:
        raise IndexFormatError(f"{manifest_path}: invalid JSON: {exc}") from exc
    version = manifest.get("version")
    if version != storage.FORMAT_VERSION:
        raise VersionMismatchError(
            f"{directory}: format version {version!r}, expected {storage.FORMAT_VERSION}"
        )

    lex_payload = storage.read_framed(directory / "lexicon.bin")
    postings_payload = storage.read_framed(directory / "postings.bin")
    docs_payload = storage.read_framed(directory / "docs.bin")
    fields_payload = storage.read_framed(directory / "fields.bin")
    stored = storage.read_framed(directory / "store.bin")

    lexicon: dict[str, LexiconEntry] = {}
    r = storage.Reader(lex_payload)
    prev_term = b""
    while not r.exhausted():
        raw = r.take(r.varint())
        if raw <= prev_term and prev_term:
            raise IndexFormatError("lexicon terms not in strict lexicographic order")
        prev_term = raw
        cf = r.varint()
        df = r.varint()
        offset = r.u64()
        byte_len = r.u64()
        if offset + byte_len > len(postings_payload):
            raise IndexFormatError(f"lexicon entry for {raw!r} points past postings payload")
        lexicon[raw.decode("utf-8")] = LexiconEntry(cf=cf, df=df, offset=offset, byte_len=byte_len)

    documents: list[DocumentRecord] = []
    r = storage.Reader(docs_payload)
    count = r.varint()
    for docid in range(1, count + 1):
        name = r.take(r.varint()).decode("utf-8")
        doclen = r.varint()
        off = r.varint()
        length = r.varint()
        if off + length > len(stored):
            raise IndexFormatError(f"document {name!r} text span past stored text")
        documents.append(DocumentRecord(docid=docid, name=name, doclen=doclen, text_span=(off, length)))
    if not r.exhausted():
        raise IndexFormatError("docs.bin has trailing bytes")

    fields: dict[str, dict[int, int]] = {}
    r = storage.Reader(fields_payload)
    for _ in range(r.varint()):
        fname = r.take(r.varint()).decode("utf-8")
        table: dict[int, int] = {}
        docid = 0
        for _ in range(r.varint()):
            docid += r.varint()
            table[docid] = storage.unzigzag(r.varint())
        fields[fname] = table
    if not r.exhausted():
        raise IndexFormatError("fields.bin has trailing bytes")

    snapshot = IndexSnapshot(lexicon, postings_payload, documents, fields, stored)

    expected = (manifest.get("doc_count"), manifest.get("total_terms"), manifest.get("vocab_size"))
    actual = (snapshot.stats.doc_count, snapshot.stats.total_terms, snapshot.stats.vocab_size)
    if expected != actual:
        raise IndexFormatError(f"{directory}: manifest stats {expected} disagree with files {actual}")
    if sorted(manifest.get("fields", [])) != sorted(fields):
        raise IndexFormatError(f"{directory}: manifest field list disagrees with fields.bin")
    return snapshot


def postings(snapshot: IndexSnapshot, term: str) -> PostingList | None:
    return snapshot.postings(term)
