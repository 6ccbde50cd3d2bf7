"""Corpus readers: TREC-text SGML and plain text.

Both readers produce :class:`RawDocument` objects whose token stream is the
output of :func:`tokenize` on the document body, so a document's positions
are always the contiguous range ``0..len(tokens)-1``.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from luandri.errors import DuplicateDocumentError, IngestError

log = logging.getLogger("luandri.ingest")

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1

# Maximal runs of Unicode letters/digits; underscore is a separator.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

_DOC_RE = re.compile(r"<DOC>", re.DOTALL)
_DOCNO_RE = re.compile(r"<DOCNO>(.*?)</DOCNO>", re.DOTALL)
_TEXT_RE = re.compile(r"<TEXT>(.*?)</TEXT>", re.DOTALL)


@dataclass
class RawDocument:
    """One ingested document.

    ``tokens`` is the ordered, case-folded token stream; position ``i`` in the
    stream is token ``tokens[i]``.  ``fields`` maps a field name to a single
    signed 64-bit integer.
    """

    name: str
    tokens: list[str]
    fields: dict[str, int] = field(default_factory=dict)


def tokenize(text: str) -> list[str]:
    """Split ``text`` into lowercase terms.

    Terms are maximal runs of alphanumeric characters (Unicode letter/digit
    categories); every other character separates terms.
    """
    return [m.group().lower() for m in _TOKEN_RE.finditer(text)]


def _decode(data: bytes, what: str) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestError(f"{what}: invalid UTF-8 at byte {exc.start}") from exc


def parse_trec(data: bytes, field_names: set[str] | None = None) -> list[RawDocument]:
    """Parse a concatenation of ``<DOC>...</DOC>`` blocks.

    Each block must contain one ``<DOCNO>`` and one ``<TEXT>`` element.  For
    every requested field name, the first ``<name>...</name>`` element in the
    block whose content is a decimal integer supplies that field's value;
    non-integer content is skipped with a warning.
    """
    text = _decode(data, "TREC input")
    field_names = field_names or set()
    field_res = {
        f.lower(): re.compile(r"<%s>(.*?)</%s>" % (re.escape(f), re.escape(f)), re.DOTALL | re.IGNORECASE)
        for f in field_names
    }

    docs: list[RawDocument] = []
    seen: set[str] = set()
    pos = 0
    while True:
        start = text.find("<DOC>", pos)
        if start < 0:
            break
        end = text.find("</DOC>", start)
        if end < 0:
            raise IngestError(f"unterminated <DOC> block at byte {_byte_offset(text, start)}")
        block = text[start + len("<DOC>"):end]
        pos = end + len("</DOC>")

        m = _DOCNO_RE.search(block)
        if m is None:
            raise IngestError(f"missing <DOCNO> in block at byte {_byte_offset(text, start)}")
        name = m.group(1).strip()
        if not name:
            raise IngestError(f"empty <DOCNO> in block at byte {_byte_offset(text, start)}")
        if name in seen:
            raise DuplicateDocumentError(name)
        seen.add(name)

        t = _TEXT_RE.search(block)
        if t is None:
            raise IngestError(f"missing <TEXT> in document {name!r}")

        fields: dict[str, int] = {}
        for fname, fre in field_res.items():
            fm = fre.search(block)
            if fm is None:
                continue
            raw = fm.group(1).strip()
            try:
                value = int(raw, 10)
            except ValueError:
                log.warning("document %r: field %s=%r is not an integer; skipped", name, fname, raw)
                continue
            if not INT64_MIN <= value <= INT64_MAX:
                log.warning("document %r: field %s=%r out of 64-bit range; skipped", name, fname, raw)
                continue
            fields[fname] = value

        docs.append(RawDocument(name=name, tokens=tokenize(t.group(1)), fields=fields))
    return docs


def parse_plaintext(name: str, data: bytes) -> RawDocument:
    """Turn one plain-text file into a document named after the file."""
    return RawDocument(name=name, tokens=tokenize(_decode(data, name)), fields={})


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8", "surrogatepass"))
