"""On-disk index codec.

An index directory contains ``manifest.json`` plus five binary files, each
framed as ``payload || crc32(payload)`` with the CRC stored as a little-endian
u32.  Variable-length integers are unsigned LEB128; signed values are zigzag
encoded first.  The full byte-level layout is documented in
``docs/index-format.md`` and is canonical: writing the same snapshot twice
must produce byte-identical files.

    lexicon.bin   per term, sorted by UTF-8 bytes:
                  [term_len][term_bytes][cf][df][offset:u64le][byte_len:u64le]
    postings.bin  per term, same order:
                  [df] then per document: [docid_delta][tf][tf position deltas]
    docs.bin      [doc_count] then per document:
                  [name_len][name_bytes][doclen][text_off][text_len]
    fields.bin    [field_count] then per field, sorted by name:
                  [name_len][name_bytes][entry_count]
                  then per entry: [docid_delta][zigzag(value)]
    store.bin     concatenated per-document stored text (UTF-8)

Deltas are taken against the previous value in the same sequence, with the
first value encoded as-is.
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

from luandri.errors import ChecksumError, IndexFormatError, TruncatedFileError

FORMAT_VERSION = 1

MANIFEST_NAME = "manifest.json"
BIN_NAMES = ("lexicon.bin", "postings.bin", "docs.bin", "fields.bin", "store.bin")


def write_varint(out: bytearray, value: int) -> None:
    if value < 0:
        raise ValueError("varint value must be non-negative")
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return


def zigzag(value: int) -> int:
    return (value << 1) ^ (value >> 63) if value < 0 else value << 1


def unzigzag(value: int) -> int:
    return (value >> 1) ^ -(value & 1)


class Reader:
    """Sequential varint reader over a payload."""

    __slots__ = ("data", "pos", "end")

    def __init__(self, data: bytes, pos: int = 0, end: int | None = None):
        self.data = data
        self.pos = pos
        self.end = len(data) if end is None else end

    def exhausted(self) -> bool:
        return self.pos >= self.end

    def varint(self) -> int:
        result = 0
        shift = 0
        pos = self.pos
        data = self.data
        while True:
            if pos >= self.end:
                raise IndexFormatError("varint runs past end of payload")
            byte = data[pos]
            pos += 1
            result |= (byte & 0x7F) << shift
            if not byte & 0x80:
                self.pos = pos
                return result
            shift += 7
            if shift > 70:
                raise IndexFormatError("varint too long")

    def u64(self) -> int:
        if self.pos + 8 > self.end:
            raise IndexFormatError("u64 runs past end of payload")
        value = struct.unpack_from("<Q", self.data, self.pos)[0]
        self.pos += 8
        return value

    def take(self, n: int) -> bytes:
        if n < 0 or self.pos + n > self.end:
            raise IndexFormatError("byte run past end of payload")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk


def write_framed(path: Path, payload: bytes) -> None:
    crc = zlib.crc32(payload) & 0xFFFFFFFF
    path.write_bytes(payload + struct.pack("<I", crc))


def read_framed(path: Path) -> bytes:
    raw = path.read_bytes()
    if len(raw) < 4:
        raise TruncatedFileError(f"{path.name}: shorter than its CRC trailer")
    payload, trailer = raw[:-4], raw[-4:]
    expected = struct.unpack("<I", trailer)[0]
    actual = zlib.crc32(payload) & 0xFFFFFFFF
    if actual != expected:
        raise ChecksumError(f"{path.name}: CRC mismatch (stored {expected:#010x}, computed {actual:#010x})")
    return payload


def encode_postings_block(entries: list[tuple[int, list[int]]]) -> bytes:
    """Encode one term's posting list: [df][docid_delta, tf, position deltas]."""
    out = bytearray()
    write_varint(out, len(entries))
    prev_doc = 0
    for docid, positions in entries:
        write_varint(out, docid - prev_doc)
        prev_doc = docid
        write_varint(out, len(positions))
        prev_pos = 0
        for p in positions:
            write_varint(out, p - prev_pos)
            prev_pos = p
    return bytes(out)
