"""Python half of the C boundary.

The compiled shim (``luandri._capi``) forwards every exported call here.
Functions in this module never raise across the boundary: each returns a
``(status, value)`` pair and stores the failure message for ``last_error``.
Every bytes object referenced by an outstanding result set stays alive in a
registry until the caller destroys the set (or the owning environment).

Status codes (mirrored in include/luandri.h):
    0  ok
    1  invalid argument
    2  query parse error
    3  io error
    4  internal error

Error messages are tracked per environment.  Failures that cannot be pinned
to a live environment (unknown handles, create failures) land in a global
slot that ``last_error`` falls back to.
"""

from __future__ import annotations

import functools
import itertools
import os

from luandri.env import QueryEnvironment
from luandri.errors import EmptyCollectionError, IndexLoadError, IngestError, QueryParseError
from luandri.retrieval import SearchRequest

OK = 0
INVALID_ARGUMENT = 1
PARSE_ERROR = 2
IO_ERROR = 3
INTERNAL_ERROR = 4

_EMPTY = b""

_envs: dict[int, QueryEnvironment] = {}
_env_errors: dict[int, bytes] = {}
_results: dict[int, tuple] = {}  # handle -> (owner env handle, row tuple)
_env_ids = itertools.count(1)
_result_ids = itertools.count(1)

_global_error = _EMPTY


def _encode(text: str) -> bytes:
    return text.replace("\x00", " ").encode("utf-8", errors="replace")


def _record_failure(env_handle, message: str) -> None:
    global _global_error
    data = _encode(message)
    _global_error = data
    if env_handle is not None and env_handle in _envs:
        _env_errors[env_handle] = data


def _status_for(exc: Exception) -> int:
    if isinstance(exc, QueryParseError):
        return PARSE_ERROR
    if isinstance(exc, (IndexLoadError, IngestError, OSError)):
        return IO_ERROR
    if isinstance(
        exc,
        (ValueError, TypeError, LookupError, OverflowError, UnicodeDecodeError, EmptyCollectionError),
    ):
        return INVALID_ARGUMENT
    return INTERNAL_ERROR


def _guarded(env_of=None):
    """Wrap a boundary op: return (status, value), never raise."""

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args):
            try:
                return OK, fn(*args)
            except Exception as exc:  # noqa: BLE001 - must not raise across the ABI
                handle = env_of(args) if env_of is not None else None
                _record_failure(handle, f"{type(exc).__name__}: {exc}")
                return _status_for(exc), None

        return wrapper

    return deco


def _owner_of_results(args):
    row = _results.get(args[0])
    return row[0] if row is not None else None


def _env(handle: int) -> QueryEnvironment:
    env = _envs.get(handle)
    if env is None:
        raise KeyError(f"unknown environment handle {handle}")
    return env


def _text(raw: bytes, what: str) -> str:
    if not isinstance(raw, bytes):
        raise TypeError(f"{what} must be bytes")
    return raw.decode("utf-8")


@_guarded()
def create_env() -> int:
    handle = next(_env_ids)
    _envs[handle] = QueryEnvironment()
    return handle


@_guarded(env_of=lambda args: args[0])
def destroy_env(handle: int) -> None:
    if _envs.pop(handle, None) is None:
        raise KeyError(f"unknown environment handle {handle}")
    _env_errors.pop(handle, None)
    for rs_handle in [h for h, (owner, _) in _results.items() if owner == handle]:
        del _results[rs_handle]


@_guarded(env_of=lambda args: args[0])
def add_index(handle: int, path: bytes) -> None:
    _env(handle).add_index(os.fsdecode(path))


@_guarded(env_of=lambda args: args[0])
def run_query(handle, query, doc_ids, stopwords, results_requested) -> int:
    env = _env(handle)
    if results_requested < 0:
        raise ValueError(f"results_requested must be >= 0, got {results_requested}")
    request = SearchRequest(
        query=_text(query, "query"),
        results_requested=results_requested,
        doc_id_restriction=list(doc_ids) if doc_ids is not None else None,
        stopwords=[_text(w, "stopword") for w in stopwords] if stopwords is not None else None,
    )
    rows = tuple(
        (r.docid, _encode(r.document_name), _encode(r.snippet), r.score)
        for r in env.run_query(request)
    )
    rs_handle = next(_result_ids)
    _results[rs_handle] = (handle, rows)
    return rs_handle


@_guarded(env_of=_owner_of_results)
def results_count(handle: int) -> int:
    row = _results.get(handle)
    if row is None:
        raise KeyError(f"unknown result set handle {handle}")
    return len(row[1])


@_guarded(env_of=_owner_of_results)
def results_get(handle: int, index: int) -> tuple:
    row = _results.get(handle)
    if row is None:
        raise KeyError(f"unknown result set handle {handle}")
    rows = row[1]
    if not 0 <= index < len(rows):
        raise IndexError(f"result index {index} out of range for {len(rows)} rows")
    return rows[index]


@_guarded(env_of=_owner_of_results)
def destroy_results(handle: int) -> None:
    if _results.pop(handle, None) is None:
        raise KeyError(f"unknown result set handle {handle}")


def last_error_bytes(handle: int) -> bytes:
    """Message of the most recent failing call on ``handle``.

    Empty when that environment never failed; unknown handles fall back to
    the most recent unattributed failure.  The returned buffer stays valid
    until the next failing call or until the environment is destroyed.
    """
    if handle in _envs:
        return _env_errors.get(handle, _EMPTY)
    return _global_error


def record_error(message: str, env_handle: int | None = None) -> None:
    """Called by the shim for failures detected on the C side."""
    _record_failure(env_handle, message)
