"""Locate and load the compiled C boundary.

The shared library is the ``luandri._capi`` extension module; its file
doubles as a plain C library exporting the ``luandri_*`` symbols, so hosts
outside Python can dlopen the same path (see include/luandri.h).
"""

from __future__ import annotations

import ctypes
import importlib
from pathlib import Path


def library_path() -> str:
    """Absolute path of the shared library exporting the luandri_* symbols."""
    module = importlib.import_module("luandri._capi")
    return module.__file__


def header_path() -> str:
    """Absolute path of the installed interface header."""
    return str(Path(__file__).resolve().parent / "include" / "luandri.h")


class Request(ctypes.Structure):
    """ctypes mirror of luandri_request (48 bytes)."""

    _fields_ = [
        ("query", ctypes.c_char_p),
        ("doc_ids", ctypes.POINTER(ctypes.c_int64)),
        ("doc_ids_count", ctypes.c_uint64),
        ("stopwords", ctypes.POINTER(ctypes.c_char_p)),
        ("stopwords_count", ctypes.c_uint64),
        ("results_requested", ctypes.c_int32),
        ("reserved", ctypes.c_int32),
    ]


class Result(ctypes.Structure):
    """ctypes mirror of luandri_result (32 bytes)."""

    _fields_ = [
        ("docid", ctypes.c_int64),
        ("document_name", ctypes.c_char_p),
        ("snippet", ctypes.c_char_p),
        ("score", ctypes.c_double),
    ]


def load_library() -> ctypes.CDLL:
    """Load the boundary library with argument types declared."""
    lib = ctypes.CDLL(library_path())
    u64 = ctypes.c_uint64
    lib.luandri_env_create.argtypes = [ctypes.POINTER(u64)]
    lib.luandri_env_create.restype = ctypes.c_int
    lib.luandri_env_destroy.argtypes = [u64]
    lib.luandri_env_destroy.restype = ctypes.c_int
    lib.luandri_env_add_index.argtypes = [u64, ctypes.c_char_p]
    lib.luandri_env_add_index.restype = ctypes.c_int
    lib.luandri_env_run_query.argtypes = [u64, ctypes.POINTER(Request), ctypes.POINTER(u64)]
    lib.luandri_env_run_query.restype = ctypes.c_int
    lib.luandri_results_count.argtypes = [u64, ctypes.POINTER(u64)]
    lib.luandri_results_count.restype = ctypes.c_int
    lib.luandri_results_get.argtypes = [u64, u64, ctypes.POINTER(Result)]
    lib.luandri_results_get.restype = ctypes.c_int
    lib.luandri_results_destroy.argtypes = [u64]
    lib.luandri_results_destroy.restype = ctypes.c_int
    lib.luandri_last_error.argtypes = [u64]
    lib.luandri_last_error.restype = ctypes.c_char_p
    return lib
