# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; see luandri.kernels.pure for the reference semantics."""

from libc.math cimport log
from libc.stdlib cimport free, malloc

from luandri.errors import IndexFormatError

BACKEND = "native"


cdef inline long long _varint(const unsigned char *data, Py_ssize_t *pos, Py_ssize_t end) except? -1:
    cdef unsigned long long result = 0
    cdef int shift = 0
    cdef unsigned char byte
    while True:
        if pos[0] >= end:
            raise IndexFormatError("postings block truncated")
        byte = data[pos[0]]
        pos[0] += 1
        result |= (<unsigned long long> (byte & 0x7F)) << shift
        if not byte & 0x80:
            return <long long> result
        shift += 7
        if shift > 70:
            raise IndexFormatError("postings varint too long")


def decode_postings_block(bytes data, Py_ssize_t start, Py_ssize_t length):
    cdef const unsigned char *buf = data
    cdef Py_ssize_t pos = start
    cdef Py_ssize_t end = start + length
    cdef long long df, tf, docid = 0, p
    cdef Py_ssize_t i, j
    if start < 0 or end > len(data):
        raise IndexFormatError("postings block out of range")
    entries = []
    df = _varint(buf, &pos, end)
    for i in range(df):
        docid += _varint(buf, &pos, end)
        tf = _varint(buf, &pos, end)
        p = 0
        positions = []
        for j in range(tf):
            p += _varint(buf, &pos, end)
            positions.append(p)
        entries.append((docid, positions))
    if pos != end:
        raise IndexFormatError("postings block has trailing bytes")
    return entries


cdef long long *_as_array(list values, Py_ssize_t *size) except NULL:
    cdef Py_ssize_t n = len(values)
    cdef long long *arr = <long long *> malloc(n * sizeof(long long) if n else sizeof(long long))
    cdef Py_ssize_t i
    if arr == NULL:
        raise MemoryError()
    for i in range(n):
        arr[i] = values[i]
    size[0] = n
    return arr


def ordered_window_matches(long long n, list positions):
    cdef Py_ssize_t k = len(positions)
    cdef long long **arrs = <long long **> malloc(k * sizeof(long long *))
    cdef Py_ssize_t *sizes = <Py_ssize_t *> malloc(k * sizeof(Py_ssize_t))
    cdef Py_ssize_t t, i, lo, hi, mid
    cdef long long p1, prev
    cdef bint ok
    if arrs == NULL or sizes == NULL:
        free(arrs)
        free(sizes)
        raise MemoryError()
    for t in range(k):
        arrs[t] = NULL
    out = []
    try:
        for t in range(k):
            arrs[t] = _as_array(positions[t], &sizes[t])
        for i in range(sizes[0]):
            p1 = arrs[0][i]
            prev = p1
            ok = True
            for t in range(1, k):
                # first position strictly greater than prev
                lo = 0
                hi = sizes[t]
                while lo < hi:
                    mid = (lo + hi) // 2
                    if arrs[t][mid] <= prev:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo == sizes[t] or arrs[t][lo] - prev > n:
                    ok = False
                    break
                prev = arrs[t][lo]
            if ok:
                out.append((p1, prev))
    finally:
        for t in range(k):
            if arrs[t] != NULL:
                free(arrs[t])
        free(arrs)
        free(sizes)
    return out


def unordered_window_matches(long long budget, list positions):
    cdef Py_ssize_t k = len(positions)
    cdef Py_ssize_t total = 0, t, i, left, filled, best, covered
    cdef long long rp, lp
    cdef int rt
    cdef long long **arrs = <long long **> malloc((k if k else 1) * sizeof(long long *))
    cdef Py_ssize_t *sizes = <Py_ssize_t *> malloc((k if k else 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *heads = <Py_ssize_t *> malloc((k if k else 1) * sizeof(Py_ssize_t))
    cdef long long *counts = <long long *> malloc((k if k else 1) * sizeof(long long))
    cdef long long *epos = NULL
    cdef int *eterm = NULL
    if arrs == NULL or sizes == NULL or heads == NULL or counts == NULL:
        free(arrs); free(sizes); free(heads); free(counts)
        raise MemoryError()
    for t in range(k):
        arrs[t] = NULL
    out = []
    try:
        for t in range(k):
            arrs[t] = _as_array(positions[t], &sizes[t])
            heads[t] = 0
            counts[t] = 0
            total += sizes[t]
        epos = <long long *> malloc((total if total else 1) * sizeof(long long))
        eterm = <int *> malloc((total if total else 1) * sizeof(int))
        if epos == NULL or eterm == NULL:
            raise MemoryError()
        # k-way merge of the sorted per-term lists into one event stream
        filled = 0
        while filled < total:
            best = -1
            for t in range(k):
                if heads[t] < sizes[t]:
                    if best < 0 or arrs[t][heads[t]] < arrs[best][heads[best]]:
                        best = t
            epos[filled] = arrs[best][heads[best]]
            eterm[filled] = <int> best
            heads[best] += 1
            filled += 1

        covered = 0
        left = 0
        for i in range(total):
            rp = epos[i]
            rt = eterm[i]
            counts[rt] += 1
            if counts[rt] == 1:
                covered += 1
            if covered < k:
                continue
            while counts[eterm[left]] > 1:
                counts[eterm[left]] -= 1
                left += 1
            if counts[rt] == 1:
                lp = epos[left]
                if rp - lp + 1 <= budget:
                    out.append((lp, rp))
    finally:
        for t in range(k):
            if arrs[t] != NULL:
                free(arrs[t])
        free(arrs); free(sizes); free(heads); free(counts)
        free(epos); free(eterm)
    return out


def leaf_scores(list tfs, list doclens, long long cf, long long total_terms, double mu):
    cdef Py_ssize_t n = len(tfs)
    cdef Py_ssize_t i
    cdef double background = mu * (<double> cf / <double> total_terms)
    cdef double tf, dl
    out = [0.0] * n
    for i in range(n):
        tf = <double> <long long> tfs[i]
        dl = <double> <long long> doclens[i]
        out[i] = log((tf + background) / (dl + mu))
    return out
