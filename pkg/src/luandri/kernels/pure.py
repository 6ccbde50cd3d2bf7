"""Pure-Python kernels; semantics identical to the compiled versions."""

from bisect import bisect_right
from math import log

from luandri.errors import IndexFormatError

BACKEND = "pure"


def decode_postings_block(data, start, length):
    """Decode one term's block into [(docid, [positions...]), ...]."""
    end = start + length
    pos = start
    entries = []

    def varint():
        nonlocal pos
        result = 0
        shift = 0
        while True:
            if pos >= end:
                raise IndexFormatError("postings block truncated")
            byte = data[pos]
            pos += 1
            result |= (byte & 0x7F) << shift
            if not byte & 0x80:
                return result
            shift += 7
            if shift > 70:
                raise IndexFormatError("postings varint too long")

    df = varint()
    docid = 0
    for _ in range(df):
        docid += varint()
        tf = varint()
        p = 0
        positions = []
        for _ in range(tf):
            p += varint()
            positions.append(p)
        entries.append((docid, positions))
    if pos != end:
        raise IndexFormatError("postings block has trailing bytes")
    return entries


def ordered_window_matches(n, positions):
    """Greedy ordered-window matching over per-term sorted position lists.

    For each occurrence of the first term, repeatedly pick the smallest
    position of the next term that is greater than the previous pick and at
    most ``n`` beyond it.  Returns (start, end) extents, one per anchor that
    completes.
    """
    out = []
    rest = positions[1:]
    for p1 in positions[0]:
        prev = p1
        ok = True
        for plist in rest:
            i = bisect_right(plist, prev)
            if i == len(plist) or plist[i] - prev > n:
                ok = False
                break
            prev = plist[i]
        if ok:
            out.append((p1, prev))
    return out


def unordered_window_matches(budget, positions):
    """Minimal covering intervals with span <= budget.

    ``positions`` holds one sorted list per distinct term.  Emits (left,
    right) for every interval that contains at least one occurrence of each
    term, has no proper subinterval doing so, and spans at most ``budget``
    tokens.
    """
    k = len(positions)
    events = sorted((p, t) for t, plist in enumerate(positions) for p in plist)
    counts = [0] * k
    covered = 0
    left = 0
    out = []
    for rp, rt in events:
        counts[rt] += 1
        if counts[rt] == 1:
            covered += 1
        if covered < k:
            continue
        while counts[events[left][1]] > 1:
            counts[events[left][1]] -= 1
            left += 1
        if counts[rt] == 1:
            lp = events[left][0]
            if rp - lp + 1 <= budget:
                out.append((lp, rp))
    return out


def leaf_scores(tfs, doclens, cf, total_terms, mu):
    """ln((tf + mu*cf/total) / (doclen + mu)) for aligned tf/doclen lists."""
    background = mu * (cf / total_terms)
    return [log((tf + background) / (dl + mu)) for tf, dl in zip(tfs, doclens)]
