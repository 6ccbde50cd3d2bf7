#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Times the four kernel functions on synthetic workloads, then an end-to-end
batch search in subprocesses (one per backend, since the dispatch happens at
import).  Run from a checkout where the package is installed:

    python3 benchmarks/bench_kernels.py
"""

import os
import random
import subprocess
import sys
import tempfile
import timeit
from pathlib import Path

from luandri import storage
from luandri.kernels import pure

try:
    from luandri.kernels import _native as native
except ImportError:
    native = None

REPEATS = 5


def best_of(fn, number):
    return min(timeit.repeat(fn, number=number, repeat=REPEATS)) / number


def bench_pair(name, make_call, number):
    row = {"name": name}
    for label, backend in (("pure", pure), ("native", native)):
        if backend is None:
            row[label] = None
            continue
        call = make_call(backend)
        call()  # warm up, and fail loudly before timing
        row[label] = best_of(call, number)
    return row


def synthetic_block(rng, doc_count, max_tf):
    entries = []
    docid = 0
    for _ in range(doc_count):
        docid += rng.randint(1, 5)
        tf = rng.randint(1, max_tf)
        positions = sorted(rng.sample(range(4000), tf))
        entries.append((docid, tuple(positions)))
    return storage.encode_postings_block(entries)


def position_lists(rng, k, per_term, universe):
    return [sorted(rng.sample(range(universe), per_term)) for _ in range(k)]


def main():
    rng = random.Random(7)
    rows = []

    block = synthetic_block(rng, doc_count=2000, max_tf=20)
    rows.append(
        bench_pair(
            "decode_postings_block (2k docs)",
            lambda b: lambda: b.decode_postings_block(block, 0, len(block)),
            number=20,
        )
    )

    od_lists = position_lists(rng, k=3, per_term=400, universe=20000)
    rows.append(
        bench_pair(
            "ordered_window_matches (3x400)",
            lambda b: lambda: b.ordered_window_matches(8, od_lists),
            number=200,
        )
    )

    uw_lists = position_lists(rng, k=3, per_term=400, universe=20000)
    rows.append(
        bench_pair(
            "unordered_window_matches (3x400)",
            lambda b: lambda: b.unordered_window_matches(24, uw_lists),
            number=200,
        )
    )

    tfs = [rng.randint(0, 30) for _ in range(20000)]
    doclens = [rng.randint(50, 2000) for _ in range(20000)]
    rows.append(
        bench_pair(
            "leaf_scores (20k docs)",
            lambda b: lambda: b.leaf_scores(tfs, doclens, 31337, 10_000_000, 2500.0),
            number=50,
        )
    )

    print(f"{'kernel':36} {'pure':>12} {'native':>12} {'speedup':>9}")
    for row in rows:
        p, n = row["pure"], row["native"]
        native_txt = f"{n * 1e6:10.1f} us" if n else "   missing"
        ratio = f"{p / n:8.1f}x" if n else "        -"
        print(f"{row['name']:36} {p * 1e6:10.1f} us {native_txt} {ratio}")

    print()
    print("end-to-end batch search (subprocess per backend):")
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        corpus = tmp / "corpus.trec"
        vocab = [f"w{i}" for i in range(300)]
        with corpus.open("w") as fh:
            for i in range(400):
                body = " ".join(rng.choices(vocab, k=200))
                fh.write(
                    f"<DOC>\n<DOCNO>d{i}</DOCNO>\n<YEAR>{rng.randint(1990, 2025)}</YEAR>\n"
                    f"<TEXT>\n{body}\n</TEXT>\n</DOC>\n"
                )
        index_dir = tmp / "idx"
        subprocess.run(
            [sys.executable, "-m", "luandri", "index", "--corpus", str(corpus),
             "--out", str(index_dir), "--fields", "year"],
            check=True, capture_output=True,
        )
        batch = tmp / "batch.tsv"
        with batch.open("w") as fh:
            for qid in range(60):
                a, b, c = rng.sample(vocab, 3)
                fh.write(f"q{qid}\t{a} #od4( {b} {c} ) #uw6( {a} {c} )\n")

        for label, env_extra in (("pure", {"LUANDRI_PURE_PYTHON": "1"}), ("native", {})):
            args = [sys.executable, "-m", "luandri", "search", "--index",
                    str(index_dir), "--batch", str(batch), "-n", "20"]
            env = dict(os.environ, **env_extra)
            env.pop("LUANDRI_PURE_PYTHON", None)
            env.update(env_extra)
            best = min(
                timeit.repeat(
                    lambda: subprocess.run(args, check=True, capture_output=True, env=env),
                    number=1, repeat=3,
                )
            )
            print(f"  {label:8} {best * 1000:8.0f} ms  (60 queries, 400 docs)")


if __name__ == "__main__":
    main()
