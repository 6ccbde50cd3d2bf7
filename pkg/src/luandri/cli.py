"""Command line front end: an index builder and a searcher.

``luandri index`` ingests a corpus (TREC-text or one plain-text file per
document) and writes an index directory.  ``luandri search`` evaluates a
single query or a batch file of ``qid<TAB>query`` lines; batch mode emits
standard run-file lines.  ``library-path`` and ``header-path`` print where
the compiled C boundary lives, for foreign hosts that need to dlopen it.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from luandri.errors import LuandriError, QueryParseError
from luandri.index import build_index, open_index, write_index
from luandri.ingest import parse_plaintext, parse_trec
from luandri.retrieval import ScoringParams, SearchRequest, run_query

log = logging.getLogger("luandri.cli")


def _corpus_files(root: Path) -> list[Path]:
    if root.is_file():
        return [root]
    return sorted(p for p in root.rglob("*") if p.is_file())


def _doc_name(root: Path, path: Path) -> str:
    if root.is_file():
        return path.name
    return path.relative_to(root).as_posix()


def cmd_index(args) -> int:
    root = Path(args.corpus)
    if not root.exists():
        print(f"error: corpus path does not exist: {root}", file=sys.stderr)
        return 1
    field_names = {f.strip().lower() for f in args.fields.split(",") if f.strip()} if args.fields else set()
    if field_names and args.format != "trec":
        log.warning("--fields is only honored for --format trec")

    docs = []
    try:
        for path in _corpus_files(root):
            data = path.read_bytes()
            if args.format == "trec":
                docs.extend(parse_trec(data, field_names))
            else:
                docs.append(parse_plaintext(_doc_name(root, path), data))
        snapshot = build_index(docs)
        write_index(snapshot, args.out)
    except (LuandriError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    stats = snapshot.stats
    print(f"doc_count {stats.doc_count}")
    print(f"total_terms {stats.total_terms}")
    print(f"vocab_size {stats.vocab_size}")
    return 0


def _load_stopwords(path: str | None) -> list[str] | None:
    if path is None:
        return None
    words = [line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines()]
    return [w for w in words if w]


def _print_results(results, as_json: bool) -> None:
    if as_json:
        payload = {
            "results": [
                {
                    "docid": r.docid,
                    "documentName": r.document_name,
                    "snippet": r.snippet,
                    "score": r.score,
                }
                for r in results
            ]
        }
        print(json.dumps(payload, ensure_ascii=False))
        return
    for rank, r in enumerate(results, start=1):
        print(f"{rank} {r.docid} {r.document_name} {r.score:.6f}")
        print(f"    {r.snippet}")


def cmd_search(args) -> int:
    try:
        snapshot = open_index(args.index)
        stopwords = _load_stopwords(args.stopwords)
        params = ScoringParams(mu=args.mu)
    except (LuandriError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.query is not None:
        request = SearchRequest(query=args.query, results_requested=args.n, stopwords=stopwords)
        try:
            results = run_query(snapshot, request, params)
        except QueryParseError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        except (LuandriError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        _print_results(results, args.json)
        return 0

    try:
        lines = Path(args.batch).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        qid, sep, query = line.partition("\t")
        if not sep or not qid.strip():
            print(f"error: batch line {lineno}: expected qid<TAB>query", file=sys.stderr)
            return 1
        request = SearchRequest(query=query, results_requested=args.n, stopwords=stopwords)
        try:
            results = run_query(snapshot, request, params)
        except QueryParseError as exc:
            print(f"error: batch query {qid.strip()}: {exc}", file=sys.stderr)
            return 2
        except (LuandriError, ValueError) as exc:
            print(f"error: batch query {qid.strip()}: {exc}", file=sys.stderr)
            return 1
        for rank, r in enumerate(results, start=1):
            print(f"{qid.strip()} Q0 {r.document_name} {rank} {r.score:.6f} {args.run_tag}")
    return 0


def cmd_library_path(_args) -> int:
    from luandri.capi import library_path

    try:
        print(library_path())
    except ImportError as exc:
        print(f"error: compiled boundary not available: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_header_path(_args) -> int:
    from luandri.capi import header_path

    print(header_path())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="luandri", description="Embeddable structured-query search engine.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="build an index from a corpus")
    p_index.add_argument("--corpus", required=True, help="corpus file or directory")
    p_index.add_argument("--format", choices=("trec", "text"), default="trec")
    p_index.add_argument("--out", required=True, help="output index directory")
    p_index.add_argument("--fields", default="", help="comma-separated numeric field names (trec only)")
    p_index.set_defaults(func=cmd_index)

    p_search = sub.add_parser("search", help="query an index")
    p_search.add_argument("--index", required=True, help="index directory")
    what = p_search.add_mutually_exclusive_group(required=True)
    what.add_argument("--query", help="single query string")
    what.add_argument("--batch", help="file of qid<TAB>query lines")
    p_search.add_argument("-n", type=int, default=10, help="results per query (default 10)")
    p_search.add_argument("--mu", type=float, default=2500.0, help="Dirichlet mu (default 2500)")
    p_search.add_argument("--stopwords", help="file with one stop word per line")
    p_search.add_argument("--run-tag", default="luandri", help="tag for batch run lines")
    p_search.add_argument("--json", action="store_true", help="print single-query results as JSON")
    p_search.set_defaults(func=cmd_search)

    p_lib = sub.add_parser("library-path", help="print the shared library path")
    p_lib.set_defaults(func=cmd_library_path)

    p_hdr = sub.add_parser("header-path", help="print the C header path")
    p_hdr.set_defaults(func=cmd_header_path)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
