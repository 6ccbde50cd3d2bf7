"""luandri: an embeddable structured-query search engine.

Index TREC-style or plain-text corpora into a positional on-disk index,
then query it with a structured language (combine, synonym, ordered and
unordered windows, numeric field filters) scored by Dirichlet-smoothed
query likelihood.  The same engine is reachable four ways: this Python
package, the ``luandri`` CLI, a stable C boundary (include/luandri.h),
and bindings built on that boundary.
"""

from luandri.env import QueryEnvironment
from luandri.errors import (
    DuplicateDocumentError,
    EmptyCollectionError,
    IndexLoadError,
    IngestError,
    LuandriError,
    QueryParseError,
)
from luandri.index import IndexSnapshot, build_index, open_index, write_index
from luandri.ingest import RawDocument, parse_plaintext, parse_trec, tokenize
from luandri.querylang import parse_query, render_query
from luandri.retrieval import (
    ScoredResult,
    ScoringParams,
    SearchRequest,
    run_query,
    score_document,
)

__version__ = "0.1.0"

__all__ = [
    "DuplicateDocumentError",
    "EmptyCollectionError",
    "IndexLoadError",
    "IndexSnapshot",
    "IngestError",
    "LuandriError",
    "QueryEnvironment",
    "QueryParseError",
    "RawDocument",
    "ScoredResult",
    "ScoringParams",
    "SearchRequest",
    "__version__",
    "build_index",
    "open_index",
    "parse_plaintext",
    "parse_query",
    "parse_trec",
    "render_query",
    "run_query",
    "score_document",
    "tokenize",
    "write_index",
]
