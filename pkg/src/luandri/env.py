"""Query environment: one searchable view over any number of open indexes.

Each added index keeps its own collection statistics for smoothing; results
are merged by score afterwards.  Docids are namespaced by offsetting each
index's local ids past the previous index's range, so ids stay stable as
long as indexes are added in the same order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from luandri.index import IndexSnapshot, open_index
from luandri.retrieval import ScoredResult, ScoringParams, SearchRequest, run_query
from luandri.snippets import DEFAULT_CONFIG, SnippetConfig

log = logging.getLogger("luandri.env")


@dataclass
class _Member:
    snapshot: IndexSnapshot
    offset: int  # added to local docids to form environment docids


class QueryEnvironment:
    """Owns open index snapshots and evaluates requests across them."""

    def __init__(self, params: ScoringParams | None = None,
                 snippet_config: SnippetConfig = DEFAULT_CONFIG):
        self.params = params or ScoringParams()
        self.snippet_config = snippet_config
        self._members: list[_Member] = []

    def add_index(self, path: str) -> None:
        """Open the index at ``path`` and append it to the environment."""
        snapshot = open_index(path)
        self._members.append(_Member(snapshot=snapshot, offset=self._next_offset()))

    def add_snapshot(self, snapshot: IndexSnapshot) -> None:
        self._members.append(_Member(snapshot=snapshot, offset=self._next_offset()))

    def _next_offset(self) -> int:
        if not self._members:
            return 0
        last = self._members[-1]
        return last.offset + last.snapshot.stats.doc_count

    @property
    def index_count(self) -> int:
        return len(self._members)

    @property
    def doc_count(self) -> int:
        return sum(m.snapshot.stats.doc_count for m in self._members)

    def document_name(self, docid: int) -> str:
        member, local = self._resolve(docid)
        return member.snapshot.document(local).name

    def _resolve(self, docid: int):
        for member in self._members:
            local = docid - member.offset
            if 1 <= local <= member.snapshot.stats.doc_count:
                return member, local
        raise KeyError(f"docid {docid} not in environment")

    def run_query(self, request: SearchRequest) -> list[ScoredResult]:
        """Evaluate against every member index and merge by score.

        Ties break on environment docid ascending, which preserves
        index-addition order.  Raises ``ValueError`` when no index has been
        added.
        """
        if not self._members:
            raise ValueError("no index added to the environment")

        if request.doc_id_restriction is not None:
            total = self.doc_count
            unknown = sum(1 for d in request.doc_id_restriction if not 1 <= d <= total)
            if unknown:
                log.warning("ignoring %d restriction docid(s) not in the environment", unknown)

        merged: list[ScoredResult] = []
        for member in self._members:
            local_request = SearchRequest(
                query=request.query,
                results_requested=request.results_requested,
                stopwords=request.stopwords,
            )
            if request.doc_id_restriction is not None:
                local = [
                    d - member.offset
                    for d in request.doc_id_restriction
                    if 1 <= d - member.offset <= member.snapshot.stats.doc_count
                ]
                if not local:
                    continue
                local_request.doc_id_restriction = local
            for r in run_query(member.snapshot, local_request, self.params, self.snippet_config):
                merged.append(
                    ScoredResult(
                        docid=r.docid + member.offset,
                        document_name=r.document_name,
                        snippet=r.snippet,
                        score=r.score,
                    )
                )

        merged.sort(key=lambda r: (-r.score, r.docid))
        return merged[: request.results_requested]
