"""Query evaluation against a snapshot.

Pipeline: parse, apply stop words, synthesize virtual postings for every
belief leaf over the full snapshot, pick candidates, drop candidates failing
numeric filters, score with Dirichlet-smoothed query likelihood, rank, and
attach snippets.

A leaf (bare term, window, or synonym node) scores
``ln((tf + mu*cf/|C|) / (|D| + mu))``; ``#combine`` and the implicit top
level average their children.  Leaves that never occur in the collection
(``cf == 0``) are dropped from the average rather than scored at -inf.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from luandri.errors import EmptyCollectionError
from luandri.index import IndexSnapshot
from luandri.kernels import leaf_scores, ordered_window_matches, unordered_window_matches
from luandri.querylang import (
    Combine,
    Empty,
    OrderedWindow,
    Syn,
    Term,
    UnorderedWindow,
    apply_stopwords,
    parse_query,
)
from luandri.snippets import DEFAULT_CONFIG, SnippetConfig, generate_snippet

log = logging.getLogger("luandri.retrieval")


@dataclass(frozen=True)
class ScoringParams:
    """Dirichlet pseudo-count; 2500 is the engine default."""

    mu: float = 2500.0

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"mu must be positive, got {self.mu}")


@dataclass
class SearchRequest:
    """One search call, shared by the CLI, the C boundary, and bindings.

    ``doc_id_restriction=None`` searches the whole collection; an explicit
    list (even an empty one) limits scoring to exactly those documents.
    """

    query: str
    results_requested: int = 10
    doc_id_restriction: list[int] | None = None
    stopwords: list[str] | None = None


@dataclass(frozen=True)
class ScoredResult:
    docid: int
    document_name: str
    snippet: str
    score: float


@dataclass
class VirtualPosting:
    """Synthesized per-document occurrences for one belief leaf.

    ``starts`` maps docid to the sorted match start positions; ``extents``
    additionally keeps (start, end) spans so snippets can highlight whole
    phrase matches.  Statistics cover the full snapshot, not just candidates.
    """

    node: object
    starts: dict = field(default_factory=dict)
    extents: dict = field(default_factory=dict)

    @property
    def cf(self) -> int:
        return sum(len(s) for s in self.starts.values())

    @property
    def df(self) -> int:
        return len(self.starts)

    def tf(self, docid: int) -> int:
        return len(self.starts.get(docid, ()))


def eval_ordered_window(n: int, terms, positions_by_term) -> list[int]:
    """Match start positions for #odN in one document.

    ``positions_by_term`` maps each term to its sorted positions in the
    document.  Greedy per-anchor semantics: from each occurrence of the first
    term, repeatedly take the closest following occurrence of the next term
    within gap ``n``; an anchor that completes contributes its own position.
    """
    lists = [positions_by_term.get(t, []) for t in terms]
    if any(not plist for plist in lists):
        return []
    return [s for s, _ in ordered_window_matches(n, lists)]


def eval_unordered_window(n: int, terms, positions_by_term) -> list[int]:
    """Match start positions for #uwN in one document.

    Emits the left endpoint of every minimal interval containing all the
    terms whose span is at most ``n * len(terms)`` tokens.
    """
    distinct = list(dict.fromkeys(terms))
    lists = [positions_by_term.get(t, []) for t in distinct]
    if any(not plist for plist in lists):
        return []
    budget = n * len(terms)
    return [s for s, _ in unordered_window_matches(budget, lists)]


def eval_syn(children: list[VirtualPosting]) -> VirtualPosting:
    """Union the children's occurrences; matches sharing a start collapse."""
    merged = VirtualPosting(node=None)
    docids = set()
    for child in children:
        docids.update(child.starts)
    for docid in docids:
        starts = set()
        extents = set()
        for child in children:
            starts.update(child.starts.get(docid, ()))
            extents.update(child.extents.get(docid, ()))
        merged.starts[docid] = tuple(sorted(starts))
        merged.extents[docid] = tuple(sorted(extents))
    return merged


class _CompiledQuery:
    """Belief tree plus virtual postings computed over the full snapshot."""

    def __init__(self, snapshot: IndexSnapshot, belief):
        self.snapshot = snapshot
        self.belief = belief
        self._occurrences: dict[str, dict[int, list[int]]] = {}
        self.postings: dict[object, VirtualPosting] = {}
        self.leaves: list = []
        for leaf in _collect_leaves(belief):
            if leaf not in self.postings:
                self.postings[leaf] = self._eval(leaf)
                self.leaves.append(leaf)

    def occurrences(self, term: str) -> dict[int, list[int]]:
        occ = self._occurrences.get(term)
        if occ is None:
            occ = self.snapshot.term_occurrences(term)
            self._occurrences[term] = occ
        return occ

    def _candidate_docs(self, terms) -> list[int]:
        maps = [self.occurrences(t) for t in dict.fromkeys(terms)]
        if any(not m for m in maps):
            return []
        smallest = min(maps, key=len)
        return sorted(d for d in smallest if all(d in m for m in maps))

    def _eval(self, node) -> VirtualPosting:
        if isinstance(node, Term):
            vp = VirtualPosting(node=node)
            for docid, plist in self.occurrences(node.term).items():
                vp.starts[docid] = tuple(plist)
                vp.extents[docid] = tuple((p, p) for p in plist)
            return vp
        if isinstance(node, (OrderedWindow, UnorderedWindow)):
            ordered = isinstance(node, OrderedWindow)
            distinct = list(dict.fromkeys(node.terms))
            budget = node.n * len(node.terms)
            vp = VirtualPosting(node=node)
            for docid in self._candidate_docs(node.terms):
                if ordered:
                    lists = [self.occurrences(t)[docid] for t in node.terms]
                    matches = ordered_window_matches(node.n, lists)
                else:
                    lists = [self.occurrences(t)[docid] for t in distinct]
                    matches = unordered_window_matches(budget, lists)
                if matches:
                    vp.starts[docid] = tuple(s for s, _ in matches)
                    vp.extents[docid] = tuple(matches)
            return vp
        if isinstance(node, Syn):
            children = []
            for child in node.children:
                if child not in self.postings:
                    self.postings[child] = self._eval(child)
                children.append(self.postings[child])
            vp = eval_syn(children)
            vp.node = node
            return vp
        raise TypeError(f"not a belief leaf: {type(node).__name__}")

    def surviving_leaves(self) -> list:
        return [leaf for leaf in self.leaves if self.postings[leaf].cf > 0]

    def score_candidates(self, candidates: list[int], params: ScoringParams) -> list[float]:
        total_terms = self.snapshot.stats.total_terms
        if total_terms == 0:
            raise EmptyCollectionError("cannot score against an empty collection")
        doclens = [self.snapshot.document(d).doclen for d in candidates]
        leaf_arrays: dict[object, list[float]] = {}
        for leaf in self.leaves:
            vp = self.postings[leaf]
            if vp.cf == 0:
                continue
            tfs = [vp.tf(d) for d in candidates]
            leaf_arrays[leaf] = leaf_scores(tfs, doclens, vp.cf, total_terms, params.mu)

        def walk(node):
            if isinstance(node, Combine):
                parts = [scores for scores in (walk(c) for c in node.children) if scores is not None]
                if not parts:
                    return None
                if len(parts) == 1:
                    return parts[0]
                inv = 1.0 / len(parts)
                return [sum(column) * inv for column in zip(*parts)]
            return leaf_arrays.get(node)

        scores = walk(self.belief)
        if scores is None:
            raise EmptyCollectionError("no scorable leaves in belief")
        return scores

    def highlight_positions(self, docid: int) -> set[int]:
        def walk(node, into: set):
            if isinstance(node, Combine):
                for child in node.children:
                    walk(child, into)
            elif isinstance(node, Syn):
                for child in node.children:
                    walk(child, into)
            elif isinstance(node, Term):
                into.update(self.occurrences(node.term).get(docid, ()))
            else:
                vp = self.postings[node]
                spans = vp.extents.get(docid, ())
                if not spans:
                    return
                for term in dict.fromkeys(node.terms):
                    for p in self.occurrences(term).get(docid, ()):
                        if any(s <= p <= e for s, e in spans):
                            into.add(p)

        positions: set[int] = set()
        walk(self.belief, positions)
        return positions


def _collect_leaves(node) -> list:
    if isinstance(node, Combine):
        leaves = []
        for child in node.children:
            leaves.extend(_collect_leaves(child))
        return leaves
    if isinstance(node, Empty):
        return []
    return [node]


def score_document(belief, docid: int, snapshot: IndexSnapshot, params: ScoringParams) -> float | None:
    """Score one document; None when every leaf is out of vocabulary."""
    if snapshot.stats.total_terms == 0:
        raise EmptyCollectionError("cannot score against an empty collection")
    compiled = _CompiledQuery(snapshot, belief)
    if not compiled.surviving_leaves():
        return None
    return compiled.score_candidates([docid], params)[0]


def run_query(
    snapshot: IndexSnapshot,
    request: SearchRequest,
    params: ScoringParams | None = None,
    snippet_config: SnippetConfig = DEFAULT_CONFIG,
) -> list[ScoredResult]:
    """Evaluate a request and return ranked, snippeted results.

    Raises :class:`~luandri.errors.QueryParseError` on malformed queries and
    ``ValueError`` on invalid request fields.
    """
    params = params or ScoringParams()
    if request.results_requested < 0:
        raise ValueError(f"results_requested must be >= 0, got {request.results_requested}")

    belief, filters = parse_query(request.query)
    if request.stopwords:
        stopset = {w.strip().lower() for w in request.stopwords if w.strip()}
        belief = apply_stopwords(belief, stopset)
    if isinstance(belief, Empty):
        return []

    compiled = _CompiledQuery(snapshot, belief)
    surviving = compiled.surviving_leaves()
    if not surviving:
        return []

    if request.doc_id_restriction is not None:
        wanted = sorted(set(request.doc_id_restriction))
        candidates = [d for d in wanted if snapshot.has_docid(d)]
        unknown = len(wanted) - len(candidates)
        if unknown:
            log.warning("ignoring %d restriction docid(s) not in the index", unknown)
    else:
        docids: set[int] = set()
        for leaf in surviving:
            docids.update(compiled.postings[leaf].starts)
        candidates = sorted(docids)

    if filters:
        candidates = [
            d
            for d in candidates
            if all(f.matches(snapshot.field_value(f.field, d)) for f in filters)
        ]
    if not candidates:
        return []

    scores = compiled.score_candidates(candidates, params)
    ranked = sorted(zip(candidates, scores), key=lambda pair: (-pair[1], pair[0]))
    top = ranked[: request.results_requested]

    results = []
    for docid, score in top:
        positions = compiled.highlight_positions(docid)
        snippet = generate_snippet(snapshot.doc_tokens(docid), positions, snippet_config)
        results.append(
            ScoredResult(
                docid=docid,
                document_name=snapshot.document(docid).name,
                snippet=snippet,
                score=score,
            )
        )
    return results
