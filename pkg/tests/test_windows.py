"""Window operators against brute-force oracles."""

import random

from luandri.retrieval import eval_ordered_window, eval_syn, eval_unordered_window, VirtualPosting


def positions_of(tokens, terms):
    table = {t: [] for t in terms}
    for i, tok in enumerate(tokens):
        if tok in table:
            table[tok].append(i)
    return table


def consecutive_phrase_count(tokens, phrase):
    """Starts where the phrase occurs as a consecutive subsequence."""
    k = len(phrase)
    return [i for i in range(len(tokens) - k + 1) if tokens[i:i + k] == list(phrase)]


def greedy_ordered_starts(tokens, phrase, n):
    """Loop-based restatement of the greedy per-anchor rule."""
    starts = []
    occ = positions_of(tokens, set(phrase))
    for p1 in occ.get(phrase[0], []):
        prev = p1
        ok = True
        for term in phrase[1:]:
            step = None
            for p in occ.get(term, []):
                if prev < p <= prev + n:
                    step = p
                    break
            if step is None:
                ok = False
                break
            prev = step
        if ok:
            starts.append(p1)
    return starts


def minimal_interval_starts(tokens, terms, budget):
    """All minimal covering intervals within the span budget, by scan."""
    distinct = sorted(set(terms))
    out = []
    for lo in range(len(tokens)):
        if tokens[lo] not in distinct:
            continue
        hi = lo
        need = set(distinct)
        while hi < len(tokens) and need:
            need.discard(tokens[hi])
            hi += 1
        if need:
            continue
        right = hi - 1
        # minimal iff shrinking either edge loses coverage
        window = tokens[lo:right + 1]
        if window.count(tokens[lo]) > 1 or window.count(tokens[right]) > 1:
            continue
        if right - lo + 1 <= budget:
            out.append(lo)
    return out


def test_od1_equals_consecutive_phrase():
    tokens = "the cat sat on the cat mat cat the cat".split()
    phrase = ("the", "cat")
    occ = positions_of(tokens, phrase)
    assert eval_ordered_window(1, phrase, occ) == consecutive_phrase_count(tokens, phrase)


def test_od_allows_gaps_up_to_n():
    tokens = "neural deep networks".split()
    occ = positions_of(tokens, ("neural", "networks"))
    assert eval_ordered_window(1, ("neural", "networks"), occ) == []
    assert eval_ordered_window(2, ("neural", "networks"), occ) == [0]


def test_od_greedy_consumes_nearest_continuation():
    # anchor 0 takes position 1, anchor 2 takes position 3
    tokens = "a b a b".split()
    occ = positions_of(tokens, ("a", "b"))
    assert eval_ordered_window(1, ("a", "b"), occ) == [0, 2]


def test_od_missing_term_matches_nothing():
    occ = {"a": [0], "b": []}
    assert eval_ordered_window(3, ("a", "b"), occ) == []


def test_od_repeated_term_phrase():
    tokens = "a a a".split()
    occ = positions_of(tokens, ("a",))
    assert eval_ordered_window(1, ("a", "a"), occ) == [0, 1]


def test_uw_basic_coverage():
    tokens = "x a q b y".split()
    occ = positions_of(tokens, ("a", "b"))
    assert eval_unordered_window(2, ("a", "b"), occ) == [1]  # budget 4, span 3


def test_uw_order_does_not_matter():
    tokens = "b q a".split()
    occ = positions_of(tokens, ("a", "b"))
    assert eval_unordered_window(2, ("a", "b"), occ) == [0]


def test_uw_budget_excludes_wide_spans():
    tokens = "a x x x b".split()
    occ = positions_of(tokens, ("a", "b"))
    assert eval_unordered_window(2, ("a", "b"), occ) == []  # span 5 > budget 4
    assert eval_unordered_window(3, ("a", "b"), occ) == [0]


def test_uw_emits_only_minimal_intervals():
    tokens = "a a b".split()
    occ = positions_of(tokens, ("a", "b"))
    # [0..2] contains [1..2]; only the minimal interval counts
    assert eval_unordered_window(2, ("a", "b"), occ) == [1]


def test_uw_duplicate_terms_share_positions_but_raise_budget():
    tokens = "a x x b".split()
    occ = positions_of(tokens, ("a", "b"))
    assert eval_unordered_window(1, ("a", "b", "b"), occ) == []  # budget 3 < span 4
    assert eval_unordered_window(2, ("a", "b", "b"), occ) == [0]  # budget 6


def test_randomized_windows_match_oracles():
    rng = random.Random(20260816)
    vocab = ["a", "b", "c", "d", "e"]
    for _ in range(400):
        tokens = [rng.choice(vocab) for _ in range(rng.randint(1, 40))]
        k = rng.randint(2, 3)
        phrase = tuple(rng.choice(vocab) for _ in range(k))
        occ = positions_of(tokens, set(phrase))

        got = eval_ordered_window(1, phrase, occ)
        assert got == consecutive_phrase_count(tokens, list(phrase)), (tokens, phrase)

        n = rng.randint(1, 5)
        got = eval_ordered_window(n, phrase, occ)
        assert got == greedy_ordered_starts(tokens, phrase, n), (tokens, phrase, n)

        uw_terms = tuple(rng.sample(vocab, rng.randint(2, 3)))
        occ = positions_of(tokens, set(uw_terms))
        m = rng.randint(1, 4)
        got = eval_unordered_window(m, uw_terms, occ)
        expected = minimal_interval_starts(tokens, uw_terms, m * len(uw_terms))
        assert got == expected, (tokens, uw_terms, m)


def test_syn_unions_starts_and_collapses_shared_ones():
    left = VirtualPosting(node=None, starts={1: (0, 4)}, extents={1: ((0, 1), (4, 5))})
    right = VirtualPosting(node=None, starts={1: (4, 7), 2: (2,)}, extents={1: ((4, 6), (7, 7)), 2: ((2, 2),)})
    merged = eval_syn([left, right])
    assert merged.starts == {1: (0, 4, 7), 2: (2,)}
    assert merged.extents[1] == ((0, 1), (4, 5), (4, 6), (7, 7))
    assert merged.cf == 4
    assert merged.df == 2
