"""Excerpt generation around the densest cluster of query matches.

Snippets are rendered from the stored lowercase token stream joined by single
spaces, not from the original document bytes.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SnippetConfig:
    window_width: int = 30
    highlight_open: str = "<b>"
    highlight_close: str = "</b>"


DEFAULT_CONFIG = SnippetConfig()


def generate_snippet(tokens, matches, config: SnippetConfig = DEFAULT_CONFIG) -> str:
    """Render the window of ``window_width`` consecutive tokens holding the
    most match positions (leftmost on ties), wrapping matched tokens in the
    highlight markers and adding "..." where the window cuts off the document.
    """
    n = len(tokens)
    width = config.window_width
    if width < 1:
        raise ValueError("window_width must be >= 1")

    if n <= width:
        start, end = 0, n
    else:
        matched = [1 if i in matches else 0 for i in range(n)]
        count = sum(matched[:width])
        best_count, best_start = count, 0
        for start in range(1, n - width + 1):
            count += matched[start + width - 1] - matched[start - 1]
            if count > best_count:
                best_count, best_start = count, start
        start, end = best_start, best_start + width

    rendered = []
    for i in range(start, end):
        if i in matches:
            rendered.append(config.highlight_open + tokens[i] + config.highlight_close)
        else:
            rendered.append(tokens[i])
    body = " ".join(rendered)
    if start > 0:
        body = "... " + body
    if end < n:
        body = body + " ..."
    return body
