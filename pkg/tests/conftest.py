"""Shared fixtures: a six-document corpus with a year field, built once."""

import pytest

from luandri.index import build_index, write_index
from luandri.ingest import parse_trec

TOY_TREC = b"""<DOC>
<DOCNO>doc-a</DOCNO>
<YEAR>2015</YEAR>
<TEXT>
Advances in neural networks have reshaped ranking. Deep learning models now
score passages directly, and neural networks keep improving every season.
</TEXT>
</DOC>
<DOC>
<DOCNO>doc-b</DOCNO>
<YEAR>2011</YEAR>
<TEXT>
A survey of deep learning for retrieval, from word embeddings to rankers.
</TEXT>
</DOC>
<DOC>
<DOCNO>doc-c</DOCNO>
<YEAR>2003</YEAR>
<TEXT>
Classic neural networks research predates the modern wave by decades.
</TEXT>
</DOC>
<DOC>
<DOCNO>doc-d</DOCNO>
<YEAR>2020</YEAR>
<TEXT>
Networks of collaborators make research neural in spirit, if not in method.
</TEXT>
</DOC>
<DOC>
<DOCNO>doc-e</DOCNO>
<TEXT>
Deep learning without a date: this document carries no year field at all.
</TEXT>
</DOC>
<DOC>
<DOCNO>doc-f</DOCNO>
<YEAR>2014</YEAR>
<TEXT>
Gardening tips for dry climates: water deeply but rarely, and mulch well.
</TEXT>
</DOC>
"""


def build_toy_snapshot():
    return build_index(parse_trec(TOY_TREC, {"year"}))


@pytest.fixture(scope="session")
def toy_snapshot():
    return build_toy_snapshot()


@pytest.fixture(scope="session")
def toy_index_dir(tmp_path_factory):
    path = tmp_path_factory.mktemp("toy") / "idx"
    write_index(build_toy_snapshot(), path)
    return path
