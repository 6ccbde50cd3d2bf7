import { execFileSync } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export const TOY_TREC = `<DOC>
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
`;

export function buildIndex(trec: string): string {
  const dir = mkdtempSync(join(tmpdir(), "luandri-ts-"));
  const corpus = join(dir, "corpus.trec");
  writeFileSync(corpus, trec);
  const out = join(dir, "idx");
  execFileSync("python3", [
    "-m", "luandri", "index",
    "--corpus", corpus,
    "--out", out,
    "--fields", "year",
  ]);
  return out;
}

export function buildToyIndex(): string {
  return buildIndex(TOY_TREC);
}

/** Fifteen documents all containing the term "common". */
export function buildWideIndex(): string {
  const docs: string[] = [];
  for (let i = 1; i <= 15; i++) {
    docs.push(
      `<DOC>\n<DOCNO>wide-${String(i).padStart(2, "0")}</DOCNO>\n<TEXT>\n` +
      `common text number ${i} ${"filler ".repeat(i)}\n</TEXT>\n</DOC>\n`,
    );
  }
  return buildIndex(docs.join(""));
}
