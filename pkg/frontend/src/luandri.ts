/**
 * Binding for the luandri search engine over its C shared-library boundary.
 *
 * The library is located through the LUANDRI_LIBRARY environment variable,
 * falling back to asking the installed engine package itself
 * (`python3 -m luandri library-path`).  Requests are plain objects; results
 * come back as plain objects with every field copied, so no foreign memory
 * is reachable after a call returns.
 *
 *     const env = new QueryEnvironment();
 *     env.addIndex("path/to/index");
 *     const { results } = env.runQuery({ query: "#od1(deep learning)" });
 */

import { execFileSync } from "node:child_process";
import koffi from "koffi";

export interface SearchRequest {
  query: string;
  resultsRequested?: number;
  docIds?: Array<number | bigint>;
  stopwords?: string[];
}

export interface SearchResult {
  docid: number;
  documentName: string;
  snippet: string;
  score: number;
}

export interface SearchResponse {
  results: SearchResult[];
}

const STATUS_NAMES = ["ok", "invalid argument", "parse error", "io error", "internal error"];

export class LuandriError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    const label = STATUS_NAMES[status] ?? `status ${status}`;
    super(message ? `${label}: ${message}` : label);
    this.name = "LuandriError";
    this.status = status;
  }
}

interface NativeApi {
  envCreate: (out: unknown[]) => number;
  envAddIndex: (env: number | bigint, path: string) => number;
  envRunQuery: (env: number | bigint, req: object, out: unknown[]) => number;
  resultsCount: (rs: number | bigint, out: unknown[]) => number;
  resultsGet: (rs: number | bigint, index: number, out: Record<string, unknown>) => number;
  resultsDestroy: (rs: number | bigint) => number;
  envDestroy: (env: number | bigint) => number;
  lastError: (env: number | bigint) => string;
}

let native: NativeApi | null = null;

export function findLibrary(): string {
  const fromEnv = process.env.LUANDRI_LIBRARY;
  if (fromEnv) return fromEnv;
  try {
    return execFileSync("python3", ["-m", "luandri", "library-path"], {
      encoding: "utf8",
    }).trim();
  } catch (cause) {
    throw new Error(
      "cannot locate the luandri shared library: set LUANDRI_LIBRARY or install the engine package",
      { cause },
    );
  }
}

function api(): NativeApi {
  if (native) return native;
  const lib = koffi.load(findLibrary());

  // Anonymous struct types; the byte layout matches luandri.h exactly.
  const Request = koffi.struct({
    query: "const char *",
    doc_ids: "const int64_t *",
    doc_ids_count: "uint64_t",
    stopwords: "const char **",
    stopwords_count: "uint64_t",
    results_requested: "int32_t",
    reserved: "int32_t",
  });
  const Result = koffi.struct({
    docid: "int64_t",
    document_name: "const char *",
    snippet: "const char *",
    score: "double",
  });

  native = {
    envCreate: lib.func("luandri_env_create", "int", [koffi.out(koffi.pointer("uint64_t"))]),
    envAddIndex: lib.func("luandri_env_add_index", "int", ["uint64_t", "const char *"]),
    envRunQuery: lib.func("luandri_env_run_query", "int", [
      "uint64_t",
      koffi.pointer(Request),
      koffi.out(koffi.pointer("uint64_t")),
    ]),
    resultsCount: lib.func("luandri_results_count", "int", [
      "uint64_t",
      koffi.out(koffi.pointer("uint64_t")),
    ]),
    resultsGet: lib.func("luandri_results_get", "int", [
      "uint64_t",
      "uint64_t",
      koffi.out(koffi.pointer(Result)),
    ]),
    resultsDestroy: lib.func("luandri_results_destroy", "int", ["uint64_t"]),
    envDestroy: lib.func("luandri_env_destroy", "int", ["uint64_t"]),
    lastError: lib.func("luandri_last_error", "const char *", ["uint64_t"]),
  };
  return native;
}

const REQUEST_KEYS = new Set(["query", "resultsRequested", "docIds", "stopwords"]);

function marshalRequest(request: SearchRequest): object {
  if (typeof request !== "object" || request === null || Array.isArray(request)) {
    throw new TypeError("request must be an object");
  }
  for (const key of Object.keys(request)) {
    if (!REQUEST_KEYS.has(key)) {
      throw new TypeError(`unknown request key: ${key}`);
    }
  }
  const { query, resultsRequested, docIds, stopwords } = request;
  if (typeof query !== "string") {
    throw new TypeError("request.query must be a string");
  }

  let requested = 10;
  if (resultsRequested !== undefined) {
    if (typeof resultsRequested !== "number" || !Number.isInteger(resultsRequested) || resultsRequested < 0) {
      throw new TypeError("request.resultsRequested must be a non-negative integer");
    }
    requested = resultsRequested;
  }

  let ids: BigInt64Array | null = null;
  if (docIds !== undefined) {
    if (!Array.isArray(docIds)) {
      throw new TypeError("request.docIds must be an array of integers");
    }
    ids = new BigInt64Array(docIds.length);
    docIds.forEach((value, i) => {
      if (typeof value !== "bigint" && (typeof value !== "number" || !Number.isInteger(value))) {
        throw new TypeError(`request.docIds[${i}] must be an integer`);
      }
      ids![i] = BigInt(value);
    });
  }

  let words: string[] | null = null;
  if (stopwords !== undefined) {
    if (!Array.isArray(stopwords) || stopwords.some((w) => typeof w !== "string")) {
      throw new TypeError("request.stopwords must be an array of strings");
    }
    words = stopwords;
  }

  return {
    query,
    doc_ids: ids,
    doc_ids_count: ids ? ids.length : 0,
    stopwords: words,
    stopwords_count: words ? words.length : 0,
    results_requested: requested,
    reserved: 0,
  };
}

export class QueryEnvironment {
  private readonly handle: number | bigint;

  constructor() {
    const out: unknown[] = [null];
    const status = api().envCreate(out);
    if (status !== 0) {
      throw new LuandriError(status, api().lastError(0));
    }
    this.handle = out[0] as number | bigint;
  }

  addIndex(path: string): void {
    if (typeof path !== "string") {
      throw new TypeError("index path must be a string");
    }
    const status = api().envAddIndex(this.handle, path);
    if (status !== 0) {
      throw new LuandriError(status, api().lastError(this.handle));
    }
  }

  runQuery(request: SearchRequest): SearchResponse {
    const flat = marshalRequest(request);
    const out: unknown[] = [null];
    const status = api().envRunQuery(this.handle, flat, out);
    if (status !== 0) {
      throw new LuandriError(status, api().lastError(this.handle));
    }
    const resultSet = out[0] as number | bigint;
    try {
      const countOut: unknown[] = [null];
      const countStatus = api().resultsCount(resultSet, countOut);
      if (countStatus !== 0) {
        throw new LuandriError(countStatus, api().lastError(this.handle));
      }
      const count = Number(countOut[0]);
      const results: SearchResult[] = [];
      for (let i = 0; i < count; i++) {
        const row: Record<string, unknown> = {};
        const rowStatus = api().resultsGet(resultSet, i, row);
        if (rowStatus !== 0) {
          throw new LuandriError(rowStatus, api().lastError(this.handle));
        }
        results.push({
          docid: Number(row.docid),
          documentName: String(row.document_name ?? ""),
          snippet: String(row.snippet ?? ""),
          score: Number(row.score),
        });
      }
      return { results };
    } finally {
      api().resultsDestroy(resultSet);
    }
  }
}
