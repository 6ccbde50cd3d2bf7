/* luandri.h - stable C boundary for the luandri search engine.
 *
 * Layouts are fixed. Every struct uses naturally aligned 64-bit fields with
 * the byte offsets documented below; foreign runtimes may declare them
 * verbatim. All byte sequences crossing the boundary are NUL-terminated
 * UTF-8. No call aborts the host process; failures surface as status codes
 * and a retrievable message.
 */

#ifndef LUANDRI_H
#define LUANDRI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum luandri_status {
    LUANDRI_OK = 0,
    LUANDRI_INVALID_ARGUMENT = 1,
    LUANDRI_PARSE_ERROR = 2,
    LUANDRI_IO_ERROR = 3,
    LUANDRI_INTERNAL_ERROR = 4
} luandri_status;

/* Opaque handles. Valid from creation until the matching destroy call;
 * issued starting at 1 and never reused, so 0 is always invalid. */
typedef uint64_t luandri_env;
typedef uint64_t luandri_results;

/* One search request. Total size 48 bytes.
 *
 *   offset  0  query              const char*          required, UTF-8
 *   offset  8  doc_ids            const int64_t*       optional restriction
 *   offset 16  doc_ids_count      uint64_t             0 means absent
 *   offset 24  stopwords          const char* const*   optional, UTF-8
 *   offset 32  stopwords_count    uint64_t             0 means absent
 *   offset 40  results_requested  int32_t              >= 0; 0 yields no rows
 *   offset 44  reserved           int32_t              must be 0
 *
 * All request memory is owned by the caller and only read during the call.
 */
typedef struct luandri_request {
    const char *query;
    const int64_t *doc_ids;
    uint64_t doc_ids_count;
    const char *const *stopwords;
    uint64_t stopwords_count;
    int32_t results_requested;
    int32_t reserved;
} luandri_request;

/* One ranked result. Total size 32 bytes.
 *
 *   offset  0  docid              int64_t
 *   offset  8  document_name      const char*          UTF-8
 *   offset 16  snippet            const char*          UTF-8
 *   offset 24  score              double               log probability, <= 0
 *
 * String pointers are owned by the result set and stay valid exactly until
 * luandri_results_destroy (or destruction of the owning environment).
 */
typedef struct luandri_result {
    int64_t docid;
    const char *document_name;
    const char *snippet;
    double score;
} luandri_result;

/* Create an empty query environment. */
luandri_status luandri_env_create(luandri_env *out_env);

/* Destroy an environment and every result set derived from it. */
luandri_status luandri_env_destroy(luandri_env env);

/* Open the index directory at path and add it to the environment. Docids
 * are namespaced by offsetting each index past the previous doc_count. */
luandri_status luandri_env_add_index(luandri_env env, const char *path);

/* Evaluate a request. On success *out_results receives a result set
 * handle; on failure it is set to 0. */
luandri_status luandri_env_run_query(luandri_env env,
                                     const luandri_request *request,
                                     luandri_results *out_results);

/* Number of rows in a result set. */
luandri_status luandri_results_count(luandri_results results,
                                     uint64_t *out_count);

/* Fetch row i (0-based, rank order). Out-of-range i returns
 * LUANDRI_INVALID_ARGUMENT and fills *out_result with a sentinel record
 * (docid 0, empty strings, score 0). */
luandri_status luandri_results_get(luandri_results results, uint64_t index,
                                   luandri_result *out_result);

/* Release a result set and the strings it owns. */
luandri_status luandri_results_destroy(luandri_results results);

/* Message of the most recent failing call on env, or an empty string.
 * The pointer stays valid until the next failing call or until the
 * environment is destroyed. Never returns NULL. */
const char *luandri_last_error(luandri_env env);

#ifdef __cplusplus
}
#endif

#endif /* LUANDRI_H */
