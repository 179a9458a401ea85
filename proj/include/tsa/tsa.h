/*
 * C interface to the aggregation-scheme toolkit.
 *
 * All functions return a tsa_status; every other result comes back through
 * out-parameters.  Strings returned through char** are heap-allocated and
 * must be released with tsa_string_free().  Schemes are opaque handles
 * released with tsa_scheme_free().  On any non-TSA_OK return, tsa_last_error()
 * describes the failure (thread-local).
 */

#ifndef TSA_C_API_H
#define TSA_C_API_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tsa_scheme tsa_scheme;

typedef enum tsa_status {
  TSA_OK = 0,
  TSA_ERR_INVALID = 1,      /* bad argument, size, vertex, shape, ... */
  TSA_ERR_PARSE = 2,        /* malformed or inconsistent JSON */
  TSA_ERR_CONSTRUCTION = 3, /* a builder could not satisfy its invariants */
  TSA_ERR_BUDGET = 4,       /* enumeration budget exceeded */
  TSA_ERR_INTERNAL = 5
} tsa_status;

const char* tsa_version(void);

/* Thread-local message for the most recent failure in this thread. */
const char* tsa_last_error(void);

void tsa_string_free(char* s);
void tsa_scheme_free(tsa_scheme* s);

/* Builders.  topology is "ring", "prism" or "complete"; size is K for ring
 * and complete, M (half the user count) for prism. */
tsa_status tsa_scheme_build(const char* topology, int size, tsa_scheme** out);

tsa_status tsa_scheme_from_json(const char* json_text, tsa_scheme** out);
tsa_status tsa_scheme_to_json(const tsa_scheme* s, char** json_out);

/* Compact summary: {"kind", "K", "d", "field", "rates"}. */
tsa_status tsa_scheme_info(const tsa_scheme* s, char** json_out);

/* Exact recovery + rank verification.  pass_out is 1 when every check holds. */
tsa_status tsa_scheme_verify(const tsa_scheme* s, char** report_json_out, int* pass_out);

/* Executes protocol rounds.  inputs_json may be NULL (inputs are then drawn
 * from the seeded generator each round), a single vector of [a,b] pairs used
 * for every round, or a list of such vectors (one round each, overriding
 * `rounds`).  Emits one transcript JSON object per line.  all_ok_out is 1
 * when every user recovered its neighborhood sum in every round. */
tsa_status tsa_scheme_run(const tsa_scheme* s, int rounds, uint64_t seed,
                          const char* inputs_json, char** transcripts_jsonl_out,
                          int* all_ok_out);

/* Exhaustive security audit.  verdict_out: 0 = all executed checks pass,
 * 2 = some check failed, 3 = pass but per-user independence audits were
 * skipped for budget.  reduced_conditioning drops the user's own input from
 * the conditioning tuple (cheaper, weaker form). */
tsa_status tsa_scheme_audit(const tsa_scheme* s, uint64_t budget, int reduced_conditioning,
                            char** report_json_out, int* verdict_out);

/* Canonical topology JSON for a named kind ("ring"/"prism"/"complete"). */
tsa_status tsa_topology_json(const char* kind, int size, char** json_out);

/* Modulation search over a topology (JSON as produced by tsa_topology_json
 * or hand-written with kind "custom").  field_json: {"p":..,"degree":..,
 * "delta":..}.  strategy: "uniform", "blockwise" or "exhaustive".  blocks_csv
 * assigns one block id per vertex ("0,0,0,1,1,1"); NULL selects the natural
 * blocks (the two cycles of a prism, one block otherwise). */
tsa_status tsa_search(const char* topology_json, const char* field_json,
                      const char* strategy, const char* blocks_csv, uint64_t cap,
                      char** result_json_out);

#ifdef __cplusplus
}
#endif

#endif /* TSA_C_API_H */
