#ifndef GENFACTOR_H
#define GENFACTOR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GfStatus {
  GF_STATUS_OK = 0,
  GF_STATUS_NULL_ARGUMENT = 1,
  GF_STATUS_INVALID_UTF8 = 2,
  GF_STATUS_PARSE = 3,
  GF_STATUS_STRUCTURAL = 4,
  GF_STATUS_PRECONDITION = 5,
  GF_STATUS_BUDGET = 6,
  GF_STATUS_MODEL = 7,
  GF_STATUS_INPUT = 8,
  GF_STATUS_PANIC = 9,
} GfStatus;

typedef enum GfFastPath {
  GF_FAST_PATH_AUTO = 0,
  GF_FAST_PATH_ON = 1,
  GF_FAST_PATH_OFF = 2,
} GfFastPath;

typedef enum GfDecision {
  GF_DECISION_NO = 0,
  GF_DECISION_YES = 1,
} GfDecision;

/**
 * An edge weighting, typically a factor of some instance.
 */
typedef struct GfFactor GfFactor;

/**
 * A parsed instance.
 */
typedef struct GfInstance GfInstance;

/**
 * Solver settings. Pass NULL to `gf_solve` for the defaults: automatic
 * fast path, one worker, stop at the first witness.
 */
typedef struct GfSolveOptions {
  enum GfFastPath fast_path;
  /**
   * Worker threads; 0 is treated as 1.
   */
  uint32_t workers;
  /**
   * Keep exploring after a witness is found so the counters cover the
   * whole search.
   */
  bool count_all;
} GfSolveOptions;

/**
 * Counters reported by `gf_solve`.
 */
typedef struct GfSolveStats {
  uint64_t k;
  uint64_t modules_found;
  uint64_t contracted_edge_count;
  uint64_t x_subsets_explored;
  uint64_t forests_explored;
  uint64_t forest_solves;
  bool fast_path;
  bool rejected_early;
} GfSolveStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *gf_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void gf_string_free(char *s);

/**
 * Parses an instance from its text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum GfStatus gf_instance_parse(const char *text, struct GfInstance **out);

/**
 * # Safety
 * `inst` must be NULL or a handle from this library, not yet freed.
 */
void gf_instance_free(struct GfInstance *inst);

/**
 * Canonical text of the instance, or NULL if `inst` is NULL. Free with
 * `gf_string_free`.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
char *gf_instance_serialize(const struct GfInstance *inst);

/**
 * # Safety
 * `inst` must be a live handle.
 */
uint32_t gf_instance_num_u(const struct GfInstance *inst);

/**
 * # Safety
 * `inst` must be a live handle.
 */
uint32_t gf_instance_num_v(const struct GfInstance *inst);

/**
 * # Safety
 * `inst` must be a live handle.
 */
uint32_t gf_instance_num_edges(const struct GfInstance *inst);

/**
 * Parses a factor from its text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum GfStatus gf_factor_parse(const char *text, struct GfFactor **out);

/**
 * # Safety
 * `factor` must be NULL or a handle from this library, not yet freed.
 */
void gf_factor_free(struct GfFactor *factor);

/**
 * # Safety
 * `factor` must be NULL or a live handle.
 */
char *gf_factor_serialize(const struct GfFactor *factor);

/**
 * Weight on `(u, v)`; 0 for pairs the factor does not mention.
 *
 * # Safety
 * `factor` must be a live handle.
 */
uint32_t gf_factor_weight(const struct GfFactor *factor, uint32_t u, uint32_t v);

/**
 * Checks `factor` against `inst`. A weight on a non-edge is an error
 * (`GF_STATUS_STRUCTURAL`). Otherwise `*valid` is set, and if `violation`
 * is not NULL it receives a description of the first violation (or NULL
 * when valid), to be freed with `gf_string_free`.
 *
 * # Safety
 * Handles must be live; `valid` must be writable; `violation` may be NULL.
 */
enum GfStatus gf_verify(const struct GfInstance *inst,
                        const struct GfFactor *factor,
                        bool *valid,
                        char **violation);

/**
 * Decides `inst` with the parameterized solver. On YES and a non-NULL
 * `witness`, a new factor handle is stored there; otherwise `*witness` is
 * set to NULL. `options` and `stats` may be NULL.
 *
 * # Safety
 * `inst` must be live; `decision` writable; the others NULL or writable.
 */
enum GfStatus gf_solve(const struct GfInstance *inst,
                       const struct GfSolveOptions *options,
                       enum GfDecision *decision,
                       struct GfFactor **witness,
                       struct GfSolveStats *stats);

/**
 * Decides `inst` by exhaustive search. `max_nodes = 0` uses the default
 * node budget and `time_limit_ms = 0` means no time limit. Running out of
 * budget returns `GF_STATUS_BUDGET`, which means "unknown".
 *
 * # Safety
 * As for `gf_solve`.
 */
enum GfStatus gf_oracle(const struct GfInstance *inst,
                        uint64_t max_nodes,
                        uint64_t time_limit_ms,
                        enum GfDecision *decision,
                        struct GfFactor **witness);

/**
 * Builds the selection gadget for the strictly increasing values
 * `values[0..len]` with `r >= 1` outputs.
 *
 * # Safety
 * `values` must point to `len` readable integers; `out` must be writable.
 */
enum GfStatus gf_selection_gadget(const uint32_t *values,
                                  size_t len,
                                  uint32_t r,
                                  struct GfInstance **out);

/**
 * Checks a cardinality-constraint model given as JSON. When consistent
 * and `assignment` is not NULL, it receives one `variable value` line per
 * variable, to be freed with `gf_string_free`.
 *
 * # Safety
 * `model` must be a NUL-terminated string; `consistent` writable;
 * `assignment` NULL or writable.
 */
enum GfStatus gf_egcc_check(const char *model, bool *consistent, char **assignment);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GENFACTOR_H */
