#ifndef MRD_STORAGE_H
#define MRD_STORAGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MrdStatus {
  MRD_STATUS_OK = 0,
  /**
   * null pointer or non-UTF-8 string
   */
  MRD_STATUS_INVALID_ARGUMENT = 1,
  /**
   * malformed JSON or a value of the wrong shape
   */
  MRD_STATUS_PARSE = 2,
  /**
   * parameters violate a construction or bound precondition
   */
  MRD_STATUS_INVALID_PARAMETERS = 3,
  /**
   * too many errors or erasures for the decoder
   */
  MRD_STATUS_DECODE_FAILURE = 4,
  /**
   * repair could not be completed
   */
  MRD_STATUS_REPAIR_FAILURE = 5,
  /**
   * more compromised nodes than the scheme tolerates
   */
  MRD_STATUS_ADVERSARY_LIMIT = 6,
  /**
   * a panic was caught at the boundary
   */
  MRD_STATUS_INTERNAL = 7,
} MrdStatus;

/**
 * Opaque scheme handle.
 */
typedef struct MrdScheme MrdScheme;

/**
 * Opaque simulator handle.
 */
typedef struct MrdSim MrdSim;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *mrd_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void mrd_string_free(char *s);

/**
 * Releases a byte buffer returned by this library.
 *
 * # Safety
 * `data` and `len` must be exactly as returned, not yet freed.
 */
void mrd_bytes_free(uint8_t *data, size_t len);

/**
 * Builds a scheme from its JSON descriptor.
 *
 * # Safety
 * `descriptor_json` must be a NUL-terminated string; `out` must be writable.
 */
enum MrdStatus mrd_scheme_new(const char *descriptor_json, struct MrdScheme **out);

/**
 * # Safety
 * `scheme` must come from [`mrd_scheme_new`] and not have been freed.
 */
void mrd_scheme_free(struct MrdScheme *scheme);

/**
 * Number of storage nodes, or 0 for a null handle.
 *
 * # Safety
 * `scheme` must be null or a live handle.
 */
size_t mrd_scheme_nodes(const struct MrdScheme *scheme);

/**
 * Outer-code dimension (symbols per stripe), or 0 for a null handle.
 *
 * # Safety
 * `scheme` must be null or a live handle.
 */
size_t mrd_scheme_file_len(const struct MrdScheme *scheme);

/**
 * Symbols stored per node, or 0 for a null handle.
 *
 * # Safety
 * `scheme` must be null or a live handle.
 */
size_t mrd_scheme_alpha(const struct MrdScheme *scheme);

/**
 * Fully pinned descriptor of the scheme as JSON.
 *
 * # Safety
 * `scheme` must be a live handle; `out` must be writable.
 */
enum MrdStatus mrd_scheme_descriptor(const struct MrdScheme *scheme, char **out);

/**
 * Encodes `len` bytes into a JSON node file.
 *
 * # Safety
 * `payload` must point to `len` readable bytes (or be null with `len == 0`).
 */
enum MrdStatus mrd_encode(const struct MrdScheme *scheme,
                          const uint8_t *payload,
                          size_t len,
                          char **nodes_json);

/**
 * Decodes a JSON node file (absent nodes as `null`) back to its payload.
 *
 * # Safety
 * `nodes_json` must be a NUL-terminated string; `out` and `out_len` writable.
 */
enum MrdStatus mrd_decode(const char *nodes_json, uint8_t **out, size_t *out_len);

/**
 * Evaluates every bound whose parameters are present in `params_json`.
 *
 * # Safety
 * `params_json` must be a NUL-terminated string; `out` writable.
 */
enum MrdStatus mrd_bounds(const char *params_json, char **out);

/**
 * Runs a scenario config and returns its report; `success` receives 1 when
 * every check in the report was met.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string; `report` and `success` writable.
 */
enum MrdStatus mrd_run_scenario(const char *config_json, char **report, int32_t *success);

/**
 * Starts a simulator on `scheme`. `file_json` is a JSON array of symbols
 * (coefficient arrays); null draws a random file from `seed`.
 *
 * # Safety
 * `scheme` must be live; `file_json` null or NUL-terminated; `out` writable.
 */
enum MrdStatus mrd_sim_new(const struct MrdScheme *scheme,
                           const char *file_json,
                           uint64_t seed,
                           bool verification,
                           struct MrdSim **out);

/**
 * # Safety
 * `sim` must come from [`mrd_sim_new`] and not have been freed.
 */
void mrd_sim_free(struct MrdSim *sim);

/**
 * Applies one event (scenario syntax, 1-based) and returns its record.
 * Failures inside the event are reported in the record, not the status.
 *
 * # Safety
 * `sim` must be live; `event_json` NUL-terminated; `record` writable.
 */
enum MrdStatus mrd_sim_apply(struct MrdSim *sim, const char *event_json, char **record);

/**
 * Rank over the base field of the difference between stored and true
 * content, or 0 for a null handle.
 *
 * # Safety
 * `sim` must be null or live.
 */
size_t mrd_sim_aggregate_rank(const struct MrdSim *sim);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MRD_STORAGE_H */
