#ifndef SIGNET_H
#define SIGNET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum SignetStatus {
  SIGNET_STATUS_OK = 0,
  SIGNET_STATUS_NULL_ARGUMENT = 1,
  SIGNET_STATUS_INVALID_UTF8 = 2,
  SIGNET_STATUS_PARSE_ERROR = 3,
  SIGNET_STATUS_INVALID_NET = 4,
  SIGNET_STATUS_IO_ERROR = 5,
  SIGNET_STATUS_TRANSLATION_REJECTED = 6,
  SIGNET_STATUS_FIRE_ERROR = 7,
  SIGNET_STATUS_BOUND_EXCEEDED = 8,
  SIGNET_STATUS_PANIC = 9,
} SignetStatus;

/**
 * Outcome of [`signet_check_equivalence`].
 */
typedef enum SignetVerdict {
  SIGNET_VERDICT_EQUIVALENT = 0,
  SIGNET_VERDICT_NOT_EQUIVALENT = 1,
  SIGNET_VERDICT_UNKNOWN = 2,
} SignetVerdict;

/**
 * A net together with its optional initial marking.
 */
typedef struct SignetNet SignetNet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *signet_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void signet_string_free(char *s);

/**
 * Parses a JSON net document. The net must pass validation.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum SignetStatus signet_net_parse(const char *json, struct SignetNet **out);

/**
 * Reads a net document from disk.
 *
 * # Safety
 * `path` must be a nul-terminated string; `out` must be writable.
 */
enum SignetStatus signet_net_load(const char *path, struct SignetNet **out);

/**
 * Releases a net handle. Null is ignored.
 *
 * # Safety
 * `net` must come from this library and not have been freed.
 */
void signet_net_free(struct SignetNet *net);

/**
 * Canonical JSON text of the net and its marking.
 *
 * # Safety
 * `net` must be a live handle; `out` must be writable.
 */
enum SignetStatus signet_net_to_json(const struct SignetNet *net, char **out);

/**
 * Writes the canonical document to `path`.
 *
 * # Safety
 * `net` must be a live handle; `path` a nul-terminated string.
 */
enum SignetStatus signet_net_save(const struct SignetNet *net, const char *path);

/**
 * Number of places, or 0 for a null handle.
 *
 * # Safety
 * `net` must be null or a live handle.
 */
size_t signet_net_place_count(const struct SignetNet *net);

/**
 * Number of transitions, or 0 for a null handle.
 *
 * # Safety
 * `net` must be null or a live handle.
 */
size_t signet_net_transition_count(const struct SignetNet *net);

/**
 * Stores the number of structural violations in `count`. Handles obtained
 * from this library are always valid, so this is mostly a sanity check.
 *
 * # Safety
 * `net` must be a live handle; `count` must be writable.
 */
enum SignetStatus signet_net_validate(const struct SignetNet *net, size_t *count);

/**
 * Outcomes of firing `transition` at the net's marking, one per line.
 * An empty string means the transition cannot fire.
 *
 * # Safety
 * `net` must be a live handle, `transition` a nul-terminated string and
 * `out` writable.
 */
enum SignetStatus signet_fire(const struct SignetNet *net, const char *transition, char **out);

/**
 * Translates an LPN into an LSPN carrying the matching initial marking.
 * On rejection the report is available through [`signet_last_error`].
 *
 * # Safety
 * `lpn` must be a live handle; `out` must be writable.
 */
enum SignetStatus signet_translate(const struct SignetNet *lpn, struct SignetNet **out);

/**
 * Compares an LPN with an LSPN; a null `lspn` means "translate `lpn`".
 * `report`, when not null, receives the witness or counterexample text.
 * Returns `BoundExceeded` (with `Unknown` stored) when `max_states` is hit.
 *
 * # Safety
 * `lpn` must be a live handle, `lspn` null or a live handle, `verdict`
 * writable and `report` null or writable.
 */
enum SignetStatus signet_check_equivalence(const struct SignetNet *lpn,
                                           const struct SignetNet *lspn,
                                           size_t max_states,
                                           enum SignetVerdict *verdict,
                                           char **report);

/**
 * Explores from the net's marking and renders the reachability graph in
 * Graphviz syntax. Returns `BoundExceeded` (and still writes `out`) when
 * `max_states` is hit.
 *
 * # Safety
 * `net` must be a live handle; `out` must be writable.
 */
enum SignetStatus signet_explore_dot(const struct SignetNet *net, size_t max_states, char **out);

/**
 * Canonical DNF of an expression, e.g. `(p1 & p3) | (p2 & p3)`.
 *
 * # Safety
 * `expr` must be a nul-terminated string; `out` must be writable.
 */
enum SignetStatus signet_dnf(const char *expr, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIGNET_H */
