/* cartankit C API: exact Lie-theoretic computations over Q(i). */

#ifndef CARTANKIT_H
#define CARTANKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes mirroring the CLI exit codes, plus FFI-specific conditions.
typedef enum CkStatus {
  // Success.
  CK_STATUS_OK = 0,
  // The computation ran but reported a failure (rejected element,
  // failed check, counterexample).
  CK_STATUS_FAIL = 1,
  // Malformed input: bad JSON, wrong dimensions, unknown names.
  CK_STATUS_INPUT_ERROR = 2,
  // The input needs eigenvalues outside Q(i).
  CK_STATUS_SPLIT_FAILURE = 3,
  // A required pointer argument was null.
  CK_STATUS_NULL_POINTER = 4,
  // A panic was caught at the boundary; state may be stale.
  CK_STATUS_PANIC = 5,
} CkStatus;

// Opaque group context handle.
typedef struct CkGroup CkGroup;

// Opaque Lie algebra handle.
typedef struct CkLie CkLie;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent non-`Ok` status on this thread, or null.
// The pointer is valid until the next library call on the same thread.
const char *ck_last_error(void);

// Release a string returned by this library.
//
// # Safety
// `s` must be a pointer previously returned through a `char**` output of
// this library, not yet freed; null is accepted and ignored.
void ck_string_free(char *s);

// Load a Lie algebra from its JSON form
// `{"ambient": n, "basis": [Mat, ...]}`.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be a valid
// pointer. On `Ok` the handle must be released with [`ck_lie_free`].
enum CkStatus ck_lie_from_json(const char *json, struct CkLie **out);

// # Safety
// `lie` must come from this library and not be freed twice; null is
// ignored.
void ck_lie_free(struct CkLie *lie);

// # Safety
// `lie` and `out` must be valid pointers.
enum CkStatus ck_lie_dim(const struct CkLie *lie, size_t *out);

// Rank of the algebra (dimension of a Cartan subalgebra), deterministic
// given the seed.
//
// # Safety
// `lie` and `out` must be valid pointers.
enum CkStatus ck_lie_rank(const struct CkLie *lie, uint64_t seed, size_t *out);

// A Cartan subalgebra as subspace JSON.
//
// # Safety
// `lie` must be valid; `out_json` receives an owned string (see
// [`ck_string_free`]).
enum CkStatus ck_lie_cartan_json(const struct CkLie *lie, uint64_t seed, char **out_json);

// Root space decomposition of a nilpotent subalgebra given as
// `{"vectors": [...]}` or `{"indices": [...]}`.
//
// # Safety
// As for [`ck_lie_cartan_json`]; `h_json` must be a valid string.
enum CkStatus ck_lie_roots_json(const struct CkLie *lie, const char *h_json, char **out_json);

// Look up a built-in group context by name (see `cartankit corpus --list`).
//
// # Safety
// `name` must be a valid string; `out` a valid pointer. Release the handle
// with [`ck_group_free`].
enum CkStatus ck_group_corpus(const char *name, struct CkGroup **out);

// Load a group context from JSON `{"name", "ambient", "lie", "hint"}`.
// Loaded groups carry no sampler.
//
// # Safety
// As for [`ck_lie_from_json`].
enum CkStatus ck_group_from_json(const char *json, struct CkGroup **out);

// # Safety
// `group` must come from this library and not be freed twice; null is
// ignored.
void ck_group_free(struct CkGroup *group);

// Validate an element (matrix JSON) against the group: `Ok` when accepted,
// `Fail` with a reason otherwise.
//
// # Safety
// `group` and `elem_json` must be valid.
enum CkStatus ck_group_validate(const struct CkGroup *group, const char *elem_json);

// The shifted characteristic coefficients of Ad(g) as a JSON array of
// scalar strings, lowest degree first.
//
// # Safety
// `group`, `elem_json` valid; `out_json` receives an owned string.
enum CkStatus ck_group_acoeffs_json(const struct CkGroup *group,
                                    const char *elem_json,
                                    char **out_json);

// `r(g)`, the least index with a nonzero shifted coefficient.
//
// # Safety
// All pointers must be valid.
enum CkStatus ck_group_r(const struct CkGroup *group, const char *elem_json, size_t *out);

// `g^1(Ad g)` as subspace JSON.
//
// # Safety
// All pointers must be valid; `out_json` receives an owned string.
enum CkStatus ck_group_g1_json(const struct CkGroup *group, const char *elem_json, char **out_json);

// Regularity of an element.
//
// # Safety
// All pointers must be valid.
enum CkStatus ck_group_is_regular(const struct CkGroup *group,
                                  const char *elem_json,
                                  uint64_t seed,
                                  bool *out);

// Membership in the C-Cartan of a Cartan subalgebra given in the
// subalgebra-argument JSON form.
//
// # Safety
// All pointers must be valid.
enum CkStatus ck_group_in_c(const struct CkGroup *group,
                            const char *elem_json,
                            const char *h_json,
                            uint64_t seed,
                            bool *out);

// Run one verification check; the canonical report JSON is written to
// `out_json` whenever the check ran. A `samples` of 0 selects the
// per-check default. Returns `Fail` iff the check failed.
//
// # Safety
// `check_id` must be a valid string; `out_json` receives an owned string.
enum CkStatus ck_verify_check_json(const char *check_id,
                                   uint64_t seed,
                                   uint64_t samples,
                                   char **out_json);

// Run the whole verification suite; writes a JSON array of canonical
// reports. Returns `Fail` iff some check failed.
//
// # Safety
// `out_json` must be a valid pointer; it receives an owned string.
enum CkStatus ck_verify_all_json(uint64_t seed, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARTANKIT_H */
