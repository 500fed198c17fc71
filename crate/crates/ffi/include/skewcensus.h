#ifndef SKEWCENSUS_H
#define SKEWCENSUS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Search mode for [`skc_census_run`].
typedef enum SkcMode {
  SKC_MODE_FULL = 0,
  SKC_MODE_PRUNED = 1,
} SkcMode;

// Result codes of every fallible call.
typedef enum SkcStatus {
  SKC_STATUS_OK = 0,
  SKC_STATUS_NULL_POINTER = 1,
  SKC_STATUS_INVALID_PARAMETERS = 2,
  SKC_STATUS_UNSUPPORTED_SHAPE = 3,
  SKC_STATUS_UNDEFINED_CELL = 4,
  SKC_STATUS_NON_INTEGRAL = 5,
  // The search stopped at its budget; results are partial.
  SKC_STATUS_INCOMPLETE = 6,
  SKC_STATUS_INTERNAL = 7,
  SKC_STATUS_OUT_OF_RANGE = 8,
} SkcStatus;

// The summary of one enumeration.
typedef struct SkcCensus SkcCensus;

// A group of order `p²q` together with its automorphism group.
typedef struct SkcGroup SkcGroup;

// Search limits; zero means unlimited.
typedef struct SkcOptions {
  enum SkcMode mode;
  uint32_t workers;
  uint64_t max_nodes;
  double max_seconds;
} SkcOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *skc_last_error(void);

// Library version as a static string.
const char *skc_version(void);

// Build the catalog group of type `family` (5..11) at `(p, q)`. `k` is
// the type-8 parameter and is ignored (pass 0) for other types.
//
// # Safety
// `out` must be a valid pointer to writable storage for one pointer.
enum SkcStatus skc_group_new(uint8_t family,
                             uint32_t p,
                             uint32_t q,
                             uint32_t k,
                             struct SkcGroup **out);

// # Safety
// `group` must be null or a handle from [`skc_group_new`] not yet freed.
void skc_group_free(struct SkcGroup *group);

// `|G|`, or 0 for a null handle.
//
// # Safety
// `group` must be null or a live handle.
uint64_t skc_group_order(const struct SkcGroup *group);

// `|Aut(G)|`, or 0 for a null handle.
//
// # Safety
// `group` must be null or a live handle.
uint64_t skc_group_aut_order(const struct SkcGroup *group);

// Product of `a` and `b` (element indices `(i·p + j)·q + m` for
// `a1^i a2^j b^m`).
//
// # Safety
// `group` must be a live handle and `out` a valid pointer.
enum SkcStatus skc_group_mul(const struct SkcGroup *group, uint32_t a, uint32_t b, uint32_t *out);

// Enumerate every gamma function on the catalog group and summarize the
// result. On [`SkcStatus::Incomplete`] the handle is still produced and
// describes the partial enumeration.
//
// # Safety
// `options` must be null (defaults) or valid; `out` must be valid.
enum SkcStatus skc_census_run(uint8_t family,
                              uint32_t p,
                              uint32_t q,
                              uint32_t k,
                              const struct SkcOptions *options,
                              struct SkcCensus **out);

// # Safety
// `census` must be null or a handle from [`skc_census_run`] not yet freed.
void skc_census_free(struct SkcCensus *census);

// Total number of gamma functions found.
//
// # Safety
// `census` must be null or a live handle.
uint64_t skc_census_total(const struct SkcCensus *census);

// Number of target types `Γ` present.
//
// # Safety
// `census` must be null or a live handle.
uint32_t skc_census_target_count(const struct SkcCensus *census);

// The `index`-th target: its type, type-8 parameter (0 if none), `e′`
// and number of `Aut(G)`-classes. Any output pointer may be null.
//
// # Safety
// `census` must be a live handle; non-null outputs must be valid.
enum SkcStatus skc_census_target(const struct SkcCensus *census,
                                 uint32_t index,
                                 uint8_t *family,
                                 uint32_t *k,
                                 uint64_t *e_prime,
                                 uint64_t *classes);

// Whether every verification cell passed (1) or not (0).
//
// # Safety
// `census` must be null or a live handle.
int32_t skc_census_passed(const struct SkcCensus *census);

// The census as a JSON document. Release with [`skc_string_free`].
//
// # Safety
// `census` must be a live handle and `out` valid.
enum SkcStatus skc_census_to_json(const struct SkcCensus *census, char **out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void skc_string_free(char *s);

// Closed-form `e′(Γ, G)` at `(p, q)`. `gamma_k` and `g_k` are type-8
// parameters (0 otherwise).
//
// # Safety
// `out` must be valid.
enum SkcStatus skc_formula_e_prime(uint8_t gamma_family,
                                   uint32_t gamma_k,
                                   uint8_t g_family,
                                   uint32_t g_k,
                                   uint32_t p,
                                   uint32_t q,
                                   uint64_t *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SKEWCENSUS_H */
