/* C interface for the erdosum library. Generated by cbindgen; do not edit. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible function.
typedef enum ErdosumStatus {
  ERDOSUM_STATUS_OK = 0,
  ERDOSUM_STATUS_NULL_POINTER = 1,
  // A precondition on the arguments was violated (bound or threshold too
  // small, term below 2, zero stride, ...).
  ERDOSUM_STATUS_DOMAIN_ERROR = 2,
  // A query exceeded the table limit.
  ERDOSUM_STATUS_OUT_OF_RANGE = 3,
  // The request exceeds a capacity ceiling (sieve limit, pair products).
  ERDOSUM_STATUS_CAPACITY_ERROR = 4,
  // The sequence is not primitive; the witness out-parameters are filled.
  ERDOSUM_STATUS_NOT_PRIMITIVE = 5,
  ERDOSUM_STATUS_IO_ERROR = 6,
  // A table cache failed validation, or a path was not valid UTF-8.
  ERDOSUM_STATUS_INVALID_INPUT = 7,
  ERDOSUM_STATUS_INTERNAL_ERROR = 8,
} ErdosumStatus;

// Opaque prime table handle. Create with `erdosum_table_new` or
// `erdosum_table_load`, release with `erdosum_table_free`.
typedef struct ErdosumTable ErdosumTable;

// A certified partial sum.
typedef struct ErdosumSumResult {
  double value;
  double error_bound;
  uint64_t term_count;
} ErdosumSumResult;

// The verification verdict for one threshold.
typedef struct ErdosumReport {
  uint64_t threshold;
  // Nonzero when pairs were enumerated as ordered pairs (p != q twice).
  bool ordered_pairs;
  bool includes_prime_squares;
  struct ErdosumSumResult semiprime_sum;
  struct ErdosumSumResult prime_sum;
  double margin;
  bool certified;
  double erdos_bound;
  double clark_bound;
} ErdosumReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Sieve all primes up to `limit` and return an owned table handle.
//
// # Safety
// `out` must be a valid pointer. On `Ok` it receives a table that must be
// released with `erdosum_table_free`.
enum ErdosumStatus erdosum_table_new(uint64_t limit, struct ErdosumTable **out);

// Load a table from a binary cache file written by `erdosum_table_save`.
//
// # Safety
// `path` must be a NUL-terminated string, `out` a valid pointer; see
// `erdosum_table_new` for ownership.
enum ErdosumStatus erdosum_table_load(const char *path, struct ErdosumTable **out);

// Write the table as a binary cache file.
//
// # Safety
// `table` must be a live handle, `path` a NUL-terminated string.
enum ErdosumStatus erdosum_table_save(const struct ErdosumTable *table, const char *path);

// Release a table handle. A null pointer is ignored.
//
// # Safety
// `table` must have been returned by this library and not freed before.
void erdosum_table_free(struct ErdosumTable *table);

// Inclusive limit the table was sieved to; 0 for a null handle.
//
// # Safety
// `table` must be a live handle or null.
uint64_t erdosum_table_limit(const struct ErdosumTable *table);

// pi(x): number of primes <= x in the table.
//
// # Safety
// `table` must be a live handle, `out` a valid pointer.
enum ErdosumStatus erdosum_prime_count(const struct ErdosumTable *table, uint64_t x, uint64_t *out);

// The summand 1/(a ln a); requires a >= 2.
//
// # Safety
// `out` must be a valid pointer.
enum ErdosumStatus erdosum_term(uint64_t a, double *out);

// Certified Erdos sum over primes <= bound.
//
// # Safety
// `table` must be a live handle, `out` a valid pointer.
enum ErdosumStatus erdosum_sum_primes(const struct ErdosumTable *table,
                                      uint64_t bound,
                                      struct ErdosumSumResult *out);

// Certified pair-product Erdos sum over p, q <= bound.
//
// `ordered_pairs` selects the enumeration (see the library docs); products
// with p != q count twice when it is set. `chunk_size` of 0 means default.
//
// # Safety
// `table` must be a live handle, `out` a valid pointer.
enum ErdosumStatus erdosum_sum_semiprimes(const struct ErdosumTable *table,
                                          uint64_t bound,
                                          bool include_prime_squares,
                                          bool ordered_pairs,
                                          uint64_t chunk_size,
                                          struct ErdosumSumResult *out);

// Compare the pair sum against the prime sum at `threshold`; `certified` in
// the report means the margin strictly exceeds both error bounds combined.
//
// # Safety
// `out` must be a valid pointer.
enum ErdosumStatus erdosum_verify(uint64_t threshold,
                                  bool include_prime_squares,
                                  bool ordered_pairs,
                                  struct ErdosumReport *out);

// Heuristic tail estimate 1/ln(x) for the prime sum beyond x. NON-RIGOROUS:
// context only, never part of a certified quantity. Requires x >= 3.
//
// # Safety
// `out` must be a valid pointer.
enum ErdosumStatus erdosum_tail_estimate(uint64_t x, double *out);

// Check that no element divides another. Returns `Ok` for a primitive
// sequence; on `NotPrimitive` the witness pair (a divides b) is written to
// `witness_a` / `witness_b` when those pointers are non-null.
//
// # Safety
// `elements` must point to `len` readable u64 values (null only if len is 0).
enum ErdosumStatus erdosum_check_primitive(const uint64_t *elements,
                                           uintptr_t len,
                                           uint64_t *witness_a,
                                           uint64_t *witness_b);

// Library version as a static NUL-terminated string.
const char *erdosum_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
