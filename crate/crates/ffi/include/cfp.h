#ifndef CFP_H
#define CFP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CfpStatus {
  CFP_STATUS_OK = 0,
  CFP_STATUS_NULL_POINTER = 1,
  CFP_STATUS_INVALID_UTF8 = 2,
  CFP_STATUS_PARSE = 3,
  CFP_STATUS_INVALID_ARGUMENT = 4,
  CFP_STATUS_GUARD = 5,
  CFP_STATUS_UNDEFINED_EFFICACY = 6,
  CFP_STATUS_FAILED = 7,
  CFP_STATUS_PANIC = 8,
} CfpStatus;

typedef enum CfpObjective {
  CFP_OBJECTIVE_F1 = 0,
  CFP_OBJECTIVE_EFFICACY = 1,
} CfpObjective;

typedef enum CfpMethod {
  CFP_METHOD_ORACLE = 0,
  CFP_METHOD_EXACT = 1,
  CFP_METHOD_HEURISTIC = 2,
} CfpMethod;

/**
 * Opaque instance handle.
 */
typedef struct CfpInstance CfpInstance;

/**
 * Opaque solution handle.
 */
typedef struct CfpSolution CfpSolution;

/**
 * Objective values of a solution. `efficacy_num / efficacy_den` is in
 * lowest terms and only meaningful when `efficacy_defined` is true.
 */
typedef struct CfpReport {
  uint64_t n1;
  uint64_t e;
  uint64_t v;
  uint64_t f1;
  bool efficacy_defined;
  uint64_t efficacy_num;
  uint64_t efficacy_den;
} CfpReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread; empty after a
 * successful call. Valid until the next call into this library.
 */
const char *cfp_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void cfp_string_free(char *s);

/**
 * Parses an instance from its text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CfpStatus cfp_instance_parse(const char *text, struct CfpInstance **out);

/**
 * Builds an unweighted instance from `m * p` row-major bytes (0 or 1).
 *
 * # Safety
 * `data` must point to `m * p` readable bytes; `out` must be writable.
 */
enum CfpStatus cfp_instance_from_dense(const uint8_t *data,
                                       size_t m,
                                       size_t p,
                                       struct CfpInstance **out);

/**
 * # Safety
 * `inst` must be null or a handle from this library, freed once.
 */
void cfp_instance_free(struct CfpInstance *inst);

/**
 * Number of machines (rows); 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t cfp_instance_machines(const struct CfpInstance *inst);

/**
 * Number of parts (columns); 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t cfp_instance_parts(const struct CfpInstance *inst);

/**
 * Weighted number of ones; 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
uint64_t cfp_instance_n1(const struct CfpInstance *inst);

/**
 * Serializes an instance to its text format.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum CfpStatus cfp_instance_write(const struct CfpInstance *inst, char **out);

/**
 * Parses a solution and checks it against `inst`.
 *
 * # Safety
 * `inst` must be a live handle, `text` NUL-terminated, `out` writable.
 */
enum CfpStatus cfp_solution_parse(const struct CfpInstance *inst,
                                  const char *text,
                                  struct CfpSolution **out);

/**
 * Builds a solution from cell labels, checking lengths and label range
 * against `inst`. Labels need not be canonical.
 *
 * # Safety
 * The arrays must hold `machines` and `parts` readable elements.
 */
enum CfpStatus cfp_solution_new(const struct CfpInstance *inst,
                                const size_t *machine_cells,
                                size_t machines,
                                const size_t *part_cells,
                                size_t parts,
                                struct CfpSolution **out);

/**
 * # Safety
 * `sol` must be null or a handle from this library, freed once.
 */
void cfp_solution_free(struct CfpSolution *sol);

/**
 * Number of distinct cells used; 0 for a null handle.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
size_t cfp_solution_num_cells(const struct CfpSolution *sol);

/**
 * Copies the machine labels into `out`, which must hold exactly `len`
 * elements, `len` being the machine count.
 *
 * # Safety
 * `sol` must be a live handle and `out` writable for `len` elements.
 */
enum CfpStatus cfp_solution_machine_cells(const struct CfpSolution *sol, size_t *out, size_t len);

/**
 * Copies the part labels into `out`; see [`cfp_solution_machine_cells`].
 *
 * # Safety
 * `sol` must be a live handle and `out` writable for `len` elements.
 */
enum CfpStatus cfp_solution_part_cells(const struct CfpSolution *sol, size_t *out, size_t len);

/**
 * Serializes a solution to its text format.
 *
 * # Safety
 * `sol` must be a live handle; `out` must be writable.
 */
enum CfpStatus cfp_solution_write(const struct CfpSolution *sol, char **out);

/**
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum CfpStatus cfp_evaluate(const struct CfpInstance *inst,
                            const struct CfpSolution *sol,
                            struct CfpReport *out);

/**
 * Optimizes `inst`. `seed` is used by the heuristic only; `threads = 0`
 * uses all cores. `out_best` receives a new solution handle and
 * `out_report` (may be null) its report.
 *
 * # Safety
 * `inst` must be a live handle; `out_best` must be writable.
 */
enum CfpStatus cfp_solve(const struct CfpInstance *inst,
                         enum CfpObjective objective,
                         enum CfpMethod method,
                         uint64_t seed,
                         size_t threads,
                         struct CfpSolution **out_best,
                         struct CfpReport *out_report);

/**
 * Decides whether some solution has `e + v <= c`, with the exact solver
 * or, if `via_reduction`, through an efficacy solve on the extended matrix.
 *
 * # Safety
 * `inst` must be a live handle; `out_yes` must be writable.
 */
enum CfpStatus cfp_decide_f1(const struct CfpInstance *inst,
                             uint64_t c,
                             bool via_reduction,
                             size_t threads,
                             bool *out_yes);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CFP_H */
