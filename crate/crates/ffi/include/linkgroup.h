#ifndef LINKGROUP_H
#define LINKGROUP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LgStatus {
  LG_STATUS_OK = 0,
  LG_STATUS_NULL_POINTER = 1,
  LG_STATUS_INVALID_UTF8 = 2,
  LG_STATUS_PARSE = 3,
  LG_STATUS_VALIDATION = 4,
  /**
   * The result was produced but some entry hit its search budget.
   */
  LG_STATUS_BUDGET = 5,
  LG_STATUS_PANIC = 6,
  LG_STATUS_INVALID_ARGUMENT = 7,
} LgStatus;

typedef enum LgDialect {
  LG_DIALECT_NATIVE = 0,
  LG_DIALECT_GAP = 1,
  LG_DIALECT_PLAIN = 2,
} LgDialect;

/**
 * A validated link diagram.
 */
typedef struct LgDiagram LgDiagram;

/**
 * A finitely presented group.
 */
typedef struct LgPresentation LgPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates a PD-JSON diagram.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LgStatus lg_diagram_parse(const char *json, struct LgDiagram **out);

/**
 * # Safety
 * `d` must be null or a handle from `lg_diagram_parse` not yet freed.
 */
void lg_diagram_free(struct LgDiagram *d);

/**
 * Fundamental group of the closed manifold obtained by surgery on `d`.
 *
 * # Safety
 * `d` must be a live diagram handle and `out` a valid pointer.
 */
enum LgStatus lg_diagram_fundamental_group(const struct LgDiagram *d, struct LgPresentation **out);

/**
 * Parses native presentation text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LgStatus lg_presentation_parse(const char *text, struct LgPresentation **out);

/**
 * # Safety
 * `p` must be null or a presentation handle not yet freed.
 */
void lg_presentation_free(struct LgPresentation *p);

/**
 * # Safety
 * `p` must be a live presentation handle and `out` a valid pointer.
 */
enum LgStatus lg_presentation_serialize(const struct LgPresentation *p,
                                        enum LgDialect dialect,
                                        char **out);

/**
 * # Safety
 * `p` must be a live presentation handle and `out` a valid pointer.
 */
enum LgStatus lg_presentation_simplify(const struct LgPresentation *p, struct LgPresentation **out);

/**
 * Number of generators, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live presentation handle.
 */
size_t lg_presentation_generator_count(const struct LgPresentation *p);

/**
 * Number of relators, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live presentation handle.
 */
size_t lg_presentation_relator_count(const struct LgPresentation *p);

/**
 * Invariant factors of the first homology as a JSON array.
 *
 * # Safety
 * `p` must be a live presentation handle and `out` a valid pointer.
 */
enum LgStatus lg_presentation_homology_json(const struct LgPresentation *p, char **out);

/**
 * # Safety
 * `p` must be a live presentation handle and `out` a valid pointer.
 */
enum LgStatus lg_presentation_is_perfect(const struct LgPresentation *p, bool *out);

/**
 * Invariant profile over the built-in catalog with subgroup indices up to
 * `k`. Returns `LG_STATUS_BUDGET` (with `*out` set) if any entry hit
 * `budget`.
 *
 * # Safety
 * `p` must be a live presentation handle and `out` a valid pointer.
 */
enum LgStatus lg_profile_json(const struct LgPresentation *p,
                              uint32_t k,
                              uint64_t budget,
                              char **out);

/**
 * Verdict JSON comparing `p` and `q`; `*distinguished` is set when a
 * witness was found.
 *
 * # Safety
 * `p` and `q` must be live presentation handles; `out` and
 * `distinguished` valid pointers.
 */
enum LgStatus lg_distinguish_json(const struct LgPresentation *p,
                                  const struct LgPresentation *q,
                                  uint32_t k,
                                  uint64_t budget,
                                  char **out,
                                  bool *distinguished);

/**
 * Gem report for a 4-colored graph given as JSON.
 *
 * # Safety
 * `graph_json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LgStatus lg_gem_check_json(const char *graph_json, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void lg_string_free(char *s);

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *lg_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINKGROUP_H */
