#ifndef FINCAT_H
#define FINCAT_H

#include <stdbool.h>
#include <stddef.h>

/**
 * Result code of every fallible call.
 */
typedef enum FcStatus {
  FC_STATUS_OK = 0,
  FC_STATUS_NULL_ARGUMENT = 1,
  FC_STATUS_INVALID_UTF8 = 2,
  FC_STATUS_PARSE_ERROR = 3,
  FC_STATUS_INVALID_INPUT = 4,
  FC_STATUS_UNSUPPORTED_CLASS = 5,
  FC_STATUS_UNSUPPORTED_PAIR = 6,
  FC_STATUS_PRECONDITION_FAILURE = 7,
  FC_STATUS_INTERNAL = 8,
} FcStatus;

/**
 * A validated finite category.
 */
typedef struct FcCategory FcCategory;

/**
 * A functor between two categories. Keeps its categories alive.
 */
typedef struct FcFunctor FcFunctor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *fc_last_error_message(void);

/**
 * Parses a `.fincat` description.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum FcStatus fc_category_parse(const char *text, struct FcCategory **out);

/**
 * # Safety
 * `c` must come from [`fc_category_parse`] and not be used afterwards.
 */
void fc_category_free(struct FcCategory *c);

/**
 * # Safety
 * `c` must be a valid handle.
 */
size_t fc_category_object_count(const struct FcCategory *c);

/**
 * # Safety
 * `c` must be a valid handle.
 */
size_t fc_category_morphism_count(const struct FcCategory *c);

/**
 * Parses a `.fun` description of a functor `source -> target`.
 *
 * # Safety
 * Handles must be valid, `text` nul-terminated and `out` a valid pointer.
 */
enum FcStatus fc_functor_parse(const char *text,
                               const struct FcCategory *source,
                               const struct FcCategory *target,
                               struct FcFunctor **out);

/**
 * # Safety
 * `f` must come from this library and not be used afterwards.
 */
void fc_functor_free(struct FcFunctor *f);

/**
 * Writes the functor in `.fun` format.
 *
 * # Safety
 * `f` must be a valid handle and `out` a valid pointer.
 */
enum FcStatus fc_functor_to_text(const struct FcFunctor *f, char **out);

/**
 * Sets `*found` and, when a right adjoint exists and `right` is not null,
 * stores a new handle for it in `*right`.
 *
 * # Safety
 * `f` must be a valid handle, `found` a valid pointer, `right` null or valid.
 */
enum FcStatus fc_find_right_adjoint(const struct FcFunctor *f,
                                    bool *found,
                                    struct FcFunctor **right);

/**
 * Whether every hom-presheaf of `f` lies in the named weight class.
 *
 * # Safety
 * `f` must be a valid handle, `class_name` nul-terminated, `out` valid.
 */
enum FcStatus fc_is_admissible(const struct FcFunctor *f, const char *class_name, bool *out);

/**
 * Whether `f` preserves colimits of shapes in the class with at most
 * `bound` morphisms.
 *
 * # Safety
 * `f` must be a valid handle, `class_name` nul-terminated, `out` valid.
 */
enum FcStatus fc_is_cocontinuous(const struct FcFunctor *f,
                                 const char *class_name,
                                 size_t bound,
                                 bool *out);

/**
 * Checks both sides of the theorem for `(psi, phi)` and stores the verdict
 * record as a JSON string in `*json`.
 *
 * # Safety
 * `f` must be a valid handle, names nul-terminated, `json` valid.
 */
enum FcStatus fc_verify_daft(const struct FcFunctor *f,
                             const char *psi,
                             const char *phi,
                             size_t bound,
                             char **json);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void fc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FINCAT_H */
