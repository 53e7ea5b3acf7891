#ifndef FREEDEP_H
#define FREEDEP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum FdStatus {
  FD_STATUS_OK = 0,
  // A required pointer argument was null.
  FD_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  FD_STATUS_INVALID_UTF8 = 2,
  // Malformed word, alphabet or generator list.
  FD_STATUS_PARSE = 3,
  // The request has no answer for these inputs.
  FD_STATUS_DOMAIN = 4,
  // An internal consistency check failed.
  FD_STATUS_INTERNAL = 5,
  // A panic was caught at the boundary.
  FD_STATUS_PANIC = 6,
} FdStatus;

// A finitely generated subgroup of a free group.
typedef struct FdSubgroup FdSubgroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a subgroup from generators separated by newlines. `alphabet` may be
// null, in which case the letters used are taken; otherwise it is a list
// such as `"a b c"` that must contain every letter used.
//
// # Safety
// `generators` and a non-null `alphabet` must be NUL-terminated strings and
// `out_handle` must be valid for writes.
enum FdStatus fd_subgroup_new(const char *generators,
                              const char *alphabet,
                              struct FdSubgroup **out_handle);

// Releases a handle. Null is ignored.
//
// # Safety
// `h` must come from this library and not be used afterwards.
void fd_subgroup_free(struct FdSubgroup *h);

// # Safety
// `h` must be a live handle and `out_rank` valid for writes.
enum FdStatus fd_subgroup_rank(const struct FdSubgroup *h, uintptr_t *out_rank);

// Membership of a word.
//
// # Safety
// `h` must be a live handle, `w` a NUL-terminated string and `out_member`
// valid for writes.
enum FdStatus fd_subgroup_contains(const struct FdSubgroup *h, const char *w, bool *out_member);

// Whether `w` depends on the subgroup.
//
// # Safety
// Same as [`fd_subgroup_contains`].
enum FdStatus fd_is_dependent(const struct FdSubgroup *h, const char *w, bool *out_dependent);

// New handle for the subgroup generated by the dependent elements.
//
// # Safety
// `h` must be a live handle and `out_handle` valid for writes.
enum FdStatus fd_dep_subgroup(const struct FdSubgroup *h, struct FdSubgroup **out_handle);

// Number of steps until the dependence sequence stabilises.
//
// # Safety
// `h` must be a live handle and `out_length` valid for writes.
enum FdStatus fd_closure_length(const struct FdSubgroup *h, uintptr_t *out_length);

// Basis words, one per line. Free the result with [`fd_string_free`].
//
// # Safety
// `h` must be a live handle and `out_text` valid for writes.
enum FdStatus fd_subgroup_basis(const struct FdSubgroup *h, char **out_text);

// Core graph in DOT. Free the result with [`fd_string_free`].
//
// # Safety
// `h` must be a live handle and `out_text` valid for writes.
enum FdStatus fd_subgroup_to_dot(const struct FdSubgroup *h, char **out_text);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void fd_string_free(char *s);

// Message for the last failed call on this thread, or null. Valid until the
// next call into the library on the same thread.
const char *fd_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FREEDEP_H */
