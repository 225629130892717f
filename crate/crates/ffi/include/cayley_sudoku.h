#ifndef CAYLEY_SUDOKU_H
#define CAYLEY_SUDOKU_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a fallible call. Values 2 to 5 match the command-line exit
 * statuses.
 */
typedef enum CsStatus {
  CS_STATUS_OK = 0,
  CS_STATUS_CONDITION_FAILED = 2,
  CS_STATUS_NOT_FOUND = 3,
  CS_STATUS_RESOURCE = 4,
  CS_STATUS_MALFORMED = 5,
  CS_STATUS_NULL_ARGUMENT = 6,
  CS_STATUS_PANIC = 7,
} CsStatus;

typedef enum CsConstruction {
  CS_CONSTRUCTION_ONE_RIGHT = 0,
  CS_CONSTRUCTION_ONE_LEFT = 1,
  CS_CONSTRUCTION_TWO_LEFT = 2,
  CS_CONSTRUCTION_TWO_RIGHT = 3,
} CsConstruction;

/**
 * A finite group.
 */
typedef struct CsGroup CsGroup;

/**
 * A subgroup; keeps its group alive.
 */
typedef struct CsSubgroup CsSubgroup;

/**
 * A bordered, blocked Cayley table.
 */
typedef struct CsTable CsTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The last error message on this thread, or null. Valid until the next
 * failing call on the same thread.
 */
const char *cs_last_error_message(void);

/**
 * Builds a group from a spec such as `"Z9"`, `"S4"` or `"perm:4:(12);(1234)"`.
 *
 * # Safety
 * `spec` is a NUL-terminated string; `out` is valid for writes.
 */
enum CsStatus cs_group_from_spec(const char *spec, struct CsGroup **out);

/**
 * Order of the group, or 0 for null.
 *
 * # Safety
 * `group` is null or a live handle.
 */
size_t cs_group_order(const struct CsGroup *group);

/**
 * # Safety
 * `group` is null or a handle not yet freed.
 */
void cs_group_free(struct CsGroup *group);

/**
 * Resolves a subgroup spec (`;`-separated generators, `stab:<point>`,
 * `trivial`, `whole`) inside `group`.
 *
 * # Safety
 * `group` is a live handle, `spec` a NUL-terminated string, `out` valid
 * for writes.
 */
enum CsStatus cs_subgroup_from_spec(const struct CsGroup *group,
                                    const char *spec,
                                    struct CsSubgroup **out);

/**
 * Order of the subgroup, or 0 for null.
 *
 * # Safety
 * `subgroup` is null or a live handle.
 */
size_t cs_subgroup_order(const struct CsSubgroup *subgroup);

/**
 * # Safety
 * `subgroup` is null or a handle not yet freed.
 */
void cs_subgroup_free(struct CsSubgroup *subgroup);

/**
 * Builds a verified table with the default partition (construction 1) or
 * the translates of the least universal transversal (construction 2).
 * Returns `NotFound` when construction 2 has no universal transversal.
 *
 * # Safety
 * `subgroup` is a live handle; `out` is valid for writes.
 */
enum CsStatus cs_table_build(const struct CsSubgroup *subgroup,
                             enum CsConstruction construction,
                             struct CsTable **out);

/**
 * Parses an exchange document. The layout is not verified.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is valid for writes.
 */
enum CsStatus cs_table_from_exchange(const char *text, struct CsTable **out);

/**
 * `Ok` when every block holds each element once, `ConditionFailed` with
 * the first failing block as the message otherwise.
 *
 * # Safety
 * `table` is a live handle.
 */
enum CsStatus cs_table_verify(const struct CsTable *table);

/**
 * Number of rows (and columns), or 0 for null.
 *
 * # Safety
 * `table` is null or a live handle.
 */
size_t cs_table_size(const struct CsTable *table);

/**
 * # Safety
 * `table` is a live handle; `out` is valid for writes.
 */
enum CsStatus cs_table_render_text(const struct CsTable *table, char **out);

/**
 * # Safety
 * `table` is a live handle; `out` is valid for writes.
 */
enum CsStatus cs_table_to_exchange(const struct CsTable *table, char **out);

/**
 * # Safety
 * `table` is null or a handle not yet freed.
 */
void cs_table_free(struct CsTable *table);

/**
 * # Safety
 * `s` is null or a string returned by this library and not yet freed.
 */
void cs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAYLEY_SUDOKU_H */
