#ifndef FOLIAGE_H
#define FOLIAGE_H

/* C interface of the foliage library.  Handles are opaque; every function
 * returns a status code and leaves a message for foliage_last_error() on
 * failure.  Strings returned through char** are owned by the caller and must
 * be released with foliage_string_free(). */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum foliage_status {
  FOLIAGE_OK = 0,
  FOLIAGE_PARSE = 1,
  FOLIAGE_DICRITICAL = 2,
  FOLIAGE_HEIGHT_LIMIT = 3,
  FOLIAGE_NOT_ISOLATED = 4,
  FOLIAGE_INVALID_ARG = 5,
  FOLIAGE_ANNOTATION = 6,
  FOLIAGE_REDUCIBLE_MINPOLY = 7,
  FOLIAGE_NOT_REDUCED = 8,
  FOLIAGE_BRANCH_NOT_INVARIANT = 9,
  FOLIAGE_NON_ISOLATED_ON_DIVISOR = 10,
  FOLIAGE_INTERNAL = 11,
  FOLIAGE_CAP_EXCEEDED = 12
} foliage_status;

typedef enum foliage_mode {
  FOLIAGE_MODE_CERTIFIED = 0,
  FOLIAGE_MODE_ANNOTATED = 1,
  FOLIAGE_MODE_NONDEGENERATE = 2
} foliage_mode;

typedef struct foliage_options {
  int max_height;               /* default 64 */
  int dicritical_mark;          /* 0: abort on dicritical blow-ups, 1: mark them */
  int probe_depth;              /* default 10 */
  int milnor_cap;               /* default 256 */
  int mode;                     /* foliage_mode */
  const char* annotations_json; /* NULL for none */
} foliage_options;

typedef struct foliage_tree foliage_tree;
typedef struct foliage_nerve foliage_nerve;

void foliage_options_init(foliage_options* opts);

const char* foliage_status_name(foliage_status s);
/* Message of the last failing call on this thread, "" if none. */
const char* foliage_last_error(void);
void foliage_string_free(char* s);

foliage_status foliage_reduce(const char* form, const foliage_options* opts, foliage_tree** out);
foliage_status foliage_tree_from_json(const char* json, foliage_tree** out);
void foliage_tree_free(foliage_tree* t);
int foliage_tree_height(const foliage_tree* t);
int foliage_tree_dicritical(const foliage_tree* t);
foliage_status foliage_tree_json(const foliage_tree* t, char** out);
foliage_status foliage_dual_tree_json(const foliage_tree* t, char** out);
foliage_status foliage_dual_tree_dot(const foliage_tree* t, char** out);
/* Fails with FOLIAGE_DICRITICAL on marked trees. */
foliage_status foliage_separatrix_json(const foliage_tree* t, char** out);

foliage_status foliage_report_json(const foliage_tree* t, const foliage_options* opts, char** out);

foliage_status foliage_nerve_build(const foliage_tree* t, const foliage_options* opts, foliage_nerve** out);
foliage_status foliage_nerve_from_json(const char* json, foliage_nerve** out);
void foliage_nerve_free(foliage_nerve* n);
foliage_status foliage_nerve_json(const foliage_nerve* n, char** out);
foliage_status foliage_nerve_dot(const foliage_nerve* n, char** out);
foliage_status foliage_nerve_tff_json(const foliage_nerve* n, char** out);
foliage_status foliage_nerve_prune_json(const foliage_nerve* n, char** out);

/* `samples`: comma separated rationals, NULL for the default set. */
foliage_status foliage_equising_json(const char* family, const char* samples, const foliage_options* opts,
                                     char** out);

foliage_status foliage_milnor(const char* a, const char* b, int cap, long* out);
/* Decimal value of the determinacy recurrence sigma(v, h). */
foliage_status foliage_bound(int v, int h, char** out);

#ifdef __cplusplus
}
#endif

#endif
