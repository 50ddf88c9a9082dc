/* C interface of libeinstab. Every call returns an einstab_status; on
 * failure einstab_last_error() describes the problem (per thread). Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with einstab_free_string. */
#ifndef EINSTAB_H
#define EINSTAB_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(EINSTAB_BUILDING_LIBRARY)
#    define EINSTAB_API __declspec(dllexport)
#  else
#    define EINSTAB_API __declspec(dllimport)
#  endif
#else
#  define EINSTAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum einstab_status {
  EINSTAB_OK = 0,
  EINSTAB_INVALID_ARGUMENT = 1,
  EINSTAB_RANGE = 2,
  EINSTAB_PARSE = 3,
  EINSTAB_DOMAIN = 4,
  EINSTAB_CONVERGENCE = 5,
  EINSTAB_IO = 6,
  EINSTAB_VERIFY = 7,
  EINSTAB_INTERNAL = 8
} einstab_status;

typedef enum einstab_mode { EINSTAB_MODE_AUTO = 0, EINSTAB_MODE_EXACT = 1, EINSTAB_MODE_FLOAT = 2 } einstab_mode;

typedef enum einstab_verdict {
  EINSTAB_INCONCLUSIVE = 0,
  EINSTAB_NOT_LOCAL_MAX = 1,
  EINSTAB_STRICT_DESCENT = 2
} einstab_verdict;

typedef struct einstab_entry einstab_entry;
typedef struct einstab_signomial einstab_signomial;

typedef struct einstab_options {
  einstab_mode mode;
  double kernel_tol;   /* relative to the largest |eigenvalue| */
  double tol_low;      /* verdict: |S1|, |S2| below tol_low * scale */
  double tol_high;     /* verdict: |S3| above tol_high * scale */
  double witness_eps;
} einstab_options;

typedef struct einstab_probe_summary {
  double s1, s2, s3;
  int exact;           /* nonzero when S1..S3 were computed exactly */
  einstab_verdict verdict;
  double witness_improvement; /* 0 when there is no witness */
} einstab_probe_summary;

EINSTAB_API const char* einstab_version(void);
EINSTAB_API const char* einstab_last_error(void);
EINSTAB_API void einstab_free_string(char* s);
EINSTAB_API void einstab_default_options(einstab_options* out);

/* [{"name", "title", "min_n", "uses_n"}, ...]; family NULL lists all. */
EINSTAB_API einstab_status einstab_families_json(const char* family, char** out_json);

EINSTAB_API einstab_status einstab_entry_build(const char* family, int n, einstab_entry** out);
EINSTAB_API einstab_status einstab_entry_load(const char* path, einstab_entry** out);
EINSTAB_API void einstab_entry_free(einstab_entry* entry);
/* Chart dimension, i.e. the number of summands minus one. */
EINSTAB_API einstab_status einstab_entry_dimension(const einstab_entry* entry, size_t* out);
/* Reduced scalar curvature at a chart point of length dim. */
EINSTAB_API einstab_status einstab_entry_scal(const einstab_entry* entry, const double* point, size_t dim, double* out);
EINSTAB_API einstab_status einstab_entry_probe(const einstab_entry* entry, const einstab_options* options,
                                               einstab_probe_summary* out);
EINSTAB_API einstab_status einstab_entry_report_json(const einstab_entry* entry, const einstab_options* options,
                                                     char** out_json);
/* Custom-entry file form of the entry (structural-constant families only). */
EINSTAB_API einstab_status einstab_entry_space_json(const einstab_entry* entry, char** out_json);

/* Parameter lists per family; duplicates are dropped, order is irrelevant. */
typedef struct einstab_batch_request {
  const int* su_n;
  size_t su_count;
  const int* flag_n;
  size_t flag_count;
  const int* sp_n;
  size_t sp_count;
  int include_e6;
} einstab_batch_request;

EINSTAB_API einstab_status einstab_batch_report_json(const einstab_batch_request* request,
                                                     const einstab_options* options, char** out_json);
/* eliminate < 0 uses the file's choice (default: last summand). */
EINSTAB_API einstab_status einstab_custom_report_json(const char* path, int search, int eliminate,
                                                      const einstab_options* options, char** out_json);

/* algebra: "su2", "su3" or "so8". Returns EINSTAB_VERIFY (with the JSON still
 * written) when the computed constants deviate from the catalog by > 1e-8. */
EINSTAB_API einstab_status einstab_verify_constants_json(const char* algebra, char** out_json);

/* Gradient ascent from start (NULL: the entry's critical point plus offset
 * along its kernel direction). CSV rows "t,x0,...,scal". */
EINSTAB_API einstab_status einstab_flow_csv(const einstab_entry* entry, const double* start, size_t dim,
                                            double step, long max_steps, double offset, char** out_csv);

EINSTAB_API einstab_status einstab_signomial_parse(const char* text, size_t arity, einstab_signomial** out);
EINSTAB_API void einstab_signomial_free(einstab_signomial* f);
EINSTAB_API einstab_status einstab_signomial_partial(const einstab_signomial* f, size_t var, einstab_signomial** out);
EINSTAB_API einstab_status einstab_signomial_eval(const einstab_signomial* f, const double* point, size_t arity,
                                                  double* out);
EINSTAB_API einstab_status einstab_signomial_to_string(const einstab_signomial* f, char** out);

#ifdef __cplusplus
}
#endif

#endif
