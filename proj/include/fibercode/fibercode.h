/* C interface to the fibercode library. */
#ifndef FIBERCODE_H
#define FIBERCODE_H

#include <stddef.h>
#include <stdint.h>

#if defined(FIBERCODE_BUILDING_DLL)
#define FC_API __attribute__((visibility("default")))
#else
#define FC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_ERR_INVALID_ARGUMENT,
  FC_ERR_DIMENSION_MISMATCH,
  FC_ERR_GROUP_MISMATCH,
  FC_ERR_GROUP_TOO_LARGE,
  FC_ERR_GROUP_IDENTITY,
  FC_ERR_GROUP_MISSING_INVERSE,
  FC_ERR_GROUP_NOT_LATIN,
  FC_ERR_GROUP_NOT_ASSOCIATIVE,
  FC_ERR_PARSE,
  FC_ERR_UNKNOWN_GROUP_KIND,
  FC_ERR_UNKNOWN_TOKEN,
  FC_ERR_RAGGED_MATRIX,
  FC_ERR_TWIST_MODE_CONFLICT,
  FC_ERR_MISSING_ASSIGNMENT,
  FC_ERR_IO,
  FC_ERR_NOT_FLAT,
  FC_ERR_CSS_VIOLATION,
  FC_ERR_EMPTY_POOL,
  FC_ERR_INTERNAL
} fc_status;

typedef struct fc_spec fc_spec;
typedef struct fc_code fc_code;
typedef struct fc_matrix fc_matrix;

/* Overrides applied on top of the spec's [options]. Call fc_options_init first. */
typedef struct fc_options {
  size_t weight_cap; /* 0 keeps the spec value */
  int full_enumeration;
  int allow_nonflat;
  int lp_transpose; /* -1 keeps the spec value, 0 plain, 1 antipode */
  int has_seed;
  uint64_t seed;
  int has_budget;
  uint64_t budget;
  int timing; /* adds wall-clock timing to reports (breaks byte-determinism) */
  unsigned threads; /* 0 uses hardware concurrency */
} fc_options;

typedef enum fc_report_kind {
  FC_REPORT_PARAMS = 0,
  FC_REPORT_FLATNESS,
  FC_REPORT_DISTANCE,
  FC_REPORT_ISO
} fc_report_kind;

typedef enum fc_pool_kind {
  FC_POOL_FROM_SPEC = -1,
  FC_POOL_GROUP_SCALARS = 0,
  FC_POOL_LOW_WEIGHT,
  FC_POOL_LIST
} fc_pool_kind;

typedef struct fc_search_options {
  int pool; /* fc_pool_kind */
  const char* pool_text; /* pool document for FC_POOL_LIST, may be NULL */
  size_t max_support; /* 0 keeps the default */
  size_t max_candidates;
  int has_top;
  size_t top;
} fc_search_options;

typedef enum fc_matrix_target { FC_MATRIX_HX = 0, FC_MATRIX_HZ, FC_MATRIX_D1, FC_MATRIX_D2 } fc_matrix_target;

FC_API const char* fc_version(void);
FC_API const char* fc_status_name(fc_status status);
/* 1 when the status rejects the input itself, 0 for construction failures. */
FC_API int fc_status_is_validation(fc_status status);
/* Message for the last failure on the calling thread. */
FC_API const char* fc_last_error(void);
FC_API void fc_string_free(char* s);

FC_API void fc_options_init(fc_options* options);
FC_API void fc_search_options_init(fc_search_options* options);

FC_API fc_status fc_spec_parse(const char* text, size_t length, fc_spec** out);
FC_API fc_status fc_spec_load(const char* path, fc_spec** out);
FC_API void fc_spec_free(fc_spec* spec);
FC_API const char* fc_spec_digest(const fc_spec* spec);

/* JSON report. On a construction failure *json_out may still hold the
   partial report; free it with fc_string_free in either case. */
FC_API fc_status fc_report(const fc_spec* spec, const fc_options* options, fc_report_kind kind, char** json_out);
FC_API fc_status fc_search_twists(const fc_spec* spec, const fc_options* options,
                                  const fc_search_options* search, char** json_out);

FC_API fc_status fc_code_build(const fc_spec* spec, const fc_options* options, fc_code** out);
FC_API void fc_code_free(fc_code* code);
FC_API fc_status fc_code_parameters(const fc_code* code, size_t* n, size_t* k, size_t* rank_hx, size_t* rank_hz);
FC_API fc_status fc_code_matrix(const fc_code* code, fc_matrix_target target, fc_matrix** out);

FC_API fc_status fc_matrix_from_text(const char* text, size_t length, fc_matrix** out);
FC_API void fc_matrix_free(fc_matrix* matrix);
FC_API size_t fc_matrix_rows(const fc_matrix* matrix);
FC_API size_t fc_matrix_cols(const fc_matrix* matrix);
FC_API int fc_matrix_get(const fc_matrix* matrix, size_t row, size_t col);
FC_API size_t fc_matrix_rank(const fc_matrix* matrix);
/* Product a * b^T; fails with FC_ERR_DIMENSION_MISMATCH on incompatible widths. */
FC_API fc_status fc_matrix_mul_transpose(const fc_matrix* a, const fc_matrix* b, fc_matrix** out);
FC_API int fc_matrix_is_zero(const fc_matrix* matrix);
FC_API fc_status fc_matrix_to_text(const fc_matrix* matrix, char** text_out);

#ifdef __cplusplus
}
#endif

#endif
