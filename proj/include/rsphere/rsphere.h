#ifndef RSPHERE_RSPHERE_H
#define RSPHERE_RSPHERE_H

#include <stddef.h>
#include <stdint.h>

#if defined(RSPHERE_BUILDING_LIBRARY)
#define RS_API __attribute__((visibility("default")))
#else
#define RS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rs_status {
  RS_OK = 0,
  RS_INVALID_ARGUMENT = 1,
  RS_BUDGET_EXCEEDED = 2,
  RS_NOT_CONVERGED = 3,
  RS_BUFFER_TOO_SMALL = 4,
  RS_INTERNAL = 5
} rs_status;

RS_API const char* rs_status_string(rs_status status);
/* Message of the last failing call on this thread ("" if none). */
RS_API const char* rs_last_error(void);
/* Parameter named by the last RS_BUDGET_EXCEEDED on this thread. */
RS_API const char* rs_last_error_parameter(void);

/* 0 selects the hardware thread count. Results never depend on it. */
RS_API rs_status rs_set_threads(int threads);
RS_API int rs_get_threads(void);

/* Text outputs follow one pattern: *needed receives the size including the
   terminating NUL; if cap is smaller, nothing is written and
   RS_BUFFER_TOO_SMALL is returned. */

/* ---- characters ---- */

typedef struct rs_character rs_character;

/* "principal:N", "omega:m" or a bare integer m (same as "omega:m"). */
RS_API rs_status rs_character_parse(const char* selector, rs_character** out);
RS_API rs_status rs_character_principal(int64_t modulus, rs_character** out);
RS_API rs_status rs_character_omega(int64_t m, rs_character** out);
RS_API rs_status rs_character_product(const rs_character* a, const rs_character* b, rs_character** out);
RS_API int rs_character_eval(const rs_character* chi, int64_t n);
RS_API int64_t rs_character_modulus(const rs_character* chi);
RS_API int64_t rs_character_conductor(const rs_character* chi);
RS_API int rs_character_is_principal(const rs_character* chi);
RS_API void rs_character_free(rs_character* chi);

/* ---- lattice counts ---- */

typedef enum rs_path { RS_PATH_AUTO = 0, RS_PATH_TABLE = 1, RS_PATH_CLOSED = 2 } rs_path;

/* N(S^n; T): points in lowest terms with denominator <= T. */
RS_API rs_status rs_count_sphere(int n, double T, rs_path path, int64_t* out);
/* sum_{q <= T} r_{n+1}(q^2). */
RS_API rs_status rs_count_theta(int n, double T, rs_path path, int64_t* out);
RS_API rs_status rs_verify_lemma31(int n, double T, rs_path path, int64_t* theta_residual, int64_t* sphere_residual);
RS_API rs_status rs_hurwitz_r3sq(int64_t q, int64_t* out);
RS_API rs_status rs_jacobi_r4(int64_t m, int64_t* out);
RS_API rs_status rs_r_bruteforce(int n, int64_t m, int64_t* out);

typedef struct rs_table rs_table;

RS_API rs_status rs_r_table(int n, int64_t max_m, rs_table** out);
RS_API int rs_table_dim(const rs_table* table);
RS_API int64_t rs_table_limit(const rs_table* table);
RS_API rs_status rs_table_get(const rs_table* table, int64_t m, int64_t* out);
RS_API void rs_table_free(rs_table* table);

/* ---- L-values and constants ---- */

RS_API rs_status rs_l_value(const rs_character* chi, double s, double abs_tol, double* out);
RS_API rs_status rs_l_value_restricted(const rs_character* chi, double s, int64_t restrict_to, double abs_tol,
                                       double* out);
RS_API rs_status rs_skt_constant(const rs_character* chi1, const rs_character* chi2, int k, double* out);
RS_API rs_status rs_bkt_constant(int twice_k, double* out);
RS_API rs_status rs_c2_constant(double* c2, double* c2_star);

/* ---- divisor sums ---- */

/* Exact S_k(chi1, chi2, T) as a decimal string. */
RS_API rs_status rs_sum_sigma_squares(const rs_character* chi1, const rs_character* chi2, int k, int64_t T, char* buf,
                                      size_t cap, size_t* needed);
RS_API rs_status rs_sum_beta(int twice_k, int64_t T, double* out);

/* ---- record sets ---- */

typedef struct rs_records rs_records;

/* constant may be NULL (c2 for n = 2, fitted otherwise). With peaks != 0
   each row is the largest |remainder| in its grid window. */
RS_API rs_status rs_remainder_scan(int n, const int64_t* grid, size_t len, const double* constant, int peaks,
                                   rs_records** out);
RS_API rs_status rs_divisor_scan_skt(const rs_character* chi1, const rs_character* chi2, int k, const int64_t* grid,
                                     size_t len, rs_records** out);
RS_API rs_status rs_divisor_scan_bkt(int twice_k, const int64_t* grid, size_t len, rs_records** out);
/* c2 and c2_star always; the S_k constant when chi1 and chi2 are non-NULL
   and k > 0; the B_k constant when twice_k > 0. */
RS_API rs_status rs_constants(const rs_character* chi1, const rs_character* chi2, int k, int twice_k,
                              rs_records** out);
RS_API rs_status rs_table_records(const rs_table* table, rs_records** out);

RS_API size_t rs_records_count(const rs_records* records);
RS_API rs_status rs_records_csv(const rs_records* records, char* buf, size_t cap, size_t* needed);
RS_API rs_status rs_records_json(const rs_records* records, char* buf, size_t cap, size_t* needed);
RS_API void rs_records_free(rs_records* records);

/* ---- grids and fits ---- */

RS_API rs_status rs_geometric_grid(int64_t start, int64_t stop, double ratio, int64_t* buf, size_t cap,
                                   size_t* needed);

typedef struct rs_fit {
  double constant;
  double correction;
  double residual_norm;
  size_t points;
} rs_fit;

RS_API rs_status rs_fit_main_constant(int n, const int64_t* grid, size_t len, rs_fit* out);
/* Fit over every integer T in [max(2, cap / 100), cap]. */
RS_API rs_status rs_fit_main_constant_dense(int n, int64_t cap, rs_fit* out);

typedef struct rs_exponent_fit {
  int exact;
  double exponent;
  double residual_norm;
  size_t points;
} rs_exponent_fit;

/* records must come from rs_remainder_scan. */
RS_API rs_status rs_fit_remainder_exponent(const rs_records* records, rs_exponent_fit* out);

#ifdef __cplusplus
}
#endif

#endif
