/* hs2_c.h - C API for the H^n sigma_2 convexity/measure library.
 *
 * Points are passed as flat double arrays of length 2n+1, ordered
 * (x_1..x_n, y_1..y_n, t). Matrices are row-major. Fields are opaque
 * handles. Every function returns an hs2_status; on failure,
 * hs2_last_error() describes the problem for the calling thread.
 */
#ifndef HS2_C_H
#define HS2_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HS2_API __declspec(dllexport)
#else
#define HS2_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hs2_status {
    HS2_OK = 0,
    HS2_ERR_INVALID_ARG = 1,
    HS2_ERR_DIM_MISMATCH = 2,
    HS2_ERR_EVAL = 3,
    HS2_ERR_NO_CONVERGENCE = 4,
    HS2_ERR_PARSE = 5,
    HS2_ERR_CHECK_FAILED = 6,
    HS2_ERR_INTERNAL = 7
} hs2_status;

typedef struct hs2_field hs2_field;

/* Evaluation callback for user-defined fields: coords has length 2n+1. */
typedef double (*hs2_eval_fn)(const double* coords, void* user_data);

HS2_API const char* hs2_version(void);
HS2_API const char* hs2_last_error(void);

/* ---- group operations -------------------------------------------------- */
HS2_API hs2_status hs2_compose(int n, const double* a, const double* b, double* out);
HS2_API hs2_status hs2_inverse(int n, const double* a, double* out);
HS2_API hs2_status hs2_dilate(int n, double lambda, const double* a, double* out);
HS2_API hs2_status hs2_gauge(int n, const double* a, double* out);
HS2_API hs2_status hs2_distance(int n, const double* a, const double* b, double* out);

/* ---- fields ------------------------------------------------------------ */
/* name: "t" | "sq" | "gauge" | "gauge4" | "barrier(R,sigma,m0)" */
HS2_API hs2_status hs2_field_create_builtin(int n, const char* name, hs2_field** out);
HS2_API hs2_status hs2_field_create_callback(int n, hs2_eval_fn eval, void* user_data,
                                             double fd_step, hs2_field** out);
HS2_API hs2_status hs2_field_create_barrier(int n, const double* center, double R,
                                            double sigma, double m0, hs2_field** out);
HS2_API hs2_status hs2_field_smooth_max(const hs2_field* u1, const hs2_field* u2,
                                        double h, hs2_field** out);
HS2_API hs2_status hs2_field_mollify(const hs2_field* u, double eps, hs2_field** out);
HS2_API hs2_status hs2_field_eval(const hs2_field* f, const double* point, double* out);
HS2_API void hs2_field_destroy(hs2_field* f);

/* ---- horizontal calculus ------------------------------------------------ */
/* Xu: length 2n; X2u, H: 2n x 2n row-major. Any output pointer may be NULL. */
HS2_API hs2_status hs2_horizontal_jet(const hs2_field* f, const double* point,
                                      double* value, double* Xu, double* X2u,
                                      double* H, double* ut);
HS2_API hs2_status hs2_measure_density(const hs2_field* f, const double* point,
                                       double* out);
/* Box integrals; lo/hi have length 2n+1. */
HS2_API hs2_status hs2_measure_box(const hs2_field* f, const double* lo,
                                   const double* hi, int cells_per_axis,
                                   double* value, double* error);
HS2_API hs2_status hs2_measure_ball(const hs2_field* f, const double* center,
                                    double radius, int cells_per_axis,
                                    double* value, double* error);
HS2_API hs2_status hs2_trace_integral_box(const hs2_field* f, const double* lo,
                                          const double* hi, int cells_per_axis,
                                          double* value, double* error);

/* ---- symmetric-matrix utilities ----------------------------------------- */
HS2_API hs2_status hs2_sigma2(int dim, const double* A, double* out);
HS2_API hs2_status hs2_eigenvalues(int dim, const double* A, double* out /* dim */);
HS2_API hs2_status hs2_sigma2_gradient(int dim, const double* A, double* out /* dim*dim */);
HS2_API hs2_status hs2_partial_s(int dim, const double* lambda, double* out /* dim */);

/* ---- convexity classification ------------------------------------------- */
typedef struct hs2_convexity_report {
    long samples;
    double min_eigenvalue;
    double min_trace;
    double min_sigma2;
    int verdict; /* 0 = H_CONVEX, 1 = SIGMA2_CONVEX_ONLY, 2 = NEITHER */
} hs2_convexity_report;

HS2_API hs2_status hs2_classify_box(const hs2_field* f, const double* lo,
                                    const double* hi, long samples, uint64_t seed,
                                    hs2_convexity_report* out);
HS2_API hs2_status hs2_classify_ball(const hs2_field* f, const double* center,
                                     double radius, long samples, uint64_t seed,
                                     hs2_convexity_report* out);

/* ---- campaigns ----------------------------------------------------------
 * Runs a JSON-configured campaign. *report_json is allocated with malloc and
 * must be released with hs2_string_free. *exit_code follows the CLI
 * contract: 0 pass, 1 check failure, 2 config error. Returns HS2_OK when the
 * campaign executed (even with failing checks); HS2_ERR_PARSE on config
 * errors. */
HS2_API hs2_status hs2_run_campaign(const char* config_json, char** report_json,
                                    char** csv, int* exit_code);
HS2_API void hs2_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* HS2_C_H */
