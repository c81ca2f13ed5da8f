/* C interface to the kerrkit verification library. All functions return a
 * kk_status; on failure kk_last_error() describes the problem for the
 * calling thread. Handles are opaque and owned by the caller. */
#ifndef KERRKIT_KERRKIT_H
#define KERRKIT_KERRKIT_H

#include <stddef.h>

#if defined(_WIN32)
#define KK_API __declspec(dllexport)
#elif defined(KK_BUILDING_LIBRARY)
#define KK_API __attribute__((visibility("default")))
#else
#define KK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kk_status {
  KK_OK = 0,
  KK_CHECK_FAILED = 1,
  KK_CONFIG_ERROR = 2,
  KK_DOMAIN_ERROR = 3,
  KK_CONTRACT_ERROR = 4,
  KK_CONVERGENCE_ERROR = 5,
  KK_IO_ERROR = 6,
  KK_INVALID_ARGUMENT = 7,
  KK_INTERNAL_ERROR = 8
} kk_status;

typedef struct kk_spacetime kk_spacetime;
typedef struct kk_config kk_config;

typedef struct kk_run_summary {
  long rows;
  long failures;
} kk_run_summary;

KK_API const char* kk_version(void);
KK_API const char* kk_last_error(void);
KK_API const char* kk_status_name(kk_status status);

/* Kerr exterior with |a| < m, or flat space a = m = 0. */
KK_API kk_status kk_spacetime_create(double a, double m, kk_spacetime** out);
KK_API void kk_spacetime_destroy(kk_spacetime* st);
KK_API kk_status kk_horizon_radii(const kk_spacetime* st, double* r_plus, double* r_minus);

/* x = (t, r, theta, phi). Matrices are row-major 4x4. */
KK_API kk_status kk_metric(const kk_spacetime* st, const double x[4], double g[16],
                           double g_inv[16], double* det);
KK_API kk_status kk_christoffel(const kk_spacetime* st, const double x[4], double gamma[64]);
KK_API kk_status kk_ricci_residual(const kk_spacetime* st, const double x[4], double* out);
/* Rows e4, e3, e1, e2 of the principal null frame. */
KK_API kk_status kk_principal_frame(const kk_spacetime* st, const double x[4],
                                    double frame[16]);
KK_API kk_status kk_killing_tensor_residual(const kk_spacetime* st, const double x[4],
                                            double* out);

/* Configuration text in key = value form with optional [sections]. */
KK_API kk_status kk_config_parse(const char* text, kk_config** out);
KK_API kk_status kk_config_load(const char* path, kk_config** out);
KK_API void kk_config_destroy(kk_config* cfg);

/* Runners write to out_path, or to stdout when out_path is NULL. suite may be
 * NULL to use the config value. A run whose rows all pass returns KK_OK; any
 * failing row gives KK_CHECK_FAILED. summary may be NULL. */
KK_API kk_status kk_run_verify(const kk_config* cfg, const char* suite, const char* out_path,
                               kk_run_summary* summary);
KK_API kk_status kk_run_table(const kk_config* cfg, const char* out_path,
                              kk_run_summary* summary);
KK_API kk_status kk_run_evolve(const kk_config* cfg, const char* out_path,
                               kk_run_summary* summary);
KK_API kk_status kk_run_modes(const kk_config* cfg, const char* out_path,
                              kk_run_summary* summary);
KK_API kk_status kk_run_transform(const kk_config* cfg, const char* out_path,
                                  kk_run_summary* summary);

#ifdef __cplusplus
}
#endif

#endif
