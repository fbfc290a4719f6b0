/* Alternating projections for affine subspaces and second-order cones: C API. */
#ifndef SOCAPM_H
#define SOCAPM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SOCAPM_BUILDING_LIBRARY)
#    define SOCAPM_API __declspec(dllexport)
#  else
#    define SOCAPM_API __declspec(dllimport)
#  endif
#else
#  define SOCAPM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum socapm_status {
  SOCAPM_OK = 0,
  SOCAPM_ERR_INPUT = 2,       /* bad instance, vector, flag or file */
  SOCAPM_ERR_CERTIFICATE = 3, /* certificate chain rejected */
  SOCAPM_ERR_ACCEPTANCE = 4,  /* at least one acceptance criterion failed */
  SOCAPM_ERR_INTERNAL = 5
} socapm_status;

typedef struct socapm_instance socapm_instance;
typedef struct socapm_trace socapm_trace;

/* Message for the last failing call on this thread; never NULL. */
SOCAPM_API const char* socapm_last_error(void);

/* Strings returned through char** out-parameters are owned by the caller. */
SOCAPM_API void socapm_string_free(char* s);

/* Comma separated list of the named instances. */
SOCAPM_API socapm_status socapm_instance_names(char** out);

SOCAPM_API socapm_status socapm_instance_from_preset(const char* name, socapm_instance** out);
SOCAPM_API socapm_status socapm_instance_from_json(const char* json, socapm_instance** out);
SOCAPM_API socapm_status socapm_instance_from_file(const char* path, socapm_instance** out);
SOCAPM_API void socapm_instance_free(socapm_instance* inst);

SOCAPM_API socapm_status socapm_instance_param_dim(const socapm_instance* inst, size_t* p);
SOCAPM_API socapm_status socapm_instance_to_json(const socapm_instance* inst, char** out);

/* format 0: text report, 1: JSON. */
SOCAPM_API socapm_status socapm_classify(const socapm_instance* inst, int format, char** out);

/* Named initial params ("default", "line", "zpos", "zneg"); n must equal p. */
SOCAPM_API socapm_status socapm_preset_t0(const socapm_instance* inst, const char* preset,
                                          double* out, size_t n);
/* Standard normal params from a 64-bit seed. */
SOCAPM_API socapm_status socapm_random_t0(const socapm_instance* inst, uint64_t seed,
                                          double* out, size_t n);

/* checkpoint: "linear:N" or "geom:F"; NULL means geom:1.1. tol is the relative
   membership tolerance; pass 0 for the default 1e-12. */
SOCAPM_API socapm_status socapm_run(const socapm_instance* inst, const double* t0, size_t n,
                                    long iters, const char* checkpoint, double tol,
                                    socapm_trace** out);
SOCAPM_API void socapm_trace_free(socapm_trace* trace);

/* Number of checkpoints, final k, final dist and termination index (-1 if none). */
SOCAPM_API socapm_status socapm_trace_summary(const socapm_trace* trace, size_t* checkpoints,
                                              long* final_k, double* final_dist,
                                              long* terminated_at);
SOCAPM_API socapm_status socapm_trace_to_csv(const socapm_trace* trace, char** out);
SOCAPM_API socapm_status socapm_trace_from_csv(const char* csv, socapm_trace** out);

/* model: "auto", "power" or "geometric". */
SOCAPM_API socapm_status socapm_rate_report(const socapm_trace* trace, const char* model,
                                            char** out);

/* certificates_json: {"certificates": [...]} or a bare list. NULL uses the
   built-in (d1, d2) pair of the product examples. */
SOCAPM_API socapm_status socapm_certify(const socapm_instance* inst,
                                        const char* certificates_json, char** out);

/* format 0: table, 1: JSON. Returns SOCAPM_ERR_ACCEPTANCE when any criterion
   fails; *out is filled either way. */
SOCAPM_API socapm_status socapm_reproduce(int quick, uint64_t seed, int format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* SOCAPM_H */
