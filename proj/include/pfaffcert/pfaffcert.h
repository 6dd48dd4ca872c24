#ifndef PFAFFCERT_H
#define PFAFFCERT_H

#include <stddef.h>
#include <stdint.h>

#if defined(PFC_BUILDING)
#define PFC_API __attribute__((visibility("default")))
#else
#define PFC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pfc_status {
  PFC_OK = 0,
  PFC_ERR_INVALID_ARGUMENT = 1,
  PFC_ERR_PARSE = 2,
  PFC_ERR_DOMAIN = 3,
  PFC_ERR_DIMENSION = 4,
  PFC_ERR_BUDGET = 5,
  PFC_ERR_NOT_CERTIFIED = 6,
  PFC_ERR_IO = 7,
  PFC_ERR_INTERNAL = 8
} pfc_status;

typedef struct pfc_fn pfc_fn;
typedef struct pfc_atlas pfc_atlas;
typedef struct pfc_report pfc_report;

/* Message for the last failing call on this thread; never NULL. */
PFC_API const char* pfc_last_error(void);

/* Strings returned through char** are owned by the caller. */
PFC_API void pfc_string_free(char* s);

/* domain holds 2*dim exact rationals ("p/q", or "~d.ddd" for a dyadic
   approximation): lo, hi for each axis. */
PFC_API pfc_status pfc_fn_parse(const char* expr, const char* const* domain, int dim, pfc_fn** out);
PFC_API void pfc_fn_free(pfc_fn* f);
PFC_API int pfc_fn_dim(const pfc_fn* f);

/* Atlas of the graph of f pulled back to the unit box; f must map it into [-1, 1]. */
PFC_API pfc_status pfc_atlas_build(const pfc_fn* f, int r, const char* eps, pfc_atlas** out);
PFC_API void pfc_atlas_free(pfc_atlas* a);
PFC_API size_t pfc_atlas_chart_count(const pfc_atlas* a);
PFC_API int pfc_atlas_partial(const pfc_atlas* a);
/* Largest certified chart bound as a rational string. */
PFC_API pfc_status pfc_atlas_max_cert(const pfc_atlas* a, char** out);
PFC_API pfc_status pfc_atlas_verify(const pfc_atlas* a, size_t samples, uint64_t seed, size_t* failures);
PFC_API pfc_status pfc_atlas_to_json(const pfc_atlas* a, char** out);

/* method: "determinant", "siegel" or "oracle". */
PFC_API pfc_status pfc_count(const pfc_fn* f, uint64_t H, int g, const char* method, pfc_report** out);
PFC_API void pfc_report_free(pfc_report* r);
PFC_API size_t pfc_report_count(const pfc_report* r);
PFC_API size_t pfc_report_transcendental_count(const pfc_report* r);
PFC_API int pfc_report_certified(const pfc_report* r);
/* 1 agree, 0 disagree, -1 not checked */
PFC_API int pfc_report_oracle_agreement(const pfc_report* r);
/* format: "json" or "csv" */
PFC_API pfc_status pfc_report_emit(const pfc_report* r, const char* format, char** out);

/* Oracle member count over the function's domain; unknowns receives the
   number of undecided candidates. */
PFC_API pfc_status pfc_oracle_count(const pfc_fn* f, uint64_t H, size_t* members, size_t* unknowns);

/* Full command line (argv[0] is the program name); returns the exit code:
   0 certified, 2 completed with downgraded stages, 1 error. */
PFC_API int pfc_cli_main(int argc, const char* const* argv);

#ifdef __cplusplus
}
#endif

#endif
