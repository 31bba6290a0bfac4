/* C interface to the qreflect library.
 *
 * All objects are opaque handles created by a qr_*_create / qr_* factory and
 * released with the matching qr_*_destroy. Functions return a qr_status; on
 * failure qr_last_error() describes the problem for the calling thread.
 * Strings returned through `const char**` are owned by the handle and stay
 * valid until it is destroyed. Handles are immutable after creation and may
 * be shared across threads.
 */
#ifndef QREFLECT_H
#define QREFLECT_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32 || defined __CYGWIN__
#ifdef QREFLECT_BUILDING_LIBRARY
#define QREFLECT_API __declspec(dllexport)
#else
#define QREFLECT_API __declspec(dllimport)
#endif
#else
#define QREFLECT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as the CLI exit codes. */
typedef enum qr_status {
  QR_OK = 0,
  QR_BOUND_NOT_MET = 1,
  QR_ERR_CONFIG = 2,
  QR_ERR_COMPLETION = 3,
  QR_ERR_GAP_VIOLATION = 4,
  QR_ERR_TARGET_ABSENT = 5,
  QR_ERR_CONDITIONING = 6,
  QR_ERR_INVALID_ARGUMENT = 7,
  QR_ERR_INTERNAL = 8
} qr_status;

typedef enum qr_t_formula {
  QR_T_CORRECTED = 0, /* t = ceil(2e / |e^{i delta} - 1|) */
  QR_T_PAPER = 1      /* t = ceil(e / (2 |e^{i delta} - 1|)) */
} qr_t_formula;

typedef struct qr_plan qr_plan;
typedef struct qr_synthesis qr_synthesis;
typedef struct qr_operator qr_operator;
typedef struct qr_report qr_report;

typedef struct qr_gate_counts {
  int64_t controlled_u;
  int64_t controlled_u_dagger;
  int64_t rotations;
  int64_t total;
} qr_gate_counts;

typedef struct qr_report_summary {
  double measured_error;
  double bound;
  int bound_satisfied;
  double projector_error;
  double completion_residual;
  double unitarity_residual;
  double oracle_block_residual;
  int64_t target_multiplicity;
} qr_report_summary;

QREFLECT_API const char* qr_version(void);
QREFLECT_API const char* qr_last_error(void);
QREFLECT_API const char* qr_status_name(qr_status status);

/* Parameter selection for gap delta, precision epsilon, target phase theta. */
QREFLECT_API qr_status qr_plan_create(double delta, double epsilon, double theta,
                                      qr_t_formula formula, qr_plan** out);
QREFLECT_API void qr_plan_destroy(qr_plan* plan);
QREFLECT_API qr_status qr_plan_params(const qr_plan* plan, int64_t* t, int64_t* n,
                                      int64_t* degree);
QREFLECT_API qr_status qr_plan_json(const qr_plan* plan, const char** out);

/* Polynomial, complement, angles and circuits. Oracle-independent. */
QREFLECT_API qr_status qr_synthesize(const qr_plan* plan, double completion_tol,
                                     qr_synthesis** out);
QREFLECT_API void qr_synthesis_destroy(qr_synthesis* synthesis);
QREFLECT_API qr_status qr_synthesis_circuit_json(const qr_synthesis* synthesis,
                                                 const char** out);
QREFLECT_API qr_status qr_synthesis_angles_json(const qr_synthesis* synthesis,
                                                const char** out);
QREFLECT_API qr_status qr_synthesis_counts(const qr_synthesis* synthesis,
                                           qr_gate_counts* out);
QREFLECT_API qr_status qr_synthesis_completion_residual(const qr_synthesis* synthesis,
                                                        double* out);

/* Dense unitaries: {"dim": N, "re": [[...]], "im": [[...]]} or generated. */
QREFLECT_API qr_status qr_operator_from_json(const char* text, qr_operator** out);
QREFLECT_API qr_status qr_operator_from_spectrum(int64_t dim, double delta, double theta,
                                                 int64_t target_multiplicity,
                                                 uint64_t seed, qr_operator** out);
QREFLECT_API qr_status qr_operator_identity(int64_t dim, qr_operator** out);
QREFLECT_API void qr_operator_destroy(qr_operator* op);
QREFLECT_API qr_status qr_operator_dim(const qr_operator* op, int64_t* out);
QREFLECT_API qr_status qr_operator_json(const qr_operator* op, const char** out);

/* Realizes the composite circuit on the operator and compares against the
 * exact reflection. Returns QR_OK whenever a report was produced; inspect
 * bound_satisfied for the verdict. With compare_t_formulas != 0 the report
 * also records both t formulas, each certified on a grid of
 * oversample * (degree + 1) points (oversample <= 0 selects 32). */
QREFLECT_API qr_status qr_verify(const qr_synthesis* synthesis, const qr_operator* op,
                                 int compare_t_formulas, int oversample,
                                 qr_report** out);
QREFLECT_API void qr_report_destroy(qr_report* report);
QREFLECT_API qr_status qr_report_summary_get(const qr_report* report,
                                             qr_report_summary* out);
QREFLECT_API qr_status qr_report_json(const qr_report* report, const char** out);

#ifdef __cplusplus
}
#endif

#endif /* QREFLECT_H */
