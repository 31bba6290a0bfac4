#include "qreflect/qreflect.h"

#include <string>

#include "qreflect/oracle.hpp"
#include "qreflect/pipeline.hpp"
#include "qreflect/serialize.hpp"
#include "qreflect/testgen.hpp"

struct qr_plan {
  qreflect::ReflectionPlan plan;
  std::string json;
};

struct qr_synthesis {
  qreflect::ReflectionSynthesis synthesis;
  std::string circuit_json;
  std::string angles_json;
};

struct qr_operator {
  qreflect::DenseOperator matrix;
  std::string json;
};

struct qr_report {
  qreflect::VerificationReport report;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

qr_status fail(qr_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

qr_status status_for(qreflect::ErrorCode code) {
  using qreflect::ErrorCode;
  switch (code) {
    case ErrorCode::kDomain:
    case ErrorCode::kInvalidInput:
      return QR_ERR_CONFIG;
    case ErrorCode::kCompletionFailure:
      return QR_ERR_COMPLETION;
    case ErrorCode::kConditioning:
      return QR_ERR_CONDITIONING;
    case ErrorCode::kGapViolation:
      return QR_ERR_GAP_VIOLATION;
    case ErrorCode::kTargetAbsent:
      return QR_ERR_TARGET_ABSENT;
  }
  return QR_ERR_INTERNAL;
}

template <typename Fn>
qr_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return QR_OK;
  } catch (const qreflect::Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QR_ERR_INTERNAL, "unknown error");
  }
}

#define QR_REQUIRE(cond, what) \
  if (!(cond)) return fail(QR_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* qr_version(void) { return "0.1.0"; }

const char* qr_last_error(void) { return g_last_error.c_str(); }

const char* qr_status_name(qr_status status) {
  switch (status) {
    case QR_OK: return "ok";
    case QR_BOUND_NOT_MET: return "bound_not_met";
    case QR_ERR_CONFIG: return "config_error";
    case QR_ERR_COMPLETION: return "completion_failure";
    case QR_ERR_GAP_VIOLATION: return "gap_violation";
    case QR_ERR_TARGET_ABSENT: return "target_absent";
    case QR_ERR_CONDITIONING: return "conditioning_error";
    case QR_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case QR_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

qr_status qr_plan_create(double delta, double epsilon, double theta,
                         qr_t_formula formula, qr_plan** out) {
  QR_REQUIRE(out != nullptr, "qr_plan_create: null output pointer");
  *out = nullptr;
  QR_REQUIRE(formula == QR_T_CORRECTED || formula == QR_T_PAPER,
             "qr_plan_create: unknown t formula");
  return guarded([&] {
    auto handle = std::make_unique<qr_plan>();
    handle->plan = qreflect::select_parameters(
        qreflect::GapSpec{delta, epsilon, theta},
        formula == QR_T_PAPER ? qreflect::TFormula::kLiteral
                              : qreflect::TFormula::kCorrected);
    handle->json = qreflect::to_text(qreflect::plan_to_json(handle->plan));
    *out = handle.release();
  });
}

void qr_plan_destroy(qr_plan* plan) { delete plan; }

qr_status qr_plan_params(const qr_plan* plan, int64_t* t, int64_t* n,
                         int64_t* degree) {
  QR_REQUIRE(plan != nullptr, "qr_plan_params: null plan");
  if (t) *t = plan->plan.t;
  if (n) *n = plan->plan.n;
  if (degree) *degree = plan->plan.degree;
  return QR_OK;
}

qr_status qr_plan_json(const qr_plan* plan, const char** out) {
  QR_REQUIRE(plan != nullptr && out != nullptr, "qr_plan_json: null argument");
  *out = plan->json.c_str();
  return QR_OK;
}

qr_status qr_synthesize(const qr_plan* plan, double completion_tol,
                        qr_synthesis** out) {
  QR_REQUIRE(plan != nullptr && out != nullptr, "qr_synthesize: null argument");
  *out = nullptr;
  QR_REQUIRE(completion_tol > 0.0, "qr_synthesize: tolerance must be positive");
  return guarded([&] {
    auto handle = std::make_unique<qr_synthesis>();
    handle->synthesis = qreflect::synthesize_reflection(plan->plan, completion_tol);
    handle->circuit_json =
        qreflect::to_text(qreflect::circuit_to_json(handle->synthesis.composite));
    handle->angles_json =
        qreflect::to_text(qreflect::angles_to_json(handle->synthesis));
    *out = handle.release();
  });
}

void qr_synthesis_destroy(qr_synthesis* synthesis) { delete synthesis; }

qr_status qr_synthesis_circuit_json(const qr_synthesis* synthesis, const char** out) {
  QR_REQUIRE(synthesis != nullptr && out != nullptr,
             "qr_synthesis_circuit_json: null argument");
  *out = synthesis->circuit_json.c_str();
  return QR_OK;
}

qr_status qr_synthesis_angles_json(const qr_synthesis* synthesis, const char** out) {
  QR_REQUIRE(synthesis != nullptr && out != nullptr,
             "qr_synthesis_angles_json: null argument");
  *out = synthesis->angles_json.c_str();
  return QR_OK;
}

qr_status qr_synthesis_counts(const qr_synthesis* synthesis, qr_gate_counts* out) {
  QR_REQUIRE(synthesis != nullptr && out != nullptr,
             "qr_synthesis_counts: null argument");
  const auto c = qreflect::gate_counts(synthesis->synthesis.composite);
  *out = qr_gate_counts{c.controlled_u, c.controlled_u_dagger,
                        c.single_qubit_rotations, c.total};
  return QR_OK;
}

qr_status qr_synthesis_completion_residual(const qr_synthesis* synthesis, double* out) {
  QR_REQUIRE(synthesis != nullptr && out != nullptr,
             "qr_synthesis_completion_residual: null argument");
  *out = synthesis->synthesis.completion_residual;
  return QR_OK;
}

qr_status qr_operator_from_json(const char* text, qr_operator** out) {
  QR_REQUIRE(text != nullptr && out != nullptr, "qr_operator_from_json: null argument");
  *out = nullptr;
  return guarded([&] {
    qreflect::Json parsed;
    try {
      parsed = qreflect::Json::parse(text);
    } catch (const qreflect::Json::exception& e) {
      throw qreflect::InvalidInput(std::string("matrix file is not JSON: ") + e.what());
    }
    auto handle = std::make_unique<qr_operator>();
    handle->matrix = qreflect::matrix_from_json(parsed);
    qreflect::require_unitary(handle->matrix);
    handle->json = qreflect::to_text(qreflect::matrix_to_json(handle->matrix));
    *out = handle.release();
  });
}

qr_status qr_operator_from_spectrum(int64_t dim, double delta, double theta,
                                    int64_t target_multiplicity, uint64_t seed,
                                    qr_operator** out) {
  QR_REQUIRE(out != nullptr, "qr_operator_from_spectrum: null output pointer");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<qr_operator>();
    handle->matrix = qreflect::random_gapped_unitary(
        qreflect::SpectrumSpec{dim, delta, theta, target_multiplicity, seed});
    handle->json = qreflect::to_text(qreflect::matrix_to_json(handle->matrix));
    *out = handle.release();
  });
}

qr_status qr_operator_identity(int64_t dim, qr_operator** out) {
  QR_REQUIRE(out != nullptr, "qr_operator_identity: null output pointer");
  *out = nullptr;
  QR_REQUIRE(dim >= 1, "qr_operator_identity: dim must be positive");
  return guarded([&] {
    auto handle = std::make_unique<qr_operator>();
    handle->matrix = qreflect::DenseOperator::Identity(dim, dim);
    handle->json = qreflect::to_text(qreflect::matrix_to_json(handle->matrix));
    *out = handle.release();
  });
}

void qr_operator_destroy(qr_operator* op) { delete op; }

qr_status qr_operator_dim(const qr_operator* op, int64_t* out) {
  QR_REQUIRE(op != nullptr && out != nullptr, "qr_operator_dim: null argument");
  *out = op->matrix.rows();
  return QR_OK;
}

qr_status qr_operator_json(const qr_operator* op, const char** out) {
  QR_REQUIRE(op != nullptr && out != nullptr, "qr_operator_json: null argument");
  *out = op->json.c_str();
  return QR_OK;
}

qr_status qr_verify(const qr_synthesis* synthesis, const qr_operator* op,
                    int compare_t_formulas, int oversample, qr_report** out) {
  QR_REQUIRE(synthesis != nullptr && op != nullptr && out != nullptr,
             "qr_verify: null argument");
  *out = nullptr;
  QR_REQUIRE(oversample <= 0 || oversample >= 16, "qr_verify: oversample must be at least 16");
  return guarded([&] {
    auto handle = std::make_unique<qr_report>();
    handle->report = qreflect::verify_reflection(
        op->matrix, synthesis->synthesis, compare_t_formulas != 0,
        oversample > 0 ? static_cast<std::size_t>(oversample) : 32);
    handle->json = qreflect::to_text(qreflect::report_to_json(handle->report));
    *out = handle.release();
  });
}

void qr_report_destroy(qr_report* report) { delete report; }

qr_status qr_report_summary_get(const qr_report* report, qr_report_summary* out) {
  QR_REQUIRE(report != nullptr && out != nullptr, "qr_report_summary_get: null argument");
  const auto& r = report->report;
  *out = qr_report_summary{r.measured_error,     r.bound,
                           r.bound_satisfied ? 1 : 0, r.projector_error,
                           r.completion_residual, r.unitarity_residual,
                           r.oracle_block_residual, r.target_multiplicity};
  return QR_OK;
}

qr_status qr_report_json(const qr_report* report, const char** out) {
  QR_REQUIRE(report != nullptr && out != nullptr, "qr_report_json: null argument");
  *out = report->json.c_str();
  return QR_OK;
}

}  // extern "C"
