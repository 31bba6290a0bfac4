#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qreflect/pipeline.hpp"
#include "qreflect/sim.hpp"

namespace qreflect {

/// Eigendecomposition U = V diag(e^{i lambda}) V^dagger with eigenphases in
/// (-pi, pi], ascending.
struct SpectralData {
  std::vector<double> eigenphases;
  DenseOperator eigenvectors;
  std::int64_t target_multiplicity = 0;  // filled by validate_gap
};

/// Angular distance used to decide that an eigenphase equals the target.
inline constexpr double kEigenphaseClusterTolerance = 1e-9;

/// Uses the complex Schur form, which is diagonal for normal matrices, so
/// degenerate eigenspaces still get orthonormal bases.
SpectralData decompose(const DenseOperator& u);

/// Counts eigenphases within 1e-9 of theta. Throws GapViolation for any
/// other eigenphase strictly inside (theta - delta, theta + delta) and
/// TargetAbsent when the count is zero.
std::int64_t validate_gap(const SpectralData& s, const GapSpec& gap);

DenseOperator exact_projector(const SpectralData& s, double theta);

/// V diag(p(e^{i (lambda_j - phase_shift)})) V^dagger, i.e. p evaluated on
/// e^{-i phase_shift} U.
DenseOperator apply_poly(const SpectralData& s, const ComplexPolynomial& p,
                         double phase_shift = 0.0);

/// Bound check for the polynomial alone, recorded for both t formulas.
struct TFormulaComparison {
  std::int64_t t = 0;
  std::int64_t n = 0;
  std::int64_t degree = 0;
  double max_modulus_outside_gap = 0.0;
  bool within_epsilon = false;
};

struct VerificationReport {
  std::int64_t dim = 0;
  std::int64_t target_multiplicity = 0;
  double measured_error = 0.0;
  double bound = 0.0;
  bool bound_satisfied = false;
  double projector_error = 0.0;  // || Upsilon(U) - Pi ||
  GateCounts counts;
  GateCounts predicted_counts;
  double completion_residual = 0.0;
  CompletionMethod completion_method = CompletionMethod::kRootFactorization;
  double unitarity_residual = 0.0;         // composite
  double branch_unitarity_residual = 0.0;  // max over W_+ and W_-
  double oracle_block_residual = 0.0;      // || <0|W_+|0> - Upsilon(U) ||
  double phi_block_residual = 0.0;         // || <1|W_+|0> - Phi(U) ||
  ReflectionPlan params;
  std::optional<TFormulaComparison> corrected;
  std::optional<TFormulaComparison> literal;
};

/// Slack on top of 4 epsilon for floating-point rounding.
inline constexpr double kBoundSlack = 1e-8;

TFormulaComparison compare_t_formula(const GapSpec& gap, TFormula formula,
                                     std::size_t oversample = 32);

/// Realizes the composite on u and measures || <0|W_-^dagger W_+|0> -
/// (2 Pi - 1) ||. The gap is validated first; GapViolation and TargetAbsent
/// propagate. With include_t_comparison both t formulas are recorded.
VerificationReport verify_reflection(const DenseOperator& u,
                                     const ReflectionSynthesis& synthesis,
                                     bool include_t_comparison = false,
                                     std::size_t oversample = 32);

}  // namespace qreflect
