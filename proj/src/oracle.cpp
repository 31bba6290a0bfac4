#include "qreflect/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace qreflect {

namespace {

constexpr double kUnitaryTolerance = 1e-10;

double angular_distance(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * std::numbers::pi));
}

}  // namespace

SpectralData decompose(const DenseOperator& u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw InvalidInput("decompose needs a non-empty square matrix");
  }
  const Eigen::Index dim = u.rows();
  const double defect =
      (u.adjoint() * u - DenseOperator::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (defect > kUnitaryTolerance) {
    std::ostringstream os;
    os << "matrix is not unitary (max |U^dagger U - 1| = " << defect << ")";
    throw InvalidInput(os.str());
  }

  const Eigen::ComplexSchur<DenseOperator> schur(u);
  const DenseOperator& t = schur.matrixT();
  const DenseOperator& q = schur.matrixU();

  std::vector<double> phases(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    double phase = std::arg(t(i, i));
    if (phase <= -std::numbers::pi) phase += 2.0 * std::numbers::pi;
    phases[static_cast<std::size_t>(i)] = phase;
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return phases[static_cast<std::size_t>(a)] < phases[static_cast<std::size_t>(b)];
  });

  SpectralData s;
  s.eigenvectors.resize(dim, dim);
  s.eigenphases.reserve(static_cast<std::size_t>(dim));
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    s.eigenvectors.col(j) = q.col(src);
    s.eigenphases.push_back(phases[static_cast<std::size_t>(src)]);
  }
  return s;
}

std::int64_t validate_gap(const SpectralData& s, const GapSpec& gap) {
  std::int64_t multiplicity = 0;
  for (double phase : s.eigenphases) {
    const double dist = angular_distance(phase, gap.theta);
    if (dist <= kEigenphaseClusterTolerance) {
      ++multiplicity;
    } else if (dist < gap.delta) {
      std::ostringstream os;
      os << "eigenphase " << phase << " lies within " << gap.delta
         << " of the target " << gap.theta;
      throw GapViolation(os.str(), phase);
    }
  }
  if (multiplicity == 0) {
    std::ostringstream os;
    os << "target eigenphase " << gap.theta << " is not in the spectrum";
    throw TargetAbsent(os.str());
  }
  return multiplicity;
}

DenseOperator exact_projector(const SpectralData& s, double theta) {
  const Eigen::Index dim = s.eigenvectors.rows();
  DenseOperator pi = DenseOperator::Zero(dim, dim);
  bool found = false;
  for (std::size_t j = 0; j < s.eigenphases.size(); ++j) {
    if (angular_distance(s.eigenphases[j], theta) <= kEigenphaseClusterTolerance) {
      const auto v = s.eigenvectors.col(static_cast<Eigen::Index>(j));
      pi.noalias() += v * v.adjoint();
      found = true;
    }
  }
  if (!found) throw TargetAbsent("target eigenphase is not in the spectrum");
  return pi;
}

DenseOperator apply_poly(const SpectralData& s, const ComplexPolynomial& p,
                         double phase_shift) {
  const Eigen::Index dim = s.eigenvectors.rows();
  Eigen::VectorXcd values(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    values(j) = p(std::polar(1.0, s.eigenphases[static_cast<std::size_t>(j)] - phase_shift));
  }
  return s.eigenvectors * values.asDiagonal() * s.eigenvectors.adjoint();
}

TFormulaComparison compare_t_formula(const GapSpec& gap, TFormula formula,
                                     std::size_t oversample) {
  const auto plan = select_parameters(gap, formula);
  TFormulaComparison out;
  out.t = plan.t;
  out.n = plan.n;
  out.degree = plan.degree;
  out.max_modulus_outside_gap =
      max_modulus_outside_gap(build_upsilon(plan.t, plan.n), gap.delta, oversample);
  out.within_epsilon = out.max_modulus_outside_gap <= gap.epsilon;
  return out;
}

VerificationReport verify_reflection(const DenseOperator& u,
                                     const ReflectionSynthesis& synthesis,
                                     bool include_t_comparison,
                                     std::size_t oversample) {
  const auto& plan = synthesis.plan;
  const double theta = plan.gap.theta;
  const SpectralData s = decompose(u);
  VerificationReport r;
  r.dim = u.rows();
  r.target_multiplicity = validate_gap(s, plan.gap);
  r.params = plan;

  const DenseOperator projector = exact_projector(s, theta);
  const DenseOperator identity = DenseOperator::Identity(u.rows(), u.cols());
  const DenseOperator reflection = 2.0 * projector - identity;

  const DenseOperator composite = realize(synthesis.composite, u);
  const DenseOperator w_plus = realize(synthesis.w_plus, u);
  const DenseOperator w_minus = realize(synthesis.w_minus, u);

  r.measured_error = spectral_norm(pue_block(composite, Block::kTopLeft) - reflection);
  r.bound = 4.0 * plan.gap.epsilon;
  r.bound_satisfied = r.measured_error <= r.bound + kBoundSlack;

  const DenseOperator upsilon_u = apply_poly(s, synthesis.upsilon, theta);
  const DenseOperator phi_u = apply_poly(s, synthesis.completion.phi, theta);
  r.projector_error = spectral_norm(upsilon_u - projector);
  r.oracle_block_residual = spectral_norm(pue_block(w_plus, Block::kTopLeft) - upsilon_u);
  r.phi_block_residual = spectral_norm(pue_block(w_plus, Block::kBottomLeft) - phi_u);

  r.counts = gate_counts(synthesis.composite);
  r.predicted_counts.controlled_u = plan.predicted_controlled_u_per_branch();
  r.predicted_counts.controlled_u_dagger = plan.predicted_controlled_u_per_branch();
  r.predicted_counts.single_qubit_rotations = plan.predicted_rotations();
  r.predicted_counts.total = plan.predicted_total_controlled() + plan.predicted_rotations();

  r.completion_residual = synthesis.completion_residual;
  r.completion_method = synthesis.completion.method;
  r.unitarity_residual = unitarity_residual(composite);
  r.branch_unitarity_residual =
      std::max(unitarity_residual(w_plus), unitarity_residual(w_minus));

  if (include_t_comparison) {
    r.corrected = compare_t_formula(plan.gap, TFormula::kCorrected, oversample);
    r.literal = compare_t_formula(plan.gap, TFormula::kLiteral, oversample);
  }
  return r;
}

}  // namespace qreflect
