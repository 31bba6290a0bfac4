#include "qreflect/sim.hpp"

#include <cmath>
#include <sstream>

namespace qreflect {

namespace {

constexpr double kUnitaryTolerance = 1e-10;
constexpr Eigen::Index kDenseSvdLimit = 256;

}  // namespace

double unitarity_residual(const DenseOperator& a) {
  const DenseOperator defect =
      a.adjoint() * a - DenseOperator::Identity(a.cols(), a.cols());
  return spectral_norm(defect);
}

void require_unitary(const DenseOperator& u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw InvalidInput("oracle must be a non-empty square matrix");
  }
  const Eigen::Index dim = u.rows();
  const double defect =
      (u.adjoint() * u - DenseOperator::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (defect > kUnitaryTolerance) {
    std::ostringstream os;
    os << "oracle is not unitary (max |U^dagger U - 1| = " << defect << ")";
    throw InvalidInput(os.str());
  }
}

DenseOperator realize(const CircuitIR& c, const DenseOperator& u) {
  require_unitary(u);
  const Eigen::Index dim = u.rows();
  const DenseOperator u_inv = u.adjoint();

  // Rows [0, dim) carry ancilla |0>, rows [dim, 2 dim) ancilla |1>. Gates act
  // on the left of the accumulated product.
  DenseOperator w = DenseOperator::Identity(2 * dim, 2 * dim);
  for (const auto& gate : c.gates) {
    if (const auto* rot = std::get_if<AncillaRotation>(&gate)) {
      const auto r = rotation_matrix(rot->theta, rot->phi, rot->lambda);
      const DenseOperator top = w.topRows(dim);
      const DenseOperator low = w.bottomRows(dim);
      w.topRows(dim) = r[0] * top + r[1] * low;
      w.bottomRows(dim) = r[2] * top + r[3] * low;
    } else {
      const auto& oracle = std::get<ControlledOracle>(gate);
      const Complex phase = std::polar(1.0, -oracle.phase_shift);
      const DenseOperator& base = oracle.exponent > 0 ? u : u_inv;
      const DenseOperator low = w.bottomRows(dim);
      w.bottomRows(dim).noalias() = phase * (base * low);
    }
  }
  return w;
}

DenseOperator pue_block(const DenseOperator& w, Block which) {
  if (w.rows() != w.cols() || w.rows() % 2 != 0) {
    throw InvalidInput("pue_block needs a square matrix of even dimension");
  }
  const Eigen::Index dim = w.rows() / 2;
  return which == Block::kTopLeft ? DenseOperator(w.topLeftCorner(dim, dim))
                                  : DenseOperator(w.bottomLeftCorner(dim, dim));
}

double spectral_norm(const DenseOperator& a) {
  if (a.size() == 0) return 0.0;
  if (std::max(a.rows(), a.cols()) <= kDenseSvdLimit) {
    const Eigen::BDCSVD<DenseOperator> svd(a);
    return svd.singularValues()(0);
  }
  return spectral_norm_power(a);
}

double spectral_norm_power(const DenseOperator& a, double tol,
                           int max_iterations) {
  if (a.size() == 0) return 0.0;
  const Eigen::Index n = a.cols();
  // Deterministic start with support on every coordinate.
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = Complex(1.0 + 0.5 * std::sin(static_cast<double>(i + 1)),
                   0.25 * std::cos(static_cast<double>(3 * i + 1)));
  }
  v.normalize();
  double estimate = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXcd next = a.adjoint() * (a * v);
    const double lambda = next.norm();
    if (lambda == 0.0) return 0.0;
    next /= lambda;
    const double sigma = std::sqrt(lambda);
    v = std::move(next);
    if (std::abs(sigma - estimate) <= tol * std::max(sigma, 1.0)) {
      estimate = sigma;
      break;
    }
    estimate = sigma;
  }
  return (a * v).norm();
}

}  // namespace qreflect
