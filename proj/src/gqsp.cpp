#include "qreflect/gqsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qreflect/completion.hpp"

namespace qreflect {

namespace {

constexpr double kDegenerateMagnitude = 1e-13;
constexpr double kPrecondition = 1e-8;

double safe_arg(Complex z) { return std::abs(z) == 0.0 ? 0.0 : std::arg(z); }

}  // namespace

std::array<Complex, 4> rotation_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {std::polar(c, lambda + phi), std::polar(s, phi),
          std::polar(s, lambda), Complex(-c, 0.0)};
}

AngleSynthesis synthesize_angles(const ComplexPolynomial& p,
                                 const ComplexPolynomial& q,
                                 std::size_t degree) {
  const std::size_t d = std::max({degree, p.degree(), q.degree()});
  const double residual = completion_residual(p, q, completion_grid_size(d));
  if (residual > kPrecondition) {
    std::ostringstream os;
    os << "|P|^2 + |Q|^2 deviates from 1 by " << residual
       << " on the unit circle";
    throw ConditioningError(os.str());
  }

  std::vector<Complex> a = p.padded(d);
  std::vector<Complex> b = q.padded(d);
  AngleSynthesis out;
  out.angles.thetas.assign(d + 1, 0.0);
  out.angles.phis.assign(d + 1, 0.0);

  for (std::size_t k = d; k >= 1; --k) {
    const double top = std::hypot(std::abs(a[k]), std::abs(b[k]));
    const double bottom = std::hypot(std::abs(a[0]), std::abs(b[0]));
    double theta = 0.0;
    double phi = 0.0;
    if (std::max(top, bottom) < kDegenerateMagnitude) {
      out.degenerate_steps.push_back(k);
    } else if (top >= bottom) {
      // e^{-i phi} cos(theta) a_k + sin(theta) b_k = 0
      theta = std::atan2(std::abs(a[k]), std::abs(b[k]));
      phi = std::remainder(safe_arg(a[k]) - safe_arg(b[k]) + std::numbers::pi, 2.0 * std::numbers::pi);
    } else {
      // e^{-i phi} sin(theta) a_0 - cos(theta) b_0 = 0
      theta = std::atan2(std::abs(b[0]), std::abs(a[0]));
      phi = safe_arg(a[0]) - safe_arg(b[0]);
    }
    out.angles.thetas[k] = theta;
    out.angles.phis[k] = phi;

    // Undo R(theta, phi, 0) and the controlled oracle.
    const Complex rot = std::polar(1.0, -phi);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    std::vector<Complex> next_a(k), next_b(k);
    for (std::size_t j = 0; j < k; ++j) next_a[j] = rot * c * a[j] + s * b[j];
    for (std::size_t j = 0; j < k; ++j) {
      next_b[j] = rot * s * a[j + 1] - c * b[j + 1];
    }
    a = std::move(next_a);
    b = std::move(next_b);
  }

  out.angles.thetas[0] = std::atan2(std::abs(b[0]), std::abs(a[0]));
  out.angles.lambda_final = safe_arg(b[0]);
  out.angles.phis[0] = std::remainder(safe_arg(a[0]) - out.angles.lambda_final, 2.0 * std::numbers::pi);
  return out;
}

std::pair<ComplexPolynomial, ComplexPolynomial> reconstruct_polynomials(
    const GQSPAngleSequence& angles) {
  if (angles.thetas.size() != angles.phis.size() || angles.thetas.empty()) {
    throw InvalidInput("angle sequence needs matching non-empty theta/phi lists");
  }
  const std::size_t d = angles.degree();
  std::vector<Complex> a(d + 1, Complex{0.0});
  std::vector<Complex> b(d + 1, Complex{0.0});
  const auto r0 = rotation_matrix(angles.thetas[0], angles.phis[0], angles.lambda_final);
  a[0] = r0[0];
  b[0] = r0[2];
  for (std::size_t k = 1; k <= d; ++k) {
    // Controlled oracle multiplies the |1> branch by x.
    for (std::size_t j = k; j >= 1; --j) b[j] = b[j - 1];
    b[0] = Complex{0.0};
    const auto r = rotation_matrix(angles.thetas[k], angles.phis[k], 0.0);
    for (std::size_t j = 0; j <= k; ++j) {
      const Complex top = r[0] * a[j] + r[1] * b[j];
      const Complex low = r[2] * a[j] + r[3] * b[j];
      a[j] = top;
      b[j] = low;
    }
  }
  return {ComplexPolynomial(std::move(a)), ComplexPolynomial(std::move(b))};
}

BranchPair branch_pair(const ComplexPolynomial& upsilon,
                       const ComplexPolynomial& phi, std::size_t degree) {
  return {synthesize_angles(upsilon, phi, degree),
          synthesize_angles(upsilon, -phi, degree)};
}

}  // namespace qreflect
