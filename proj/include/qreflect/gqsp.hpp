#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "qreflect/poly.hpp"

namespace qreflect {

/// Rotation angles of a single-ancilla signal-processing circuit.
///
/// Each ancilla rotation is
///
///   R(theta, phi, lambda) = [[e^{i(lambda+phi)} cos theta, e^{i phi} sin theta],
///                            [e^{i lambda} sin theta,       -cos theta      ]]
///
/// and the circuit applies R(thetas[0], phis[0], lambda_final) first, then for
/// k = 1..d an ancilla-|1>-controlled U followed by R(thetas[k], phis[k], 0).
/// Feeding ancilla |0> yields P(U) on the |0> branch and Q(U) on the |1>
/// branch.
struct GQSPAngleSequence {
  std::vector<double> thetas;
  std::vector<double> phis;
  double lambda_final = 0.0;

  std::size_t degree() const { return thetas.empty() ? 0 : thetas.size() - 1; }
};

/// 2x2 matrix of R(theta, phi, lambda), row-major.
std::array<Complex, 4> rotation_matrix(double theta, double phi, double lambda);

struct AngleSynthesis {
  GQSPAngleSequence angles;
  /// Steps k where both candidate coefficient pairs fell below 1e-13 and the
  /// rotation was set to theta = phi = 0.
  std::vector<std::size_t> degenerate_steps;
};

/// Peels one degree per step by choosing the rotation that zeroes the top
/// coefficient of P (or, when that pair is smaller, the constant term of Q).
/// `degree` pads both inputs; it defaults to max(deg p, deg q). Throws
/// ConditioningError when |P|^2 + |Q|^2 deviates from 1 by more than 1e-8.
AngleSynthesis synthesize_angles(const ComplexPolynomial& p,
                                 const ComplexPolynomial& q,
                                 std::size_t degree = 0);

std::pair<ComplexPolynomial, ComplexPolynomial> reconstruct_polynomials(
    const GQSPAngleSequence& angles);

struct BranchPair {
  AngleSynthesis plus;   // realizes (Upsilon, +Phi)
  AngleSynthesis minus;  // realizes (Upsilon, -Phi)
};

BranchPair branch_pair(const ComplexPolynomial& upsilon,
                       const ComplexPolynomial& phi, std::size_t degree = 0);

}  // namespace qreflect
