#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qreflect/gqsp.hpp"
#include "qreflect/poly.hpp"
#include "qreflect/sim.hpp"

namespace qreflect::test {

inline std::vector<double> uniform_angles(std::mt19937_64& rng, std::size_t count) {
  std::uniform_real_distribution<double> dist(-3.14159, 3.14159);
  std::vector<double> out(count);
  for (auto& x : out) x = dist(rng);
  return out;
}

inline GQSPAngleSequence random_angles(std::mt19937_64& rng, std::size_t degree) {
  GQSPAngleSequence a;
  a.thetas = uniform_angles(rng, degree + 1);
  a.phis = uniform_angles(rng, degree + 1);
  a.lambda_final = uniform_angles(rng, 1)[0];
  return a;
}

// Random polynomial strictly inside the unit disc on the circle:
// sum |c_k| <= scale < 1.
inline ComplexPolynomial random_contraction(std::mt19937_64& rng, std::size_t degree,
                                            double scale = 0.9) {
  std::normal_distribution<double> dist;
  std::vector<Complex> c(degree + 1);
  double total = 0.0;
  for (auto& x : c) {
    x = Complex(dist(rng), dist(rng));
    total += std::abs(x);
  }
  for (auto& x : c) x *= scale / total;
  return ComplexPolynomial(std::move(c));
}

inline DenseOperator random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> dist;
  DenseOperator m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

inline DenseOperator random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  const Eigen::HouseholderQR<DenseOperator> qr(random_matrix(rng, dim, dim));
  return qr.householderQ() * DenseOperator::Identity(dim, dim);
}

// Brute-force evaluation of sum c_k z^k from explicit powers.
inline Complex power_sum(const ComplexPolynomial& p, Complex z) {
  Complex acc{0.0};
  for (std::size_t k = 0; k <= p.degree(); ++k) acc += p[k] * std::pow(z, static_cast<double>(k));
  return acc;
}

}  // namespace qreflect::test
