#include "qreflect/testgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qreflect/error.hpp"

namespace qreflect {

Pcg32::Pcg32(std::uint64_t seed, std::uint64_t stream)
    : inc_((stream << 1u) | 1u) {
  next();
  state_ += seed;
  next();
}

std::uint32_t Pcg32::next() {
  const std::uint64_t old = state_;
  state_ = old * 6364136223846793005ULL + inc_;
  const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  const auto rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

double Pcg32::uniform() {
  const std::uint64_t hi = next() >> 5;  // 27 bits
  const std::uint64_t lo = next() >> 6;  // 26 bits
  return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

double Pcg32::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

DenseOperator random_gapped_unitary(const SpectrumSpec& spec) {
  const double pi = std::numbers::pi;
  if (spec.dim < 1) throw DomainError("dimension must be positive");
  if (spec.target_multiplicity < 1 || spec.target_multiplicity > spec.dim) {
    throw DomainError("target multiplicity must lie in [1, dim]");
  }
  if (!(spec.delta > 0.0 && spec.delta < pi)) {
    throw DomainError("spectrum delta must lie in (0, pi)");
  }

  Pcg32 rng(spec.seed);
  const auto dim = static_cast<Eigen::Index>(spec.dim);
  const double low = std::min(spec.delta * 1.05, pi);

  Eigen::VectorXcd diag(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    double phase = spec.theta;
    if (i >= spec.target_multiplicity) {
      const double offset = low + (pi - low) * rng.uniform();
      phase += (rng.next() & 1u) ? offset : -offset;
    }
    diag(i) = std::polar(1.0, phase);
  }

  DenseOperator gaussian(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      gaussian(i, j) = Complex(re, im);
    }
  }
  const Eigen::HouseholderQR<DenseOperator> qr(gaussian);
  const DenseOperator v = qr.householderQ() * DenseOperator::Identity(dim, dim);
  return v * diag.asDiagonal() * v.adjoint();
}

}  // namespace qreflect
