#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qreflect/error.hpp"

namespace qreflect {

/// Polynomial with complex coefficients in the monomial basis; coeffs()[k]
/// multiplies x^k. Trailing coefficients with magnitude below kTrimThreshold
/// are dropped on construction, so degree() is the index of the last
/// retained coefficient. The zero polynomial is stored as [0] with degree 0.
class ComplexPolynomial {
 public:
  static constexpr double kTrimThreshold = 1e-14;

  ComplexPolynomial() : coeffs_{Complex{0.0}} {}
  explicit ComplexPolynomial(std::vector<Complex> coeffs);
  ComplexPolynomial(std::initializer_list<Complex> coeffs)
      : ComplexPolynomial(std::vector<Complex>(coeffs)) {}

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex operator[](std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Complex{0.0};
  }
  bool is_zero() const noexcept {
    return coeffs_.size() == 1 && coeffs_[0] == Complex{0.0};
  }

  /// Coefficients zero-padded (never truncated) to length degree + 1.
  std::vector<Complex> padded(std::size_t degree) const;

  Complex operator()(Complex z) const;

  friend ComplexPolynomial operator*(const ComplexPolynomial& a,
                                     const ComplexPolynomial& b);
  friend ComplexPolynomial operator+(const ComplexPolynomial& a,
                                     const ComplexPolynomial& b);
  friend ComplexPolynomial operator-(const ComplexPolynomial& a,
                                     const ComplexPolynomial& b);
  friend ComplexPolynomial operator*(Complex s, const ComplexPolynomial& p);
  ComplexPolynomial operator-() const;

 private:
  std::vector<Complex> coeffs_;
};

/// Largest coefficient-wise distance, treating missing entries as zero.
double max_coeff_distance(const ComplexPolynomial& a,
                          const ComplexPolynomial& b);

/// Gap around the target eigenphase and the requested precision.
struct GapSpec {
  double delta = 0.0;    // radians, 0 < delta < pi
  double epsilon = 0.0;  // 0 < epsilon < 1
  double theta = 0.0;    // target eigenphase, radians

  /// Throws DomainError when delta or epsilon is out of range.
  void validate() const;
};

enum class TFormula {
  kCorrected,  // t = ceil(2e / |e^{i delta} - 1|)
  kLiteral,    // t = ceil(e / (2 |e^{i delta} - 1|)), kept for comparison
};

struct ReflectionPlan {
  GapSpec gap;
  TFormula formula = TFormula::kCorrected;
  std::int64_t t = 1;
  std::int64_t n = 1;
  std::int64_t degree = 0;  // (t - 1) * n

  std::int64_t predicted_controlled_u_per_branch() const { return degree; }
  std::int64_t predicted_total_controlled() const { return 2 * degree; }
  std::int64_t predicted_rotations() const { return 2 * (degree + 1); }
};

/// |e^{i delta} - 1|, computed as 2 sin(delta / 2).
double chord_length(double delta);

ReflectionPlan select_parameters(const GapSpec& gap,
                                 TFormula formula = TFormula::kCorrected);

/// ((1/t) * sum_{k<t} x^k)^n by repeated convolution.
ComplexPolynomial build_upsilon(std::int64_t t, std::int64_t n);

Complex eval_at(const ComplexPolynomial& poly, Complex z);

/// Values at e^{2 pi i j / m}, j = 0..m-1. Uses an FFT for larger m.
std::vector<Complex> eval_on_circle_grid(const ComplexPolynomial& poly,
                                         std::size_t m);

/// Grid estimate (not a rigorous supremum) of max |poly(e^{i lambda})| over
/// |lambda| in [delta, pi], sampled on oversample * (degree + 1) equispaced
/// points plus the endpoints lambda = +-delta and pi.
double max_modulus_outside_gap(const ComplexPolynomial& poly, double delta,
                               std::size_t oversample = 32);

/// Grid estimate of max |poly| on the whole unit circle.
double max_modulus_on_circle(const ComplexPolynomial& poly,
                             std::size_t oversample = 32);

}  // namespace qreflect
