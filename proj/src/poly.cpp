#include "qreflect/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"

namespace qreflect {

namespace {

constexpr std::size_t kDirectEvalLimit = 64;

}  // namespace

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && std::abs(coeffs_.back()) < kTrimThreshold) {
    coeffs_.pop_back();
  }
  if (coeffs_.empty()) coeffs_.push_back(Complex{0.0});
  if (coeffs_.size() == 1 && std::abs(coeffs_[0]) < kTrimThreshold) {
    coeffs_[0] = Complex{0.0};
  }
}

std::vector<Complex> ComplexPolynomial::padded(std::size_t degree) const {
  std::vector<Complex> out(coeffs_);
  if (out.size() < degree + 1) out.resize(degree + 1, Complex{0.0});
  return out;
}

Complex ComplexPolynomial::operator()(Complex z) const {
  Complex acc{0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

ComplexPolynomial operator*(const ComplexPolynomial& a,
                            const ComplexPolynomial& b) {
  std::vector<Complex> out(a.coeffs_.size() + b.coeffs_.size() - 1,
                           Complex{0.0});
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return ComplexPolynomial(std::move(out));
}

ComplexPolynomial operator+(const ComplexPolynomial& a,
                            const ComplexPolynomial& b) {
  const std::size_t d = std::max(a.degree(), b.degree());
  std::vector<Complex> out = a.padded(d);
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
  return ComplexPolynomial(std::move(out));
}

ComplexPolynomial operator-(const ComplexPolynomial& a,
                            const ComplexPolynomial& b) {
  return a + (-b);
}

ComplexPolynomial operator*(Complex s, const ComplexPolynomial& p) {
  std::vector<Complex> out(p.coeffs_);
  for (auto& c : out) c *= s;
  return ComplexPolynomial(std::move(out));
}

ComplexPolynomial ComplexPolynomial::operator-() const {
  return Complex{-1.0} * *this;
}

double max_coeff_distance(const ComplexPolynomial& a,
                          const ComplexPolynomial& b) {
  const std::size_t d = std::max(a.degree(), b.degree());
  double worst = 0.0;
  for (std::size_t k = 0; k <= d; ++k) {
    worst = std::max(worst, std::abs(a[k] - b[k]));
  }
  return worst;
}

void GapSpec::validate() const {
  if (!(delta > 0.0 && delta < std::numbers::pi)) {
    std::ostringstream os;
    os << "delta must lie in (0, pi), got " << delta;
    throw DomainError(os.str());
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    std::ostringstream os;
    os << "epsilon must lie in (0, 1), got " << epsilon;
    throw DomainError(os.str());
  }
  if (!std::isfinite(theta)) throw DomainError("theta must be finite");
}

double chord_length(double delta) { return 2.0 * std::sin(0.5 * delta); }

ReflectionPlan select_parameters(const GapSpec& gap, TFormula formula) {
  gap.validate();
  const double chord = chord_length(gap.delta);
  const double e = std::numbers::e;
  const double t_real =
      formula == TFormula::kCorrected ? 2.0 * e / chord : e / (2.0 * chord);

  ReflectionPlan plan;
  plan.gap = gap;
  plan.formula = formula;
  plan.t = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t_real)));
  plan.n = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(std::log(1.0 / gap.epsilon))));
  plan.degree = (plan.t - 1) * plan.n;
  return plan;
}

ComplexPolynomial build_upsilon(std::int64_t t, std::int64_t n) {
  if (t < 1 || n < 1) {
    throw DomainError("build_upsilon requires t >= 1 and n >= 1");
  }
  const double w = 1.0 / static_cast<double>(t);
  // Real convolution keeps the coefficients exactly nonnegative.
  std::vector<double> acc{1.0};
  for (std::int64_t step = 0; step < n; ++step) {
    std::vector<double> next(acc.size() + static_cast<std::size_t>(t) - 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      const double v = acc[i] * w;
      for (std::int64_t k = 0; k < t; ++k) next[i + static_cast<std::size_t>(k)] += v;
    }
    acc = std::move(next);
  }
  return ComplexPolynomial(std::vector<Complex>(acc.begin(), acc.end()));
}

Complex eval_at(const ComplexPolynomial& poly, Complex z) { return poly(z); }

std::vector<Complex> eval_on_circle_grid(const ComplexPolynomial& poly,
                                         std::size_t m) {
  if (m < poly.degree() + 1) {
    std::ostringstream os;
    os << "grid of " << m << " points cannot resolve degree " << poly.degree();
    throw DomainError(os.str());
  }
  std::vector<Complex> out(m);
  if (m <= kDirectEvalLimit) {
    for (std::size_t j = 0; j < m; ++j) {
      out[j] = poly(std::polar(1.0, 2.0 * std::numbers::pi *
                                        static_cast<double>(j) /
                                        static_cast<double>(m)));
    }
    return out;
  }
  std::vector<Complex> padded = poly.padded(m - 1);
  return detail::unscaled_inverse_dft(padded);
}

double max_modulus_outside_gap(const ComplexPolynomial& poly, double delta,
                               std::size_t oversample) {
  if (oversample < 16) throw DomainError("oversample must be at least 16");
  const double pi = std::numbers::pi;
  const std::size_t m = oversample * (poly.degree() + 1);
  const auto values = eval_on_circle_grid(poly, m);
  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double lambda = 2.0 * pi * static_cast<double>(j) / static_cast<double>(m);
    if (lambda > pi) lambda -= 2.0 * pi;
    if (std::abs(lambda) >= delta) worst = std::max(worst, std::abs(values[j]));
  }
  for (double lambda : {delta, -delta, pi}) {
    worst = std::max(worst, std::abs(poly(std::polar(1.0, lambda))));
  }
  return worst;
}

double max_modulus_on_circle(const ComplexPolynomial& poly,
                             std::size_t oversample) {
  const auto values =
      eval_on_circle_grid(poly, std::max<std::size_t>(oversample, 1) *
                                    (poly.degree() + 1));
  double worst = 0.0;
  for (const auto& v : values) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace qreflect
