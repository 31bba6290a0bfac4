#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qreflect/poly.hpp"

namespace qreflect {

/// Laurent polynomial G(z) = sum_{k=-d}^{d} g_k z^k with g_{-k} = conj(g_k),
/// hence real-valued on the unit circle.
class TrigPolynomial {
 public:
  TrigPolynomial() : coeffs_{Complex{0.0}} {}
  /// `coeffs` holds g_{-d}..g_d; its length must be odd.
  explicit TrigPolynomial(std::vector<Complex> coeffs);

  /// |Phi(e^{i lambda})|^2 as a Laurent polynomial.
  static TrigPolynomial modulus_squared(const ComplexPolynomial& p);

  std::size_t degree() const noexcept { return (coeffs_.size() - 1) / 2; }
  Complex at(std::ptrdiff_t k) const;
  /// Coefficients of z^d G(z), ascending: entry j is g_{j-d}.
  const std::vector<Complex>& shifted_coeffs() const noexcept { return coeffs_; }

  double operator()(double lambda) const;
  double derivative(double lambda, int order) const;
  /// Real values at e^{2 pi i j / m}; m must be at least 2d + 1.
  std::vector<double> sample(std::size_t m) const;
  /// max_k |g_{-k} - conj(g_k)|.
  double hermitian_defect() const;

 private:
  std::vector<Complex> coeffs_;
};

enum class CompletionMethod { kRootFactorization, kCepstrum };

struct CompletionResult {
  ComplexPolynomial phi;
  double residual = 0.0;  // max grid deviation of |Phi|^2 from G
  CompletionMethod method = CompletionMethod::kRootFactorization;
  std::vector<std::string> warnings;
};

struct FactorizeOptions {
  /// On-circle root test: | |r| - 1 | below this is treated as |r| = 1.
  double circle_tolerance = 1e-6;
  /// Paired on-circle roots farther apart than this raise a warning.
  double cluster_tolerance = 1e-7;
  bool allow_cepstrum = true;
  bool force_cepstrum = false;
};

/// G = 1 - |upsilon|^2 on the unit circle. Throws DomainError when the
/// sampled G dips below -1e-9, which means |upsilon| > 1 somewhere.
TrigPolynomial gram_polynomial(const ComplexPolynomial& upsilon);

/// Finds Phi with |Phi(e^{i lambda})|^2 = G(e^{i lambda}) and residual <= tol
/// on 16 (2d + 1) grid points. Root selection on z^d G(z) first, then the
/// cepstral factorization when roots cluster too badly. Throws
/// CompletionFailure carrying the best residual when both miss tol.
CompletionResult factorize(const TrigPolynomial& gram, double tol = 1e-10,
                           const FactorizeOptions& options = {});

/// max over m grid points of | |upsilon|^2 + |phi|^2 - 1 |.
double completion_residual(const ComplexPolynomial& upsilon,
                           const ComplexPolynomial& phi, std::size_t m);

/// Grid size used for completion certificates: 16 (2d + 1).
std::size_t completion_grid_size(std::size_t degree);

/// gram_polynomial followed by factorize.
CompletionResult complete(const ComplexPolynomial& upsilon, double tol = 1e-10,
                          const FactorizeOptions& options = {});

namespace detail {

struct RootSelection {
  std::vector<Complex> all_roots;  // roots of z^d G(z), zeros at 0 included
  std::vector<Complex> selected;   // one per reciprocal pair
  std::vector<std::string> warnings;
};

RootSelection select_roots(const TrigPolynomial& gram,
                           const FactorizeOptions& options = {});

CompletionResult factorize_by_roots(const TrigPolynomial& gram,
                                    const FactorizeOptions& options = {});
CompletionResult factorize_by_cepstrum(const TrigPolynomial& gram);

}  // namespace detail

}  // namespace qreflect
