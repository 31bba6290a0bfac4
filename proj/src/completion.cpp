#include "qreflect/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fft.hpp"

namespace qreflect {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGramNegativeTolerance = -1e-9;
constexpr std::size_t kMaxCepstrumGrid = std::size_t{1} << 22;

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

// Rotates the coefficients so the leading retained coefficient is real and
// positive.
ComplexPolynomial normalize_phase(std::vector<Complex> coeffs) {
  ComplexPolynomial trimmed(std::move(coeffs));
  const Complex lead = trimmed[trimmed.degree()];
  if (std::abs(lead) == 0.0) return trimmed;
  return Complex(std::conj(lead) / std::abs(lead)) * trimmed;
}

double modulus_residual(const TrigPolynomial& gram,
                        const ComplexPolynomial& phi) {
  const std::size_t d = std::max(gram.degree(), phi.degree());
  const std::size_t m = completion_grid_size(d);
  const auto g = gram.sample(m);
  const auto p = eval_on_circle_grid(phi, m);
  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    worst = std::max(worst, std::abs(std::norm(p[j]) - g[j]));
  }
  return worst;
}

// Leja ordering keeps the running product well scaled during expansion.
std::vector<Complex> leja_order(std::vector<Complex> roots) {
  std::vector<Complex> ordered;
  ordered.reserve(roots.size());
  std::vector<double> log_dist(roots.size(), 0.0);
  std::vector<bool> used(roots.size(), false);
  for (std::size_t step = 0; step < roots.size(); ++step) {
    std::size_t best = roots.size();
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (used[i]) continue;
      const double score = step == 0 ? std::abs(roots[i]) : log_dist[i];
      if (best == roots.size() || score > best_score) {
        best = i;
        best_score = score;
      }
    }
    used[best] = true;
    ordered.push_back(roots[best]);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (!used[i]) {
        log_dist[i] += std::log(std::max(std::abs(roots[i] - roots[best]),
                                         std::numeric_limits<double>::min()));
      }
    }
  }
  return ordered;
}

std::vector<Complex> expand_monic(const std::vector<Complex>& roots) {
  std::vector<Complex> coeffs{Complex{1.0}};
  for (const auto& r : leja_order(roots)) {
    coeffs.push_back(Complex{0.0});
    for (std::size_t k = coeffs.size() - 1; k > 0; --k) {
      coeffs[k] = coeffs[k - 1] - r * coeffs[k];
    }
    coeffs[0] = -r * coeffs[0];
  }
  return coeffs;
}

Complex horner(const std::vector<Complex>& a, Complex z) {
  Complex acc{0.0};
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex horner_derivative(const std::vector<Complex>& a, Complex z) {
  Complex acc{0.0};
  for (std::size_t k = a.size(); k-- > 1;) {
    acc = acc * z + static_cast<double>(k) * a[k];
  }
  return acc;
}

// Divides a(z) by (z - w). The quotient's upper half comes from the top-down
// recurrence and its lower half from the bottom-up one, so rounding does not
// accumulate across the whole length.
std::vector<Complex> deflate_linear(const std::vector<Complex>& a, Complex w) {
  const std::size_t n = a.size() - 1;  // degree of a
  std::vector<Complex> top(n), bottom(n);
  top[n - 1] = a[n];
  for (std::size_t k = n - 1; k > 0; --k) top[k - 1] = a[k] + w * top[k];
  bottom[0] = -a[0] / w;
  for (std::size_t k = 1; k < n; ++k) bottom[k] = (bottom[k - 1] - a[k]) / w;
  std::vector<Complex> q(n);
  for (std::size_t k = 0; k < n; ++k) q[k] = (2 * k < n) ? bottom[k] : top[k];
  return q;
}

// A double zero of G on the circle is a simple zero of G'.
double refine_circle_zero(const TrigPolynomial& gram, double lambda) {
  for (int it = 0; it < 60; ++it) {
    const double d1 = gram.derivative(lambda, 1);
    const double d2 = gram.derivative(lambda, 2);
    if (d2 <= 0.0) break;
    const double step = d1 / d2;
    lambda -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return lambda;
}

std::vector<double> locate_circle_zeros(const TrigPolynomial& gram) {
  const std::size_t d = gram.degree();
  const std::size_t m = std::max<std::size_t>(256, detail::next_pow2(64 * (2 * d + 1)));
  const auto g = gram.sample(m);
  const double gmax = *std::max_element(g.begin(), g.end());
  std::vector<double> zeros;
  if (gmax <= 0.0) return zeros;
  for (std::size_t j = 0; j < m; ++j) {
    const double prev = g[(j + m - 1) % m];
    const double next = g[(j + 1) % m];
    if (!(g[j] <= prev && g[j] <= next && g[j] <= 1e-3 * gmax)) continue;
    double lambda = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m);
    lambda = refine_circle_zero(gram, lambda);
    if (gram(lambda) > 1e-12 * gmax) continue;
    lambda = std::remainder(lambda, 2.0 * kPi);
    bool duplicate = false;
    for (double z : zeros) {
      if (std::abs(std::remainder(z - lambda, 2.0 * kPi)) < 1e-9) duplicate = true;
    }
    if (!duplicate) zeros.push_back(lambda);
  }
  return zeros;
}

}  // namespace

TrigPolynomial::TrigPolynomial(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || coeffs_.size() % 2 == 0) {
    throw InvalidInput("Laurent coefficient list must have odd length");
  }
}

TrigPolynomial TrigPolynomial::modulus_squared(const ComplexPolynomial& p) {
  const auto c = p.coeffs();
  const std::size_t d = p.degree();
  std::vector<Complex> g(2 * d + 1, Complex{0.0});
  for (std::size_t k = 0; k <= d; ++k) {
    Complex acc{0.0};
    for (std::size_t j = 0; j + k <= d; ++j) acc += std::conj(c[j]) * c[j + k];
    g[d + k] = acc;
    g[d - k] = std::conj(acc);
  }
  g[d] = Complex(g[d].real(), 0.0);
  return TrigPolynomial(std::move(g));
}

Complex TrigPolynomial::at(std::ptrdiff_t k) const {
  const auto d = static_cast<std::ptrdiff_t>(degree());
  if (k < -d || k > d) return Complex{0.0};
  return coeffs_[static_cast<std::size_t>(k + d)];
}

double TrigPolynomial::operator()(double lambda) const {
  return derivative(lambda, 0);
}

double TrigPolynomial::derivative(double lambda, int order) const {
  const auto d = static_cast<std::ptrdiff_t>(degree());
  Complex acc{0.0};
  for (std::ptrdiff_t k = -d; k <= d; ++k) {
    Complex factor = std::pow(Complex(0.0, static_cast<double>(k)), order);
    acc += factor * at(k) * std::polar(1.0, static_cast<double>(k) * lambda);
  }
  return acc.real();
}

std::vector<double> TrigPolynomial::sample(std::size_t m) const {
  const std::size_t d = degree();
  if (m < 2 * d + 1) throw DomainError("grid too small for Laurent degree");
  std::vector<Complex> buf(m, Complex{0.0});
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(d);
    buf[static_cast<std::size_t>((k + static_cast<std::ptrdiff_t>(m)) %
                                 static_cast<std::ptrdiff_t>(m))] += coeffs_[j];
  }
  const auto values = detail::unscaled_inverse_dft(buf);
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = values[j].real();
  return out;
}

double TrigPolynomial::hermitian_defect() const {
  const auto d = static_cast<std::ptrdiff_t>(degree());
  double worst = 0.0;
  for (std::ptrdiff_t k = 0; k <= d; ++k) {
    worst = std::max(worst, std::abs(at(-k) - std::conj(at(k))));
  }
  return worst;
}

std::size_t completion_grid_size(std::size_t degree) {
  return 16 * (2 * degree + 1);
}

TrigPolynomial gram_polynomial(const ComplexPolynomial& upsilon) {
  const auto sq = TrigPolynomial::modulus_squared(upsilon);
  std::vector<Complex> g = sq.shifted_coeffs();
  for (auto& c : g) c = -c;
  g[upsilon.degree()] += 1.0;
  TrigPolynomial gram(std::move(g));
  const auto samples = gram.sample(completion_grid_size(upsilon.degree()));
  const double lowest = *std::min_element(samples.begin(), samples.end());
  if (lowest < kGramNegativeTolerance) {
    std::ostringstream os;
    os << "1 - |P|^2 reaches " << lowest
       << " on the unit circle; |P| exceeds 1 there";
    throw DomainError(os.str());
  }
  return gram;
}

double completion_residual(const ComplexPolynomial& upsilon,
                           const ComplexPolynomial& phi, std::size_t m) {
  const std::size_t d = std::max(upsilon.degree(), phi.degree());
  if (m < 2 * d + 1) throw DomainError("grid too small for completion check");
  const auto u = eval_on_circle_grid(upsilon, m);
  const auto p = eval_on_circle_grid(phi, m);
  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    worst = std::max(worst, std::abs(std::norm(u[j]) + std::norm(p[j]) - 1.0));
  }
  return worst;
}

namespace detail {

RootSelection select_roots(const TrigPolynomial& gram,
                           const FactorizeOptions& options) {
  RootSelection out;
  const auto& a = gram.shifted_coeffs();
  const double scale = max_abs(a);
  if (scale == 0.0) return out;
  const double zero_tol = 1e-15 * scale;

  std::size_t lo = 0;
  while (lo < a.size() && std::abs(a[lo]) <= zero_tol) ++lo;
  std::size_t hi = a.size() - 1;
  while (hi > lo && std::abs(a[hi]) <= zero_tol) --hi;
  const std::size_t zeros_at_origin = lo;
  const std::size_t zeros_at_infinity = a.size() - 1 - hi;
  if (zeros_at_origin != zeros_at_infinity) {
    out.warnings.push_back("coefficient list is not Hermitian-symmetric");
  }
  for (std::size_t k = 0; k < zeros_at_origin; ++k) out.all_roots.emplace_back(0.0);
  for (std::size_t k = 0; k < std::min(zeros_at_origin, zeros_at_infinity); ++k) {
    out.selected.emplace_back(0.0);
  }

  std::vector<Complex> core(a.begin() + static_cast<std::ptrdiff_t>(lo),
                            a.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  if (core.size() < 2) return out;

  const auto n = static_cast<Eigen::Index>(core.size() - 1);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    companion(i, n - 1) = -core[static_cast<std::size_t>(i)] / core.back();
  }
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    out.warnings.push_back("companion eigenvalue iteration did not converge");
  }
  const Eigen::VectorXcd& eig = solver.eigenvalues();
  std::vector<Complex> roots(eig.begin(), eig.end());

  // Newton polish, kept only when the residual drops and the step stays
  // well inside the gap to the nearest other root.
  for (std::size_t i = 0; i < roots.size(); ++i) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j != i) gap = std::min(gap, std::abs(roots[i] - roots[j]));
    }
    Complex& r = roots[i];
    for (int it = 0; it < 3; ++it) {
      const Complex f = horner(core, r);
      const Complex df = horner_derivative(core, r);
      if (std::abs(df) == 0.0) break;
      const Complex step = f / df;
      if (std::abs(step) > 0.1 * gap) break;
      const Complex cand = r - step;
      if (std::abs(horner(core, cand)) < std::abs(f)) r = cand; else break;
    }
  }
  out.all_roots.insert(out.all_roots.end(), roots.begin(), roots.end());

  std::vector<Complex> on_circle;
  for (const auto& r : roots) {
    const double mod = std::abs(r);
    if (std::abs(mod - 1.0) <= options.circle_tolerance) {
      on_circle.push_back(r);
    } else if (mod < 1.0) {
      out.selected.push_back(r);
    }
  }

  // Unit-circle roots of a nonnegative G come with even multiplicity; pair
  // nearest neighbours and keep one unit-modulus representative per pair.
  std::vector<bool> used(on_circle.size(), false);
  for (std::size_t i = 0; i < on_circle.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t mate = on_circle.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < on_circle.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(on_circle[i] - on_circle[j]);
      if (dist < best) {
        best = dist;
        mate = j;
      }
    }
    if (mate == on_circle.size()) {
      std::ostringstream os;
      os << "odd-multiplicity unit-circle root near " << on_circle[i]
         << "; factorization is ill-conditioned";
      out.warnings.push_back(os.str());
      out.selected.push_back(on_circle[i] / std::abs(on_circle[i]));
      continue;
    }
    used[mate] = true;
    if (best > options.cluster_tolerance) {
      std::ostringstream os;
      os << "unit-circle roots paired across distance " << best;
      out.warnings.push_back(os.str());
    }
    const Complex mid = 0.5 * (on_circle[i] + on_circle[mate]);
    out.selected.push_back(std::polar(1.0, refine_circle_zero(gram, std::arg(mid))));
  }
  if (out.selected.size() != gram.degree()) {
    std::ostringstream os;
    os << "selected " << out.selected.size() << " roots for degree " << gram.degree();
    out.warnings.push_back(os.str());
  }
  return out;
}

CompletionResult factorize_by_roots(const TrigPolynomial& gram,
                                    const FactorizeOptions& options) {
  auto selection = select_roots(gram, options);
  const std::vector<Complex> monic = expand_monic(selection.selected);

  const std::size_t m = completion_grid_size(std::max<std::size_t>(gram.degree(), 1));
  const auto g = gram.sample(m);
  const auto peak = std::max_element(g.begin(), g.end());
  const double lambda = 2.0 * kPi * static_cast<double>(peak - g.begin()) / static_cast<double>(m);
  const double at_peak = std::abs(horner(monic, std::polar(1.0, lambda)));
  const double gain = at_peak > 0.0 ? std::sqrt(std::max(*peak, 0.0)) / at_peak : 0.0;

  std::vector<Complex> scaled(monic);
  for (auto& c : scaled) c *= gain;

  CompletionResult result;
  result.phi = normalize_phase(std::move(scaled));
  result.residual = modulus_residual(gram, result.phi);
  result.method = CompletionMethod::kRootFactorization;
  result.warnings = std::move(selection.warnings);
  return result;
}

CompletionResult factorize_by_cepstrum(const TrigPolynomial& gram) {
  CompletionResult result;
  result.method = CompletionMethod::kCepstrum;

  // Deflate |z - w|^2 for every unit-circle zero, repeating for higher
  // multiplicities. On the circle |z - w|^2 = -conj(w) (z - w)^2 / z.
  std::vector<Complex> a = gram.shifted_coeffs();
  std::vector<Complex> circle_factors;
  for (double lambda : locate_circle_zeros(gram)) {
    const Complex w = std::polar(1.0, lambda);
    for (int pass = 0; pass < 8 && a.size() >= 3; ++pass) {
      std::vector<Complex> q = deflate_linear(deflate_linear(a, w), w);
      for (auto& c : q) c *= -w;
      const std::size_t dq = (q.size() - 1) / 2;
      for (std::size_t k = 0; k <= dq; ++k) {
        const Complex sym = 0.5 * (q[dq + k] + std::conj(q[dq - k]));
        q[dq + k] = sym;
        q[dq - k] = std::conj(sym);
      }
      a = std::move(q);
      circle_factors.push_back(w);
      const TrigPolynomial rest(a);
      const auto s = rest.sample(std::max<std::size_t>(64, 8 * a.size()));
      const double smax = *std::max_element(s.begin(), s.end());
      if (a.size() < 3 || rest(lambda) > 1e-10 * smax) break;
    }
  }

  const TrigPolynomial rest(a);
  const std::size_t dh = rest.degree();
  std::vector<Complex> psi;
  if (dh == 0) {
    psi.push_back(Complex(std::sqrt(std::max(rest.at(0).real(), 0.0))));
  } else {
    std::size_t n = std::max<std::size_t>(1024, detail::next_pow2(32 * (2 * dh + 1)));
    for (;;) {
      auto h = rest.sample(n);
      const double hmax = *std::max_element(h.begin(), h.end());
      const double floor = hmax * 1e-18;
      bool clamped = false;
      std::vector<Complex> logs(n);
      for (std::size_t j = 0; j < n; ++j) {
        if (h[j] <= floor) {
          h[j] = floor;
          clamped = true;
        }
        logs[j] = std::log(h[j]);
      }
      auto cep = detail::forward_dft(logs);
      std::vector<Complex> half(n, Complex{0.0});
      half[0] = 0.5 * cep[0] / static_cast<double>(n);
      for (std::size_t k = 1; k < n / 2; ++k) half[k] = cep[k] / static_cast<double>(n);
      auto expo = detail::unscaled_inverse_dft(half);
      for (auto& v : expo) v = std::exp(v);
      auto coeffs = detail::forward_dft(expo);
      for (auto& c : coeffs) c /= static_cast<double>(n);

      double head = 0.0, tail = 0.0;
      for (std::size_t k = 0; k <= dh; ++k) head = std::max(head, std::abs(coeffs[k]));
      for (std::size_t k = dh + 1; k < n; ++k) tail = std::max(tail, std::abs(coeffs[k]));
      psi.assign(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(dh) + 1);
      if (tail <= 1e-15 * head || n >= kMaxCepstrumGrid) {
        if (clamped) {
          result.warnings.push_back(
              "Gram polynomial vanishes off the located unit-circle roots");
        }
        break;
      }
      n *= 2;
    }
  }

  std::vector<Complex> phi = psi;
  for (const auto& w : circle_factors) {
    phi.push_back(Complex{0.0});
    for (std::size_t k = phi.size() - 1; k > 0; --k) phi[k] = phi[k - 1] - w * phi[k];
    phi[0] = -w * phi[0];
  }
  result.phi = normalize_phase(std::move(phi));
  result.residual = modulus_residual(gram, result.phi);
  return result;
}

}  // namespace detail

CompletionResult factorize(const TrigPolynomial& gram, double tol,
                           const FactorizeOptions& options) {
  if (max_abs(gram.shifted_coeffs()) <= 1e-15) {
    CompletionResult zero;
    zero.residual = modulus_residual(gram, zero.phi);
    return zero;
  }

  CompletionResult best;
  best.residual = std::numeric_limits<double>::infinity();
  std::vector<std::string> notes;

  if (!options.force_cepstrum) {
    try {
      auto by_roots = detail::factorize_by_roots(gram, options);
      // Close calls still get a cepstral second opinion.
      if (by_roots.residual <= 1e-2 * tol) return by_roots;
      if (by_roots.residual > tol) {
        std::ostringstream os;
        os << "root factorization residual " << by_roots.residual
           << " exceeds tolerance " << tol;
        notes.push_back(os.str());
      }
      best = std::move(by_roots);
    } catch (const std::exception& e) {
      notes.push_back(std::string("root factorization failed: ") + e.what());
    }
  }
  if (options.allow_cepstrum || options.force_cepstrum) {
    auto by_cepstrum = detail::factorize_by_cepstrum(gram);
    by_cepstrum.warnings.insert(by_cepstrum.warnings.begin(), notes.begin(), notes.end());
    if (by_cepstrum.residual < best.residual) best = std::move(by_cepstrum);
  }
  if (best.residual <= tol) return best;

  std::ostringstream os;
  os << "no complementary polynomial met tolerance " << tol
     << "; best residual " << best.residual;
  throw CompletionFailure(os.str(), best.residual);
}

CompletionResult complete(const ComplexPolynomial& upsilon, double tol,
                          const FactorizeOptions& options) {
  return factorize(gram_polynomial(upsilon), tol, options);
}

}  // namespace qreflect
