#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "qreflect/completion.hpp"

using namespace qreflect;
using qreflect::test::power_sum;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent residual: dense random points, explicit powers.
double residual_oracle(const ComplexPolynomial& u, const ComplexPolynomial& phi,
                       std::mt19937_64& rng, int samples = 400) {
  std::uniform_real_distribution<double> ld(-kPi, kPi);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Complex z = std::polar(1.0, ld(rng));
    worst = std::max(worst, std::abs(std::norm(power_sum(u, z)) + std::norm(power_sum(phi, z)) - 1.0));
  }
  return worst;
}

}  // namespace

TEST_CASE("TrigPolynomial basics") {
  CHECK_THROWS_AS(TrigPolynomial({1.0, 2.0}), InvalidInput);
  const auto g = TrigPolynomial::modulus_squared(ComplexPolynomial{1.0, Complex(0, 2)});
  // |1 + 2i z|^2 = 5 + 2i z - 2i / z on the circle
  CHECK(g.degree() == 1);
  CHECK(std::abs(g.at(0) - 5.0) < 1e-15);
  CHECK(std::abs(g.at(1) - Complex(0, 2)) < 1e-15);
  CHECK(std::abs(g.at(-1) - Complex(0, -2)) < 1e-15);
  CHECK(g.hermitian_defect() == 0.0);
  CHECK(g(0.3) == doctest::Approx(std::norm(1.0 + Complex(0, 2) * std::polar(1.0, 0.3))));
  CHECK(completion_grid_size(9) == 304);
}

TEST_CASE("gram polynomial of Upsilon_{2,1} is sin^2(lambda/2)") {
  const auto g = gram_polynomial(build_upsilon(2, 1));
  CHECK(g.degree() == 1);
  CHECK(std::abs(g.at(0) - 0.5) < 1e-15);
  CHECK(std::abs(g.at(1) + 0.25) < 1e-15);
  CHECK(std::abs(g.at(-1) + 0.25) < 1e-15);
  for (double lambda : {-2.0, 0.0, 0.7, 3.0}) {
    CHECK(std::abs(g(lambda) - std::pow(std::sin(lambda / 2), 2)) < 1e-15);
  }
  const auto res = factorize(g);
  CHECK(res.phi.degree() == 1);
  CHECK(std::abs(std::abs(res.phi[0]) - 0.5) < 1e-12);
  CHECK(std::abs(std::abs(res.phi[1]) - 0.5) < 1e-12);
  CHECK(res.residual <= 1e-12);
}

TEST_CASE("gram polynomial matches pointwise 1 - |u|^2") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ld(-kPi, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = qreflect::test::random_contraction(rng, 1 + trial % 12);
    const auto g = gram_polynomial(u);
    CHECK(g.hermitian_defect() < 1e-15);
    for (int s = 0; s < 20; ++s) {
      const double lambda = ld(rng);
      CHECK(std::abs(g(lambda) - (1.0 - std::norm(power_sum(u, std::polar(1.0, lambda))))) < 1e-13);
    }
  }
}

TEST_CASE("constant one needs no complement") {
  const auto res = complete(build_upsilon(1, 4));
  CHECK(res.phi.is_zero());
  CHECK(res.residual <= 1e-15);
}

TEST_CASE("polynomials leaving the unit disc are rejected") {
  CHECK_THROWS_AS(gram_polynomial(ComplexPolynomial{1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(complete(ComplexPolynomial{0.8, 0.8}), DomainError);
}

TEST_CASE("completion of the reflection polynomials") {
  std::mt19937_64 rng(2);
  for (double delta : {kPi / 2, kPi / 4, kPi / 8}) {
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      const auto plan = select_parameters({delta, eps});
      const auto ups = build_upsilon(plan.t, plan.n);
      const auto res = complete(ups);
      CAPTURE(plan.degree);
      CHECK(res.residual <= 1e-10);
      CHECK(res.phi.degree() <= ups.degree());
      CHECK(completion_residual(ups, res.phi, completion_grid_size(plan.degree)) <= 1e-10);
      CHECK(residual_oracle(ups, res.phi, rng) <= 1e-10);
      // leading coefficient is real and positive
      const Complex lead = res.phi[res.phi.degree()];
      CHECK(std::abs(lead.imag()) <= 1e-14);
      CHECK(lead.real() > 0.0);
    }
  }
}

TEST_CASE("root factorization picks the closed-disc factor") {
  const auto g = gram_polynomial(build_upsilon(3, 2));
  const auto sel = detail::select_roots(g);
  CHECK(sel.all_roots.size() == 2 * g.degree());
  CHECK(sel.selected.size() == g.degree());
  for (const auto& r : sel.selected) CHECK(std::abs(r) <= 1.0 + 1e-6);
  const auto res = detail::factorize_by_roots(g);
  CHECK(res.method == CompletionMethod::kRootFactorization);
  CHECK(res.residual <= 1e-12);
}

TEST_CASE("cepstral factor is the conjugate reversal of the root factor") {
  // Roots select zeros in the closed disc, the cepstrum zeros outside it;
  // both square to G, so they agree after z^d conj(Phi(1 / conj z)).
  for (auto [t, n] : {std::pair{2, 1}, {3, 2}, {4, 3}, {8, 2}, {6, 3}}) {
    const auto g = gram_polynomial(build_upsilon(t, n));
    const auto roots = detail::factorize_by_roots(g);
    const auto cep = detail::factorize_by_cepstrum(g);
    CAPTURE(t);
    CAPTURE(n);
    CHECK(roots.residual <= 1e-12);
    CHECK(cep.method == CompletionMethod::kCepstrum);
    CHECK(cep.residual <= 1e-12);
    const std::size_t d = roots.phi.degree();
    REQUIRE(cep.phi.degree() == d);
    std::vector<Complex> reversed(d + 1);
    for (std::size_t k = 0; k <= d; ++k) reversed[k] = std::conj(roots.phi[d - k]);
    const Complex phase = cep.phi[d] / reversed[d];
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-9);
    double worst = 0.0;
    for (std::size_t k = 0; k <= d; ++k) worst = std::max(worst, std::abs(cep.phi[k] - phase * reversed[k]));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("ill-conditioned root selection falls back to the cepstrum") {
  const auto g = gram_polynomial(build_upsilon(5, 5));
  const auto sel = detail::select_roots(g);
  if (sel.selected.size() != g.degree()) CHECK_FALSE(sel.warnings.empty());
  const auto res = factorize(g);
  CHECK(res.residual <= 1e-10);
  CHECK(res.phi.degree() <= g.degree());

  FactorizeOptions no_fallback;
  no_fallback.allow_cepstrum = false;
  const auto direct = detail::factorize_by_roots(g, no_fallback);
  if (direct.residual > 1e-10) {
    CHECK(res.method == CompletionMethod::kCepstrum);
    CHECK_THROWS_AS(factorize(g, 1e-10, no_fallback), CompletionFailure);
  }
}

TEST_CASE("forced cepstrum reaches tolerance on high degree") {
  const auto plan = select_parameters({kPi / 16, 1e-3});
  const auto ups = build_upsilon(plan.t, plan.n);
  FactorizeOptions opts;
  opts.force_cepstrum = true;
  const auto res = complete(ups, 1e-10, opts);
  CHECK(res.method == CompletionMethod::kCepstrum);
  CHECK(res.residual <= 1e-10);
}

TEST_CASE("property: random contractions complete within tolerance") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> dd(1, 40);
  for (int trial = 0; trial < 40; ++trial) {
    const auto u = qreflect::test::random_contraction(rng, dd(rng), 0.95);
    const auto res = complete(u);
    CHECK(res.residual <= 1e-10);
    CHECK(residual_oracle(u, res.phi, rng, 100) <= 1e-10);
  }
}

TEST_CASE("completion_residual examples") {
  CHECK(completion_residual(ComplexPolynomial{1.0}, ComplexPolynomial{0.0}, 64) == 0.0);
  CHECK(completion_residual(ComplexPolynomial{0.5, 0.5}, ComplexPolynomial{0.5, -0.5}, 64) <= 1e-15);
  CHECK(std::abs(completion_residual(ComplexPolynomial{0.5, 0.5}, ComplexPolynomial{0.0}, 64) - 1.0) <= 1e-15);
}

TEST_CASE("property: selected roots have reciprocal partners") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> dd(1, 30);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = gram_polynomial(qreflect::test::random_contraction(rng, dd(rng), 0.9));
    const auto sel = detail::select_roots(g);
    for (const auto& r : sel.selected) {
      if (std::abs(r) < 1e-12) continue;
      const Complex partner = 1.0 / std::conj(r);
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& s : sel.all_roots) nearest = std::min(nearest, std::abs(s - partner));
      CHECK(nearest <= 1e-8);
    }
  }
}

TEST_CASE("property: factorization is idempotent in modulus") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> ld(-kPi, kPi);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = qreflect::test::random_contraction(rng, 2 + trial, 0.9);
    const auto phi = complete(u).phi;
    const auto again = factorize(TrigPolynomial::modulus_squared(phi)).phi;
    for (int s = 0; s < 50; ++s) {
      const Complex z = std::polar(1.0, ld(rng));
      CHECK(std::abs(std::abs(power_sum(phi, z)) - std::abs(power_sum(again, z))) <= 1e-9);
    }
  }
}

TEST_CASE("property: global phase leaves the completion residual unchanged") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> ad(-kPi, kPi);
  const auto u = build_upsilon(4, 3);
  const auto phi = complete(u).phi;
  for (int trial = 0; trial < 10; ++trial) {
    const auto rotated = std::polar(1.0, ad(rng)) * phi;
    CHECK(completion_residual(u, rotated, completion_grid_size(9)) <= 1e-12);
  }
}
