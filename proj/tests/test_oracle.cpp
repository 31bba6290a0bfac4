#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "qreflect/oracle.hpp"
#include "qreflect/pipeline.hpp"
#include "qreflect/testgen.hpp"

using namespace qreflect;

namespace {

constexpr double kPi = std::numbers::pi;
using Mat = Eigen::MatrixXcd;

Mat diag(std::initializer_list<Complex> entries) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const auto& e : entries) v(i++) = e;
  return v.asDiagonal();
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("decompose examples") {
  const auto id = decompose(Mat::Identity(4, 4));
  REQUIRE(id.eigenphases.size() == 4);
  for (double p : id.eigenphases) CHECK(std::abs(p) < 1e-15);

  const auto s = decompose(diag({1.0, -1.0}));
  CHECK(std::abs(s.eigenphases[0]) < 1e-15);
  CHECK(s.eigenphases[1] == doctest::Approx(kPi));

  std::mt19937_64 rng(1);
  const Mat u = qreflect::test::random_unitary(rng, 16);
  const auto su = decompose(u);
  Eigen::VectorXcd ph(16);
  for (Eigen::Index i = 0; i < 16; ++i) ph(i) = std::polar(1.0, su.eigenphases[static_cast<std::size_t>(i)]);
  const Mat back = su.eigenvectors * ph.asDiagonal() * su.eigenvectors.adjoint();
  CHECK(max_abs(back - u) <= 1e-10);
  for (std::size_t i = 1; i < su.eigenphases.size(); ++i) CHECK(su.eigenphases[i - 1] <= su.eigenphases[i]);
}

TEST_CASE("validate_gap examples") {
  CHECK(validate_gap(decompose(diag({1.0, -1.0})), {kPi / 2, 0.1, 0.0}) == 1);

  const Mat bad = diag({1.0, 1.0, std::polar(1.0, kPi / 4)});
  try {
    validate_gap(decompose(bad), {kPi / 2, 0.1, 0.0});
    FAIL("expected GapViolation");
  } catch (const GapViolation& e) {
    CHECK(e.phase() == doctest::Approx(kPi / 4));
  }

  CHECK_THROWS_AS(validate_gap(decompose(diag({-1.0, -1.0})), {kPi / 2, 0.1, 0.0}), TargetAbsent);

  const Mat u = random_gapped_unitary({16, kPi / 4, 0.0, 3, 42});
  CHECK(validate_gap(decompose(u), {kPi / 4, 0.1, 0.0}) == 3);
}

TEST_CASE("exact projector examples") {
  const auto id = decompose(Mat::Identity(3, 3));
  CHECK(max_abs(exact_projector(id, 0.0) - Mat::Identity(3, 3)) < 1e-14);

  const Mat z = diag({1.0, -1.0});
  const Mat pi = exact_projector(decompose(z), 0.0);
  CHECK(max_abs(pi - diag({1.0, 0.0})) < 1e-15);
  CHECK(max_abs((2.0 * pi - Mat::Identity(2, 2)) - z) < 1e-15);

  const auto s = decompose(random_gapped_unitary({16, kPi / 4, 0.3, 3, 7}));
  const Mat p = exact_projector(s, 0.3);
  CHECK(std::abs(p.trace() - 3.0) < 1e-10);
  CHECK(max_abs(p * p - p) < 1e-10);
  CHECK(max_abs(p - p.adjoint()) < 1e-12);
}

TEST_CASE("apply_poly examples") {
  const auto s = decompose(diag({1.0, -1.0}));
  CHECK(max_abs(apply_poly(s, ComplexPolynomial{1.0}) - Mat::Identity(2, 2)) < 1e-15);
  CHECK(max_abs(apply_poly(s, ComplexPolynomial{0.0, 1.0}) - diag({1.0, -1.0})) < 1e-15);

  // phase shift evaluates p on e^{-i shift} U
  const auto rot = decompose(diag({std::polar(1.0, 0.5)}));
  CHECK(std::abs(apply_poly(rot, ComplexPolynomial{0.0, 1.0}, 0.5)(0, 0) - 1.0) < 1e-15);

  // against explicit matrix powers
  std::mt19937_64 rng(2);
  const Mat u = qreflect::test::random_unitary(rng, 6);
  const auto p = qreflect::test::random_contraction(rng, 5);
  Mat acc = Mat::Zero(6, 6), power = Mat::Identity(6, 6);
  for (std::size_t k = 0; k <= 5; ++k) {
    acc += p[k] * power;
    power = power * u;
  }
  const Mat got = apply_poly(decompose(u), p);
  CHECK(max_abs(got - acc) < 1e-12);
  CHECK(max_abs(got * got.adjoint() - got.adjoint() * got) < 1e-10);
}

TEST_CASE("plan polynomial approximates the projector") {
  for (double delta : {kPi / 2, kPi / 4}) {
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      const auto plan = select_parameters({delta, eps, 0.3});
      const auto s = decompose(random_gapped_unitary({16, delta, 0.3, 2, 5}));
      const Mat err = apply_poly(s, build_upsilon(plan.t, plan.n), 0.3) - exact_projector(s, 0.3);
      CHECK(spectral_norm(err) <= eps);
    }
  }
}

TEST_CASE("verify_reflection examples") {
  SUBCASE("identity") {
    const auto syn = synthesize_reflection(select_parameters({kPi / 4, 1e-2}));
    const auto r = verify_reflection(Mat::Identity(4, 4), syn);
    CHECK(r.measured_error <= 1e-10);
    CHECK(r.bound_satisfied);
    CHECK(r.target_multiplicity == 4);
  }
  SUBCASE("Pauli Z near the widest gap") {
    const auto syn = synthesize_reflection(select_parameters({3.14159265, 0.1}));
    const auto r = verify_reflection(diag({1.0, -1.0}), syn);
    CHECK(r.measured_error <= 0.4);
    CHECK(r.bound == doctest::Approx(0.4));
  }
  SUBCASE("gapped unitary dim 16") {
    const auto plan = select_parameters({kPi / 4, 1e-2, 0.0});
    const auto syn = synthesize_reflection(plan);
    const Mat u = random_gapped_unitary({16, kPi / 4, 0.0, 3, 7});
    const auto r = verify_reflection(u, syn);
    CHECK(r.measured_error <= 0.04);
    CHECK(r.oracle_block_residual <= 1e-8);
    CHECK(r.counts == r.predicted_counts);
    CHECK(r.unitarity_residual <= 1e-10);
    CHECK(r.branch_unitarity_residual <= 1e-11);

    // Independent route: 2 Y Y^dagger - 1 against the exact reflection.
    const auto s = decompose(u);
    const Mat y = apply_poly(s, syn.upsilon);
    const Mat id = Mat::Identity(16, 16);
    const Mat reflection = 2.0 * exact_projector(s, 0.0) - id;
    const double alt = spectral_norm(Mat(2.0 * y * y.adjoint() - id - reflection));
    CHECK(alt <= 4 * 1e-2);
    CHECK(std::abs(alt - r.measured_error) <= 1e-8);
    CHECK(alt <= 4 * r.projector_error + 1e-12);
  }
  SUBCASE("gap violations propagate") {
    const auto syn = synthesize_reflection(select_parameters({kPi / 2, 0.1}));
    CHECK_THROWS_AS(verify_reflection(diag({1.0, std::polar(1.0, 0.5)}), syn), GapViolation);
    CHECK_THROWS_AS(verify_reflection(diag({-1.0}), syn), TargetAbsent);
  }
}

TEST_CASE("t formula comparison") {
  const auto corrected = compare_t_formula({kPi / 2, 1e-3}, TFormula::kCorrected);
  const auto literal = compare_t_formula({kPi / 2, 1e-3}, TFormula::kLiteral);
  CHECK(corrected.within_epsilon);
  CHECK(corrected.t == 4);
  CHECK_FALSE(literal.within_epsilon);
  CHECK(literal.t == 1);
  CHECK(literal.max_modulus_outside_gap == doctest::Approx(1.0));

  const auto syn = synthesize_reflection(select_parameters({kPi / 2, 1e-3}));
  const auto r = verify_reflection(Mat::Identity(2, 2), syn, true);
  REQUIRE(r.corrected.has_value());
  REQUIRE(r.literal.has_value());
  CHECK(r.corrected->within_epsilon);
  CHECK_FALSE(r.literal->within_epsilon);
}

TEST_CASE("property: 2 Y Y^dagger - 1 error stays within four times the projector error") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint64_t> seeds;
  for (double delta : {kPi / 2, kPi / 3, kPi / 6}) {
    const auto syn = synthesize_reflection(select_parameters({delta, 5e-2, -0.4}));
    for (int trial = 0; trial < 3; ++trial) {
      const Mat u = random_gapped_unitary({12, delta, -0.4, 1 + trial, seeds(rng)});
      const auto r = verify_reflection(u, syn);
      CHECK(r.measured_error <= 4 * r.projector_error + 1e-8);
      CHECK(r.measured_error <= 4 * 5e-2 + kBoundSlack);
      CHECK(r.oracle_block_residual <= 1e-8);
    }
  }
}
