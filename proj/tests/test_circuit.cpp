#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "qreflect/circuit.hpp"
#include "qreflect/pipeline.hpp"

using namespace qreflect;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("build_w lays out rotation, then oracle and rotation per degree") {
  std::mt19937_64 rng(1);
  const auto a = qreflect::test::random_angles(rng, 3);
  const auto w = build_w(a, 0.25);
  REQUIRE(w.gates.size() == 7);
  CHECK(w.declared_degree == 3);
  CHECK(std::get<AncillaRotation>(w.gates[0]) ==
        AncillaRotation{a.thetas[0], a.phis[0], a.lambda_final});
  for (std::size_t k = 1; k <= 3; ++k) {
    CHECK(std::get<ControlledOracle>(w.gates[2 * k - 1]) == ControlledOracle{1, 0.25});
    CHECK(std::get<AncillaRotation>(w.gates[2 * k]) == AncillaRotation{a.thetas[k], a.phis[k], 0.0});
  }
  GQSPAngleSequence bad;
  CHECK_THROWS_AS(build_w(bad), InvalidInput);
}

TEST_CASE("adjoint of a rotation is its conjugate transpose") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ang = qreflect::test::uniform_angles(rng, 3);
    CircuitIR c;
    c.gates.emplace_back(AncillaRotation{ang[0], ang[1], ang[2]});
    const auto adj = std::get<AncillaRotation>(adjoint(c).gates[0]);
    const auto r = rotation_matrix(ang[0], ang[1], ang[2]);
    const auto rd = rotation_matrix(adj.theta, adj.phi, adj.lambda);
    CHECK(std::abs(rd[0] - std::conj(r[0])) < 1e-15);
    CHECK(std::abs(rd[1] - std::conj(r[2])) < 1e-15);
    CHECK(std::abs(rd[2] - std::conj(r[1])) < 1e-15);
    CHECK(std::abs(rd[3] - std::conj(r[3])) < 1e-15);
  }
}

TEST_CASE("adjoint reverses order and negates oracles; applying it twice is the identity") {
  std::mt19937_64 rng(3);
  const auto w = build_w(qreflect::test::random_angles(rng, 4), 0.7);
  const auto adj = adjoint(w);
  REQUIRE(adj.gates.size() == w.gates.size());
  CHECK(std::get<ControlledOracle>(adj.gates[1]) == ControlledOracle{-1, -0.7});
  CHECK(std::holds_alternative<AncillaRotation>(adj.gates.back()));
  CHECK(adjoint(adj) == w);
  const auto counts = gate_counts(adj);
  CHECK(counts.controlled_u == 0);
  CHECK(counts.controlled_u_dagger == 4);
}

TEST_CASE("compose concatenates in application order") {
  std::mt19937_64 rng(4);
  const auto a = build_w(qreflect::test::random_angles(rng, 2));
  const auto b = build_w(qreflect::test::random_angles(rng, 5));
  const auto c = compose(a, b);
  CHECK(c.gates.size() == a.gates.size() + b.gates.size());
  CHECK(c.gates.front() == a.gates.front());
  CHECK(c.gates.back() == b.gates.back());
  CHECK(c.declared_degree == 5);
}

TEST_CASE("reflection gate counts") {
  SUBCASE("delta = pi/2, epsilon = 0.1") {
    const auto plan = select_parameters({kPi / 2, 0.1});
    const auto syn = synthesize_reflection(plan);
    const auto counts = gate_counts(syn.composite);
    CHECK(counts.controlled_u == 9);
    CHECK(counts.controlled_u_dagger == 9);
    CHECK(counts.single_qubit_rotations == 20);
    CHECK(counts.total == 38);
    CHECK(gate_counts(syn.w_plus) == GateCounts{9, 0, 10, 19});
    CHECK(gate_counts(syn.w_minus) == GateCounts{9, 0, 10, 19});
  }
  SUBCASE("degree zero plan keeps only the two rotations") {
    const auto plan = select_parameters({kPi / 2, 0.1}, TFormula::kLiteral);
    REQUIRE(plan.degree == 0);
    const auto counts = gate_counts(synthesize_reflection(plan).composite);
    CHECK(counts == GateCounts{0, 0, 2, 2});
  }
}

TEST_CASE("build_reflection rejects branch degree mismatch") {
  const auto plan = select_parameters({kPi / 2, 0.1});
  std::mt19937_64 rng(5);
  const auto good = qreflect::test::random_angles(rng, 9);
  const auto short_seq = qreflect::test::random_angles(rng, 8);
  CHECK_NOTHROW(build_reflection(plan, good, good));
  CHECK_THROWS_AS(build_reflection(plan, good, short_seq), InvalidInput);
  CHECK_THROWS_AS(build_reflection(plan, short_seq, good), InvalidInput);
}

TEST_CASE("property: counts follow the degree") {
  for (double delta : {kPi / 2, kPi / 3, kPi / 5, kPi / 8}) {
    for (double eps : {1e-1, 1e-2}) {
      const auto plan = select_parameters({delta, eps});
      const auto counts = gate_counts(synthesize_reflection(plan).composite);
      CHECK(counts.controlled_u == plan.degree);
      CHECK(counts.controlled_u_dagger == plan.degree);
      CHECK(counts.single_qubit_rotations == 2 * (plan.degree + 1));
      CHECK(counts.total == plan.predicted_total_controlled() + plan.predicted_rotations());
    }
  }
}
