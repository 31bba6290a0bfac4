#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qreflect/gqsp.hpp"
#include "qreflect/poly.hpp"

namespace qreflect {

struct AncillaRotation {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;

  friend bool operator==(const AncillaRotation&, const AncillaRotation&) = default;
};

/// Applies e^{-i phase_shift} U^{exponent} to the system when the ancilla is
/// |1>.
struct ControlledOracle {
  int exponent = 1;  // +1 or -1
  double phase_shift = 0.0;

  friend bool operator==(const ControlledOracle&, const ControlledOracle&) = default;
};

using Gate = std::variant<AncillaRotation, ControlledOracle>;

/// Gates in application order over one ancilla and the system register.
struct CircuitIR {
  std::vector<Gate> gates;
  std::int64_t declared_degree = 0;

  friend bool operator==(const CircuitIR&, const CircuitIR&) = default;
};

struct GateCounts {
  std::int64_t controlled_u = 0;
  std::int64_t controlled_u_dagger = 0;
  std::int64_t single_qubit_rotations = 0;
  std::int64_t total = 0;

  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

CircuitIR build_w(const GQSPAngleSequence& angles, double phase_shift = 0.0);

/// Reversed order, rotations inverted within the R(theta, phi, lambda)
/// family, oracle exponents and phase shifts negated.
CircuitIR adjoint(const CircuitIR& c);

/// `first` is applied before `second`.
CircuitIR compose(const CircuitIR& first, const CircuitIR& second);

/// W_-^dagger W_+ : W_+ first, then the adjoint of W_-. Both branches must
/// have plan.degree controlled oracles; throws InvalidInput otherwise.
CircuitIR build_reflection(const ReflectionPlan& plan,
                           const GQSPAngleSequence& plus,
                           const GQSPAngleSequence& minus);

GateCounts gate_counts(const CircuitIR& c);

}  // namespace qreflect
