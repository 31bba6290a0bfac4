#include "qreflect/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace qreflect {

CircuitIR build_w(const GQSPAngleSequence& angles, double phase_shift) {
  if (angles.thetas.size() != angles.phis.size() || angles.thetas.empty()) {
    throw InvalidInput("angle sequence needs matching non-empty theta/phi lists");
  }
  CircuitIR c;
  c.declared_degree = static_cast<std::int64_t>(angles.degree());
  c.gates.reserve(2 * angles.degree() + 1);
  c.gates.emplace_back(AncillaRotation{angles.thetas[0], angles.phis[0], angles.lambda_final});
  for (std::size_t k = 1; k <= angles.degree(); ++k) {
    c.gates.emplace_back(ControlledOracle{+1, phase_shift});
    c.gates.emplace_back(AncillaRotation{angles.thetas[k], angles.phis[k], 0.0});
  }
  return c;
}

CircuitIR adjoint(const CircuitIR& c) {
  CircuitIR out;
  out.declared_degree = c.declared_degree;
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    std::visit(
        [&](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, AncillaRotation>) {
            // R(theta, phi, lambda)^dagger = R(theta, -lambda, -phi)
            out.gates.emplace_back(AncillaRotation{g.theta, -g.lambda, -g.phi});
          } else {
            out.gates.emplace_back(ControlledOracle{-g.exponent, -g.phase_shift});
          }
        },
        *it);
  }
  return out;
}

CircuitIR compose(const CircuitIR& first, const CircuitIR& second) {
  CircuitIR out;
  out.declared_degree = std::max(first.declared_degree, second.declared_degree);
  out.gates = first.gates;
  out.gates.insert(out.gates.end(), second.gates.begin(), second.gates.end());
  return out;
}

CircuitIR build_reflection(const ReflectionPlan& plan,
                           const GQSPAngleSequence& plus,
                           const GQSPAngleSequence& minus) {
  const auto expected = static_cast<std::size_t>(plan.degree);
  if (plus.degree() != expected || minus.degree() != expected) {
    std::ostringstream os;
    os << "branch degrees (" << plus.degree() << ", " << minus.degree()
       << ") do not match plan degree " << plan.degree;
    throw InvalidInput(os.str());
  }
  const double shift = plan.gap.theta;
  return compose(build_w(plus, shift), adjoint(build_w(minus, shift)));
}

GateCounts gate_counts(const CircuitIR& c) {
  GateCounts counts;
  for (const auto& gate : c.gates) {
    if (std::holds_alternative<AncillaRotation>(gate)) {
      ++counts.single_qubit_rotations;
    } else if (std::get<ControlledOracle>(gate).exponent > 0) {
      ++counts.controlled_u;
    } else {
      ++counts.controlled_u_dagger;
    }
  }
  counts.total = counts.controlled_u + counts.controlled_u_dagger +
                 counts.single_qubit_rotations;
  return counts;
}

}  // namespace qreflect
