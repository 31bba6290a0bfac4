#pragma once

#include "qreflect/circuit.hpp"
#include "qreflect/completion.hpp"
#include "qreflect/gqsp.hpp"
#include "qreflect/poly.hpp"

namespace qreflect {

/// Everything needed to build and check the reflection for one plan.
struct ReflectionSynthesis {
  ReflectionPlan plan;
  ComplexPolynomial upsilon;
  CompletionResult completion;
  double completion_residual = 0.0;  // | |Upsilon|^2 + |Phi|^2 - 1 | on 16(2d+1) points
  BranchPair branches;
  CircuitIR w_plus;
  CircuitIR w_minus;
  CircuitIR composite;
};

/// Builds Upsilon_{t,n}, its complement, both angle branches and the
/// three circuits. Needs no access to the oracle's matrix. Throws
/// CompletionFailure when no complement meets completion_tol.
ReflectionSynthesis synthesize_reflection(const ReflectionPlan& plan,
                                          double completion_tol = 1e-10);

}  // namespace qreflect
