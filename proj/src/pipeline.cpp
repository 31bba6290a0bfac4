#include "qreflect/pipeline.hpp"

#include <sstream>

namespace qreflect {

ReflectionSynthesis synthesize_reflection(const ReflectionPlan& plan,
                                          double completion_tol) {
  ReflectionSynthesis out;
  out.plan = plan;
  out.upsilon = build_upsilon(plan.t, plan.n);
  out.completion = complete(out.upsilon, completion_tol);

  const auto degree = static_cast<std::size_t>(plan.degree);
  out.completion_residual = completion_residual(
      out.upsilon, out.completion.phi, completion_grid_size(degree));
  if (out.completion_residual > completion_tol) {
    std::ostringstream os;
    os << "completion residual " << out.completion_residual
       << " exceeds tolerance " << completion_tol;
    throw CompletionFailure(os.str(), out.completion_residual);
  }

  out.branches = branch_pair(out.upsilon, out.completion.phi, degree);
  out.w_plus = build_w(out.branches.plus.angles, plan.gap.theta);
  out.w_minus = build_w(out.branches.minus.angles, plan.gap.theta);
  out.composite = build_reflection(plan, out.branches.plus.angles,
                                   out.branches.minus.angles);
  return out;
}

}  // namespace qreflect
