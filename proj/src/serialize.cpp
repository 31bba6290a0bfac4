#include "qreflect/serialize.hpp"

#include <sstream>

namespace qreflect {

namespace {

// Avoids "-0.0" in emitted files.
double clean(double x) { return x + 0.0; }

Json real_list(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(clean(x));
  return out;
}

Json poly_to_json(const ComplexPolynomial& p) {
  Json re = Json::array(), im = Json::array();
  for (const auto& c : p.coeffs()) {
    re.push_back(clean(c.real()));
    im.push_back(clean(c.imag()));
  }
  return Json{{"re", re}, {"im", im}};
}

Json branch_to_json(const AngleSynthesis& a) {
  Json steps = Json::array();
  for (auto k : a.degenerate_steps) steps.push_back(k);
  return Json{{"thetas", real_list(a.angles.thetas)},
              {"phis", real_list(a.angles.phis)},
              {"lambda", clean(a.angles.lambda_final)},
              {"degenerate_steps", steps}};
}

Json comparison_to_json(const TFormulaComparison& c) {
  return Json{{"t", c.t},
              {"n", c.n},
              {"degree", c.degree},
              {"max_modulus_outside_gap", c.max_modulus_outside_gap},
              {"within_epsilon", c.within_epsilon}};
}

}  // namespace

const char* completion_method_name(CompletionMethod m) {
  return m == CompletionMethod::kCepstrum ? "cepstrum" : "root_factorization";
}

Json counts_to_json(const GateCounts& c) {
  return Json{{"controlled_u", c.controlled_u},
              {"controlled_u_dagger", c.controlled_u_dagger},
              {"rotations", c.single_qubit_rotations},
              {"total", c.total}};
}

Json plan_to_json(const ReflectionPlan& plan) {
  return Json{
      {"delta", clean(plan.gap.delta)},
      {"epsilon", clean(plan.gap.epsilon)},
      {"theta", clean(plan.gap.theta)},
      {"t", plan.t},
      {"n", plan.n},
      {"degree", plan.degree},
      {"counts",
       Json{{"controlled_u_per_branch", plan.predicted_controlled_u_per_branch()},
            {"controlled_u", plan.predicted_controlled_u_per_branch()},
            {"controlled_u_dagger", plan.predicted_controlled_u_per_branch()},
            {"rotations", plan.predicted_rotations()},
            {"total", plan.predicted_total_controlled() + plan.predicted_rotations()}}},
      {"t_formula", plan.formula == TFormula::kCorrected ? "corrected" : "paper"}};
}

Json circuit_to_json(const CircuitIR& c) {
  Json gates = Json::array();
  for (const auto& gate : c.gates) {
    if (const auto* rot = std::get_if<AncillaRotation>(&gate)) {
      gates.push_back(Json{{"g", "rot"},
                           {"theta", clean(rot->theta)},
                           {"phi", clean(rot->phi)},
                           {"lambda", clean(rot->lambda)}});
    } else {
      const auto& o = std::get<ControlledOracle>(gate);
      gates.push_back(Json{{"g", o.exponent > 0 ? "cu" : "cu_dag"},
                           {"phase", clean(o.phase_shift)}});
    }
  }
  return Json{{"degree", c.declared_degree}, {"gates", gates}, {"ancilla_count", 1}};
}

CircuitIR circuit_from_json(const Json& j) {
  try {
    if (j.value("ancilla_count", 1) != 1) {
      throw InvalidInput("circuits use exactly one ancilla");
    }
    CircuitIR c;
    c.declared_degree = j.at("degree").get<std::int64_t>();
    for (const auto& g : j.at("gates")) {
      const auto kind = g.at("g").get<std::string>();
      if (kind == "rot") {
        c.gates.emplace_back(AncillaRotation{g.at("theta").get<double>(),
                                             g.at("phi").get<double>(),
                                             g.at("lambda").get<double>()});
      } else if (kind == "cu" || kind == "cu_dag") {
        c.gates.emplace_back(
            ControlledOracle{kind == "cu" ? 1 : -1, g.at("phase").get<double>()});
      } else {
        throw InvalidInput("unknown gate kind '" + kind + "'");
      }
    }
    return c;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed circuit JSON: ") + e.what());
  }
}

Json angles_to_json(const ReflectionSynthesis& s) {
  return Json{
      {"degree", s.plan.degree},
      {"convention",
       Json{{"rotation",
             "R(theta,phi,lambda) = [[exp(i(lambda+phi)) cos(theta), exp(i phi) "
             "sin(theta)], [exp(i lambda) sin(theta), -cos(theta)]]"},
            {"order",
             "R(thetas[0], phis[0], lambda); then for k = 1..degree: "
             "controlled-U on ancilla |1>, R(thetas[k], phis[k], 0)"},
            {"ancilla", "leading tensor factor; input and output ancilla state |0>"}}},
      {"phase_shift", clean(s.plan.gap.theta)},
      {"plus", branch_to_json(s.branches.plus)},
      {"minus", branch_to_json(s.branches.minus)},
      {"upsilon", poly_to_json(s.upsilon)},
      {"phi", poly_to_json(s.completion.phi)},
      {"completion",
       Json{{"method", completion_method_name(s.completion.method)},
            {"residual", s.completion_residual}}}};
}

Json report_to_json(const VerificationReport& r) {
  Json j{{"measured_error", r.measured_error},
         {"bound", r.bound},
         {"bound_satisfied", r.bound_satisfied},
         {"dim", r.dim},
         {"target_multiplicity", r.target_multiplicity},
         {"projector_error", r.projector_error},
         {"counts", counts_to_json(r.counts)},
         {"predicted_counts", counts_to_json(r.predicted_counts)},
         {"completion_residual", r.completion_residual},
         {"completion_method", completion_method_name(r.completion_method)},
         {"unitarity_residual", r.unitarity_residual},
         {"branch_unitarity_residual", r.branch_unitarity_residual},
         {"oracle_block_residual", r.oracle_block_residual},
         {"phi_block_residual", r.phi_block_residual},
         {"params", plan_to_json(r.params)}};
  if (r.corrected || r.literal) {
    Json cmp = Json::object();
    if (r.corrected) cmp["corrected"] = comparison_to_json(*r.corrected);
    if (r.literal) cmp["paper"] = comparison_to_json(*r.literal);
    j["t_formula_comparison"] = cmp;
  }
  return j;
}

Json matrix_to_json(const DenseOperator& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rrow = Json::array(), irow = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rrow.push_back(clean(m(i, k).real()));
      irow.push_back(clean(m(i, k).imag()));
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return Json{{"dim", m.rows()}, {"re", re}, {"im", im}};
}

DenseOperator matrix_from_json(const Json& j) {
  try {
    const auto dim = j.at("dim").get<Eigen::Index>();
    if (dim < 1) throw InvalidInput("matrix dim must be positive");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != static_cast<std::size_t>(dim) ||
        im.size() != static_cast<std::size_t>(dim)) {
      throw InvalidInput("matrix needs dim rows in both re and im");
    }
    DenseOperator m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto& rrow = re.at(static_cast<std::size_t>(i));
      const auto& irow = im.at(static_cast<std::size_t>(i));
      if (rrow.size() != static_cast<std::size_t>(dim) ||
          irow.size() != static_cast<std::size_t>(dim)) {
        std::ostringstream os;
        os << "matrix row " << i << " does not have " << dim << " entries";
        throw InvalidInput(os.str());
      }
      for (Eigen::Index k = 0; k < dim; ++k) {
        m(i, k) = Complex(rrow.at(static_cast<std::size_t>(k)).get<double>(),
                          irow.at(static_cast<std::size_t>(k)).get<double>());
      }
    }
    return m;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed matrix JSON: ") + e.what());
  }
}

std::string to_text(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qreflect
