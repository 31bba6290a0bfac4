#pragma once

#include <string>

#include <json.hpp>

#include "qreflect/oracle.hpp"
#include "qreflect/pipeline.hpp"
#include "qreflect/sim.hpp"

namespace qreflect {

using Json = nlohmann::ordered_json;

/// {delta, epsilon, theta, t, n, degree, counts{...}, t_formula}
Json plan_to_json(const ReflectionPlan& plan);

/// {"degree": d, "gates": [{"g":"rot",...} | {"g":"cu"|"cu_dag","phase":..}],
///  "ancilla_count": 1}
Json circuit_to_json(const CircuitIR& c);
CircuitIR circuit_from_json(const Json& j);

/// Both angle branches plus the polynomials they encode.
Json angles_to_json(const ReflectionSynthesis& s);

Json report_to_json(const VerificationReport& r);

Json counts_to_json(const GateCounts& c);

/// {"dim": N, "re": [[...]], "im": [[...]]}, row-major.
Json matrix_to_json(const DenseOperator& m);
DenseOperator matrix_from_json(const Json& j);

const char* completion_method_name(CompletionMethod m);

/// dump() with a trailing newline.
std::string to_text(const Json& j);

}  // namespace qreflect
