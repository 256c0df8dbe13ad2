#pragma once

// JSON documents: model specs in, solutions / limit reports / matrices out.
// Complex numbers are always [re, im] pairs; non-finite reals become null.

#include <string_view>

#include <json.hpp>

#include "qes/limits.hpp"
#include "qes/wavefun.hpp"

namespace qes::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kVersion = "0.1.0";

/// Parameter names of a family, in the order they enter V (then q).
std::vector<std::string> param_names(models::Family f);

Json complex_json(Complex z);
Json real_json(double v);

/// {"family", "params": {name: number | [re, im]}, "M", "sector"}. Unknown
/// keys, missing parameters and wrong types raise InvalidParameter; range
/// violations raise whatever ModelSpec::make raises.
models::ModelSpec spec_from_json(const Json& doc);
Json spec_to_json(const models::ModelSpec& spec);

Json tolerances_json(const Tolerances& tol);
Json solution_json(const BetheSolution& sol);
Json solve_document(const models::ModelSpec& spec, const std::vector<BetheSolution>& sols, const Tolerances& tol,
                    std::string_view seed_mode);

Json matrix_document(const models::ModelSpec& spec, const OperatorMatrix& om);

Json limit_report_json(const LimitCase& c, const LimitReport& rep);
Json reduced_bae_json(const ReducedBaeReport& rep);

}  // namespace qes::io
