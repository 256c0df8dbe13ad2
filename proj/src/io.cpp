#include <cmath>
#include <set>

#include "qes/io.hpp"

namespace qes::io {

using models::Family;
using models::ModelSpec;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidParameter, what); }

Complex complex_from(const Json& v, const std::string& name) {
    if (v.is_number()) return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    bad("parameter " + name + " must be a number or an [re, im] pair");
}

double real_from(const Json& v, const std::string& name) {
    if (!v.is_number()) bad("parameter " + name + " must be a real number");
    return v.get<double>();
}

}  // namespace

std::vector<std::string> param_names(Family f) {
    switch (f) {
        case Family::MpCrossed: return {"a1", "a2", "beta"};
        case Family::SexticI: return {"a", "b", "c"};
        case Family::SexticII: return {"a", "b", "c", "d"};
        case Family::CentrifugalI: return {"b", "c", "d", "e", "f"};
        case Family::CentrifugalII: return {"a", "b", "c", "d", "e", "f"};
        case Family::TrigQ: return {"a", "b", "c", "d", "e", "q"};
    }
    return {};
}

Json complex_json(Complex z) { return Json::array({real_json(z.real()), real_json(z.imag())}); }

Json real_json(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v == 0.0 ? 0.0 : v;  // no "-0.0"
}

ModelSpec spec_from_json(const Json& doc) {
    if (!doc.is_object()) bad("model spec must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "family" && key != "params" && key != "M" && key != "sector") bad("unknown key '" + key + "'");
    }
    if (!doc.contains("family") || !doc["family"].is_string()) bad("model spec needs a string 'family'");
    const auto family = models::parse_family(doc["family"].get<std::string>());
    if (!family) bad("unknown family '" + doc["family"].get<std::string>() + "'");
    if (!doc.contains("M") || !doc["M"].is_number_integer()) bad("model spec needs an integer 'M'");
    const int M = doc["M"].get<int>();
    std::optional<models::Sector> sector;
    if (doc.contains("sector")) {
        if (!doc["sector"].is_string()) bad("'sector' must be a string");
        sector = models::parse_sector(doc["sector"].get<std::string>());
        if (!sector) bad("unknown sector '" + doc["sector"].get<std::string>() + "'");
    }
    if (!doc.contains("params") || !doc["params"].is_object()) bad("model spec needs a 'params' object");
    const Json& p = doc["params"];
    const auto names = param_names(*family);
    const std::set<std::string> allowed(names.begin(), names.end());
    for (const auto& [key, _] : p.items()) {
        if (!allowed.count(key)) bad("unknown parameter '" + key + "' for " + std::string(models::family_name(*family)));
    }
    for (const auto& n : names)
        if (!p.contains(n)) bad("missing parameter '" + n + "'");
    auto r = [&](const char* n) { return real_from(p[n], n); };

    models::ModelParams params;
    switch (*family) {
        case Family::MpCrossed:
            params = models::MpCrossedParams{complex_from(p["a1"], "a1"), complex_from(p["a2"], "a2"), r("beta")};
            break;
        case Family::SexticI: params = models::SexticIParams{r("a"), r("b"), r("c")}; break;
        case Family::SexticII: params = models::SexticIIParams{r("a"), r("b"), r("c"), r("d")}; break;
        case Family::CentrifugalI: params = models::CentrifugalIParams{r("b"), r("c"), r("d"), r("e"), r("f")}; break;
        case Family::CentrifugalII:
            params = models::CentrifugalIIParams{r("a"), r("b"), r("c"), r("d"), r("e"), r("f")};
            break;
        case Family::TrigQ: params = models::TrigQParams{r("a"), r("b"), r("c"), r("d"), r("e"), r("q")}; break;
    }
    return ModelSpec::make(params, M, sector);
}

Json spec_to_json(const ModelSpec& spec) {
    Json params = Json::object();
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, models::MpCrossedParams>) {
                params["a1"] = complex_json(p.a1);
                params["a2"] = complex_json(p.a2);
                params["beta"] = p.beta;
            } else {
                const auto names = param_names(spec.family());
                const auto values = models::numerator_parameters(spec);
                for (std::size_t k = 0; k < values.size(); ++k) params[names[k]] = values[k].real();
                if constexpr (std::is_same_v<P, models::TrigQParams>) params["q"] = p.q;
            }
        },
        spec.params());
    Json doc;
    doc["family"] = std::string(models::family_name(spec.family()));
    doc["params"] = std::move(params);
    doc["M"] = spec.M();
    doc["sector"] = std::string(models::sector_name(spec.sector()));
    return doc;
}

Json tolerances_json(const Tolerances& tol) {
    Json t;
    t["residual"] = tol.residual;
    t["eigenvalue"] = tol.eigenvalue;
    t["polish"] = tol.polish;
    t["distinct"] = tol.distinct;
    return t;
}

Json solution_json(const BetheSolution& sol) {
    Json s;
    s["index"] = sol.index;
    s["eigenvalue"] = sol.E_formula ? complex_json(*sol.E_formula) : Json(nullptr);
    s["eigenvalue_oracle"] = complex_json(sol.E_oracle);
    s["discrepancy"] = sol.E_formula ? real_json(sol.discrepancy) : Json(nullptr);
    Json rx = Json::array();
    Json re = Json::array();
    for (const Complex& x : sol.roots.roots_x) rx.push_back(complex_json(x));
    for (const Complex& e : sol.roots.roots_eta) re.push_back(complex_json(e));
    s["roots_x"] = std::move(rx);
    s["roots_eta"] = std::move(re);
    s["residual_max"] = real_json(sol.residual_max);
    Json f;
    f["polished"] = sol.flags.polished;
    f["degenerate"] = sol.flags.degenerate;
    f["jacobian_singular"] = sol.flags.jacobian_singular;
    f["no_convergence"] = sol.flags.no_convergence;
    f["eigenvalue_degenerate"] = sol.flags.eigenvalue_degenerate;
    f["outside_ansatz"] = sol.flags.outside_ansatz;
    s["flags"] = std::move(f);
    return s;
}

Json solve_document(const ModelSpec& spec, const std::vector<BetheSolution>& sols, const Tolerances& tol,
                    std::string_view seed_mode) {
    Json doc;
    doc["spec"] = spec_to_json(spec);
    Json arr = Json::array();
    for (const auto& s : sols) arr.push_back(solution_json(s));
    doc["solutions"] = std::move(arr);
    doc["meta"]["tolerances"] = tolerances_json(tol);
    doc["meta"]["seed"] = std::string(seed_mode);
    doc["meta"]["version"] = std::string(kVersion);
    return doc;
}

Json matrix_document(const ModelSpec& spec, const OperatorMatrix& om) {
    Json doc;
    doc["spec"] = spec_to_json(spec);
    doc["dim"] = om.dim();
    Json rows = Json::array();
    for (int i = 0; i < om.dim(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < om.dim(); ++j) row.push_back(complex_json(om.matrix(i, j)));
        rows.push_back(std::move(row));
    }
    doc["entries"] = std::move(rows);
    doc["max_overflow"] = om.max_overflow;
    doc["meta"]["version"] = std::string(kVersion);
    return doc;
}

Json limit_report_json(const LimitCase& c, const LimitReport& rep) {
    Json doc;
    doc["case"] = std::string(limit_name(c.tag));
    doc["exact"] = is_exact(c.tag);
    doc["base_spec"] = spec_to_json(c.base_spec);
    if (c.tag == LimitTag::QUniversal) doc["restriction"] = c.restriction;
    doc["large"] = rep.large;
    Json entries = Json::array();
    for (const auto& e : rep.entries) {
        Json j;
        j["m"] = e.m;
        j["computed"] = complex_json(e.computed);
        j["expected"] = complex_json(e.expected);
        j["gap"] = real_json(e.gap);
        entries.push_back(std::move(j));
    }
    doc["entries"] = std::move(entries);
    doc["max_gap"] = real_json(rep.max_gap);
    doc["budget"] = rep.budget;
    doc["observed_constant"] = real_json(rep.observed_constant);
    doc["passed"] = rep.passed;
    return doc;
}

Json reduced_bae_json(const ReducedBaeReport& rep) {
    Json doc;
    doc["offset"] = rep.offset;
    Json entries = Json::array();
    for (const auto& e : rep.entries) {
        Json j;
        j["m"] = e.m;
        j["residual_max"] = real_json(e.residual_max);
        entries.push_back(std::move(j));
    }
    doc["entries"] = std::move(entries);
    doc["max_residual"] = real_json(rep.max_residual);
    doc["tolerance"] = kReducedBaeTol;
    doc["passed"] = rep.passed;
    return doc;
}

}  // namespace qes::io
