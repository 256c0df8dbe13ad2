#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "qes/cli.hpp"
#include "qes/io.hpp"

namespace qes::cli {

using io::Json;
using models::Family;
using models::ModelSpec;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kAllParams = {"a1", "a2", "beta", "a", "b", "c", "d", "e", "f", "q"};

struct Options {
    std::string family;
    int M = -1;
    std::string sector;
    std::map<std::string, std::string> params;
    std::string spec_file;
    std::string output;
    std::string format = "json";
    std::string seed = "oracle";
    Tolerances tol;
    std::string limit_case;
    double large = 1e4;
    int restriction = 1;
    int points = 20;
    int solution = 0;
};

std::string fmt(double v) {
    if (!std::isfinite(v)) return "";
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_real(const std::string& name, const std::string& text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw UsageError("--" + name + ": cannot parse '" + text + "' as a number");
    }
    return v;
}

// "re" or "re,im"
Complex parse_complex(const std::string& name, const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return parse_real(name, text);
    return {parse_real(name, text.substr(0, comma)), parse_real(name, text.substr(comma + 1))};
}

void add_model_options(CLI::App* sub, Options& o) {
    sub->add_option("--family", o.family, "mp-crossed | sextic-i | sextic-ii | centrifugal-i | centrifugal-ii | trig-q");
    sub->add_option("--M", o.M, "degree of the invariant subspace");
    sub->add_option("--sector", o.sector, "full | even | odd (sextic families: even/odd)");
    for (const auto& n : kAllParams) {
        sub->add_option_function<std::string>(
            "--" + n, [&o, n](const std::string& v) { o.params[n] = v; }, "model parameter " + n);
    }
    sub->add_option("--spec", o.spec_file, "JSON model spec file");
}

void add_tolerance_options(CLI::App* sub, Options& o) {
    sub->add_option("--tol-residual", o.tol.residual, "max BAE residual of an accepted solution");
    sub->add_option("--tol-eigenvalue", o.tol.eigenvalue, "max relative eigenvalue discrepancy");
    sub->add_option("--tol-polish", o.tol.polish, "Newton polish target");
    sub->add_option("--tol-distinct", o.tol.distinct, "minimal root separation");
}

void add_output_options(CLI::App* sub, Options& o, const std::vector<std::string>& formats) {
    sub->add_option("--output", o.output, "output file (default stdout)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
}

// Parameters a limit case overrides may be omitted; they get a placeholder 1.
models::ModelParams params_from_flags(Family family, const Options& o, const std::set<std::string>& overridden) {
    const auto names = io::param_names(family);
    for (const auto& [key, _] : o.params) {
        if (std::find(names.begin(), names.end(), key) == names.end()) {
            throw UsageError("--" + key + " is not a parameter of " + std::string(models::family_name(family)));
        }
    }
    std::vector<std::string> missing;
    auto real = [&](const std::string& n, std::optional<double> fallback = std::nullopt) -> double {
        const auto it = o.params.find(n);
        if (it != o.params.end()) return parse_real(n, it->second);
        if (fallback) return *fallback;
        if (overridden.count(n)) return 1.0;
        missing.push_back(n);
        return 1.0;
    };
    auto cplx = [&](const std::string& n) -> Complex {
        const auto it = o.params.find(n);
        if (it != o.params.end()) return parse_complex(n, it->second);
        if (!overridden.count(n)) missing.push_back(n);
        return 1.0;
    };

    models::ModelParams p;
    switch (family) {
        case Family::MpCrossed: {
            const Complex a1 = cplx("a1");
            const Complex a2 = cplx("a2");
            p = models::MpCrossedParams{a1, a2, real("beta", 0.0)};
            break;
        }
        case Family::SexticI: p = models::SexticIParams{real("a"), real("b"), real("c")}; break;
        case Family::SexticII: p = models::SexticIIParams{real("a"), real("b"), real("c"), real("d")}; break;
        case Family::CentrifugalI:
            p = models::CentrifugalIParams{real("b"), real("c"), real("d"), real("e"), real("f")};
            break;
        case Family::CentrifugalII:
            p = models::CentrifugalIIParams{real("a"), real("b"), real("c"), real("d"), real("e"), real("f")};
            break;
        case Family::TrigQ:
            p = models::TrigQParams{real("a", 0.0), real("b", 0.0), real("c", 0.0), real("d", 0.0), real("e", 0.0),
                                    real("q")};
            break;
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& n : missing) list += (list.empty() ? "--" : ", --") + n;
        throw UsageError("missing parameter(s) " + list);
    }
    return p;
}

ModelSpec spec_from_flags(const Options& o, std::optional<Family> implied, const std::set<std::string>& overridden) {
    if (!o.spec_file.empty()) {
        if (!o.family.empty() || o.M >= 0 || !o.sector.empty() || !o.params.empty()) {
            throw UsageError("--spec cannot be combined with inline model flags");
        }
        std::ifstream in(o.spec_file);
        if (!in) throw UsageError("cannot open spec file '" + o.spec_file + "'");
        Json doc;
        try {
            doc = Json::parse(in);
        } catch (const Json::parse_error& e) {
            throw UsageError("spec file '" + o.spec_file + "' is not valid JSON: " + e.what());
        }
        return io::spec_from_json(doc);
    }
    std::optional<Family> family = implied;
    if (!o.family.empty()) {
        family = models::parse_family(o.family);
        if (!family) throw UsageError("unknown family '" + o.family + "'");
        if (implied && *family != *implied) throw UsageError("--family does not match the limit case");
    }
    if (!family) throw UsageError("--family or --spec is required");
    if (o.M < 0) throw UsageError("--M is required and must be non-negative");
    std::optional<models::Sector> sector;
    if (!o.sector.empty()) {
        sector = models::parse_sector(o.sector);
        if (!sector) throw UsageError("unknown sector '" + o.sector + "'");
    }

    // sector/parity is checked before the parameters so that the message
    // names the actual problem
    if (sector) {
        models::ModelParams placeholder;
        switch (*family) {
            case Family::MpCrossed: placeholder = models::MpCrossedParams{1.0, 1.0, 0.0}; break;
            case Family::SexticI: placeholder = models::SexticIParams{1, 1, 1}; break;
            case Family::SexticII: placeholder = models::SexticIIParams{1, 1, 1, 1}; break;
            case Family::CentrifugalI: placeholder = models::CentrifugalIParams{1, 1, 1, 1, 1}; break;
            case Family::CentrifugalII: placeholder = models::CentrifugalIIParams{1, 1, 1, 1, 1, 1}; break;
            case Family::TrigQ: placeholder = models::TrigQParams{0, 0, 0, 0, 0, 0.5}; break;
        }
        (void)ModelSpec::unchecked(placeholder, o.M, *sector);
    }
    return ModelSpec::make(params_from_flags(*family, o, overridden), o.M, sector);
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + o.output + "'");
    f << text;
    if (!f) throw UsageError("write to '" + o.output + "' failed");
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json meta(const Options& o) {
    Json m;
    m["tolerances"] = io::tolerances_json(o.tol);
    m["version"] = std::string(io::kVersion);
    return m;
}

std::vector<BetheSolution> run_solver(const ModelSpec& spec, const Options& o) {
    if (o.seed == "homotopy") return {solve_homotopy(spec, o.tol)};
    return solve(spec, o.tol);
}

int cmd_solve(const Options& o, std::ostream& out) {
    const ModelSpec spec = spec_from_flags(o, std::nullopt, {});
    const auto sols = run_solver(spec, o);
    const bool ok = std::all_of(sols.begin(), sols.end(), [&](const auto& s) { return s.accepted(o.tol); });
    if (o.format == "csv") {
        std::ostringstream os;
        os << "index,eigenvalue_re,eigenvalue_im,eigenvalue_oracle_re,eigenvalue_oracle_im,discrepancy,residual_max,"
              "accepted\n";
        for (const auto& s : sols) {
            os << s.index << ',' << (s.E_formula ? fmt(s.E_formula->real()) : "") << ','
               << (s.E_formula ? fmt(s.E_formula->imag()) : "") << ',' << fmt(s.E_oracle.real()) << ','
               << fmt(s.E_oracle.imag()) << ',' << (s.E_formula ? fmt(s.discrepancy) : "") << ','
               << fmt(s.residual_max) << ',' << (s.accepted(o.tol) ? "true" : "false") << '\n';
        }
        emit(o, os.str(), out);
    } else {
        emit(o, dump(io::solve_document(spec, sols, o.tol, o.seed)), out);
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const ModelSpec spec = spec_from_flags(o, std::nullopt, {});
    const auto sols = run_solver(spec, o);
    const GridSpec grid = default_grid(spec, o.points);
    validate_grid(spec, grid);
    const models::Canonical m = models::canonicalize(spec);

    double zero_mode_max = 0.0;
    bool phi0_positive = true;
    for (const Complex& x : grid.points) {
        zero_mode_max = std::max(zero_mode_max, zero_mode_residual(m, x));
        const Complex p = phi0_squared(m, x);
        if (!(p.real() > 0.0) || std::abs(p.imag()) > 1e-10 * std::abs(p)) phi0_positive = false;
    }

    bool bae_ok = true, eig_ok = true, schr_ok = true;
    Json arr = Json::array();
    for (const auto& s : sols) {
        double schr = 0.0;
        for (const Complex& x : grid.points) schr = std::max(schr, schrodinger_residual(s, x));
        Json j;
        j["index"] = s.index;
        j["eigenvalue"] = s.E_formula ? io::complex_json(*s.E_formula) : Json(nullptr);
        j["eigenvalue_oracle"] = io::complex_json(s.E_oracle);
        j["discrepancy"] = s.E_formula ? io::real_json(s.discrepancy) : Json(nullptr);
        j["residual_max"] = io::real_json(s.residual_max);
        j["schrodinger_max"] = io::real_json(schr);
        j["accepted"] = s.accepted(o.tol);
        arr.push_back(std::move(j));
        bae_ok = bae_ok && !s.flags.degenerate && s.residual_max <= o.tol.residual;
        eig_ok = eig_ok && (!s.E_formula || s.discrepancy <= o.tol.eigenvalue);
        schr_ok = schr_ok && schr <= kSchrodingerTol;
    }
    const bool zm_ok = zero_mode_max <= kZeroModeTol;
    const bool passed = bae_ok && eig_ok && schr_ok && zm_ok && phi0_positive;

    Json doc;
    doc["spec"] = io::spec_to_json(spec);
    doc["solutions"] = std::move(arr);
    doc["zero_mode_max"] = io::real_json(zero_mode_max);
    doc["checks"]["bae_residual"] = bae_ok;
    doc["checks"]["eigenvalue"] = eig_ok;
    doc["checks"]["schrodinger"] = schr_ok;
    doc["checks"]["zero_mode"] = zm_ok;
    doc["checks"]["phi0_positive"] = phi0_positive;
    doc["passed"] = passed;
    doc["meta"] = meta(o);
    doc["meta"]["seed"] = o.seed;
    doc["meta"]["grid_points"] = o.points;
    emit(o, dump(doc), out);
    return passed ? kExitOk : kExitCheckFailed;
}

std::set<std::string> overridden_by(LimitTag tag) {
    switch (tag) {
        case LimitTag::ChFromMp: return {"beta"};
        case LimitTag::MpFromMp: return {"a2"};
        case LimitTag::ChFromSextic: return {"a"};
        case LimitTag::MpFromSextic: return {"a", "b"};
        case LimitTag::Wilson: return {"f"};
        case LimitTag::Cdh: return {"e", "f"};
        case LimitTag::Aw:
        case LimitTag::QUniversal: return {"e"};
    }
    return {};
}

Family family_of(LimitTag tag) {
    switch (tag) {
        case LimitTag::ChFromMp:
        case LimitTag::MpFromMp: return Family::MpCrossed;
        case LimitTag::ChFromSextic:
        case LimitTag::MpFromSextic: return Family::SexticI;
        case LimitTag::Wilson:
        case LimitTag::Cdh: return Family::CentrifugalI;
        case LimitTag::Aw:
        case LimitTag::QUniversal: return Family::TrigQ;
    }
    return Family::MpCrossed;
}

int cmd_limits(const Options& o, std::ostream& out) {
    const auto tag = parse_limit(o.limit_case);
    if (!tag) throw UsageError("unknown limit case '" + o.limit_case + "'");
    const ModelSpec base = spec_from_flags(o, family_of(*tag), overridden_by(*tag));
    const LimitCase c = make_limit_case(*tag, base, o.restriction);
    const LimitReport rep = evaluate_limit(c, o.large);

    Json doc = io::limit_report_json(c, rep);
    bool passed = rep.passed;
    if (base.family() == Family::SexticI) {
        doc["reduced_bae"] = nullptr;
    } else {
        const ReducedBaeReport red = reduced_bae_check(c);
        doc["reduced_bae"] = io::reduced_bae_json(red);
        passed = passed && red.passed;
    }
    doc["all_passed"] = passed;
    doc["meta"]["version"] = std::string(io::kVersion);
    emit(o, dump(doc), out);
    return passed ? kExitOk : kExitCheckFailed;
}

int cmd_grid(const Options& o, std::ostream& out) {
    const ModelSpec spec = spec_from_flags(o, std::nullopt, {});
    const auto sols = run_solver(spec, o);
    if (o.solution < 0 || o.solution >= static_cast<int>(sols.size())) {
        throw UsageError("--solution must lie in [0, " + std::to_string(sols.size()) + ")");
    }
    const BetheSolution& sol = sols[o.solution];
    const auto rows = evaluate_grid(sol, default_grid(spec, o.points));
    const bool ok = std::all_of(rows.begin(), rows.end(), [](const GridRow& r) { return r.residual <= kSchrodingerTol; });

    if (o.format == "json") {
        Json doc;
        doc["spec"] = io::spec_to_json(spec);
        doc["solution"] = sol.index;
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json j;
            j["x"] = io::complex_json(r.x);
            j["phi0sq"] = io::complex_json(r.phi0sq);
            j["psi"] = io::complex_json(r.psi);
            j["residual"] = io::real_json(r.residual);
            arr.push_back(std::move(j));
        }
        doc["rows"] = std::move(arr);
        doc["meta"]["version"] = std::string(io::kVersion);
        emit(o, dump(doc), out);
    } else {
        std::ostringstream os;
        os << "x_re,x_im,phi0sq_re,phi0sq_im,psi_re,psi_im,residual\n";
        for (const auto& r : rows) {
            os << fmt(r.x.real()) << ',' << fmt(r.x.imag()) << ',' << fmt(r.phi0sq.real()) << ','
               << fmt(r.phi0sq.imag()) << ',' << fmt(r.psi.real()) << ',' << fmt(r.psi.imag()) << ','
               << fmt(r.residual) << '\n';
        }
        emit(o, os.str(), out);
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_dump_matrix(const Options& o, std::ostream& out) {
    const ModelSpec spec = spec_from_flags(o, std::nullopt, {});
    emit(o, dump(io::matrix_document(spec, build_matrix(spec))), out);
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Bethe ansatz solver and verifier for quasi-exactly solvable difference equations", "qes"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", std::string(io::kVersion));

    auto* solve_cmd = app.add_subcommand("solve", "oracle-seeded (or homotopy) Bethe roots and eigenvalues");
    auto* verify_cmd = app.add_subcommand("verify", "solve, then check BAE, eigenvalues and the wavefunction layer");
    auto* limits_cmd = app.add_subcommand("limits", "compare a limit or restriction with its closed form");
    auto* grid_cmd = app.add_subcommand("grid", "phi0^2, Psi and the Schroedinger residual on a grid");
    auto* dump_cmd = app.add_subcommand("dump-matrix", "matrix of the operator on the invariant subspace");

    for (auto* sub : {solve_cmd, verify_cmd, limits_cmd, grid_cmd, dump_cmd}) add_model_options(sub, o);
    for (auto* sub : {solve_cmd, verify_cmd, grid_cmd}) {
        add_tolerance_options(sub, o);
        sub->add_option("--seed", o.seed, "root seeding")->check(CLI::IsMember({"oracle", "homotopy"}));
    }
    add_output_options(solve_cmd, o, {"json", "csv"});
    add_output_options(verify_cmd, o, {"json"});
    add_output_options(limits_cmd, o, {"json"});
    add_output_options(dump_cmd, o, {"json"});
    grid_cmd->add_option("--output", o.output, "output file (default stdout)");
    grid_cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    grid_cmd->add_option("--points", o.points, "number of grid points")->check(CLI::PositiveNumber);
    grid_cmd->add_option("--solution", o.solution, "solution index (canonical order)");
    verify_cmd->add_option("--points", o.points, "grid points for the pointwise checks")->check(CLI::PositiveNumber);
    limits_cmd->add_option("--case", o.limit_case, "ch-from-mp | mp-from-mp | ch-from-sextic | mp-from-sextic | "
                                                   "wilson | cdh | aw | q-universal")
        ->required();
    limits_cmd->add_option("--large", o.large, "size of the parameter sent to infinity (asymptotic cases)");
    limits_cmd->add_option("--restriction", o.restriction, "q-universal: number of trailing parameters zeroed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (grid_cmd->parsed() && grid_cmd->count("--format") == 0) o.format = "csv";

    try {
        if (solve_cmd->parsed()) return cmd_solve(o, out);
        if (verify_cmd->parsed()) return cmd_verify(o, out);
        if (limits_cmd->parsed()) return cmd_limits(o, out);
        if (grid_cmd->parsed()) return cmd_grid(o, out);
        return cmd_dump_matrix(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}

}  // namespace qes::cli
