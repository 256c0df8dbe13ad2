#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qes/limits.hpp"

namespace qes {

using models::Canonical;
using models::Family;
using models::ModelSpec;

namespace {

struct TagInfo {
    LimitTag tag;
    std::string_view name;
    Family family;
    bool exact;
};

constexpr TagInfo kTags[] = {
    {LimitTag::ChFromMp, "ch-from-mp", Family::MpCrossed, true},
    {LimitTag::MpFromMp, "mp-from-mp", Family::MpCrossed, false},
    {LimitTag::ChFromSextic, "ch-from-sextic", Family::SexticI, false},
    {LimitTag::MpFromSextic, "mp-from-sextic", Family::SexticI, false},
    {LimitTag::Wilson, "wilson", Family::CentrifugalI, false},
    {LimitTag::Cdh, "cdh", Family::CentrifugalI, false},
    {LimitTag::Aw, "aw", Family::TrigQ, true},
    {LimitTag::QUniversal, "q-universal", Family::TrigQ, true},
};

const TagInfo& info(LimitTag t) {
    for (const auto& i : kTags)
        if (i.tag == t) return i;
    throw Error(ErrorCode::InvalidParameter, "unknown limit tag");
}

bool by_real_then_imag(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

void require_large(double large) {
    if (!(large >= 1e3) || !std::isfinite(large)) {
        throw Error(ErrorCode::InvalidParameter, "asymptotic limits need large >= 1e3");
    }
}

}  // namespace

std::string_view limit_name(LimitTag t) noexcept {
    for (const auto& i : kTags)
        if (i.tag == t) return i.name;
    return "unknown";
}

std::optional<LimitTag> parse_limit(std::string_view name) noexcept {
    for (const auto& i : kTags)
        if (i.name == name) return i.tag;
    return std::nullopt;
}

bool is_exact(LimitTag t) noexcept {
    for (const auto& i : kTags)
        if (i.tag == t) return i.exact;
    return false;
}

LimitCase make_limit_case(LimitTag tag, ModelSpec base, int restriction) {
    const TagInfo& i = info(tag);
    if (base.family() != i.family) {
        throw Error(ErrorCode::InvalidParameter, std::string("limit ") + std::string(i.name) + " needs the " +
                                                     std::string(models::family_name(i.family)) + " family");
    }
    if (tag == LimitTag::QUniversal && (restriction < 1 || restriction > 4)) {
        throw Error(ErrorCode::InvalidParameter, "q-universal restriction level must be 1..4");
    }
    return {tag, std::move(base), restriction};
}

ModelSpec limit_spec(const LimitCase& c, double large) {
    const ModelSpec& b = c.base_spec;
    const int M = b.M();
    switch (c.tag) {
        case LimitTag::ChFromMp: {
            auto p = b.as<models::MpCrossedParams>();
            p.beta = 0.0;
            return ModelSpec::make(p, M);
        }
        case LimitTag::MpFromMp: {
            require_large(large);
            auto p = b.as<models::MpCrossedParams>();
            p.a2 = large;
            return ModelSpec::make(p, M);
        }
        case LimitTag::ChFromSextic: {
            require_large(large);
            auto p = b.as<models::SexticIParams>();
            p.a = large;
            return ModelSpec::make(p, M, b.sector());
        }
        case LimitTag::MpFromSextic: {
            require_large(large);
            auto p = b.as<models::SexticIParams>();
            p.a = p.b = large;
            return ModelSpec::make(p, M, b.sector());
        }
        case LimitTag::Wilson: {
            require_large(large);
            auto p = b.as<models::CentrifugalIParams>();
            p.f = large;
            return ModelSpec::make(p, M);
        }
        case LimitTag::Cdh: {
            require_large(large);
            auto p = b.as<models::CentrifugalIParams>();
            p.e = p.f = large;
            return ModelSpec::make(p, M);
        }
        case LimitTag::Aw: {
            auto p = b.as<models::TrigQParams>();
            p.e = 0.0;
            return ModelSpec::make(p, M);
        }
        case LimitTag::QUniversal: {
            auto p = b.as<models::TrigQParams>();
            p.e = 0.0;
            double* tail[] = {&p.d, &p.c, &p.b, &p.a};
            for (int k = 0; k < c.restriction; ++k) *tail[k] = 0.0;
            return ModelSpec::make(p, M);
        }
    }
    throw Error(ErrorCode::InvalidParameter, "unknown limit tag");
}

Complex limit_scale(const LimitCase& c, double large) {
    switch (c.tag) {
        case LimitTag::MpFromMp:
        case LimitTag::ChFromSextic:
        case LimitTag::Wilson: return large;
        case LimitTag::MpFromSextic:
        case LimitTag::Cdh: return large * large;
        default: return 1.0;
    }
}

std::vector<int> limit_degrees(const LimitCase& c) {
    const int M = c.base_spec.M();
    std::vector<int> out;
    const bool sextic = c.base_spec.family() == Family::SexticI;
    for (int m = sextic ? M % 2 : 0; m <= M; m += sextic ? 2 : 1) out.push_back(m);
    return out;
}

Complex closed_form_E(const LimitCase& c, int m) {
    const double mm = m;
    switch (c.tag) {
        case LimitTag::ChFromMp: {
            const auto& p = c.base_spec.as<models::MpCrossedParams>();
            return mm * (mm + p.a1 + p.a2 + std::conj(p.a1) + std::conj(p.a2) - 1.0);
        }
        case LimitTag::MpFromMp: return 2.0 * mm * std::cos(c.base_spec.as<models::MpCrossedParams>().beta);
        case LimitTag::ChFromSextic: {
            const auto& p = c.base_spec.as<models::SexticIParams>();
            return mm * (mm + 2.0 * (p.b + p.c) - 1.0);
        }
        case LimitTag::MpFromSextic: return 2.0 * mm;
        case LimitTag::Wilson: {
            const auto& p = c.base_spec.as<models::CentrifugalIParams>();
            return mm * (mm + p.b + p.c + p.d + p.e - 1.0);
        }
        case LimitTag::Cdh: return mm;
        case LimitTag::Aw: {
            const auto& p = c.base_spec.as<models::TrigQParams>();
            const double q = p.q;
            return (std::pow(q, -mm) - 1.0) * (1.0 - p.a * p.b * p.c * p.d * std::pow(q, mm + 1.0));
        }
        case LimitTag::QUniversal: return std::pow(c.base_spec.as<models::TrigQParams>().q, -mm) - 1.0;
    }
    return {};
}

LimitReport evaluate_limit(const LimitCase& c, double large) {
    const bool exact = is_exact(c.tag);
    LimitReport rep;
    rep.tag = c.tag;
    rep.large = exact ? 0.0 : large;
    const ModelSpec spec = limit_spec(c, large);
    const Complex scale = limit_scale(c, large);

    std::vector<Complex> computed;
    for (const BetheSolution& s : solve(spec)) computed.push_back(s.E_oracle / scale);
    std::sort(computed.begin(), computed.end(), by_real_then_imag);

    std::vector<std::pair<Complex, int>> expected;
    for (const int m : limit_degrees(c)) expected.emplace_back(closed_form_E(c, m), m);
    std::sort(expected.begin(), expected.end(),
              [](const auto& a, const auto& b) { return by_real_then_imag(a.first, b.first); });

    for (std::size_t k = 0; k < expected.size() && k < computed.size(); ++k) {
        LimitEntry e{expected[k].second, computed[k], expected[k].first, 0.0};
        e.gap = std::abs(e.computed - e.expected) / std::max(1.0, std::abs(e.expected));
        rep.max_gap = std::max(rep.max_gap, e.gap);
        rep.entries.push_back(e);
    }
    std::sort(rep.entries.begin(), rep.entries.end(), [](const auto& a, const auto& b) { return a.m < b.m; });

    if (exact) {
        rep.budget = kExactLimitTol;
    } else {
        double pmax = 0.0;
        for (const Complex& p : models::numerator_parameters(c.base_spec)) pmax = std::max(pmax, std::abs(p));
        const double M1 = c.base_spec.M() + 1.0;
        rep.budget = 20.0 * M1 * M1 * (1.0 + pmax) / large;
        rep.observed_constant = rep.max_gap * large;
    }
    rep.passed = computed.size() == expected.size() && rep.max_gap <= rep.budget;
    return rep;
}

LimitReport verify_limit(const LimitCase& c, double large) {
    LimitReport rep = evaluate_limit(c, large);
    if (!rep.passed) {
        const auto worst = std::max_element(rep.entries.begin(), rep.entries.end(),
                                            [](const auto& a, const auto& b) { return a.gap < b.gap; });
        std::ostringstream os;
        os << limit_name(c.tag) << ": ";
        if (worst == rep.entries.end()) {
            os << "no eigenvalues to compare";
        } else {
            os << "m = " << worst->m << ", computed " << worst->computed << ", expected " << worst->expected
               << ", gap " << worst->gap << " > budget " << rep.budget;
        }
        throw Error(ErrorCode::LimitViolation, os.str());
    }
    return rep;
}

Canonical reduced_model(const LimitCase& c) {
    const ModelSpec& b = c.base_spec;
    Canonical m;
    m.M = b.M();
    m.compensation = 0.0;
    switch (c.tag) {
        case LimitTag::ChFromMp:
        case LimitTag::MpFromMp: {
            const auto& p = b.as<models::MpCrossedParams>();
            m.coordinate = models::Coordinate::Linear;
            m.beta = p.beta;
            m.factors = {p.a1};
            return m;
        }
        case LimitTag::Wilson:
        case LimitTag::Cdh: {
            const auto& p = b.as<models::CentrifugalIParams>();
            m.coordinate = models::Coordinate::Square;
            m.centrifugal = true;
            m.factors = {p.b, p.c, p.d};
            if (c.tag == LimitTag::Wilson) m.factors.push_back(p.e);
            return m;
        }
        case LimitTag::Aw:
        case LimitTag::QUniversal: {
            const auto p = limit_spec(c, 0.0).as<models::TrigQParams>();
            m.coordinate = models::Coordinate::Cosine;
            m.q = p.q;
            m.factors = {p.a, p.b, p.c, p.d};
            return m;
        }
        case LimitTag::ChFromSextic:
        case LimitTag::MpFromSextic: break;
    }
    throw Error(ErrorCode::UnsupportedFamily,
                std::string("no reduced Bethe equations for ") + std::string(limit_name(c.tag)));
}

ReducedBaeReport reduced_bae_check(const LimitCase& c, double offset) {
    const Canonical ref = reduced_model(c);
    Canonical src = ref;
    src.factors[0] += offset;

    ReducedBaeReport rep;
    rep.tag = c.tag;
    rep.offset = offset;
    for (const OracleEigenpair& pair : oracle_spectrum(build_matrix(src))) {
        const RootSet seed = extract_roots(pair, src);
        const RootSet roots = newton_polish(src, seed).roots;
        ReducedBaeEntry e{pair.eigenpoly.degree(), 0.0};
        try {
            for (const double r : bae_residual(ref, roots)) e.residual_max = std::max(e.residual_max, r);
        } catch (const Error&) {
            e.residual_max = std::numeric_limits<double>::infinity();
        }
        rep.max_residual = std::max(rep.max_residual, e.residual_max);
        rep.entries.push_back(e);
    }
    std::sort(rep.entries.begin(), rep.entries.end(), [](const auto& a, const auto& b) { return a.m < b.m; });
    rep.passed = rep.max_residual <= kReducedBaeTol;
    return rep;
}

}  // namespace qes
