#include <cmath>
#include <sstream>

#include "qes/models.hpp"

namespace qes::models {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidParameter, what); }

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) invalid(std::string("parameter ") + name + " is not finite");
}

void require_positive(double v, const char* name) {
    require_finite(v, name);
    if (!(v > 0.0)) invalid(std::string("parameter ") + name + " must be positive");
}

void require_centrifugal(double v, const char* name) {
    require_positive(v, name);
    if (std::abs(v - 0.5) < kHalfExclusion) {
        invalid(std::string("parameter ") + name + " must stay away from 1/2 (cancels the kinematic denominator)");
    }
}

void require_unit_interval(double v, const char* name) {
    require_finite(v, name);
    if (!(std::abs(v) < 1.0)) invalid(std::string("parameter ") + name + " must lie in (-1, 1)");
}

void validate(const ModelParams& params) {
    std::visit(Overloaded{
                   [](const MpCrossedParams& p) {
                       require_finite(p.a1.real(), "a1");
                       require_finite(p.a1.imag(), "a1");
                       require_finite(p.a2.real(), "a2");
                       require_finite(p.a2.imag(), "a2");
                       require_finite(p.beta, "beta");
                       if (!(p.a1.real() > 0.0) || !(p.a2.real() > 0.0)) invalid("Re(a1) and Re(a2) must be positive");
                   },
                   [](const SexticIParams& p) {
                       require_positive(p.a, "a");
                       require_positive(p.b, "b");
                       require_positive(p.c, "c");
                   },
                   [](const SexticIIParams& p) {
                       require_positive(p.a, "a");
                       require_positive(p.b, "b");
                       require_positive(p.c, "c");
                       require_positive(p.d, "d");
                   },
                   [](const CentrifugalIParams& p) {
                       require_centrifugal(p.b, "b");
                       require_centrifugal(p.c, "c");
                       require_centrifugal(p.d, "d");
                       require_centrifugal(p.e, "e");
                       require_centrifugal(p.f, "f");
                   },
                   [](const CentrifugalIIParams& p) {
                       require_centrifugal(p.a, "a");
                       require_centrifugal(p.b, "b");
                       require_centrifugal(p.c, "c");
                       require_centrifugal(p.d, "d");
                       require_centrifugal(p.e, "e");
                       require_centrifugal(p.f, "f");
                   },
                   [](const TrigQParams& p) {
                       require_unit_interval(p.a, "a");
                       require_unit_interval(p.b, "b");
                       require_unit_interval(p.c, "c");
                       require_unit_interval(p.d, "d");
                       require_unit_interval(p.e, "e");
                       require_finite(p.q, "q");
                       if (!(p.q > 0.0 && p.q < 1.0)) invalid("q must lie in (0, 1)");
                   },
               },
               params);
}

bool is_sextic(Family f) { return f == Family::SexticI || f == Family::SexticII; }

void validate_sector(Family family, int M, Sector sector) {
    if (M < 0) invalid("M must be non-negative");
    if (is_sextic(family)) {
        if (sector == Sector::Full) {
            throw Error(ErrorCode::SectorMismatch, "sextic families need an even or odd sector");
        }
        const bool even = M % 2 == 0;
        if ((sector == Sector::Even) != even) {
            std::ostringstream os;
            os << "sector " << sector_name(sector) << " does not match the parity of M = " << M;
            throw Error(ErrorCode::SectorMismatch, os.str());
        }
    } else if (sector != Sector::Full) {
        throw Error(ErrorCode::SectorMismatch, "only the sextic families have even/odd sectors");
    }
}

}  // namespace

ModelSpec ModelSpec::make(ModelParams params, int M, std::optional<Sector> sector) {
    validate(params);
    const auto family = static_cast<Family>(params.index());
    if (M < 0) invalid("M must be non-negative");
    const Sector s = sector.value_or(is_sextic(family) ? (M % 2 == 0 ? Sector::Even : Sector::Odd) : Sector::Full);
    validate_sector(family, M, s);
    return ModelSpec(std::move(params), M, s);
}

ModelSpec ModelSpec::unchecked(ModelParams params, int M, Sector sector) {
    validate_sector(static_cast<Family>(params.index()), M, sector);
    return ModelSpec(std::move(params), M, sector);
}

ModelSpec mp_crossed_conjugate_pair(Complex a1, double beta, int M) {
    return ModelSpec::make(MpCrossedParams{a1, std::conj(a1), beta}, M);
}

std::string_view family_name(Family f) noexcept {
    switch (f) {
        case Family::MpCrossed: return "mp-crossed";
        case Family::SexticI: return "sextic-i";
        case Family::SexticII: return "sextic-ii";
        case Family::CentrifugalI: return "centrifugal-i";
        case Family::CentrifugalII: return "centrifugal-ii";
        case Family::TrigQ: return "trig-q";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
    for (const Family f : {Family::MpCrossed, Family::SexticI, Family::SexticII, Family::CentrifugalI,
                           Family::CentrifugalII, Family::TrigQ}) {
        if (family_name(f) == name) return f;
    }
    return std::nullopt;
}

std::string_view sector_name(Sector s) noexcept {
    switch (s) {
        case Sector::Full: return "full";
        case Sector::Even: return "even";
        case Sector::Odd: return "odd";
    }
    return "unknown";
}

std::optional<Sector> parse_sector(std::string_view name) noexcept {
    for (const Sector s : {Sector::Full, Sector::Even, Sector::Odd}) {
        if (sector_name(s) == name) return s;
    }
    return std::nullopt;
}

int Canonical::dimension() const noexcept {
    switch (sector) {
        case Sector::Full: return M + 1;
        case Sector::Even: return M / 2 + 1;
        case Sector::Odd: return (M + 1) / 2;
    }
    return 0;
}

int Canonical::root_count() const noexcept { return dimension() - 1; }

double Canonical::shift_unit() const noexcept { return coordinate == Coordinate::Cosine ? std::log(q) : 1.0; }

std::vector<Complex> numerator_parameters(const ModelSpec& spec) {
    return std::visit(Overloaded{
                          [](const MpCrossedParams& p) { return std::vector<Complex>{p.a1, p.a2}; },
                          [](const SexticIParams& p) { return std::vector<Complex>{p.a, p.b, p.c}; },
                          [](const SexticIIParams& p) { return std::vector<Complex>{p.a, p.b, p.c, p.d}; },
                          [](const CentrifugalIParams& p) { return std::vector<Complex>{p.b, p.c, p.d, p.e, p.f}; },
                          [](const CentrifugalIIParams& p) {
                              return std::vector<Complex>{p.a, p.b, p.c, p.d, p.e, p.f};
                          },
                          [](const TrigQParams& p) { return std::vector<Complex>{p.a, p.b, p.c, p.d, p.e}; },
                      },
                      spec.params());
}

Canonical canonicalize(const ModelSpec& spec) {
    Canonical m;
    m.M = spec.M();
    m.sector = spec.sector();
    m.factors = numerator_parameters(spec);
    const double M = spec.M();
    std::visit(Overloaded{
                   [&](const MpCrossedParams& p) {
                       m.coordinate = Coordinate::Linear;
                       m.beta = p.beta;
                       m.compensation = -2.0 * M * std::sin(p.beta);
                   },
                   [&](const SexticIParams&) {
                       m.coordinate = Coordinate::Square;
                       m.compensation = 2.0 * M;
                   },
                   [&](const SexticIIParams& p) {
                       m.coordinate = Coordinate::Square;
                       m.compensation = M * (M - 1.0 + 2.0 * (p.a + p.b + p.c + p.d));
                   },
                   [&](const CentrifugalIParams&) {
                       m.coordinate = Coordinate::Square;
                       m.centrifugal = true;
                       m.compensation = M;
                   },
                   [&](const CentrifugalIIParams& p) {
                       m.coordinate = Coordinate::Square;
                       m.centrifugal = true;
                       m.compensation = M * (M - 1.0 + (p.a + p.b + p.c + p.d + p.e + p.f));
                   },
                   [&](const TrigQParams& p) {
                       m.coordinate = Coordinate::Cosine;
                       m.q = p.q;
                       m.compensation = -2.0 * p.a * p.b * p.c * p.d * p.e / p.q * (1.0 - std::pow(p.q, M));
                   },
               },
               spec.params());
    return m;
}

namespace {

[[noreturn]] void pole(Complex x) {
    std::ostringstream os;
    os << "potential has a pole at x = " << x;
    throw Error(ErrorCode::PoleOfPotential, os.str());
}

constexpr double kPoleTol = 1e-14;

}  // namespace

Complex potential_V(const Canonical& m, Complex x) {
    if (m.coordinate == Coordinate::Cosine) {
        const Complex z = std::exp(kI * x);
        Complex num = 1.0;
        for (const Complex& p : m.factors) num *= 1.0 - p * z;
        const Complex den = (1.0 - z * z) * (1.0 - m.q * z * z);
        if (std::abs(1.0 - z * z) < kPoleTol || std::abs(1.0 - m.q * z * z) < kPoleTol) pole(x);
        return num / den;
    }
    Complex v = std::exp(Complex(0.0, -m.beta));
    for (const Complex& p : m.factors) v *= p + kI * x;
    if (m.centrifugal) {
        const Complex a = 2.0 * kI * x;
        if (std::abs(a) < kPoleTol || std::abs(a + 1.0) < kPoleTol) pole(x);
        v /= a * (a + 1.0);
    }
    return v;
}

Complex potential_Vstar(const Canonical& m, Complex x) {
    if (m.coordinate == Coordinate::Cosine) {
        const Complex w = std::exp(-kI * x);  // 1/z
        Complex num = 1.0;
        for (const Complex& p : m.factors) num *= 1.0 - std::conj(p) * w;
        if (std::abs(1.0 - w * w) < kPoleTol || std::abs(1.0 - m.q * w * w) < kPoleTol) pole(x);
        return num / ((1.0 - w * w) * (1.0 - m.q * w * w));
    }
    Complex v = std::exp(Complex(0.0, m.beta));
    for (const Complex& p : m.factors) v *= std::conj(p) - kI * x;
    if (m.centrifugal) {
        const Complex a = -2.0 * kI * x;
        if (std::abs(a) < kPoleTol || std::abs(a + 1.0) < kPoleTol) pole(x);
        v /= a * (a + 1.0);
    }
    return v;
}

Complex eta(const Canonical& m, Complex x) {
    switch (m.coordinate) {
        case Coordinate::Linear: return x;
        case Coordinate::Square: return x * x;
        case Coordinate::Cosine: {
            const Complex z = std::exp(kI * x);
            return 0.5 * (z + 1.0 / z);
        }
    }
    return x;
}

Complex compensation_alpha(const Canonical& m, Complex x) { return m.compensation * eta(m, x); }

Complex potential_V(const ModelSpec& spec, Complex x) { return potential_V(canonicalize(spec), x); }
Complex potential_Vstar(const ModelSpec& spec, Complex x) { return potential_Vstar(canonicalize(spec), x); }
Complex eta(const ModelSpec& spec, Complex x) { return eta(canonicalize(spec), x); }
Complex compensation_alpha(const ModelSpec& spec, Complex x) { return compensation_alpha(canonicalize(spec), x); }

int sector_dimension(const ModelSpec& spec) {
    validate_sector(spec.family(), spec.M(), spec.sector());
    return canonicalize(spec).dimension();
}

int bethe_root_count(const ModelSpec& spec) { return sector_dimension(spec) - 1; }

SymmetricCoefficients symmetric_coefficients(const ModelSpec& spec) {
    if (spec.family() != Family::SexticII && spec.family() != Family::CentrifugalII) {
        throw Error(ErrorCode::UnsupportedFamily,
                    std::string("symmetric coefficients are defined for sextic-ii and centrifugal-ii, not ") +
                        std::string(family_name(spec.family())));
    }
    // prod_k (p_k + y) expanded in y = ix
    std::vector<Complex> d{1.0};
    for (const Complex& p : numerator_parameters(spec)) {
        std::vector<Complex> next(d.size() + 1);
        for (std::size_t j = 0; j < d.size(); ++j) {
            next[j + 1] += d[j];
            next[j] += p * d[j];
        }
        d = std::move(next);
    }
    return {std::move(d)};
}

}  // namespace qes::models
