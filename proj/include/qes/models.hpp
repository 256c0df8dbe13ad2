#pragma once

// The six model families: parameters, potentials, sinusoidal coordinates,
// compensation terms and invariant-subspace sectors.

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qes/numerics.hpp"

namespace qes::models {

enum class Family { MpCrossed, SexticI, SexticII, CentrifugalI, CentrifugalII, TrigQ };
enum class Sector { Full, Even, Odd };

/// V(x) = (a1 + ix)(a2 + ix) e^{-i beta}
struct MpCrossedParams {
    Complex a1;
    Complex a2;
    double beta = 0.0;
};

/// V(x) = (a + ix)(b + ix)(c + ix)
struct SexticIParams {
    double a, b, c;
};

/// V(x) = (a + ix)(b + ix)(c + ix)(d + ix)
struct SexticIIParams {
    double a, b, c, d;
};

/// V(x) = (b + ix)...(f + ix) / (2ix (2ix + 1))
struct CentrifugalIParams {
    double b, c, d, e, f;
};

/// V(x) = (a + ix)...(f + ix) / (2ix (2ix + 1))
struct CentrifugalIIParams {
    double a, b, c, d, e, f;
};

/// V(z) = (1 - az)...(1 - ez) / ((1 - z^2)(1 - q z^2)), z = e^{ix}
struct TrigQParams {
    double a, b, c, d, e;
    double q;
};

using ModelParams = std::variant<MpCrossedParams, SexticIParams, SexticIIParams, CentrifugalIParams,
                                 CentrifugalIIParams, TrigQParams>;

/// Parameters closer than this to 1/2 are rejected for the centrifugal families.
inline constexpr double kHalfExclusion = 1e-6;

/// Full problem statement: family parameters, the degree M of the invariant
/// subspace and the sector. Instances built through make() are validated.
class ModelSpec {
public:
    /// Validates parameter ranges and the sector. When the sector is omitted it
    /// is Full, or Even/Odd by the parity of M for the sextic families.
    static ModelSpec make(ModelParams params, int M, std::optional<Sector> sector = std::nullopt);

    /// Skips parameter-range validation (limit and degenerate-point tests only).
    static ModelSpec unchecked(ModelParams params, int M, Sector sector);

    Family family() const noexcept { return static_cast<Family>(params_.index()); }
    const ModelParams& params() const noexcept { return params_; }
    int M() const noexcept { return M_; }
    Sector sector() const noexcept { return sector_; }

    template <class P>
    const P& as() const {
        return std::get<P>(params_);
    }

private:
    ModelSpec(ModelParams params, int M, Sector sector) : params_(std::move(params)), M_(M), sector_(sector) {}

    ModelParams params_;
    int M_ = 0;
    Sector sector_ = Sector::Full;
};

/// MP_CROSSED with a2 = conj(a1), the hermitian configuration.
ModelSpec mp_crossed_conjugate_pair(Complex a1, double beta, int M);

std::string_view family_name(Family f) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;
std::string_view sector_name(Sector s) noexcept;
std::optional<Sector> parse_sector(std::string_view name) noexcept;

enum class Coordinate { Linear, Square, Cosine };

/// Form shared by every family, on which the operator, the Bethe equations
/// and the pseudo ground state are built:
///   Linear/Square:  V(x) = e^{-i beta} prod_k (p_k + ix) [/ (2ix (2ix + 1)) if centrifugal]
///   Cosine:         V(z) = prod_k (1 - p_k z) / ((1 - z^2)(1 - q z^2))
///   alpha(x) = compensation * eta(x)
/// Limit checks build reduced variants of it directly (factors dropped,
/// compensation zeroed) without a ModelSpec.
struct Canonical {
    Coordinate coordinate = Coordinate::Linear;
    double beta = 0.0;
    std::vector<Complex> factors;
    bool centrifugal = false;
    Complex compensation{};
    double q = 0.0;
    int M = 0;
    Sector sector = Sector::Full;

    int dimension() const noexcept;
    int root_count() const noexcept;
    bool odd_prefactor() const noexcept { return sector == Sector::Odd; }
    /// Imaginary shift unit: 1, or gamma = log q for the q-family.
    double shift_unit() const noexcept;
};

Canonical canonicalize(const ModelSpec& spec);

Complex potential_V(const Canonical& m, Complex x);
Complex potential_Vstar(const Canonical& m, Complex x);
Complex eta(const Canonical& m, Complex x);
Complex compensation_alpha(const Canonical& m, Complex x);

Complex potential_V(const ModelSpec& spec, Complex x);
/// Analytic conjugate: parameters conjugated, x kept as a free complex variable.
Complex potential_Vstar(const ModelSpec& spec, Complex x);
Complex eta(const ModelSpec& spec, Complex x);
Complex compensation_alpha(const ModelSpec& spec, Complex x);

int sector_dimension(const ModelSpec& spec);
/// Number of Bethe roots x_l in the eigenfunction ansatz.
int bethe_root_count(const ModelSpec& spec);

/// Coefficients of the V numerator in powers of (ix): sum_j deltas[j] (ix)^j,
/// deltas.back() == 1. Only the type II sextic and centrifugal families.
struct SymmetricCoefficients {
    std::vector<Complex> deltas;
};

SymmetricCoefficients symmetric_coefficients(const ModelSpec& spec);

/// Numerator parameters in the order they enter V.
std::vector<Complex> numerator_parameters(const ModelSpec& spec);

}  // namespace qes::models
