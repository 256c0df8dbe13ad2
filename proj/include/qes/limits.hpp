#pragma once

// Exactly solvable limits and restrictions: closed-form eigenvalues of the
// Askey-scheme polynomials and their reduced Bethe equations.

#include <optional>
#include <string_view>
#include <vector>

#include "qes/bethe.hpp"

namespace qes {

enum class LimitTag {
    ChFromMp,      // mp-crossed, beta -> 0 (exact)
    MpFromMp,      // mp-crossed, a2 -> infinity, E / a2
    ChFromSextic,  // sextic-i, a -> infinity, E / a
    MpFromSextic,  // sextic-i, a, b -> infinity, E / (a b)
    Wilson,        // centrifugal-i, f -> infinity, E / f
    Cdh,           // centrifugal-i, e, f -> infinity, E / (e f)
    Aw,            // trig-q, e = 0 (exact)
    QUniversal,    // trig-q, e = 0 and trailing parameters of (a, b, c, d) zeroed (exact)
};

inline constexpr double kExactLimitTol = 1e-9;
inline constexpr double kReducedBaeTol = 1e-9;

struct LimitCase {
    LimitTag tag;
    models::ModelSpec base_spec;
    /// Q_UNIVERSAL only: how many of d, c, b, a are set to zero (1..4).
    int restriction = 1;
};

std::string_view limit_name(LimitTag t) noexcept;
std::optional<LimitTag> parse_limit(std::string_view name) noexcept;
bool is_exact(LimitTag t) noexcept;

/// Throws InvalidParameter when the tag does not fit the base family or the
/// restriction level is out of range.
LimitCase make_limit_case(LimitTag tag, models::ModelSpec base, int restriction = 1);

/// The spec actually diagonalized: base parameters with the limit applied
/// (large values substituted, or the exact restriction imposed).
models::ModelSpec limit_spec(const LimitCase& c, double large);
/// Divisor applied to the computed eigenvalues (1 for exact cases).
Complex limit_scale(const LimitCase& c, double large);
/// Degrees m present in the sector, ascending.
std::vector<int> limit_degrees(const LimitCase& c);

/// The printed closed-form eigenvalue of degree m.
Complex closed_form_E(const LimitCase& c, int m);

struct LimitEntry {
    int m = 0;
    Complex computed;  // E_oracle / scale
    Complex expected;
    double gap = 0.0;  // |computed - expected| / max(1, |expected|)
};

struct LimitReport {
    LimitTag tag;
    double large = 0.0;  // 0 for exact cases
    std::vector<LimitEntry> entries;
    double max_gap = 0.0;
    /// Exact cases: kExactLimitTol. Asymptotic: C_budget / large with
    /// C_budget = 20 (M + 1)^2 (1 + max |base parameter|).
    double budget = 0.0;
    /// max_gap * large, the observed first-order constant (asymptotic only).
    double observed_constant = 0.0;
    bool passed = false;
};

/// Builds the limit spec, runs bethe::solve and pairs the (Re, Im)-sorted
/// eigenvalues with the sorted closed forms. Never throws on a violation.
LimitReport evaluate_limit(const LimitCase& c, double large = 0.0);
/// Same, but throws LimitViolation naming the worst entry when it fails.
LimitReport verify_limit(const LimitCase& c, double large = 0.0);

/// Reduced model of the restriction: mp-crossed with the single factor a1,
/// centrifugal-i with f (Wilson) or e, f (continuous dual Hahn) deleted,
/// trig-q with e = 0 (plus the Q_UNIVERSAL zeros). No compensation term.
models::Canonical reduced_model(const LimitCase& c);

struct ReducedBaeEntry {
    int m = 0;
    double residual_max = 0.0;
};

struct ReducedBaeReport {
    LimitTag tag;
    double offset = 0.0;
    std::vector<ReducedBaeEntry> entries;
    double max_residual = 0.0;
    bool passed = false;
};

/// Roots of every eigenpolynomial of the reduced model whose first factor is
/// shifted by `offset` (0 for the genuine check), polished there, then
/// checked against the unshifted reduced equations. Passes when the maximum
/// residual is at most kReducedBaeTol.
ReducedBaeReport reduced_bae_check(const LimitCase& c, double offset = 0.0);

}  // namespace qes
