#pragma once

// Pseudo ground state (squared), the squared zero-mode identity and pointwise
// difference-Schroedinger residuals.

#include <vector>

#include "qes/bethe.hpp"

namespace qes {

/// Minimal distance of grid points from poles of V and V*.
inline constexpr double kGridPoleClearance = 1e-3;

/// Acceptance levels for the pointwise checks.
inline constexpr double kZeroModeTol = 1e-10;
inline constexpr double kSchrodingerTol = 1e-8;

struct GridSpec {
    std::vector<Complex> points;
};

/// n equally spaced real points: (0, 3] for the centrifugal families, (0, pi)
/// for trig-q, [-3, 3] otherwise; endpoints kept clear of poles.
GridSpec default_grid(const models::ModelSpec& spec, int n);

/// Throws InvalidParameter when a point violates the family's domain or comes
/// within kGridPoleClearance of a pole.
void validate_grid(const models::ModelSpec& spec, const GridSpec& grid);

/// phi0(x)^2, never its square root:
///   e^{2 beta x} prod_k Gamma(p_k + ix) Gamma(p_k* - ix)  [/ Gamma(2ix) Gamma(-2ix)]
///   (z^2, z^-2; q)_inf / prod_k (p_k z, p_k / z; q)_inf   (trig-q)
Complex phi0_squared(const models::Canonical& m, Complex x);
Complex phi0_squared(const models::ModelSpec& spec, Complex x);

/// |V*(x - is/2) phi0^2(x - is/2) - V(x + is/2) phi0^2(x + is/2)| / max(|.|, |.|, eps)
/// with s = 1, or s = log q for trig-q.
double zero_mode_residual(const models::Canonical& m, Complex x);
double zero_mode_residual(const models::ModelSpec& spec, Complex x);

/// Psi(x) of a solution: prod_l (eta(x) - eta_l), times x in the odd sector.
Complex psi_value(const models::Canonical& m, const RootSet& roots, Complex x);

/// |H~ Psi(x) - E Psi(x)| / max(|E Psi(x)|, local term scale, eps), by direct
/// pointwise evaluation of V, V* and the shifted Psi. E is E_formula when
/// present, otherwise E_oracle.
double schrodinger_residual(const BetheSolution& sol, Complex x);

struct GridRow {
    Complex x;
    Complex phi0sq;
    Complex psi;
    double residual = 0.0;
};

/// Rows in grid order; points are evaluated in parallel.
std::vector<GridRow> evaluate_grid(const BetheSolution& sol, const GridSpec& grid);

}  // namespace qes
