#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qes/parallel.hpp"
#include "qes/wavefun.hpp"

namespace qes {

using models::Canonical;
using models::Coordinate;
using models::Family;
using models::ModelSpec;

namespace {

constexpr double kEps = 1e-300;

double relative(Complex a, Complex b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), kEps});
}

/// Distance of x from the nearest pole of V or V*.
double pole_distance(const Canonical& m, Complex x) {
    if (m.coordinate == Coordinate::Cosine) {
        // poles at z^2 in {1, 1/q, q}, measured on z^2
        const Complex z2 = std::exp(2.0 * kI * x);
        return std::min({std::abs(1.0 - z2), std::abs(1.0 - m.q * z2), std::abs(z2 - m.q)});
    }
    if (m.centrifugal) {
        return std::min({std::abs(x), std::abs(x - 0.5 * kI), std::abs(x + 0.5 * kI)});
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

GridSpec default_grid(const ModelSpec& spec, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidParameter, "grid needs at least one point");
    GridSpec g;
    g.points.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double t = (k + 1.0) / (n + 1.0);
        switch (spec.family()) {
            case Family::CentrifugalI:
            case Family::CentrifugalII: g.points.emplace_back(3.0 * t, 0.0); break;
            case Family::TrigQ: g.points.emplace_back(std::numbers::pi * t, 0.0); break;
            default: g.points.emplace_back(-3.0 + 6.0 * t, 0.0); break;
        }
    }
    return g;
}

void validate_grid(const ModelSpec& spec, const GridSpec& grid) {
    const Canonical m = models::canonicalize(spec);
    for (const Complex& x : grid.points) {
        std::ostringstream os;
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            os << "grid point " << x << " is not finite";
        } else if (m.centrifugal && !(x.real() > 0.0)) {
            os << "grid point " << x << " must have Re x > 0";
        } else if (m.coordinate == Coordinate::Cosine && !(x.real() > 0.0 && x.real() < std::numbers::pi)) {
            os << "grid point " << x << " must have Re x in (0, pi)";
        } else if (pole_distance(m, x) < kGridPoleClearance) {
            os << "grid point " << x << " is within " << kGridPoleClearance << " of a pole";
        } else {
            continue;
        }
        throw Error(ErrorCode::InvalidParameter, os.str());
    }
}

Complex phi0_squared(const Canonical& m, Complex x) {
    if (m.coordinate == Coordinate::Cosine) {
        const Complex z = std::exp(kI * x);
        Complex num = q_pochhammer_inf(z * z, m.q) * q_pochhammer_inf(1.0 / (z * z), m.q);
        Complex den = 1.0;
        for (const Complex& p : m.factors) den *= q_pochhammer_inf(p * z, m.q) * q_pochhammer_inf(p / z, m.q);
        if (den == Complex{}) throw Error(ErrorCode::DivergentProduct, "q-Pochhammer denominator vanishes");
        return num / den;
    }
    Complex lg = 2.0 * m.beta * x;
    for (const Complex& p : m.factors) lg += log_gamma(p + kI * x) + log_gamma(std::conj(p) - kI * x);
    if (m.centrifugal) lg -= log_gamma(2.0 * kI * x) + log_gamma(-2.0 * kI * x);
    return std::exp(lg);
}

Complex phi0_squared(const ModelSpec& spec, Complex x) { return phi0_squared(models::canonicalize(spec), x); }

double zero_mode_residual(const Canonical& m, Complex x) {
    const Complex h = 0.5 * kI * m.shift_unit();
    const Complex lhs = models::potential_Vstar(m, x - h) * phi0_squared(m, x - h);
    const Complex rhs = models::potential_V(m, x + h) * phi0_squared(m, x + h);
    return relative(lhs, rhs);
}

double zero_mode_residual(const ModelSpec& spec, Complex x) {
    return zero_mode_residual(models::canonicalize(spec), x);
}

Complex psi_value(const Canonical& m, const RootSet& roots, Complex x) {
    const Complex e = models::eta(m, x);
    Complex v = m.odd_prefactor() ? x : Complex(1.0);
    for (const Complex& r : roots.roots_eta) v *= e - r;
    return v;
}

double schrodinger_residual(const BetheSolution& sol, Complex x) {
    const Canonical m = models::canonicalize(sol.spec);
    const Complex s = kI * m.shift_unit();
    const Complex psi = psi_value(m, sol.roots, x);
    const Complex t1 = models::potential_V(m, x) * (psi_value(m, sol.roots, x - s) - psi);
    const Complex t2 = models::potential_Vstar(m, x) * (psi_value(m, sol.roots, x + s) - psi);
    const Complex t3 = models::compensation_alpha(m, x) * psi;
    const Complex E = sol.E_formula.value_or(sol.E_oracle);
    const double scale = std::max({std::abs(E * psi), std::abs(t1), std::abs(t2), std::abs(t3), kEps});
    return std::abs(t1 + t2 + t3 - E * psi) / scale;
}

std::vector<GridRow> evaluate_grid(const BetheSolution& sol, const GridSpec& grid) {
    validate_grid(sol.spec, grid);
    const Canonical m = models::canonicalize(sol.spec);
    std::vector<GridRow> rows(grid.points.size());
    parallel_for(rows.size(), [&](std::size_t k) {
        const Complex x = grid.points[k];
        rows[k] = {x, phi0_squared(m, x), psi_value(m, sol.roots, x), schrodinger_residual(sol, x)};
    });
    return rows;
}

}  // namespace qes
