#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qes/bethe.hpp"
#include "qes/parallel.hpp"

namespace qes {

using models::Canonical;
using models::Coordinate;
using models::Family;
using models::ModelSpec;
using models::Sector;

namespace {

constexpr double kEps = 1e-300;
constexpr double kPoleTol = 1e-12;

[[noreturn]] void pole_at(Complex x) {
    std::ostringstream os;
    os << "Bethe root " << x << " sits on a pole of the potential";
    throw Error(ErrorCode::PoleOfPotential, os.str());
}

/// Linear and square coordinates.
std::pair<Complex, Complex> sides_x(const Canonical& m, Complex x, const std::vector<Complex>& other_eta) {
    Complex n = std::exp(Complex(0.0, -m.beta));
    Complex ns = std::exp(Complex(0.0, m.beta));
    for (const Complex& p : m.factors) {
        n *= p + kI * x;
        ns *= std::conj(p) - kI * x;
    }
    Complex lhs = n;
    Complex rhs = ns;
    if (m.coordinate == Coordinate::Linear) {
        for (const Complex& e : other_eta) {
            lhs *= x - e - kI;
            rhs *= x - e + kI;
        }
        return {lhs, rhs};
    }
    // (x - x_l - i)(x + x_l - i) = (x - i)^2 - eta_l
    const Complex xm2 = (x - kI) * (x - kI);
    const Complex xp2 = (x + kI) * (x + kI);
    for (const Complex& e : other_eta) {
        lhs *= xm2 - e;
        rhs *= xp2 - e;
    }
    if (!m.centrifugal) {
        lhs *= 2.0 * x - kI;
        rhs *= 2.0 * x + kI;
        if (m.odd_prefactor()) {
            lhs *= x - kI;
            rhs *= x + kI;
        }
    }
    return {lhs, rhs};
}

Complex eta_z(Complex z) { return 0.5 * (z + 1.0 / z); }

std::pair<Complex, Complex> sides_z(const Canonical& m, Complex z, const std::vector<Complex>& other_eta) {
    const double q = m.q;
    Complex lhs = 1.0;
    Complex rhs = 1.0;
    for (const Complex& p : m.factors) {
        lhs *= 1.0 - p * z;
        rhs *= z - std::conj(p);
    }
    const int n = static_cast<int>(m.factors.size());
    if (n > 4) lhs *= std::pow(z, n - 4);
    if (n < 4) rhs *= std::pow(z, 4 - n);
    const Complex up = eta_z(q * z);
    const Complex down = eta_z(z / q);
    for (const Complex& e : other_eta) {
        lhs *= up - e;
        rhs *= down - e;
    }
    return {lhs, rhs};
}

Complex z_of(Complex x) { return std::exp(kI * x); }

void check_pole(const Canonical& m, Complex x) {
    if (m.coordinate == Coordinate::Cosine) {
        const Complex z2 = z_of(x) * z_of(x);
        if (std::abs(1.0 - z2) < kPoleTol || std::abs(1.0 - m.q * z2) < kPoleTol ||
            std::abs(z2 - m.q) < kPoleTol) {
            pole_at(x);
        }
    } else if (m.centrifugal) {
        if (std::abs(x) < kPoleTol || std::abs(2.0 * kI * x + 1.0) < kPoleTol ||
            std::abs(1.0 - 2.0 * kI * x) < kPoleTol) {
            pole_at(x);
        }
    }
}

std::vector<Complex> others(const std::vector<Complex>& eta, std::size_t j) {
    std::vector<Complex> o;
    o.reserve(eta.size());
    for (std::size_t l = 0; l < eta.size(); ++l)
        if (l != j) o.push_back(eta[l]);
    return o;
}

double residual_of(std::pair<Complex, Complex> s) {
    return std::abs(s.first - s.second) / std::max({std::abs(s.first), std::abs(s.second), kEps});
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (const double r : v) m = std::max(m, r);
    return m;
}

enum class NewtonVar { X, Eta, Z };

NewtonVar newton_variable(const Canonical& m) {
    if (m.coordinate == Coordinate::Cosine) return NewtonVar::Z;
    if (m.coordinate == Coordinate::Square && !m.odd_prefactor()) return NewtonVar::Eta;
    return NewtonVar::X;
}

}  // namespace

std::pair<Complex, Complex> bae_sides(const Canonical& m, Complex x_j, const std::vector<Complex>& other_eta) {
    if (m.coordinate == Coordinate::Cosine) return sides_z(m, z_of(x_j), other_eta);
    return sides_x(m, x_j, other_eta);
}

std::vector<double> bae_residual(const Canonical& m, const RootSet& roots, const Tolerances& tol) {
    const auto& eta = roots.roots_eta;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        for (std::size_t j = i + 1; j < eta.size(); ++j) {
            if (std::abs(eta[i] - eta[j]) < tol.distinct * std::max(1.0, std::abs(eta[i]))) {
                std::ostringstream os;
                os << "roots " << i << " and " << j << " coincide (eta = " << eta[i] << ")";
                throw Error(ErrorCode::DegenerateRoots, os.str());
            }
        }
    }
    std::vector<double> out;
    out.reserve(eta.size());
    for (std::size_t j = 0; j < eta.size(); ++j) {
        check_pole(m, roots.roots_x[j]);
        out.push_back(residual_of(bae_sides(m, roots.roots_x[j], others(eta, j))));
    }
    return out;
}

std::vector<double> bae_residual(const ModelSpec& spec, const RootSet& roots, const Tolerances& tol) {
    return bae_residual(models::canonicalize(spec), roots, tol);
}

PolishResult newton_polish(const Canonical& m, const RootSet& seed, const Tolerances& tol) {
    PolishResult out;
    out.roots = seed;
    const std::size_t n = seed.size();
    if (n == 0) {
        out.polished = true;
        return out;
    }
    double seed_res = std::numeric_limits<double>::infinity();
    try {
        seed_res = max_of(bae_residual(m, seed, tol));
    } catch (const Error&) {
        // coincident or pole-bound seed: let Newton report what it can
    }
    // Exact seeds are returned untouched. Anything else gets iterated even
    // when already within tol.polish: eigenvalues of the q-family cancel
    // terms of size q^-M, so the last digits of the largest roots matter.
    if (seed_res == 0.0) {
        out.polished = true;
        return out;
    }

    const NewtonVar var = newton_variable(m);
    std::vector<Complex> v0(n);
    for (std::size_t j = 0; j < n; ++j) {
        switch (var) {
            case NewtonVar::X: v0[j] = seed.roots_x[j]; break;
            case NewtonVar::Eta: v0[j] = seed.roots_eta[j]; break;
            case NewtonVar::Z: v0[j] = z_of(seed.roots_x[j]); break;
        }
    }
    // F_j = (L_j - R_j) / (x_j s_j) in eta (L - R is odd in x_j), otherwise
    // (L_j - R_j) / s_j; s_j is frozen at the seed.
    auto raw = [&](std::span<const Complex> v) {
        std::vector<Complex> eta(n);
        std::vector<Complex> pivot(n);
        for (std::size_t j = 0; j < n; ++j) {
            switch (var) {
                case NewtonVar::X:
                    pivot[j] = v[j];
                    eta[j] = m.coordinate == Coordinate::Square ? v[j] * v[j] : v[j];
                    break;
                case NewtonVar::Eta:
                    pivot[j] = std::sqrt(v[j]);
                    eta[j] = v[j];
                    break;
                case NewtonVar::Z:
                    pivot[j] = v[j];
                    eta[j] = eta_z(v[j]);
                    break;
            }
        }
        std::vector<std::pair<Complex, Complex>> s(n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto o = others(eta, j);
            s[j] = var == NewtonVar::Z ? sides_z(m, pivot[j], o) : sides_x(m, pivot[j], o);
        }
        return std::make_pair(s, pivot);
    };
    std::vector<double> scale(n, 1.0);
    {
        const auto [s, pivot] = raw(v0);
        for (std::size_t j = 0; j < n; ++j) {
            double sj = std::max(std::abs(s[j].first), std::abs(s[j].second));
            if (var == NewtonVar::Eta && std::abs(pivot[j]) > 0.0) sj /= std::abs(pivot[j]);
            if (sj > 0.0 && std::isfinite(sj)) scale[j] = sj;
        }
    }
    ResidualFunction f = [&](std::span<const Complex> v) {
        const auto [s, pivot] = raw(v);
        std::vector<Complex> r(n);
        for (std::size_t j = 0; j < n; ++j) {
            Complex d = s[j].first - s[j].second;
            if (var == NewtonVar::Eta && std::abs(pivot[j]) > 0.0) d /= pivot[j];
            r[j] = d / scale[j];
        }
        return r;
    };

    // Roots can spread over many decades (the q-family's grow like q^{-k}),
    // so Newton runs on v_j / |v_j(seed)| to keep the Jacobian columns
    // comparable.
    std::vector<double> unit(n, 1.0);
    for (std::size_t j = 0; j < n; ++j)
        if (std::abs(v0[j]) > 0.0 && std::isfinite(std::abs(v0[j]))) unit[j] = std::abs(v0[j]);
    ResidualFunction g = [&](std::span<const Complex> u) {
        std::vector<Complex> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = u[j] * unit[j];
        return f(v);
    };
    std::vector<Complex> u0(n);
    for (std::size_t j = 0; j < n; ++j) u0[j] = v0[j] / unit[j];

    NewtonOptions opts;
    opts.tol = 1e-14;
    NewtonResult nr = newton_iterate(g, u0, opts);
    for (std::size_t j = 0; j < n; ++j) nr.x[j] *= unit[j];
    out.iterations = nr.iterations;
    if (nr.status == NewtonStatus::SingularJacobian) {
        out.jacobian_singular = true;
        out.polished = seed_res <= tol.polish;
        return out;
    }
    std::vector<Complex> eta(n);
    for (std::size_t j = 0; j < n; ++j) {
        switch (var) {
            case NewtonVar::X: eta[j] = m.coordinate == Coordinate::Square ? nr.x[j] * nr.x[j] : nr.x[j]; break;
            case NewtonVar::Eta: eta[j] = nr.x[j]; break;
            case NewtonVar::Z: eta[j] = eta_z(nr.x[j]); break;
        }
    }
    RootSet candidate = var == NewtonVar::X && m.coordinate == Coordinate::Linear
                            ? root_set_from_x(m, nr.x)
                            : make_root_set(m, std::move(eta));
    double res = std::numeric_limits<double>::infinity();
    try {
        res = max_of(bae_residual(m, candidate, tol));
    } catch (const Error&) {
    }
    if (res <= tol.polish && res <= seed_res) {
        out.roots = std::move(candidate);
        out.polished = true;
    } else if (seed_res <= tol.polish) {
        out.polished = true;
    } else {
        out.no_convergence = true;
    }
    return out;
}

PolishResult newton_polish(const ModelSpec& spec, const RootSet& seed, const Tolerances& tol) {
    return newton_polish(models::canonicalize(spec), seed, tol);
}

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Elementary symmetric polynomial e_k of vals.
Complex elementary(const std::vector<Complex>& vals, int k) {
    std::vector<Complex> e(static_cast<std::size_t>(k) + 1);
    e[0] = 1.0;
    for (const Complex& v : vals)
        for (int j = k; j >= 1; --j) e[j] += v * e[j - 1];
    return e[k];
}

}  // namespace

Complex eigenvalue_from_roots(const ModelSpec& spec, const RootSet& roots) {
    const int expected = models::bethe_root_count(spec);
    if (static_cast<int>(roots.size()) != expected) {
        throw Error(ErrorCode::InvalidParameter, "root count " + std::to_string(roots.size()) +
                                                     " does not match the sector (" + std::to_string(expected) + ")");
    }
    Complex s{};
    for (const Complex& e : roots.roots_eta) s += e;
    const double M = spec.M();
    const auto params = models::numerator_parameters(spec);

    switch (spec.family()) {
        case Family::MpCrossed: {
            const auto& p = spec.as<models::MpCrossedParams>();
            const Complex ph = std::exp(Complex(0.0, -p.beta));
            const Complex sum = p.a1 + p.a2;
            return M * (M - 1.0) * std::cos(p.beta) + M * (sum * ph + std::conj(sum) * std::conj(ph)) +
                   2.0 * std::sin(p.beta) * s;
        }
        case Family::SexticI:
            return M * (M - 1.0) * (M - 2.0) / 3.0 + elementary(params, 1) * M * (M - 1.0) +
                   2.0 * elementary(params, 2) * M - 4.0 * s;
        case Family::SexticII: {
            const auto d = models::symmetric_coefficients(spec).deltas;
            Complex e{};
            for (int j = 1; j <= 4; ++j) e += 2.0 * binom(spec.M(), j) * d[j];
            return e - (4.0 * d[3] + 4.0 * M - 6.0) * s;
        }
        case Family::CentrifugalI:
            return 2.0 / 3.0 * M * (M - 1.0) * (M - 2.0) + (elementary(params, 1) + 0.5) * M * (M - 1.0) +
                   elementary(params, 2) * M - s;
        case Family::CentrifugalII: {
            const auto d = models::symmetric_coefficients(spec).deltas;
            const int Mi = spec.M();
            return d[3] * binom(Mi, 1) + (2.0 * d[4] + d[5]) * binom(Mi, 2) + 4.0 * (d[5] + 1.0) * binom(Mi, 3) +
                   8.0 * binom(Mi, 4) - (d[5] + 2.0 * (M - 1.0)) * s;
        }
        case Family::TrigQ: {
            const auto& p = spec.as<models::TrigQParams>();
            const double q = p.q;
            const double qM = std::pow(q, M);
            return elementary(params, 4) / q * (qM - 1.0) + 1.0 / qM - 1.0 -
                   2.0 * p.a * p.b * p.c * p.d * p.e * std::pow(q, M - 1.0) * (1.0 - 1.0 / q) * s;
        }
    }
    throw Error(ErrorCode::UnsupportedFamily, "unknown family");
}

bool BetheSolution::accepted(const Tolerances& tol) const {
    if (flags.degenerate || !(residual_max <= tol.residual)) return false;
    if (E_formula && !(discrepancy <= tol.eigenvalue)) return false;
    return true;
}

namespace {

void finish(BetheSolution& sol, const Canonical& m, const Tolerances& tol) {
    try {
        sol.residuals = bae_residual(m, sol.roots, tol);
        sol.residual_max = max_of(sol.residuals);
    } catch (const Error&) {
        sol.flags.degenerate = true;
        sol.residuals.clear();
        sol.residual_max = std::numeric_limits<double>::infinity();
    }
    sol.flags.degenerate = sol.flags.degenerate || sol.roots.degenerate;
    if (static_cast<int>(sol.roots.size()) != m.root_count()) sol.flags.outside_ansatz = true;
    if (!sol.flags.outside_ansatz) {
        sol.E_formula = eigenvalue_from_roots(sol.spec, sol.roots);
        sol.discrepancy = std::abs(*sol.E_formula - sol.E_oracle) / std::max(1.0, std::abs(sol.E_oracle));
    }
}

}  // namespace

std::vector<BetheSolution> solve(const ModelSpec& spec, const Tolerances& tol) {
    const Canonical m = models::canonicalize(spec);
    const OperatorMatrix om = build_matrix(m);
    const std::vector<OracleEigenpair> pairs = oracle_spectrum(om);
    const int expected = m.root_count();

    std::vector<std::optional<BetheSolution>> slots(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t k) {
        const OracleEigenpair& pair = pairs[k];
        BetheSolution sol{spec, static_cast<int>(k), {}, std::nullopt, pair.eigenvalue, {}, 0.0, 0.0, {}};
        sol.flags.eigenvalue_degenerate = pair.degenerate;
        sol.flags.outside_ansatz = pair.eigenpoly.degree() != expected;
        RootSet seed;
        try {
            seed = extract_roots(pair, m);
        } catch (const Error&) {
            sol.flags.no_convergence = true;
        }
        const PolishResult pr = newton_polish(m, seed, tol);
        sol.roots = pr.roots;
        sol.flags.polished = pr.polished;
        sol.flags.jacobian_singular = pr.jacobian_singular;
        sol.flags.no_convergence = sol.flags.no_convergence || pr.no_convergence;
        finish(sol, m, tol);
        slots[k] = std::move(sol);
    });
    std::vector<BetheSolution> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

namespace {

/// Degree-M eigenvector of an upper-triangular matrix by back substitution,
/// returned as a monic polynomial in eta.
PolynomialC top_eigenpoly(const MatrixC& a) {
    const Eigen::Index n = a.rows();
    const Complex lambda = a(n - 1, n - 1);
    std::vector<Complex> v(static_cast<std::size_t>(n));
    v[n - 1] = 1.0;
    for (Eigen::Index k = n - 2; k >= 0; --k) {
        Complex acc{};
        for (Eigen::Index j = k + 1; j < n; ++j) acc += a(k, j) * v[j];
        const Complex d = a(k, k) - lambda;
        if (std::abs(d) < 1e-12 * std::max(1.0, std::abs(lambda))) {
            throw Error(ErrorCode::NoConvergence, "homotopy start has a degenerate diagonal");
        }
        v[k] = -acc / d;
    }
    return PolynomialC(std::move(v), Variable::Eta);
}

}  // namespace

BetheSolution solve_homotopy(const ModelSpec& spec, const Tolerances& tol) {
    const Family fam = spec.family();
    if (fam != Family::MpCrossed && fam != Family::TrigQ) {
        throw Error(ErrorCode::UnsupportedFamily, "homotopy seeding is available for mp-crossed and trig-q only");
    }
    const Canonical target = models::canonicalize(spec);
    auto at = [&](double t) {
        Canonical c = target;
        if (fam == Family::MpCrossed) {
            c.beta = t * target.beta;
            c.compensation = -2.0 * c.M * std::sin(c.beta);
        } else {
            c.factors[0] = t * target.factors[0];
            Complex prod = 1.0;
            for (const Complex& p : c.factors) prod *= p;
            c.compensation = -2.0 * prod / c.q * (1.0 - std::pow(c.q, c.M));
        }
        return c;
    };

    RootSet roots;
    if (target.M > 0) {
        const Canonical start = at(0.0);
        const OperatorMatrix om = build_matrix(start);
        roots = make_root_set(start, poly_roots(top_eigenpoly(om.matrix)));
        Tolerances step_tol = tol;
        step_tol.polish = std::max(tol.polish, 1e-10);
        double t = 0.0;
        double dt = 1.0 / 16.0;
        while (t < 1.0) {
            const double t_next = std::min(1.0, t + dt);
            const PolishResult pr = newton_polish(at(t_next), roots, step_tol);
            if (pr.polished) {
                roots = pr.roots;
                t = t_next;
                dt = std::min(dt * 1.5, 0.25);
            } else {
                dt *= 0.5;
                if (dt < 1.0 / 65536.0) {
                    std::ostringstream os;
                    os << "homotopy step collapsed at t = " << t;
                    throw Error(ErrorCode::NoConvergence, os.str());
                }
            }
        }
    }
    const PolishResult pr = newton_polish(target, roots, tol);

    BetheSolution sol{spec, 0, pr.roots, std::nullopt, {}, {}, 0.0, 0.0, {}};
    sol.flags.polished = pr.polished;
    sol.flags.jacobian_singular = pr.jacobian_singular;
    sol.flags.no_convergence = pr.no_convergence;
    const Complex e = eigenvalue_from_roots(spec, sol.roots);
    const std::vector<Complex> spectrum = eigenvalues_general(build_matrix(target).matrix);
    sol.E_oracle = *std::min_element(spectrum.begin(), spectrum.end(), [&](Complex a, Complex b) {
        return std::abs(a - e) < std::abs(b - e);
    });
    finish(sol, target, tol);
    return sol;
}

}  // namespace qes
