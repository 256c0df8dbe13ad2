#include <algorithm>
#include <cmath>
#include <sstream>

#include "qes/hamiltonian.hpp"

namespace qes {

using models::Canonical;
using models::Coordinate;
using models::Sector;

namespace {

constexpr double kDivisionTol = 1e-9;

/// Sum_k c[k] z^{low + k}.
struct Laurent {
    int low = 0;
    std::vector<Complex> c;

    Complex at(int power) const {
        const int k = power - low;
        return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : Complex{};
    }
    int high() const { return low + static_cast<int>(c.size()) - 1; }
    double max_abs() const {
        double m = 0.0;
        for (const Complex& v : c) m = std::max(m, std::abs(v));
        return m;
    }
};

Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.c.empty() || b.c.empty()) return {};
    Laurent r{a.low + b.low, std::vector<Complex>(a.c.size() + b.c.size() - 1)};
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

Laurent axpy(const Laurent& a, Complex s, const Laurent& b) {  // a + s b
    if (a.c.empty() && b.c.empty()) return {};
    const int lo = a.c.empty() ? b.low : (b.c.empty() ? a.low : std::min(a.low, b.low));
    const int hi = a.c.empty() ? b.high() : (b.c.empty() ? a.high() : std::max(a.high(), b.high()));
    Laurent r{lo, std::vector<Complex>(static_cast<std::size_t>(hi - lo + 1))};
    for (std::size_t k = 0; k < a.c.size(); ++k) r.c[a.low - lo + k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) r.c[b.low - lo + k] += s * b.c[k];
    return r;
}

/// f(s z)
Laurent dilate(const Laurent& a, double s) {
    Laurent r = a;
    for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] *= std::pow(s, a.low + static_cast<int>(k));
    return r;
}

/// Exact division by an ordinary polynomial d(z) with d(0) != 0.
Laurent divide(const Laurent& a, std::vector<Complex> d) {
    if (a.c.empty()) return {};
    PolynomialC q = poly_divide_exact(PolynomialC(a.c, Variable::Z), PolynomialC(std::move(d), Variable::Z),
                                      kDivisionTol);
    return {a.low, {q.coeffs().begin(), q.coeffs().end()}};
}

/// eta^k = ((z + 1/z) / 2)^k for k = 0..n.
std::vector<Laurent> eta_powers(int n) {
    std::vector<Laurent> out;
    out.push_back({0, {1.0}});
    const Laurent e{-1, {0.5, 0.0, 0.5}};
    for (int k = 1; k <= n; ++k) out.push_back(out.back() * e);
    return out;
}

Laurent to_laurent(const PolynomialC& p) {
    const auto pw = eta_powers(std::max(p.degree(), 0));
    Laurent r;
    for (int k = 0; k <= p.degree(); ++k) r = axpy(r, p[k], pw[k]);
    return r;
}

/// Greedy top-down conversion of a symmetric Laurent polynomial to eta
/// powers. Whatever asymmetric part is left over is returned in `rest`.
std::vector<Complex> to_eta(Laurent a, double& rest) {
    const int n = std::max(a.high(), 0);
    const auto pw = eta_powers(n);
    std::vector<Complex> out(static_cast<std::size_t>(n) + 1);
    for (int k = n; k >= 0; --k) {
        out[k] = a.at(k) * std::pow(2.0, k);
        if (out[k] != Complex{}) a = axpy(a, -out[k], pw[k]);
    }
    rest = a.max_abs();
    return out;
}

struct Applied {
    PolynomialC result;
    double scale = 0.0;  // magnitude of the largest intermediate term
};

Applied apply_x(const Canonical& m, const PolynomialC& psi) {
    if (psi.variable() != Variable::X) {
        throw Error(ErrorCode::InvalidParameter, "H~ on this family acts on polynomials in x");
    }
    PolynomialC n({std::exp(Complex(0.0, -m.beta))});
    PolynomialC ns({std::exp(Complex(0.0, m.beta))});
    for (const Complex& p : m.factors) {
        n = n * PolynomialC({p, kI});
        ns = ns * PolynomialC({std::conj(p), -kI});
    }
    const PolynomialC dm = poly_shift(psi, -kI) - psi;
    const PolynomialC dp = poly_shift(psi, kI) - psi;
    PolynomialC t1 = n * dm;
    PolynomialC t2 = ns * dp;
    PolynomialC alpha_psi = PolynomialC::monomial(m.coordinate == Coordinate::Linear ? 1 : 2, Variable::X,
                                                  m.compensation) *
                            psi;
    Applied out;
    if (m.centrifugal) {
        // V = N / (2ix (1 + 2ix)), V* = N* / (-2ix (1 - 2ix)); only the sum of
        // the two terms is divisible by x.
        t1 = poly_divide_exact(t1, PolynomialC({1.0, 2.0 * kI}), kDivisionTol);
        t2 = poly_divide_exact(t2, PolynomialC({1.0, -2.0 * kI}), kDivisionTol);
        out.scale = std::max(t1.max_abs(), t2.max_abs());
        out.result = poly_divide_exact(t1 - t2, PolynomialC({0.0, 2.0 * kI}), kDivisionTol);
    } else {
        out.scale = std::max(t1.max_abs(), t2.max_abs());
        out.result = t1 + t2;
    }
    out.scale = std::max({out.scale, alpha_psi.max_abs(), psi.max_abs()});
    out.result += alpha_psi;
    return out;
}

struct AppliedQ {
    Laurent result;
    double scale = 0.0;
};

AppliedQ apply_q(const Canonical& m, const PolynomialC& psi) {
    if (psi.variable() != Variable::Eta) {
        throw Error(ErrorCode::InvalidParameter, "H~ on the q-family acts on polynomials in eta");
    }
    const double q = m.q;
    const Laurent f = to_laurent(psi);
    // V = P / ((1 - z^2)(1 - q z^2)), V* = z^{4-n} Q / ((z^2 - 1)(z^2 - q)),
    // P = prod (1 - p z), Q = prod (z - p*).
    Laurent P{0, {1.0}};
    Laurent Q{0, {1.0}};
    for (const Complex& p : m.factors) {
        P = P * Laurent{0, {1.0, -p}};
        Q = Q * Laurent{0, {-std::conj(p), 1.0}};
    }
    Q.low += 4 - static_cast<int>(m.factors.size());
    const Laurent a = divide(P * axpy(dilate(f, q), -1.0, f), {1.0, 0.0, -q});
    const Laurent b = divide(Q * axpy(dilate(f, 1.0 / q), -1.0, f), {-q, 0.0, 1.0});
    AppliedQ out;
    const Laurent alpha{-1, {0.5 * m.compensation, 0.0, 0.5 * m.compensation}};
    const Laurent alpha_f = alpha * f;
    out.scale = std::max({a.max_abs(), b.max_abs(), alpha_f.max_abs(), f.max_abs()});
    out.result = axpy(divide(axpy(a, -1.0, b), {1.0, 0.0, -1.0}), 1.0, alpha_f);
    return out;
}

[[noreturn]] void leak(const Canonical& m, int column, double overflow) {
    std::ostringstream os;
    os << "H~ maps basis_" << column << " outside V_" << m.M << " (relative overflow " << overflow << ")";
    throw Error(ErrorCode::SubspaceLeak, os.str());
}

}  // namespace

PolynomialC basis_polynomial(const Canonical& m, int k) {
    switch (m.coordinate) {
        case Coordinate::Linear: return PolynomialC::monomial(k, Variable::X);
        case Coordinate::Square:
            return PolynomialC::monomial(m.sector == Sector::Odd ? 2 * k + 1 : 2 * k, Variable::X);
        case Coordinate::Cosine: return PolynomialC::monomial(k, Variable::Eta);
    }
    return {};
}

PolynomialC apply_htilde(const Canonical& m, const PolynomialC& psi) {
    if (m.coordinate != Coordinate::Cosine) return apply_x(m, psi).result;
    double rest = 0.0;
    const AppliedQ r = apply_q(m, psi);
    std::vector<Complex> c = to_eta(r.result, rest);
    if (rest > kLeakTolerance * std::max(r.scale, 1e-300)) {
        throw Error(ErrorCode::InvalidParameter, "H~ psi is not symmetric under z -> 1/z");
    }
    return PolynomialC(std::move(c), Variable::Eta);
}

PolynomialC apply_htilde(const models::ModelSpec& spec, const PolynomialC& psi) {
    return apply_htilde(models::canonicalize(spec), psi);
}

OperatorMatrix build_matrix(const Canonical& m) {
    const int dim = m.dimension();
    if (dim < 1) throw Error(ErrorCode::InvalidParameter, "empty invariant subspace");
    OperatorMatrix om{m, MatrixC::Zero(dim, dim), 0.0};
    for (int k = 0; k < dim; ++k) {
        const PolynomialC basis = basis_polynomial(m, k);
        std::vector<Complex> coords;
        double overflow = 0.0;
        double scale = 0.0;
        if (m.coordinate == Coordinate::Cosine) {
            const AppliedQ r = apply_q(m, basis);
            coords = to_eta(r.result, overflow);
            scale = r.scale;
        } else {
            const Applied r = apply_x(m, basis);
            scale = r.scale;
            const int offset = m.sector == Sector::Odd ? 1 : 0;
            const int step = m.coordinate == Coordinate::Square ? 2 : 1;
            for (int p = 0; p <= r.result.degree(); ++p) {
                const int rel = p - offset;
                if (rel >= 0 && rel % step == 0) {
                    const std::size_t idx = static_cast<std::size_t>(rel / step);
                    if (coords.size() <= idx) coords.resize(idx + 1);
                    coords[idx] = r.result[p];
                } else {
                    overflow = std::max(overflow, std::abs(r.result[p]));
                }
            }
        }
        for (std::size_t j = 0; j < coords.size(); ++j) {
            if (static_cast<int>(j) < dim) {
                om.matrix(static_cast<Eigen::Index>(j), k) = coords[j];
            } else {
                overflow = std::max(overflow, std::abs(coords[j]));
            }
        }
        scale = std::max({scale, om.matrix.col(k).cwiseAbs().maxCoeff(), 1e-300});
        const double rel = overflow / scale;
        om.max_overflow = std::max(om.max_overflow, rel);
        if (rel > kLeakTolerance) leak(m, k, rel);
    }
    return om;
}

OperatorMatrix build_matrix(const models::ModelSpec& spec) { return build_matrix(models::canonicalize(spec)); }

}  // namespace qes
