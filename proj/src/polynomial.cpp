#include <algorithm>
#include <cmath>
#include <string>

#include "qes/numerics.hpp"

namespace qes {

namespace {

void require_same_variable(const PolynomialC& a, const PolynomialC& b) {
    if (!a.is_zero() && !b.is_zero() && a.variable() != b.variable()) {
        throw Error(ErrorCode::InvalidParameter, "polynomials in different variables");
    }
}

}  // namespace

PolynomialC::PolynomialC(std::vector<Complex> coeffs, Variable var) : c_(std::move(coeffs)), var_(var) {
    trim();
}

PolynomialC PolynomialC::monomial(int k, Variable var, Complex c) {
    std::vector<Complex> coeffs(static_cast<std::size_t>(k) + 1);
    coeffs.back() = c;
    return PolynomialC(std::move(coeffs), var);
}

PolynomialC PolynomialC::from_roots(std::span<const Complex> roots, Variable var) {
    std::vector<Complex> c{1.0};
    for (const Complex r : roots) {
        std::vector<Complex> next(c.size() + 1);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return PolynomialC(std::move(c), var);
}

double PolynomialC::max_abs() const noexcept {
    double m = 0.0;
    for (const Complex& v : c_) m = std::max(m, std::abs(v));
    return m;
}

Complex PolynomialC::operator()(Complex x) const noexcept {
    Complex acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

PolynomialC& PolynomialC::operator+=(const PolynomialC& rhs) {
    require_same_variable(*this, rhs);
    if (is_zero()) var_ = rhs.var_;
    if (c_.size() < rhs.c_.size()) c_.resize(rhs.c_.size());
    for (std::size_t k = 0; k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
    trim();
    return *this;
}

PolynomialC& PolynomialC::operator-=(const PolynomialC& rhs) {
    require_same_variable(*this, rhs);
    if (is_zero()) var_ = rhs.var_;
    if (c_.size() < rhs.c_.size()) c_.resize(rhs.c_.size());
    for (std::size_t k = 0; k < rhs.c_.size(); ++k) c_[k] -= rhs.c_[k];
    trim();
    return *this;
}

PolynomialC& PolynomialC::operator*=(Complex s) {
    for (Complex& v : c_) v *= s;
    trim();
    return *this;
}

PolynomialC operator*(const PolynomialC& lhs, const PolynomialC& rhs) { return poly_mul(lhs, rhs); }

void PolynomialC::trim() noexcept {
    while (!c_.empty() && c_.back() == Complex{}) c_.pop_back();
}

PolynomialC poly_shift(const PolynomialC& p, Complex c) {
    const int n = p.degree();
    if (n <= 0) return p;
    // Pascal rows built incrementally: coefficient of x^j in (x + c)^k is C(k, j) c^(k - j).
    std::vector<Complex> out(static_cast<std::size_t>(n) + 1);
    std::vector<double> binom{1.0};
    std::vector<Complex> cpow{1.0};
    for (int k = 1; k <= n; ++k) cpow.push_back(cpow.back() * c);
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            std::vector<double> next(static_cast<std::size_t>(k) + 1, 1.0);
            for (int j = 1; j < k; ++j) next[j] = binom[j - 1] + binom[j];
            binom = std::move(next);
        }
        const Complex a = p[static_cast<std::size_t>(k)];
        if (a == Complex{}) continue;
        for (int j = 0; j <= k; ++j) out[j] += a * binom[j] * cpow[k - j];
    }
    return PolynomialC(std::move(out), p.variable());
}

PolynomialC poly_mul(const PolynomialC& p, const PolynomialC& q) {
    if (p.is_zero() || q.is_zero()) return PolynomialC({}, p.is_zero() ? q.variable() : p.variable());
    require_same_variable(p, q);
    const auto a = p.coeffs();
    const auto b = q.coeffs();
    std::vector<Complex> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return PolynomialC(std::move(out), p.variable());
}

PolynomialC poly_divide_exact(const PolynomialC& p, const PolynomialC& d, double tol) {
    if (d.is_zero()) throw Error(ErrorCode::InvalidParameter, "division by the zero polynomial");
    require_same_variable(p, d);
    if (p.degree() < d.degree()) {
        if (p.max_abs() > 0.0) {
            throw Error(ErrorCode::InexactDivision, "numerator degree below divisor degree");
        }
        return PolynomialC({}, p.variable());
    }
    std::vector<Complex> rem(p.coeffs().begin(), p.coeffs().end());
    const auto dc = d.coeffs();
    const int dn = d.degree();
    const int qn = p.degree() - dn;
    std::vector<Complex> quot(static_cast<std::size_t>(qn) + 1);
    for (int k = qn; k >= 0; --k) {
        const Complex t = rem[k + dn] / dc[dn];
        quot[k] = t;
        for (int j = 0; j <= dn; ++j) rem[k + j] -= t * dc[j];
    }
    double rmax = 0.0;
    for (int j = 0; j < dn; ++j) rmax = std::max(rmax, std::abs(rem[j]));
    if (rmax > tol * p.max_abs()) {
        throw Error(ErrorCode::InexactDivision,
                    "remainder " + std::to_string(rmax) + " exceeds tolerance relative to |p| = " +
                        std::to_string(p.max_abs()));
    }
    return PolynomialC(std::move(quot), p.variable());
}

namespace {

std::vector<Complex> companion_roots(const PolynomialC& p) {
    const int n = p.degree();
    const auto c = p.coeffs();
    const Complex lead = c[n];
    MatrixC companion = MatrixC::Zero(n, n);
    for (int j = 0; j < n; ++j) companion(0, j) = -c[n - 1 - j] / lead;
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    std::vector<Complex> roots = eigenvalues_general(companion);

    // Newton on p itself; a step is kept only when it lowers |p|, which keeps
    // clustered and multiple roots from being pushed onto a neighbour.
    std::vector<Complex> dc(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) dc[k - 1] = static_cast<double>(k) * c[k];
    const PolynomialC dp(dc, p.variable());
    for (Complex& r : roots) {
        Complex fr = p(r);
        for (int it = 0; it < 8; ++it) {
            const Complex d = dp(r);
            if (d == Complex{}) break;
            const Complex trial = r - fr / d;
            const Complex ft = p(trial);
            if (!(std::abs(ft) < std::abs(fr))) break;
            r = trial;
            fr = ft;
        }
    }
    return roots;
}

}  // namespace

std::vector<Complex> poly_roots(const PolynomialC& p) {
    if (p.degree() < 1) throw Error(ErrorCode::InvalidParameter, "poly_roots needs degree >= 1");
    if (std::abs(p.leading()) < 1e-14 * p.max_abs()) {
        throw Error(ErrorCode::DegenerateLeadingCoefficient, "leading coefficient negligible");
    }
    return companion_roots(p);
}

std::vector<Complex> monic_roots(const PolynomialC& p) {
    if (p.degree() < 1) throw Error(ErrorCode::InvalidParameter, "monic_roots needs degree >= 1");
    if (p.leading() == Complex{} || !std::isfinite(std::abs(p.leading()))) {
        throw Error(ErrorCode::DegenerateLeadingCoefficient, "leading coefficient vanishes");
    }
    return companion_roots(p);
}

}  // namespace qes
