#pragma once

// Complex polynomial arithmetic, dense eigensolver, Newton iteration and the
// special functions (log-gamma, q-Pochhammer) used by every other module.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qes/error.hpp"

namespace qes {

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};

/// Column-major dense complex matrix.
using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;

enum class Variable { X, Eta, Z };

/// Dense polynomial, coefficient k multiplies variable^k. Exact zero leading
/// coefficients are trimmed, so the zero polynomial has no coefficients and
/// degree -1.
class PolynomialC {
public:
    PolynomialC() = default;
    explicit PolynomialC(std::vector<Complex> coeffs, Variable var = Variable::X);

    static PolynomialC monomial(int k, Variable var = Variable::X, Complex c = 1.0);
    static PolynomialC from_roots(std::span<const Complex> roots, Variable var = Variable::X);

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    Variable variable() const noexcept { return var_; }
    std::span<const Complex> coeffs() const noexcept { return c_; }

    /// Coefficient of variable^k; zero beyond the degree.
    Complex operator[](std::size_t k) const noexcept { return k < c_.size() ? c_[k] : Complex{}; }
    Complex leading() const noexcept { return c_.empty() ? Complex{} : c_.back(); }
    double max_abs() const noexcept;

    Complex operator()(Complex x) const noexcept;

    PolynomialC& operator+=(const PolynomialC& rhs);
    PolynomialC& operator-=(const PolynomialC& rhs);
    PolynomialC& operator*=(Complex s);

    friend PolynomialC operator+(PolynomialC lhs, const PolynomialC& rhs) { return lhs += rhs; }
    friend PolynomialC operator-(PolynomialC lhs, const PolynomialC& rhs) { return lhs -= rhs; }
    friend PolynomialC operator*(PolynomialC lhs, Complex s) { return lhs *= s; }
    friend PolynomialC operator*(Complex s, PolynomialC rhs) { return rhs *= s; }
    friend PolynomialC operator*(const PolynomialC& lhs, const PolynomialC& rhs);

private:
    void trim() noexcept;

    std::vector<Complex> c_;
    Variable var_ = Variable::X;
};

/// q(x) = p(x + c), by exact binomial expansion.
PolynomialC poly_shift(const PolynomialC& p, Complex c);

PolynomialC poly_mul(const PolynomialC& p, const PolynomialC& q);

/// Quotient of synthetic division. The remainder must satisfy
/// |r|_inf <= tol * |p|_inf, otherwise InexactDivision.
PolynomialC poly_divide_exact(const PolynomialC& p, const PolynomialC& d, double tol);

/// All roots with multiplicity, from the eigenvalues of the balanced companion
/// matrix followed by a guarded Newton polish on p.
std::vector<Complex> poly_roots(const PolynomialC& p);
/// Same without the relative leading-coefficient guard; for eigenpolys whose
/// roots spread over many decades (only a zero leading term is rejected).
std::vector<Complex> monic_roots(const PolynomialC& p);

struct EigenDecomposition {
    std::vector<Complex> eigenvalues;
    std::vector<VectorC> eigenvectors;  // unit Euclidean norm
};

inline constexpr int kMaxEigenDimension = 256;

/// Full eigendecomposition of a general (non-normal) complex matrix.
EigenDecomposition eig_general(const MatrixC& a);

/// Eigenvalues only; used for companion matrices.
std::vector<Complex> eigenvalues_general(const MatrixC& a);

struct NewtonOptions {
    double tol = 1e-12;
    int max_iterations = 100;
    int max_halvings = 20;
    double max_condition = 1e12;
};

enum class NewtonStatus { Converged, NoConvergence, SingularJacobian };

struct NewtonResult {
    std::vector<Complex> x;  // best iterate found
    double residual_inf = 0.0;
    int iterations = 0;
    NewtonStatus status = NewtonStatus::Converged;
};

using ResidualFunction = std::function<std::vector<Complex>(std::span<const Complex>)>;

/// Damped Newton with a central-difference Jacobian. Never throws on
/// non-convergence; the status says what happened.
NewtonResult newton_iterate(const ResidualFunction& f, std::vector<Complex> x0,
                            const NewtonOptions& opts = {});

/// Same iteration, but raises NoConvergence / SingularJacobian on failure.
std::vector<Complex> newton_solve(const ResidualFunction& f, std::vector<Complex> x0,
                                  const NewtonOptions& opts = {});

/// Principal branch of log Gamma (analytic continuation from the positive
/// real axis, cut along the negative real axis).
Complex log_gamma(Complex z);

/// (a; q)_inf = prod_{n>=0} (1 - a q^n), truncated once |a q^n| < 1e-17.
Complex q_pochhammer_inf(Complex a, double q);

}  // namespace qes
