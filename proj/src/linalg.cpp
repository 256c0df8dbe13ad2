#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qes/numerics.hpp"

namespace qes {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::SectorMismatch: return "SectorMismatch";
        case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
        case ErrorCode::InexactDivision: return "InexactDivision";
        case ErrorCode::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::SingularJacobian: return "SingularJacobian";
        case ErrorCode::PoleOfGamma: return "PoleOfGamma";
        case ErrorCode::PoleOfPotential: return "PoleOfPotential";
        case ErrorCode::DivergentProduct: return "DivergentProduct";
        case ErrorCode::SubspaceLeak: return "SubspaceLeak";
        case ErrorCode::DegenerateRoots: return "DegenerateRoots";
        case ErrorCode::LimitViolation: return "LimitViolation";
    }
    return "Unknown";
}

namespace {

/// Parlett-Reinsch balancing with radix-2 scale factors (exact in floating
/// point). On return a holds D^{-1} A D; the diagonal of D is returned.
Eigen::VectorXd balance(MatrixC& a) {
    const Eigen::Index n = a.rows();
    Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
    constexpr double radix = 2.0;
    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            double g = r / radix;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                d(i) *= f;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
    return d;
}

void require_dimension(const MatrixC& a) {
    if (a.rows() != a.cols() || a.rows() < 1) {
        throw Error(ErrorCode::InvalidParameter, "eigensolver needs a non-empty square matrix");
    }
    if (a.rows() > kMaxEigenDimension) {
        throw Error(ErrorCode::InvalidParameter,
                    "dimension " + std::to_string(a.rows()) + " exceeds " + std::to_string(kMaxEigenDimension));
    }
}

}  // namespace

EigenDecomposition eig_general(const MatrixC& a) {
    require_dimension(a);
    MatrixC b = a;
    const Eigen::VectorXd d = balance(b);
    Eigen::ComplexEigenSolver<MatrixC> solver;
    solver.setMaxIterations(60 * static_cast<Eigen::Index>(a.rows()));
    solver.compute(b, true);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NoConvergence,
                    "complex Schur iteration failed, dim " + std::to_string(a.rows()) + ", budget " +
                        std::to_string(60 * a.rows()) + " iterations");
    }
    EigenDecomposition out;
    const Eigen::Index n = a.rows();
    out.eigenvalues.reserve(n);
    out.eigenvectors.reserve(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues.push_back(solver.eigenvalues()(k));
        VectorC v = d.cast<Complex>().cwiseProduct(solver.eigenvectors().col(k));
        v /= v.norm();
        out.eigenvectors.push_back(std::move(v));
    }
    return out;
}

std::vector<Complex> eigenvalues_general(const MatrixC& a) {
    require_dimension(a);
    MatrixC b = a;
    balance(b);
    Eigen::ComplexEigenSolver<MatrixC> solver;
    solver.setMaxIterations(60 * static_cast<Eigen::Index>(a.rows()));
    solver.compute(b, false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NoConvergence, "complex Schur iteration failed, dim " + std::to_string(a.rows()));
    }
    return {solver.eigenvalues().begin(), solver.eigenvalues().end()};
}

}  // namespace qes
