#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "qes/numerics.hpp"

namespace qes {

namespace {

double inf_norm(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const Complex& x : v) {
        const double a = std::abs(x);
        if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
        m = std::max(m, a);
    }
    return m;
}

}  // namespace

NewtonResult newton_iterate(const ResidualFunction& f, std::vector<Complex> x0, const NewtonOptions& opts) {
    NewtonResult res;
    res.x = std::move(x0);
    const std::size_t n = res.x.size();
    std::vector<Complex> fx = f(res.x);
    res.residual_inf = inf_norm(fx);
    if (n == 0 || res.residual_inf <= opts.tol) return res;

    for (int it = 1; it <= opts.max_iterations; ++it) {
        res.iterations = it;
        MatrixC jac(static_cast<Eigen::Index>(fx.size()), static_cast<Eigen::Index>(n));
        std::vector<Complex> probe = res.x;
        for (std::size_t k = 0; k < n; ++k) {
            const double h = 1e-6 * std::max(1.0, std::abs(res.x[k]));
            probe[k] = res.x[k] + h;
            const std::vector<Complex> fp = f(probe);
            probe[k] = res.x[k] - h;
            const std::vector<Complex> fm = f(probe);
            probe[k] = res.x[k];
            for (std::size_t i = 0; i < fx.size(); ++i) jac(i, k) = (fp[i] - fm[i]) / (2.0 * h);
        }
        Eigen::PartialPivLU<MatrixC> lu(jac);
        const double rcond = lu.rcond();
        if (!(rcond * opts.max_condition > 1.0)) {
            res.status = NewtonStatus::SingularJacobian;
            return res;
        }
        VectorC rhs(static_cast<Eigen::Index>(fx.size()));
        for (std::size_t i = 0; i < fx.size(); ++i) rhs(i) = -fx[i];
        const VectorC step = lu.solve(rhs);

        double lambda = 1.0;
        bool accepted = false;
        std::vector<Complex> trial(n);
        for (int h = 0; h <= opts.max_halvings; ++h, lambda *= 0.5) {
            for (std::size_t k = 0; k < n; ++k) trial[k] = res.x[k] + lambda * step(k);
            std::vector<Complex> ft = f(trial);
            const double r = inf_norm(ft);
            if (r < res.residual_inf) {
                res.x = trial;
                fx = std::move(ft);
                res.residual_inf = r;
                accepted = true;
                break;
            }
        }
        if (res.residual_inf <= opts.tol) return res;
        if (!accepted) break;
    }
    res.status = NewtonStatus::NoConvergence;
    return res;
}

std::vector<Complex> newton_solve(const ResidualFunction& f, std::vector<Complex> x0, const NewtonOptions& opts) {
    NewtonResult r = newton_iterate(f, std::move(x0), opts);
    switch (r.status) {
        case NewtonStatus::Converged: return std::move(r.x);
        case NewtonStatus::SingularJacobian:
            throw Error(ErrorCode::SingularJacobian,
                        "Jacobian condition estimate above " + std::to_string(opts.max_condition));
        case NewtonStatus::NoConvergence: break;
    }
    throw Error(ErrorCode::NoConvergence, "residual " + std::to_string(r.residual_inf) + " after " +
                                              std::to_string(r.iterations) + " iterations");
}

}  // namespace qes
