#include <algorithm>
#include <cmath>
#include <limits>

#include "qes/spectral.hpp"

namespace qes {

using models::Canonical;
using models::Coordinate;

namespace {

/// H~ raises the eta-degree by at most one, so the matrix is upper
/// Hessenberg. A vanishing subdiagonal entry (k+1, k) makes span{eta^0..eta^k}
/// invariant; eigenvalues of the diagonal block ending at k then belong to
/// eigenpolynomials of degree k. Returns the block end indices.
std::vector<int> block_ends(const MatrixC& a) {
    const int n = static_cast<int>(a.rows());
    const double norm = a.cwiseAbs().maxCoeff();
    std::vector<int> ends;
    for (int k = 0; k + 1 < n; ++k)
        if (std::abs(a(k + 1, k)) <= kSubdiagonalSplit * norm) ends.push_back(k);
    ends.push_back(n - 1);
    return ends;
}

OracleEigenpair make_pair(const MatrixC& a, Complex lambda, const VectorC& v, int top, bool odd) {
    OracleEigenpair p;
    p.eigenvalue = lambda;
    p.prefactor_parity = odd;
    std::vector<Complex> c(static_cast<std::size_t>(top) + 1);
    for (int j = 0; j < top; ++j) c[j] = v(j) / v(top);
    c[top] = 1.0;
    VectorC full = VectorC::Zero(a.rows());
    full.head(v.size()) = v / v.norm();
    const double norm = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
    p.residual = (a * full - lambda * full).cwiseAbs().maxCoeff() / norm;
    p.eigenpoly = PolynomialC(std::move(c), Variable::Eta);
    return p;
}

}  // namespace

std::vector<OracleEigenpair> oracle_spectrum(const OperatorMatrix& om) {
    const MatrixC& a = om.matrix;
    const int n = om.dim();
    const bool odd = om.model.odd_prefactor();
    const std::vector<int> ends = block_ends(a);

    std::vector<OracleEigenpair> out;
    out.reserve(n);
    if (ends.size() == 1) {
        const EigenDecomposition eig = eig_general(a);
        for (int k = 0; k < n; ++k) out.push_back(make_pair(a, eig.eigenvalues[k], eig.eigenvectors[k], n - 1, odd));
    } else {
        int start = 0;
        for (const int e : ends) {
            const int len = e + 1;
            const EigenDecomposition lead = eig_general(a.topLeftCorner(len, len));
            std::vector<bool> used(lead.eigenvalues.size(), false);
            for (const Complex& mu : eigenvalues_general(a.block(start, start, len - start, len - start))) {
                std::size_t best = 0;
                double gap = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < lead.eigenvalues.size(); ++i) {
                    const double d = std::abs(lead.eigenvalues[i] - mu);
                    if (!used[i] && d < gap) {
                        gap = d;
                        best = i;
                    }
                }
                used[best] = true;
                out.push_back(make_pair(a, lead.eigenvalues[best], lead.eigenvectors[best], e, odd));
            }
            start = len;
        }
    }
    std::sort(out.begin(), out.end(), [](const OracleEigenpair& x, const OracleEigenpair& y) {
        if (x.eigenvalue.real() != y.eigenvalue.real()) return x.eigenvalue.real() < y.eigenvalue.real();
        return x.eigenvalue.imag() < y.eigenvalue.imag();
    });
    double scale = 1.0;
    for (const auto& p : out) scale = std::max(scale, std::abs(p.eigenvalue));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(out[i].eigenvalue - out[j].eigenvalue) < kDegenerateEigenvalueTol * scale) {
                out[i].degenerate = out[j].degenerate = true;
            }
        }
    }
    return out;
}

Complex representative_x(const Canonical& m, Complex eta) {
    switch (m.coordinate) {
        case Coordinate::Linear: return eta;
        case Coordinate::Square: {
            Complex x = std::sqrt(eta);
            if (x.real() < 0.0 || (x.real() == 0.0 && x.imag() < 0.0)) x = -x;
            return x;
        }
        case Coordinate::Cosine: {
            // z^2 - 2 eta z + 1 = 0; the two roots are z and 1/z. Take the
            // larger one without cancellation, then invert it.
            const Complex s = std::sqrt(eta * eta - 1.0);
            const Complex big = std::abs(eta + s) >= std::abs(eta - s) ? eta + s : eta - s;
            Complex z = 1.0 / big;
            if (std::abs(std::abs(big) - 1.0) < 1e-15 && z.imag() < 0.0) z = big;
            return -kI * std::log(z);
        }
    }
    return eta;
}

namespace {

bool collide(const std::vector<Complex>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (std::abs(v[i] - v[j]) < kRootCollisionTol * std::max(1.0, std::abs(v[i]))) return true;
    return false;
}

}  // namespace

RootSet make_root_set(const Canonical& m, std::vector<Complex> roots_eta) {
    RootSet r;
    r.roots_x.reserve(roots_eta.size());
    for (const Complex& e : roots_eta) r.roots_x.push_back(representative_x(m, e));
    r.roots_eta = std::move(roots_eta);
    r.degenerate = collide(r.roots_eta);
    return r;
}

RootSet root_set_from_x(const Canonical& m, std::vector<Complex> roots_x) {
    RootSet r;
    r.roots_eta.reserve(roots_x.size());
    for (const Complex& x : roots_x) r.roots_eta.push_back(models::eta(m, x));
    r.roots_x = std::move(roots_x);
    r.degenerate = collide(r.roots_eta);
    return r;
}

RootSet extract_roots(const OracleEigenpair& pair, const Canonical& m) {
    const PolynomialC& p = pair.eigenpoly;
    const int n = p.degree();
    if (n < 1) return {};
    // Roots often spread over many decades (q-family), so the relative
    // leading-coefficient guard of poly_roots does not apply; the eigenpoly is
    // monic by construction.
    std::vector<Complex> roots = monic_roots(p);
    return make_root_set(m, std::move(roots));
}

RootSet extract_roots(const OracleEigenpair& pair, const models::ModelSpec& spec) {
    const int expected = models::bethe_root_count(spec);
    if (pair.eigenpoly.degree() != expected) {
        throw Error(ErrorCode::InvalidParameter, "eigenpoly degree " + std::to_string(pair.eigenpoly.degree()) +
                                                     " differs from the root count " + std::to_string(expected));
    }
    return extract_roots(pair, models::canonicalize(spec));
}

}  // namespace qes
