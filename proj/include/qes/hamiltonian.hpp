#pragma once

// Similarity-transformed Hamiltonian acting on the polynomial part of the
// wavefunction, and its matrix on the invariant subspace.

#include "qes/models.hpp"
#include "qes/numerics.hpp"

namespace qes {

/// Relative tolerance of the invariance check (overflow / column scale).
inline constexpr double kLeakTolerance = 1e-10;

struct OperatorMatrix {
    models::Canonical model;
    MatrixC matrix;  // column k = H~ applied to basis_k, in eta-monomial coordinates
    /// Largest overflow coefficient seen, relative to its column scale.
    double max_overflow = 0.0;

    int dim() const noexcept { return static_cast<int>(matrix.rows()); }
};

/// H~ psi = V (psi(x - i) - psi(x)) + V* (psi(x + i) - psi(x)) + alpha psi.
/// Linear/Square coordinates: psi and the result are polynomials in x.
/// Cosine coordinate: psi and the result are polynomials in eta = cos x; the
/// shifts act as z -> qz, z -> z/q on the Laurent form.
PolynomialC apply_htilde(const models::Canonical& m, const PolynomialC& psi);
PolynomialC apply_htilde(const models::ModelSpec& spec, const PolynomialC& psi);

/// basis_k as a polynomial in the operator's native variable: x^k, x^{2k},
/// x^{2k+1} (odd sector) or eta^k.
PolynomialC basis_polynomial(const models::Canonical& m, int k);

/// Builds the matrix and checks H~ V_M within V_M; throws SubspaceLeak when an
/// overflow coefficient exceeds kLeakTolerance times its column scale.
OperatorMatrix build_matrix(const models::Canonical& m);
OperatorMatrix build_matrix(const models::ModelSpec& spec);

}  // namespace qes
