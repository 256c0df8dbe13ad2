#pragma once

// Brute-force oracle: diagonalize the operator matrix, rebuild the polynomial
// eigenfunctions and pull out candidate Bethe roots.

#include <vector>

#include "qes/hamiltonian.hpp"

namespace qes {

/// Relative gap below which two eigenvalues are reported as degenerate.
inline constexpr double kDegenerateEigenvalueTol = 1e-8;
/// Subdiagonal entries below this fraction of the largest matrix entry split
/// the Hessenberg matrix into invariant blocks (exactly solvable points).
inline constexpr double kSubdiagonalSplit = 1e-14;
/// Roots closer than this are flagged as colliding.
inline constexpr double kRootCollisionTol = 1e-8;

struct OracleEigenpair {
    Complex eigenvalue;
    /// Monic polynomial in eta; the odd sector's x prefactor is implicit.
    PolynomialC eigenpoly;
    bool prefactor_parity = false;
    bool degenerate = false;
    /// |A v - lambda v| / |A| for the unit eigenvector.
    double residual = 0.0;
};

struct RootSet {
    std::vector<Complex> roots_x;
    std::vector<Complex> roots_eta;
    bool degenerate = false;

    std::size_t size() const noexcept { return roots_eta.size(); }
};

/// Eigenpairs sorted by (Re lambda, Im lambda).
std::vector<OracleEigenpair> oracle_spectrum(const OperatorMatrix& om);

/// Representative x for a root eta: Re x > 0 (or Re x = 0, Im x >= 0) for
/// eta = x^2; for eta = cos x the z = e^{ix} with |z| <= 1 (tie: Im z >= 0).
Complex representative_x(const models::Canonical& m, Complex eta);

/// Builds both root lists from eta roots and flags collisions.
RootSet make_root_set(const models::Canonical& m, std::vector<Complex> roots_eta);
/// Same, starting from x values (eta computed from them, x kept as given).
RootSet root_set_from_x(const models::Canonical& m, std::vector<Complex> roots_x);

/// Roots of the eigenpoly, whatever its degree.
RootSet extract_roots(const OracleEigenpair& pair, const models::Canonical& m);
/// Requires the eigenpoly degree to equal bethe_root_count(spec).
RootSet extract_roots(const OracleEigenpair& pair, const models::ModelSpec& spec);

}  // namespace qes
