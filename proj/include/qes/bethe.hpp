#pragma once

// Bethe ansatz equations in cross-multiplied form, Newton polishing of root
// sets, the eigenvalue-from-roots formulas and the solve pipeline.

#include <optional>
#include <utility>
#include <vector>

#include "qes/spectral.hpp"

namespace qes {

struct Tolerances {
    double residual = 1e-9;     // max BAE residual of an accepted solution
    double eigenvalue = 1e-8;   // |E_formula - E_oracle| / max(1, |E|)
    double polish = 1e-11;      // target residual of newton_polish
    double distinct = 1e-10;    // minimal separation of two roots
};

/// The two sides L_j, R_j of the j-th cross-multiplied equation at root
/// x_j, with the other roots given by their eta values.
std::pair<Complex, Complex> bae_sides(const models::Canonical& m, Complex x_j,
                                      const std::vector<Complex>& other_eta);

/// residual_j = |L_j - R_j| / max(|L_j|, |R_j|, eps). Throws DegenerateRoots
/// when two eta roots are closer than tol.distinct, PoleOfPotential when a
/// root sits on a pole of V.
std::vector<double> bae_residual(const models::Canonical& m, const RootSet& roots, const Tolerances& tol = {});
std::vector<double> bae_residual(const models::ModelSpec& spec, const RootSet& roots, const Tolerances& tol = {});

struct PolishResult {
    RootSet roots;
    bool polished = false;           // the returned roots come from Newton
    bool jacobian_singular = false;
    bool no_convergence = false;
    int iterations = 0;
};

/// Newton on the cross-multiplied system in the sector's native variables
/// (eta for the even sextic and centrifugal sectors, x for mp-crossed and
/// the odd sextic sector, z for trig-q). Never throws for numerical failure:
/// the seed comes back with a flag instead.
PolishResult newton_polish(const models::Canonical& m, const RootSet& seed, const Tolerances& tol = {});
PolishResult newton_polish(const models::ModelSpec& spec, const RootSet& seed, const Tolerances& tol = {});

/// Closed-form eigenvalue of each family; depends on the roots only through
/// sum_l eta(x_l). The root count must match the sector.
Complex eigenvalue_from_roots(const models::ModelSpec& spec, const RootSet& roots);

struct SolutionFlags {
    bool polished = false;
    bool degenerate = false;          // colliding roots
    bool jacobian_singular = false;
    bool no_convergence = false;
    bool eigenvalue_degenerate = false;
    bool outside_ansatz = false;      // eigenpoly degree below the root count
};

struct BetheSolution {
    models::ModelSpec spec;
    int index = 0;
    RootSet roots;
    std::optional<Complex> E_formula;  // empty outside the ansatz
    Complex E_oracle;
    std::vector<double> residuals;
    double residual_max = 0.0;
    double discrepancy = 0.0;          // |E_formula - E_oracle| / max(1, |E_oracle|)
    SolutionFlags flags;

    bool accepted(const Tolerances& tol) const;
};

/// Oracle-seeded pipeline: one solution per eigenpair, in the oracle's
/// (Re E, Im E) order.
std::vector<BetheSolution> solve(const models::ModelSpec& spec, const Tolerances& tol = {});

/// Oracle-free seeding for mp-crossed (continuation in beta from 0) and
/// trig-q (continuation in a from 0). Follows the degree-M state of the
/// exactly solvable start, so it yields a single solution; E_oracle is the
/// nearest oracle eigenvalue, reported for comparison only.
BetheSolution solve_homotopy(const models::ModelSpec& spec, const Tolerances& tol = {});

}  // namespace qes
