#include <algorithm>
#include <numbers>

#include <gtest/gtest.h>

#include "qes/bethe.hpp"
#include "support.hpp"

using namespace qes;
using namespace qes::models;

namespace {

ModelSpec mp_worked(int M) { return ModelSpec::make(MpCrossedParams{1.0, 1.0, std::numbers::pi / 2}, M); }

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST(Bethe, WorkedResiduals) {
    const Canonical m = canonicalize(mp_worked(1));
    EXPECT_LE(max_of(bae_residual(m, root_set_from_x(m, {1.0}))), 1e-15);
    EXPECT_LE(max_of(bae_residual(m, root_set_from_x(m, {-1.0}))), 1e-15);
    EXPECT_GT(max_of(bae_residual(m, root_set_from_x(m, {0.5}))), 1e-3);
}

TEST(Bethe, DegenerateRootsRaise) {
    const Canonical m = canonicalize(ModelSpec::make(MpCrossedParams{1.0, 1.0, 0.3}, 2));
    try {
        bae_residual(m, root_set_from_x(m, {0.4, 0.4}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateRoots);
    }
}

TEST(Bethe, EigenvalueExamples) {
    const Canonical m = canonicalize(mp_worked(1));
    EXPECT_LE(std::abs(eigenvalue_from_roots(mp_worked(1), root_set_from_x(m, {1.0})) - 2.0), 1e-14);

    const auto ch = ModelSpec::make(MpCrossedParams{1.0, 1.0, 0.0}, 2);
    const Canonical mc = canonicalize(ch);
    for (auto roots : {std::vector<Complex>{0.3, -1.2}, std::vector<Complex>{Complex(2, 1), 0.7}})
        EXPECT_LE(std::abs(eigenvalue_from_roots(ch, root_set_from_x(mc, roots)) - 10.0), 1e-13);

    const auto t = ModelSpec::make(TrigQParams{0.3, -0.2, 0.1, 0.4, 0.2, 0.6}, 0);
    EXPECT_LE(std::abs(eigenvalue_from_roots(t, RootSet{})), 1e-15);
}

TEST(Bethe, SolveExamples) {
    auto sols = solve(mp_worked(1));
    ASSERT_EQ(sols.size(), 2u);
    EXPECT_LE(std::abs(sols[0].roots.roots_x.at(0) + 1.0), 1e-12);
    EXPECT_LE(std::abs(*sols[0].E_formula + 2.0), 1e-12);
    EXPECT_LE(std::abs(sols[1].roots.roots_x.at(0) - 1.0), 1e-12);
    EXPECT_LE(std::abs(*sols[1].E_formula - 2.0), 1e-12);
    for (const auto& s : sols) EXPECT_LE(s.residual_max, 1e-12);

    sols = solve(ModelSpec::make(MpCrossedParams{1.0, 1.0, 0.8}, 0));
    ASSERT_EQ(sols.size(), 1u);
    EXPECT_EQ(sols[0].roots.size(), 0u);
    EXPECT_LE(std::abs(*sols[0].E_formula), 1e-15);

    sols = solve(ModelSpec::make(SexticIParams{1, 1, 1}, 2, Sector::Even));
    ASSERT_EQ(sols.size(), 2u);
    for (const auto& s : sols) {
        ASSERT_TRUE(s.E_formula);
        EXPECT_LE(std::abs(*s.E_formula - s.E_oracle), 1e-8);
    }
}

TEST(Bethe, PolishRecoversPerturbedRoots) {
    testkit::Draw d(51);
    const auto s = d.spec(Family::MpCrossed, 4, 1);
    const Canonical m = canonicalize(s);
    for (const auto& sol : solve(s)) {
        std::vector<Complex> noisy = sol.roots.roots_x;
        for (auto& x : noisy) x += 1e-3 * d.complex_point(1.0);
        const auto res = newton_polish(m, root_set_from_x(m, noisy));
        ASSERT_TRUE(res.polished);
        auto got = res.roots.roots_x;
        for (const Complex& want : sol.roots.roots_x) {
            auto it = std::min_element(got.begin(), got.end(),
                                       [&](Complex a, Complex b) { return std::abs(a - want) < std::abs(b - want); });
            EXPECT_LE(std::abs(*it - want), 1e-9);
            got.erase(it);
        }
    }
}

TEST(Bethe, PolishFixedPointAndSingularSeed) {
    const auto s = mp_worked(1);
    const Canonical m = canonicalize(s);
    const auto exact = newton_polish(m, root_set_from_x(m, {1.0}));
    EXPECT_EQ(exact.roots.roots_x.at(0), Complex(1.0));
    EXPECT_EQ(exact.iterations, 0);

    const auto coincident = newton_polish(canonicalize(ModelSpec::make(MpCrossedParams{1.0, 1.0, 0.3}, 2)),
                                          root_set_from_x(m, {0.4, 0.4}));
    EXPECT_TRUE(coincident.jacobian_singular || coincident.no_convergence);
    EXPECT_FALSE(coincident.polished);
    EXPECT_EQ(coincident.roots.roots_x.at(0), Complex(0.4));
}

TEST(BetheProperty, OracleConsistency) {
    testkit::Draw d(52);
    for (const auto f : testkit::kFamilies) {
        for (int M = 0; M <= 10; ++M) {
            for (int draw = 0; draw < 5; ++draw) {
                const auto s = d.spec(f, M, draw % 3);
                for (const auto& sol : solve(s)) {
                    ASSERT_TRUE(sol.E_formula) << family_name(f) << " M=" << M;
                    EXPECT_LE(sol.residual_max, 1e-9) << family_name(f) << " M=" << M << " #" << sol.index;
                    EXPECT_LE(std::abs(*sol.E_formula - sol.E_oracle), 1e-8 * std::max(1.0, std::abs(sol.E_oracle)))
                        << family_name(f) << " M=" << M << " #" << sol.index;
                }
            }
        }
    }
}

TEST(BetheProperty, RootSignInvariance) {
    testkit::Draw d(53);
    for (const auto f : {Family::SexticI, Family::SexticII, Family::CentrifugalI, Family::CentrifugalII}) {
        for (int M : {4, 5, 7}) {
            const auto s = d.spec(f, M);
            const Canonical m = canonicalize(s);
            for (const auto& sol : solve(s)) {
                std::vector<Complex> flipped = sol.roots.roots_x;
                for (std::size_t k = 0; k < flipped.size(); k += 2) flipped[k] = -flipped[k];
                const RootSet r = root_set_from_x(m, flipped);
                const auto a = bae_residual(m, sol.roots), b = bae_residual(m, r);
                for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LE(std::abs(a[k] - b[k]), 1e-12);
                const Complex ea = eigenvalue_from_roots(s, sol.roots), eb = eigenvalue_from_roots(s, r);
                EXPECT_LE(std::abs(ea - eb), 1e-12 * std::max(1.0, std::abs(ea)));
            }
        }
    }
}

TEST(BetheProperty, ZInversionInvariance) {
    testkit::Draw d(54);
    const auto s = d.spec(Family::TrigQ, 5);
    const Canonical m = canonicalize(s);
    for (const auto& sol : solve(s)) {
        // x -> -x is z -> 1/z
        std::vector<Complex> inv = sol.roots.roots_x;
        for (auto& x : inv) x = -x;
        const RootSet r = root_set_from_x(m, inv);
        const auto a = bae_residual(m, sol.roots), b = bae_residual(m, r);
        for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LE(std::abs(a[k] - b[k]), 1e-12);
        const Complex ea = eigenvalue_from_roots(s, sol.roots), eb = eigenvalue_from_roots(s, r);
        EXPECT_LE(std::abs(ea - eb), 1e-12 * std::max(1.0, std::abs(ea)));
    }
}

TEST(BetheProperty, EigenvalueDependsOnEtaSumOnly) {
    testkit::Draw d(55);
    for (const auto f : testkit::kFamilies) {
        const auto s = d.spec(f, f == Family::SexticI || f == Family::SexticII ? 6 : 3);
        const Canonical m = canonicalize(s);
        const int n = bethe_root_count(s);
        std::vector<Complex> eta_roots;
        for (int k = 0; k < n; ++k) eta_roots.push_back(d.complex_point(1.0));
        const Complex e0 = eigenvalue_from_roots(s, make_root_set(m, eta_roots));
        std::vector<Complex> perm(eta_roots.rbegin(), eta_roots.rend());
        EXPECT_LE(std::abs(eigenvalue_from_roots(s, make_root_set(m, perm)) - e0), 1e-12 * std::max(1.0, std::abs(e0)));
        // shift two roots against each other, keeping sum eta
        std::vector<Complex> moved = eta_roots;
        const Complex delta(0.37, -0.21);
        moved[0] += delta;
        moved[1] -= delta;
        EXPECT_LE(std::abs(eigenvalue_from_roots(s, make_root_set(m, moved)) - e0), 1e-12 * std::max(1.0, std::abs(e0)))
            << family_name(f);
    }
}

TEST(BetheProperty, FormulaTraceIdentity) {
    testkit::Draw d(56);
    for (const auto f : testkit::kFamilies) {
        for (int M : {3, 6}) {
            const auto s = d.spec(f, M);
            const auto om = build_matrix(s);
            Complex sum = 0.0;
            for (const auto& sol : solve(s)) sum += sol.E_formula.value_or(Complex(std::nan(""), 0));
            EXPECT_LE(std::abs(sum - om.matrix.trace()), 1e-8 * std::max(1.0, om.matrix.norm())) << family_name(f);
        }
    }
}

TEST(Homotopy, MatchesOracle) {
    testkit::Draw d(57);
    for (const auto f : {Family::MpCrossed, Family::TrigQ}) {
        for (int M = 1; M <= 8; ++M) {
            const auto s = d.spec(f, M, 1);
            const BetheSolution h = solve_homotopy(s);
            EXPECT_LE(h.residual_max, 1e-9) << family_name(f) << " M=" << M;
            ASSERT_TRUE(h.E_formula);
            EXPECT_LE(std::abs(*h.E_formula - h.E_oracle), 1e-8 * std::max(1.0, std::abs(h.E_oracle)));
        }
    }
}

TEST(Homotopy, OtherFamiliesUnsupported) {
    try {
        solve_homotopy(ModelSpec::make(SexticIParams{1, 1, 1}, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedFamily);
    }
}
