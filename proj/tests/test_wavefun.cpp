#include <numbers>

#include <gtest/gtest.h>

#include "qes/wavefun.hpp"
#include "support.hpp"

using namespace qes;
using namespace qes::models;

namespace {

// random admissible point for the family, away from poles
Complex admissible(testkit::Draw& d, Family f) {
    switch (f) {
        case Family::CentrifugalI:
        case Family::CentrifugalII: return {d.uniform(0.2, 3.0), d.uniform(-0.3, 0.3)};
        case Family::TrigQ: return {d.uniform(0.2, std::numbers::pi - 0.2), d.uniform(-0.1, 0.1)};
        default: return {d.uniform(-3.0, 3.0), d.uniform(-0.3, 0.3)};
    }
}

}  // namespace

// mpmath values of the Gamma / q-Pochhammer products
TEST(Phi0, FrozenValues) {
    EXPECT_LE(std::abs(phi0_squared(ModelSpec::make(MpCrossedParams{1.0, 1.0, 0.0}, 1), 0.0) - 1.0), 1e-14);
    EXPECT_LE(std::abs(phi0_squared(ModelSpec::make(SexticIParams{1, 1, 1}, 2), 0.0) - 1.0), 1e-14);
    EXPECT_LE(std::abs(phi0_squared(ModelSpec::make(TrigQParams{0, 0, 0, 0, 0, 0.5}, 1), std::numbers::pi / 2) -
                       22.73823039918397486921528),
              1e-12);
    EXPECT_LE(std::abs(phi0_squared(ModelSpec::make(SexticIParams{1, 2, 3}, 2), 0.7) - 1.20056562092178789063),
              1e-13);
    EXPECT_LE(std::abs(phi0_squared(ModelSpec::make(CentrifugalIParams{1, 2, 3, 1.2, 0.8}, 1), 0.9) -
                       5.745437181670270438904699),
              1e-12);
    EXPECT_LE(std::abs(phi0_squared(ModelSpec::make(MpCrossedParams{Complex(1, 0.5), Complex(0.8, -0.2), 0.4}, 1), 0.3) -
                       0.6902467556916781799478885),
              1e-14);
    EXPECT_LE(std::abs(phi0_squared(ModelSpec::make(TrigQParams{0.3, -0.2, 0.1, 0.4, 0.2, 0.6}, 1), 1.1) -
                       81.14741218034171407771266),
              1e-11);
}

TEST(ZeroMode, Examples) {
    for (double a : {0.7, 1.0, 2.5}) EXPECT_LE(zero_mode_residual(ModelSpec::make(SexticIParams{a, a, a}, 2), 0.0), 1e-14);
    EXPECT_LE(zero_mode_residual(ModelSpec::make(SexticIParams{1, 2, 3}, 2), 0.7), 1e-10);
    EXPECT_LE(zero_mode_residual(ModelSpec::make(TrigQParams{0.3, 0, 0, 0, 0, 0.5}, 1), 1.0), 1e-10);
}

TEST(ZeroMode, RandomPointsPerFamily) {
    testkit::Draw d(71);
    for (const auto f : testkit::kFamilies) {
        const auto s = d.spec(f, 3, 2);
        for (int k = 0; k < 20; ++k) {
            const Complex x = admissible(d, f);
            EXPECT_LE(zero_mode_residual(s, x), kZeroModeTol) << family_name(f) << " x=" << x;
        }
    }
}

TEST(Phi0, RealPositiveOnRealGrid) {
    testkit::Draw d(72);
    for (const auto f : testkit::kFamilies) {
        for (int variant = 0; variant < 3; ++variant) {
            const auto s = d.spec(f, 2, variant);
            for (const Complex& x : default_grid(s, 20).points) {
                const Complex p = phi0_squared(s, x);
                EXPECT_GT(p.real(), 0.0) << family_name(f);
                EXPECT_LE(std::abs(p.imag()), 1e-10 * std::abs(p)) << family_name(f);
            }
        }
    }
}

TEST(Schrodinger, WorkedExample) {
    const auto sols = solve(ModelSpec::make(MpCrossedParams{1.0, 1.0, std::numbers::pi / 2}, 1));
    EXPECT_LE(schrodinger_residual(sols[1], 0.3), 1e-12);
    BetheSolution wrong = sols[1];
    wrong.E_formula = *wrong.E_formula + 1.0;
    EXPECT_GT(schrodinger_residual(wrong, 0.3), 1e-3);
}

TEST(Schrodinger, GroundLevelM0) {
    testkit::Draw d(73);
    for (const auto f : {Family::MpCrossed, Family::SexticI, Family::CentrifugalI, Family::TrigQ}) {
        const auto sols = solve(d.spec(f, 0));
        for (int k = 0; k < 5; ++k) EXPECT_LE(schrodinger_residual(sols[0], admissible(d, f)), 1e-12);
    }
}

TEST(Schrodinger, EverySolutionOnGrid) {
    testkit::Draw d(74);
    for (const auto f : testkit::kFamilies) {
        for (int M = 0; M <= 10; ++M) {
            const auto s = d.spec(f, M, M % 3);
            for (const auto& sol : solve(s)) {
                for (const auto& row : evaluate_grid(sol, default_grid(s, 20)))
                    EXPECT_LE(row.residual, kSchrodingerTol) << family_name(f) << " M=" << M << " x=" << row.x;
            }
        }
    }
}

TEST(Grid, Validation) {
    const auto cen = ModelSpec::make(CentrifugalIParams{1, 2, 3, 1.2, 0.8}, 1);
    EXPECT_THROW(validate_grid(cen, GridSpec{{Complex(-0.5, 0)}}), Error);
    EXPECT_THROW(validate_grid(cen, GridSpec{{Complex(1e-4, 0)}}), Error);
    const auto trig = ModelSpec::make(TrigQParams{0, 0, 0, 0, 0, 0.5}, 1);
    EXPECT_THROW(validate_grid(trig, GridSpec{{Complex(3.5, 0)}}), Error);
    EXPECT_NO_THROW(validate_grid(trig, default_grid(trig, 50)));
    EXPECT_THROW(default_grid(trig, 0), Error);
}

TEST(Grid, RowsInGridOrder) {
    const auto s = ModelSpec::make(SexticIParams{1, 2, 3}, 4);
    const auto sols = solve(s);
    const auto grid = default_grid(s, 15);
    const auto rows = evaluate_grid(sols[1], grid);
    ASSERT_EQ(rows.size(), grid.points.size());
    for (std::size_t k = 0; k < rows.size(); ++k) EXPECT_EQ(rows[k].x, grid.points[k]);
}
