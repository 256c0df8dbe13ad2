#include <numbers>

#include <gtest/gtest.h>

#include "qes/spectral.hpp"
#include "support.hpp"

using namespace qes;
using namespace qes::models;

TEST(Spectral, WorkedPair) {
    const auto sp = oracle_spectrum(build_matrix(ModelSpec::make(MpCrossedParams{1.0, 1.0, std::numbers::pi / 2}, 1)));
    ASSERT_EQ(sp.size(), 2u);
    EXPECT_LE(std::abs(sp[0].eigenvalue + 2.0), 1e-14);
    EXPECT_LE(std::abs(sp[1].eigenvalue - 2.0), 1e-14);
    ASSERT_EQ(sp[1].eigenpoly.degree(), 1);
    EXPECT_EQ(sp[1].eigenpoly[1], Complex(1.0));
    EXPECT_LE(std::abs(sp[1].eigenpoly[0] + 1.0), 1e-14);
}

TEST(Spectral, DimensionZero) {
    testkit::Draw d(41);
    for (const auto f : testkit::kFamilies) {
        const auto sp = oracle_spectrum(build_matrix(d.spec(f, f == Family::SexticII ? 1 : 0)));
        ASSERT_EQ(sp.size(), 1u);
        EXPECT_EQ(sp[0].eigenpoly.degree(), 0);
        EXPECT_EQ(sp[0].eigenpoly[0], Complex(1.0));
    }
}

TEST(Spectral, ContinuousHahnSpectrum) {
    const auto sp = oracle_spectrum(build_matrix(ModelSpec::make(MpCrossedParams{1.0, 1.0, 0.0}, 3)));
    const double want[] = {0, 4, 10, 18};
    ASSERT_EQ(sp.size(), 4u);
    for (int k = 0; k < 4; ++k) EXPECT_LE(std::abs(sp[k].eigenvalue - want[k]), 1e-12);
}

TEST(Spectral, ExtractExamples) {
    OracleEigenpair pair;
    pair.eigenpoly = PolynomialC({-1.0, 1.0}, Variable::Eta);
    const auto mp = ModelSpec::make(MpCrossedParams{1.0, 1.0, 0.0}, 1);
    auto r = extract_roots(pair, mp);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_LE(std::abs(r.roots_x[0] - 1.0), 1e-15);

    pair.eigenpoly = PolynomialC({-4.0, 1.0}, Variable::Eta);
    r = extract_roots(pair, ModelSpec::make(SexticIParams{1, 1, 1}, 2));
    EXPECT_LE(std::abs(r.roots_x[0] - 2.0), 1e-15);

    pair.eigenpoly = PolynomialC({-1.0, 1.0}, Variable::Eta);
    r = extract_roots(pair, ModelSpec::make(TrigQParams{0, 0, 0, 0, 0, 0.5}, 1));
    EXPECT_LE(std::abs(r.roots_x[0]), 1e-7);
    EXPECT_LE(std::abs(r.roots_eta[0] - 1.0), 1e-15);
}

TEST(Spectral, RootCountMismatchRejected) {
    OracleEigenpair pair;
    pair.eigenpoly = PolynomialC({-1.0, 1.0}, Variable::Eta);
    EXPECT_THROW(extract_roots(pair, ModelSpec::make(MpCrossedParams{1.0, 1.0, 0.0}, 2)), Error);
}

TEST(Spectral, RepresentativeConvention) {
    const Canonical sq = canonicalize(ModelSpec::make(SexticIParams{1, 1, 1}, 2));
    for (Complex e : {Complex(4, 0), Complex(-4, 0), Complex(1, 2), Complex(1, -2), Complex(-3, -0.5)}) {
        const Complex x = representative_x(sq, e);
        EXPECT_LE(std::abs(x * x - e), 1e-13 * std::abs(e));
        EXPECT_TRUE(x.real() > 0.0 || (x.real() == 0.0 && x.imag() >= 0.0)) << x;
    }
    const Canonical cs = canonicalize(ModelSpec::make(TrigQParams{0, 0, 0, 0, 0, 0.5}, 1));
    for (Complex e : {Complex(0.3, 0), Complex(3, 0), Complex(-2, 1), Complex(0.2, -0.7)}) {
        const Complex x = representative_x(cs, e);
        const Complex z = std::exp(kI * x);
        EXPECT_LE(std::abs(std::cos(x) - e), 1e-12 * std::max(1.0, std::abs(e)));
        EXPECT_LE(std::abs(z), 1.0 + 1e-12);
    }
}

TEST(SpectralProperty, OracleInvariants) {
    testkit::Draw d(42);
    for (const auto f : testkit::kFamilies) {
        for (int M = 0; M <= 10; ++M) {
            const auto s = d.spec(f, M, 1);
            const auto om = build_matrix(s);
            const auto sp = oracle_spectrum(om);
            ASSERT_EQ(static_cast<int>(sp.size()), om.dim());
            Complex sum = 0.0;
            for (std::size_t k = 0; k < sp.size(); ++k) {
                sum += sp[k].eigenvalue;
                EXPECT_EQ(sp[k].eigenpoly.leading(), Complex(1.0));
                EXPECT_LE(sp[k].residual, 1e-10);
                if (k > 0) {
                    const Complex a = sp[k - 1].eigenvalue, b = sp[k].eigenvalue;
                    EXPECT_TRUE(a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag()));
                }
                // the hermitian configurations keep the spectrum real
                const Complex l = sp[k].eigenvalue;
                EXPECT_LE(std::abs(l.imag()), 1e-8 * std::max(1.0, std::abs(l.real())))
                    << family_name(f) << " M=" << M;
            }
            EXPECT_LE(std::abs(sum - om.matrix.trace()), 1e-9 * std::max(1.0, om.matrix.norm()));
        }
    }
}

TEST(SpectralProperty, RootReconstruction) {
    testkit::Draw d(43);
    for (const auto f : testkit::kFamilies) {
        for (int M = 1; M <= 10; ++M) {
            const auto s = d.spec(f, M);
            const Canonical m = canonicalize(s);
            for (const auto& pair : oracle_spectrum(build_matrix(s))) {
                if (pair.eigenpoly.degree() != bethe_root_count(s)) continue;
                const RootSet r = extract_roots(pair, s);
                const PolynomialC back = PolynomialC::from_roots(r.roots_eta, Variable::Eta);
                const double scale = std::max(1.0, pair.eigenpoly.max_abs());
                for (int k = 0; k <= back.degree(); ++k)
                    EXPECT_LE(std::abs(back[k] - pair.eigenpoly[k]), 1e-9 * scale) << family_name(f) << " M=" << M;
                for (std::size_t l = 0; l < r.size(); ++l)
                    EXPECT_LE(std::abs(eta(m, r.roots_x[l]) - r.roots_eta[l]), 1e-12 * std::max(1.0, std::abs(r.roots_eta[l])));
            }
        }
    }
}
