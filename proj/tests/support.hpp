#pragma once

// Random valid model draws shared by the property tests and the acceptance
// binary. Parameters stay clear of the centrifugal 1/2 exclusion.

#include <random>
#include <vector>

#include "qes/models.hpp"

namespace qes::testkit {

inline constexpr models::Family kFamilies[] = {models::Family::MpCrossed,     models::Family::SexticI,
                                               models::Family::SexticII,      models::Family::CentrifugalI,
                                               models::Family::CentrifugalII, models::Family::TrigQ};

class Draw {
public:
    explicit Draw(unsigned long long seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double sign() { return (rng_() & 1u) ? 1.0 : -1.0; }

    double positive() { return uniform(0.3, 2.0); }
    double centrifugal() {
        double v = positive();
        while (std::abs(v - 0.5) < 0.05) v = positive();
        return v;
    }
    double unit() { return sign() * uniform(0.1, 0.8); }

    /// `variant` picks among the mp-crossed shapes: real pair, conjugate pair,
    /// generic complex pair.
    models::ModelParams params(models::Family f, int variant = 0) {
        using namespace models;
        switch (f) {
            case Family::MpCrossed: {
                const Complex a1(positive(), variant == 0 ? 0.0 : uniform(-1.0, 1.0));
                const Complex a2 = variant == 1 ? std::conj(a1)
                                                : Complex(positive(), variant == 0 ? 0.0 : uniform(-1.0, 1.0));
                return MpCrossedParams{a1, a2, sign() * uniform(0.2, 1.3)};
            }
            case Family::SexticI: return SexticIParams{positive(), positive(), positive()};
            case Family::SexticII: return SexticIIParams{positive(), positive(), positive(), positive()};
            case Family::CentrifugalI:
                return CentrifugalIParams{centrifugal(), centrifugal(), centrifugal(), centrifugal(), centrifugal()};
            case Family::CentrifugalII:
                return CentrifugalIIParams{centrifugal(), centrifugal(), centrifugal(),
                                           centrifugal(), centrifugal(), centrifugal()};
            case Family::TrigQ: return TrigQParams{unit(), unit(), unit(), unit(), unit(), uniform(0.3, 0.8)};
        }
        return {};
    }

    models::ModelSpec spec(models::Family f, int M, int variant = 0) {
        return models::ModelSpec::make(params(f, variant), M);
    }

    Complex complex_point(double r = 2.0) { return {uniform(-r, r), uniform(-r, r)}; }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace qes::testkit
