// The eta-power multiplier system and the automorphy factor.
//
// The closed-form generator values are the anchor: v(sigma) = e^{-i pi w/2},
// v(theta) = e^{i pi w/6}, v(theta sigma theta) = e^{-i pi w/6}.  Everything
// else is consistency: unitarity, the cocycle law, sign invariance.
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "ncperiods/cocycles.hpp"  // random_modular_word
#include "ncperiods/modular_group.hpp"
#include "ncperiods/multipliers.hpp"

using namespace ncperiods;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("generator values, all built-in weights and a few odd ones") {
    for (double w : {0.5, 5.3, 10.6, 12.0, 1.0, 7.25}) {
        const EtaPowerMultiplier v(w);
        CHECK_LE(std::abs(v(sigma_gen()) - std::polar(1.0, -kPi * w / 2)), 1e-12);
        CHECK_LE(std::abs(v(theta_gen()) - std::polar(1.0, kPi * w / 6)), 1e-12);
        CHECK_LE(std::abs(v(theta_sigma_theta()) - std::polar(1.0, -kPi * w / 6)),
                 1e-12);
    }
}

TEST_CASE("weight 12 multiplier is trivial") {
    const EtaPowerMultiplier v(12.0);
    std::mt19937 rng(31);
    for (int i = 0; i < 60; ++i)
        CHECK_LE(std::abs(v(random_modular_word(rng, 7)) - 1.0), 1e-12);
}

TEST_CASE("multiplier values are unitary") {
    std::mt19937 rng(32);
    for (double w : {0.5, 5.3, 10.6}) {
        const EtaPowerMultiplier v(w);
        for (int i = 0; i < 60; ++i)
            CHECK_LE(std::abs(std::abs(v(random_modular_word(rng, 7))) - 1.0), 1e-13);
    }
}

TEST_CASE("multiplier is a class function of the sign") {
    // v is defined on matrices but the slash action lives on PSL: v(-g)
    // compensates the branch jump of (cz+d)^w, so the full automorphy factor
    // must agree for g and -g.
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> re(-2, 2), im(0.2, 2);
    for (double w : {0.5, 5.3, 10.6}) {
        const EtaPowerMultiplier mult(w);
        const MultiplierFn v = [mult](const UniModular& g) { return mult(g); };
        for (int i = 0; i < 50; ++i) {
            const UniModular g = random_modular_word(rng, 6);
            const Complex z(re(rng), im(rng));
            const Complex a = automorphy_factor(v, w, g, z, HalfPlane::upper);
            const Complex b = automorphy_factor(v, w, g.negate(), z, HalfPlane::upper);
            CHECK_LE(std::abs(a - b), 1e-12 * std::abs(a));
        }
    }
}

TEST_CASE("cocycle law for the automorphy factor") {
    std::mt19937 rng(34);
    std::uniform_real_distribution<double> re(-2, 2), im(0.1, 3);
    for (double w : {0.5, 5.3, 10.6, 12.0}) {
        const EtaPowerMultiplier mult(w);
        const MultiplierFn v = [mult](const UniModular& g) { return mult(g); };
        for (int i = 0; i < 40; ++i) {
            const UniModular g = random_modular_word(rng, 6);
            const UniModular d = random_modular_word(rng, 6);
            const Complex z(re(rng), im(rng));
            CHECK_LE(cocycle_residual(v, w, g, d, z), 1e-12);
        }
    }
}

TEST_CASE("real_power branch conventions") {
    // Upper convention: arg in (-pi, pi]; lower: arg in [-pi, pi).  They
    // disagree exactly on the negative real axis.
    const Complex minus_one(-1.0, 0.0);
    CHECK_LE(std::abs(real_power(minus_one, 0.5, HalfPlane::upper) - Complex(0, 1)),
             1e-15);
    CHECK_LE(std::abs(real_power(minus_one, 0.5, HalfPlane::lower) - Complex(0, -1)),
             1e-15);
    // off the cut the conventions agree and reduce to the principal power
    const Complex z(1.3, 0.7);
    CHECK_LE(std::abs(real_power(z, 2.0, HalfPlane::upper) - z * z), 1e-14 * std::abs(z * z));
    CHECK_LE(std::abs(real_power(z, 2.0, HalfPlane::lower) - z * z), 1e-14 * std::abs(z * z));
    // integer exponents never jump, even on the cut
    CHECK_LE(std::abs(real_power(minus_one, 3.0, HalfPlane::upper) -
                      real_power(minus_one, 3.0, HalfPlane::lower)),
             1e-15);
}

TEST_CASE("identity and trivial multiplier") {
    const MultiplierFn one = trivial_multiplier();
    CHECK_EQ(automorphy_factor(one, 7.0, UniModular(), Complex(0.3, 0.9),
                               HalfPlane::upper),
             Complex(1.0, 0.0));
}
