// q-expansions and evaluation of the eta powers.
//
// The oracles here are independent of the recurrence that builds the
// coefficients: Euler's pentagonal expansion for eta itself, the published
// Ramanujan tau values for the 24th power, and the classical closed value
// of eta at i.
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "ncperiods/forms.hpp"
#include "ncperiods/modular_group.hpp"

using namespace ncperiods;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("sigma1 table") {
    const auto s = sigma1_table(12);
    CHECK_EQ(s[1], 1);
    CHECK_EQ(s[2], 3);
    CHECK_EQ(s[6], 12);
    CHECK_EQ(s[12], 28);
}

TEST_CASE("eta itself: pentagonal number expansion") {
    // prod (1-q^n) = sum_k (-1)^k q^{k(3k-1)/2} over all integers k.
    const auto b = eta_power_coefficients(1.0, 30);
    std::vector<double> expect(31, 0.0);
    for (long long k = -5; k <= 5; ++k) {
        const long long e = k * (3 * k - 1) / 2;
        if (0 <= e && e <= 30) expect[e] = (k % 2 == 0) ? 1.0 : -1.0;
    }
    for (std::size_t m = 0; m <= 30; ++m) CHECK_EQ(b[m], expect[m]);
}

TEST_CASE("discriminant form: Ramanujan tau values") {
    const long long tau[] = {1,      -24,     252,    -1472,   4830,    -6048,
                             -16744, 84480,   -113643, -115920, 534612, -370944};
    const auto exact = eta_power_coefficients_exact(24, 11);
    const auto approx = eta_power_coefficients(24.0, 11);
    for (int n = 1; n <= 12; ++n) {
        CHECK_EQ(exact[n - 1], BigInt(tau[n - 1]));
        // double recurrence reproduces the integers while they fit exactly
        CHECK_EQ(approx[n - 1], static_cast<double>(tau[n - 1]));
    }
}

TEST_CASE("exact and floating recurrences agree for 2w = 24") {
    const auto exact = eta_power_coefficients_exact(24, 120);
    const auto approx = eta_power_coefficients(24.0, 120);
    for (std::size_t m = 0; m <= 120; ++m) {
        const double e = exact[m].convert_to<double>();
        CHECK_LE(std::abs(approx[m] - e), 1e-12 * std::abs(e));
    }
}

TEST_CASE("majorant dominates termwise and bounds the tail") {
    const auto b = eta_power_coefficients(10.6, 60);
    const auto c = eta_power_majorant(10.6, 60);
    for (std::size_t m = 0; m <= 60; ++m) CHECK_LE(std::abs(b[m]), c[m] * (1 + 1e-12));
    CHECK_GT(majorant_tail_bound(10.6, 60, 0.1), 0.0);
    CHECK_LT(majorant_tail_bound(10.6, 60, 0.1), 1e-30);
    CHECK_THROWS_AS(majorant_tail_bound(10.6, 60, 0.6), std::domain_error);
}

TEST_CASE("eta(i) has its classical closed value") {
    // eta(i) = Gamma(1/4) / (2 pi^{3/4})
    const double expect = std::tgamma(0.25) / (2.0 * std::pow(kPi, 0.75));
    const CuspForm eta(0.5, 64);  // 2w = 1: eta itself
    const Complex v = eta.evaluate(Complex(0.0, 1.0));
    CHECK_LE(std::abs(v - expect), 1e-13 * expect);
    CHECK_LE(std::abs(v.imag()), 1e-15);
}

TEST_CASE("reduced evaluation matches the direct series high in the strip") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> re(-2, 2), im(0.9, 2.5);
    for (double w : CuspForm::builtin_weights()) {
        const CuspForm f(w, 160);
        for (int i = 0; i < 25; ++i) {
            const Complex z(re(rng), im(rng));
            const Complex a = f.evaluate(z);
            const Complex b = f.evaluate_direct(z);
            CHECK_LE(std::abs(a - b), 1e-12 * std::max(std::abs(a), 1e-30));
        }
    }
}

TEST_CASE("reduced evaluation survives the deep cusp") {
    // Near the real axis the direct series is useless; the reduced route
    // must stay finite and match the modular transform of a comfortable
    // point.  F(-1/z) = v(sigma) z^w F(z) with z = 0.001i -> -1/z = 1000i.
    const CuspForm f(5.3, 128);
    const Complex z(0.0, 1e-3);
    const Complex lhs = f.evaluate(Complex(0.0, 1e3));
    const Complex rhs = f.multiplier()(sigma_gen()) *
                        std::pow(Complex(0.0, 1e-3), 5.3) * f.evaluate(z);
    CHECK(std::isfinite(std::abs(f.evaluate(z))));
    CHECK_LE(std::abs(lhs - rhs), 1e-10 * std::abs(lhs));
}

TEST_CASE("truncation bound is honest") {
    const CuspForm f(12.0, 40);
    const CuspForm g(12.0, 220);
    for (double y : {0.35, 0.6, 1.0}) {
        const Complex z(0.37, y);
        const double gap = std::abs(f.evaluate_direct(z) - g.evaluate_direct(z));
        CHECK_LE(gap, f.truncation_bound(y) * 1.0001 + 1e-18);
    }
}

TEST_CASE("json round-trip preserves the form") {
    const CuspForm f(10.6, 48);
    const CuspForm g = CuspForm::from_json(f.to_json());
    CHECK_EQ(g.weight(), f.weight());
    CHECK_EQ(g.terms(), f.terms());
    CHECK_EQ(g.content_hash(), f.content_hash());
    for (std::size_t m = 0; m < f.coefficients().size(); ++m)
        CHECK_EQ(g.coefficients()[m], f.coefficients()[m]);
}

TEST_CASE("content hash separates weights and truncations") {
    CHECK_NE(CuspForm(12.0, 64).content_hash(), CuspForm(10.6, 64).content_hash());
    CHECK_NE(CuspForm(12.0, 64).content_hash(), CuspForm(12.0, 65).content_hash());
    CHECK_EQ(CuspForm(12.0, 64).content_hash(), CuspForm(12.0, 64).content_hash());
}

TEST_CASE("builtin weights") {
    const auto& ws = CuspForm::builtin_weights();
    REQUIRE_EQ(ws.size(), 4);
    CHECK_EQ(ws[0], 0.5);
    CHECK_EQ(ws[1], 5.3);
    CHECK_EQ(ws[2], 10.6);
    CHECK_EQ(ws[3], 12.0);
}
