// Exact layer: sawtooth, Dedekind sums (two independent algorithms), the
// classical symbol, and cusps.  Everything in here must hold exactly —
// any tolerance would be a bug.
#include "doctest.h"

#include <stdexcept>

#include "ncperiods/rational.hpp"

using namespace ncperiods;

TEST_CASE("sawtooth values") {
    CHECK_EQ(sawtooth(Rational(0)), Rational(0));
    CHECK_EQ(sawtooth(Rational(7)), Rational(0));       // integers flatten
    CHECK_EQ(sawtooth(Rational(1, 2)), Rational(0));    // half-integers too
    CHECK_EQ(sawtooth(Rational(1, 4)), Rational(-1, 4));
    CHECK_EQ(sawtooth(Rational(-1, 4)), Rational(1, 4));
    CHECK_EQ(sawtooth(Rational(9, 4)), Rational(-1, 4));  // period 1
    // odd function away from the lattice
    for (int n = 1; n < 12; ++n)
        CHECK_EQ(sawtooth(Rational(n, 13)) + sawtooth(Rational(-n, 13)), Rational(0));
}

TEST_CASE("dedekind sum small closed values") {
    CHECK_EQ(classical_dedekind_sum(1, 1), Rational(0));
    CHECK_EQ(classical_dedekind_sum(1, 2), Rational(0));
    CHECK_EQ(classical_dedekind_sum(1, 3), Rational(1, 18));
    CHECK_EQ(classical_dedekind_sum(2, 3), Rational(-1, 18));  // s(c-1,c) = -s(1,c)
    CHECK_EQ(classical_dedekind_sum(2, 5), Rational(0));
    // s(1,c) = (c-1)(c-2)/(12c)
    for (long long c = 1; c <= 40; ++c)
        CHECK_EQ(classical_dedekind_sum(1, c), Rational((c - 1) * (c - 2), 12 * c));
}

TEST_CASE("dedekind sum: sawtooth form vs Euclidean descent") {
    // Two algorithms with nothing in common past the definition.
    for (long long c = 1; c <= 80; ++c)
        for (long long a = 0; a < c; ++a) {
            if (gcd_ll(a, c) != 1) continue;
            CHECK_EQ(classical_dedekind_sum(a, c), dedekind_sum_euclid(a, c));
        }
}

TEST_CASE("dedekind sum reciprocity at large arguments") {
    // The O(log c) form is the only practical one here; reciprocity is the
    // cross-check:  s(a,c) + s(c,a) = -1/4 + (a^2 + c^2 + 1)/(12ac).
    const BigInt a = 1000003, c = 998244353;  // both prime, so coprime
    const Rational lhs = dedekind_sum_euclid(a, c) + dedekind_sum_euclid(c, a);
    const Rational rhs =
        Rational(-1, 4) + Rational(a * a + c * c + 1) / Rational(12 * a * c);
    CHECK_EQ(lhs, rhs);
}

TEST_CASE("classical symbol conventions") {
    // d(p,q) = s(q,p), extended by periodicity and oddness.
    CHECK_EQ(dedekind_symbol_classical(CoprimePair(3, 1)),
             classical_dedekind_sum(1, 3));
    CHECK_EQ(dedekind_symbol_classical(CoprimePair(0, 1)), Rational(0));
    CHECK_EQ(dedekind_symbol_classical(CoprimePair(1, 5)), Rational(0));
    for (long long p = 1; p <= 15; ++p)
        for (long long q = -15; q <= 15; ++q) {
            if (gcd_ll(p, q) != 1) continue;
            const Rational d = dedekind_symbol_classical(CoprimePair(p, q));
            CHECK_EQ(dedekind_symbol_classical(CoprimePair(p, q + p)), d);
            CHECK_EQ(dedekind_symbol_classical(CoprimePair(p, -q)), -d);
        }
}

TEST_CASE("classical reciprocity residual vanishes") {
    for (long long p = 1; p <= 40; ++p)
        for (long long q = 1; q <= 40; ++q) {
            if (gcd_ll(p, q) != 1) continue;
            CHECK_EQ(reciprocity_residual_classical(CoprimePair(p, q)), Rational(0));
        }
}

TEST_CASE("coprime pair validation") {
    CHECK_THROWS_AS(CoprimePair(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(CoprimePair(0, 0), std::invalid_argument);
    CHECK_NOTHROW(CoprimePair(0, 1));
    CHECK_NOTHROW(CoprimePair(-3, 5));
}

TEST_CASE("cusp canonical form") {
    CHECK_EQ(Cusp(2, 4), Cusp(1, 2));
    CHECK_EQ(Cusp(1, -2), Cusp(-1, 2));
    CHECK_EQ(Cusp(-6, -4), Cusp(3, 2));
    CHECK(Cusp(5, 0).is_infinity());
    CHECK_EQ(Cusp(5, 0), Cusp::infinity());
    CHECK_EQ(Cusp(-7, 0), Cusp::infinity());
    CHECK_EQ(Cusp::infinity().str(), "inf");
    CHECK_EQ(Cusp(-1, 3).str(), "-1/3");
    CHECK_EQ(Cusp(4, 1).str(), "4");
    CHECK_EQ(Cusp(1, 2).approx(), 0.5);
}

TEST_CASE("gcd_ll corner cases") {
    CHECK_EQ(gcd_ll(0, 0), 0);
    CHECK_EQ(gcd_ll(0, 7), 7);
    CHECK_EQ(gcd_ll(-4, 6), 2);
    CHECK_EQ(gcd_ll(-3, -9), 3);
}
