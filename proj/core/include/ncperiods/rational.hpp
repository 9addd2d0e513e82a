#pragma once

// Exact arithmetic: arbitrary-precision rationals, coprime pairs, cusps,
// and classical Dedekind sums.  Everything here is exact; no floating point
// enters until a caller asks for a double.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace ncperiods {

using BigInt = boost::multiprecision::cpp_int;
// Canonical form (reduced, positive denominator) is maintained by the library.
using Rational = boost::multiprecision::cpp_rational;

/// ((x)) = x - floor(x) - 1/2 for non-integer x, 0 for integer x.
Rational sawtooth(const Rational& x);

/// Classical Dedekind sum s(a,c) = sum_{i=1}^{c-1} ((i/c)) ((a i/c)).
/// Requires c >= 1 and gcd(a,c) = 1.  Evaluated through the exact integer
/// rearrangement sum_i i*(a*i mod c) / c^2 - (c-1)/4 (same rational value as
/// the term-by-term sawtooth product sum, but O(c) integer work).
Rational classical_dedekind_sum(const BigInt& a, const BigInt& c);

/// Same value as classical_dedekind_sum, computed in O(log c) steps via the
/// reciprocity law.  Used where c can be large (reduction matrices deep in a
/// cusp neighbourhood); cross-checked against the sawtooth form in tests.
Rational dedekind_sum_euclid(BigInt a, BigInt c);

/// Ordered coprime pair (p,q).  Construction validates gcd(|p|,|q|) = 1
/// (in particular (0,0) is rejected); no sign canonicalization is applied.
struct CoprimePair {
    long long p = 0;
    long long q = 0;

    CoprimePair() = default;
    CoprimePair(long long p_, long long q_);
};

/// Dedekind symbol value d(p,q) := s(q,p) for p >= 1, extended to the rest of
/// the coprime lattice by d(p,q+p) = d(p,q), d(p,-q) = -d(p,q) and
/// d(0,±1) = 0.
Rational dedekind_symbol_classical(const CoprimePair& pq);

/// d(p,q) - d(q,-p) - (p^2 + q^2 - 3pq + 1)/(12pq) for p,q > 0 coprime.
/// Identically zero; exposed so the vanishing is testable over exact
/// rationals.
Rational reciprocity_residual_classical(const CoprimePair& pq);

/// A point of P^1(Q): a reduced fraction num/den with den > 0, or the
/// infinite cusp stored canonically as 1/0.
struct Cusp {
    long long num = 1;
    long long den = 0;

    Cusp() = default;  // infinity
    Cusp(long long num_, long long den_);

    static Cusp infinity() { return Cusp{}; }
    static Cusp from_integer(long long n) { return Cusp(n, 1); }

    bool is_infinity() const { return den == 0; }
    bool operator==(const Cusp& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Cusp& o) const { return !(*this == o); }

    /// Value as a double; infinity is an error.
    double approx() const;
    std::string str() const;
};

long long gcd_ll(long long a, long long b);

}  // namespace ncperiods
