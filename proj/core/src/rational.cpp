#include "ncperiods/rational.hpp"

#include <stdexcept>
#include <utility>

namespace ncperiods {

long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational sawtooth(const Rational& x) {
    const BigInt n = numerator(x);
    const BigInt d = denominator(x);
    if (d == 1) return Rational(0);
    // floor(n/d) for d > 0
    BigInt fl = n / d;
    if (n < 0 && fl * d != n) --fl;
    return x - Rational(fl) - Rational(1, 2);
}

Rational classical_dedekind_sum(const BigInt& a, const BigInt& c) {
    if (c < 1) throw std::invalid_argument("classical_dedekind_sum: need c >= 1");
    if (gcd(a, c) != 1) throw std::invalid_argument("classical_dedekind_sum: need gcd(a,c) = 1");
    if (c == 1) return Rational(0);
    // a*i mod c stays in [0,c); since gcd(a,c)=1 and 0<i<c it is never 0, so
    // both sawtooth factors are plain affine expressions and the sum
    // rearranges to T/c^2 - (c-1)/4 with T = sum_i i*(a*i mod c).
    BigInt am = a % c;
    if (am < 0) am += c;
    BigInt T = 0;
    BigInt r = 0;
    for (BigInt i = 1; i < c; ++i) {
        r += am;
        if (r >= c) r -= c;
        T += i * r;
    }
    return Rational(T, c * c) - Rational(c - 1, 4);
}

Rational dedekind_sum_euclid(BigInt a, BigInt c) {
    if (c < 1) throw std::invalid_argument("dedekind_sum_euclid: need c >= 1");
    a %= c;
    if (a < 0) a += c;
    if (gcd(a, c) != 1) throw std::invalid_argument("dedekind_sum_euclid: need gcd(a,c) = 1");
    // s(a,c) = -1/4 + (a^2+c^2+1)/(12ac) - s(c,a), s(·,1) = 0, s periodic in
    // the first argument and odd under its negation.
    Rational acc(0);
    int sign = 1;
    while (c > 1) {
        // here 1 <= a < c, gcd(a,c) = 1
        acc += sign * (Rational(a * a + c * c + 1, 12 * a * c) - Rational(1, 4));
        sign = -sign;
        BigInt na = c % a;
        c = a;
        a = na;
    }
    return acc;
}

CoprimePair::CoprimePair(long long p_, long long q_) : p(p_), q(q_) {
    if (p == 0 && q == 0) throw std::invalid_argument("CoprimePair: (0,0) is not a pair");
    if (gcd_ll(p, q) != 1) throw std::invalid_argument("CoprimePair: entries are not coprime");
}

Rational dedekind_symbol_classical(const CoprimePair& pq) {
    long long p = pq.p, q = pq.q;
    if (p == 0) return Rational(0);        // (0,±1)
    if (p < 0) { p = -p; q = -q; }          // d(-p,-q) = d(p,q)
    int sign = 1;
    if (q < 0) { q = -q; sign = -1; }       // d(p,-q) = -d(p,q)
    q %= p;                                 // d(p,q+p) = d(p,q)
    return sign * classical_dedekind_sum(BigInt(q), BigInt(p));
}

Rational reciprocity_residual_classical(const CoprimePair& pq) {
    const long long p = pq.p, q = pq.q;
    if (p <= 0 || q <= 0)
        throw std::invalid_argument("reciprocity_residual_classical: need p,q > 0");
    const Rational lhs =
        dedekind_symbol_classical(pq) - dedekind_symbol_classical(CoprimePair(q, -p));
    const BigInt P = p, Q = q;
    return lhs - Rational(P * P + Q * Q - 3 * P * Q + 1, 12 * P * Q);
}

Cusp::Cusp(long long num_, long long den_) : num(num_), den(den_) {
    if (num == 0 && den == 0) throw std::invalid_argument("Cusp: 0/0");
    if (den == 0) { num = 1; return; }  // any n/0 is the infinite cusp
    long long g = gcd_ll(num, den);
    num /= g;
    den /= g;
    if (den < 0) { num = -num; den = -den; }
}

double Cusp::approx() const {
    if (is_infinity()) throw std::domain_error("Cusp::approx: infinite cusp");
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string Cusp::str() const {
    if (is_infinity()) return "inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace ncperiods
