#pragma once

// SL(2,Z) matrices, the sigma/tau/theta generators, Moebius actions on cusps
// and on both half planes, and free-product word decomposition in PSL(2,Z).

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ncperiods/rational.hpp"

namespace ncperiods {

using Complex = std::complex<double>;

/// Integer matrix [[a,b],[c,d]] with determinant +1.
struct UniModular {
    long long a = 1, b = 0, c = 0, d = 1;

    UniModular() = default;
    UniModular(long long a_, long long b_, long long c_, long long d_);

    UniModular operator*(const UniModular& o) const;
    UniModular inverse() const { return UniModular(d, -b, -c, a); }
    UniModular negate() const { return UniModular(-a, -b, -c, -d); }

    bool operator==(const UniModular& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
    /// Equality in PSL(2,Z), i.e. up to a global sign.
    bool psl_equal(const UniModular& o) const {
        return *this == o || *this == o.negate();
    }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

    std::string str() const;
};

// Standard generators: sigma and tau generate PSL(2,Z) = Z2 * Z3;
// theta is the translation z -> z+1 and satisfies theta = tau^{-1} sigma.
UniModular sigma_gen();   // [[0,-1],[1,0]]
UniModular tau_gen();     // [[0,-1],[1,-1]]
UniModular theta_gen();   // [[1,1],[0,1]]
UniModular theta_pow(long long n);
UniModular theta_sigma_theta();  // [[1,0],[1,1]]

/// Exact action on P^1(Q).  Never fails: a pole maps to the infinite cusp.
Cusp act_cusp(const UniModular& g, const Cusp& x);

/// Moebius action on C.  Throws std::domain_error on a pole (only possible
/// for real z).  Maps each open half plane to itself.
Complex act_moebius(const UniModular& g, Complex z);

/// Alternating letters of the free product <sigma> * <tau>.
enum class Letter : std::uint8_t { S, T, T2 };

/// A reduced word in sigma, tau, tau^2.  push() keeps the word reduced
/// (S·S cancels, tau powers combine mod 3), so the stored sequence is the
/// normal form of the group element it spells.
struct GroupWord {
    std::vector<Letter> letters;

    void push(Letter l);
    void push_word(const GroupWord& w);
    bool empty() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }
    std::string str() const;  // e.g. "S.T.S.T2", "1" for the empty word
};

/// Normal form of g in PSL(2,Z) via the Euclidean algorithm on the first
/// column.  recompose(decompose(g)) equals ±g.
GroupWord decompose(const UniModular& g);
UniModular recompose(const GroupWord& w);
UniModular letter_matrix(Letter l);

/// Reduce z into the standard fundamental domain (|Re| <= 1/2, |z| >= 1).
/// Returns the reduced point zr and the matrix g with zr = g z.
struct Reduction {
    Complex zr;
    UniModular g;
};
Reduction reduce_to_fundamental_domain(Complex z);

}  // namespace ncperiods
