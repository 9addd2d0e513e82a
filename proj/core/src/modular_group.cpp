#include "ncperiods/modular_group.hpp"

#include <cmath>
#include <stdexcept>

namespace ncperiods {

UniModular::UniModular(long long a_, long long b_, long long c_, long long d_)
    : a(a_), b(b_), c(c_), d(d_) {
    if (a * d - b * c != 1) throw std::invalid_argument("UniModular: determinant must be 1");
}

UniModular UniModular::operator*(const UniModular& o) const {
    return UniModular(a * o.a + b * o.c, a * o.b + b * o.d,
                      c * o.a + d * o.c, c * o.b + d * o.d);
}

std::string UniModular::str() const {
    return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" +
           std::to_string(c) + "," + std::to_string(d) + "]]";
}

UniModular sigma_gen() { return UniModular(0, -1, 1, 0); }
UniModular tau_gen() { return UniModular(0, -1, 1, -1); }
UniModular theta_gen() { return UniModular(1, 1, 0, 1); }
UniModular theta_pow(long long n) { return UniModular(1, n, 0, 1); }
UniModular theta_sigma_theta() { return UniModular(1, 0, 1, 1); }

Cusp act_cusp(const UniModular& g, const Cusp& x) {
    // homogeneous coordinates (num, den)
    const long long n = g.a * x.num + g.b * x.den;
    const long long m = g.c * x.num + g.d * x.den;
    return Cusp(n, m);
}

Complex act_moebius(const UniModular& g, Complex z) {
    const Complex den = static_cast<double>(g.c) * z + static_cast<double>(g.d);
    if (std::abs(den) == 0.0) throw std::domain_error("act_moebius: pole");
    return (static_cast<double>(g.a) * z + static_cast<double>(g.b)) / den;
}

void GroupWord::push(Letter l) {
    if (letters.empty()) {
        letters.push_back(l);
        return;
    }
    const Letter back = letters.back();
    if (l == Letter::S) {
        if (back == Letter::S) {
            letters.pop_back();  // sigma^2 = 1
            return;
        }
        letters.push_back(l);
        return;
    }
    // l is a tau power; combine with a trailing tau power mod 3
    if (back == Letter::S) {
        letters.push_back(l);
        return;
    }
    const int e = (back == Letter::T ? 1 : 2) + (l == Letter::T ? 1 : 2);
    letters.pop_back();
    const int r = e % 3;
    if (r == 1) push(Letter::T);
    else if (r == 2) push(Letter::T2);
    // r == 0: tau^3 = 1, nothing to push; a cancellation may now expose an
    // S·S pair, which the recursive push() above would have handled, and a
    // plain erase cannot create one (S letters are only adjacent to powers).
}

void GroupWord::push_word(const GroupWord& w) {
    for (Letter l : w.letters) push(l);
}

std::string GroupWord::str() const {
    if (letters.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) s += '.';
        switch (letters[i]) {
            case Letter::S: s += 'S'; break;
            case Letter::T: s += 'T'; break;
            case Letter::T2: s += "T2"; break;
        }
    }
    return s;
}

UniModular letter_matrix(Letter l) {
    switch (l) {
        case Letter::S: return sigma_gen();
        case Letter::T: return tau_gen();
        default: return tau_gen() * tau_gen();
    }
}

UniModular recompose(const GroupWord& w) {
    UniModular m;
    for (Letter l : w.letters) m = m * letter_matrix(l);
    return m;
}

namespace {

// theta = tau^2 sigma and theta^{-1} = sigma tau in PSL(2,Z).
void push_theta_pow(GroupWord& w, long long n) {
    for (; n > 0; --n) {
        w.push(Letter::T2);
        w.push(Letter::S);
    }
    for (; n < 0; ++n) {
        w.push(Letter::S);
        w.push(Letter::T);
    }
}

}  // namespace

GroupWord decompose(const UniModular& g) {
    GroupWord w;
    UniModular m = g;
    // Euclidean algorithm on the first column: peel theta^n sigma from the
    // left until c = 0, then the remainder is ±theta^b.
    while (m.c != 0) {
        // nearest-integer quotient keeps words short
        const double q = static_cast<double>(m.a) / static_cast<double>(m.c);
        const long long n = std::llround(q);
        push_theta_pow(w, n);
        w.push(Letter::S);
        // m <- sigma^{-1} theta^{-n} m ; sigma^{-1} = [[0,1],[-1,0]]
        const long long a2 = m.a - n * m.c, b2 = m.b - n * m.d;
        const UniModular next(m.c, m.d, -a2, -b2);
        m = next;
    }
    push_theta_pow(w, m.a > 0 ? m.b : -m.b);
    return w;
}

Reduction reduce_to_fundamental_domain(Complex z) {
    if (!(z.imag() > 0.0)) throw std::domain_error("reduce_to_fundamental_domain: need Im z > 0");
    UniModular g;
    for (int guard = 0; guard < 256; ++guard) {
        const long long n = std::llround(z.real());
        if (n != 0) {
            z -= static_cast<double>(n);
            g = theta_pow(-n) * g;
        }
        if (std::norm(z) < 1.0 - 1e-15) {
            z = -1.0 / z;
            g = sigma_gen() * g;
        } else {
            return Reduction{z, g};
        }
    }
    throw std::runtime_error("reduce_to_fundamental_domain: did not converge");
}

}  // namespace ncperiods
