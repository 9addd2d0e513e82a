#include "ncperiods/multipliers.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ncperiods {

namespace {

constexpr double kPi = std::numbers::pi;

/// exp(i pi w r) for exact rational r, accurate to ~1 ulp of phase even when
/// r is large.  Naive double evaluation of w*r mod 2 loses ~7 digits once
/// r ~ 1e7 (reduction matrices deep in a cusp neighbourhood), so the integer
/// part is multiplied with an fma-compensated product and reduced with the
/// exact fmod.
Complex phase_from_rational(double w, const Rational& r) {
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    BigInt ip = num / den;
    if (num < 0 && ip * den != num) --ip;  // floor
    const Rational frac = r - Rational(ip);
    if (abs(ip) >= BigInt(1) << 53)
        throw std::runtime_error("phase_from_rational: integer part exceeds exact double range");
    const double m = static_cast<double>(ip);
    const double p = w * m;
    const double e = std::fma(w, m, -p);  // exact product residual
    double phi = std::fmod(p, 2.0) + e + w * static_cast<double>(frac);
    phi = std::fmod(phi, 2.0);
    return Complex(std::cos(kPi * phi), std::sin(kPi * phi));
}

}  // namespace

Complex real_power(Complex base, double expo, HalfPlane hp) {
    if (base == Complex(0.0, 0.0)) throw std::domain_error("real_power: zero base");
    double a = std::arg(base);  // (-pi, pi], except signed-zero imag gives -pi
    if (base.imag() == 0.0 && base.real() < 0.0)
        a = (hp == HalfPlane::upper) ? kPi : -kPi;
    const double lg = std::log(std::abs(base));
    return std::exp(Complex(expo * lg, expo * a));
}

Complex bare_factor(const UniModular& g, Complex z) {
    return static_cast<double>(g.c) * z + static_cast<double>(g.d);
}

Complex EtaPowerMultiplier::positive_c_phase(const UniModular& g) const {
    const BigInt A = g.a, C = g.c, D = g.d;
    const Rational r =
        Rational(A + D, 6 * C) - 2 * dedekind_sum_euclid(D, C) - Rational(1, 2);
    return phase_from_rational(w_, r);
}

Complex EtaPowerMultiplier::operator()(const UniModular& g) const {
    if (g.c > 0) return positive_c_phase(g);
    if (g.c == 0 && g.d > 0) {
        // g = [[1,b],[0,1]]: translation by b
        return phase_from_rational(w_, Rational(g.b, 6));
    }
    // Remaining sign cases through -g:  v(g) (cz+d)^w = v(-g) (-cz-d)^w,
    // and the factor ratio is a z-independent phase (args differ by pi);
    // evaluate it at z = i.
    const UniModular n = g.negate();
    const Complex vn = (*this)(n);
    const Complex zi(0.0, 1.0);
    const Complex num = real_power(bare_factor(n, zi), w_, HalfPlane::upper);
    const Complex den = real_power(bare_factor(g, zi), w_, HalfPlane::upper);
    return vn * num / den;
}

Complex automorphy_factor(const MultiplierFn& v, double k, const UniModular& g,
                          Complex z, HalfPlane hp) {
    return v(g) * real_power(bare_factor(g, z), k, hp);
}

double cocycle_residual(const MultiplierFn& v, double k, const UniModular& g,
                        const UniModular& d, Complex z) {
    const HalfPlane hp = z.imag() >= 0.0 ? HalfPlane::upper : HalfPlane::lower;
    const Complex lhs = automorphy_factor(v, k, g * d, z, hp);
    const Complex rhs =
        automorphy_factor(v, k, g, act_moebius(d, z), hp) * automorphy_factor(v, k, d, z, hp);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

std::function<Complex(Complex)> weight_action(std::function<Complex(Complex)> F,
                                              MultiplierFn v, double k,
                                              const UniModular& g,
                                              ActionDirection dir) {
    if (dir == ActionDirection::plus) {
        return [F = std::move(F), v = std::move(v), k, g](Complex z) {
            return F(act_moebius(g, z)) / v(g) *
                   real_power(bare_factor(g, z), -k, HalfPlane::upper);
        };
    }
    return [F = std::move(F), v = std::move(v), k, g](Complex t) {
        return F(act_moebius(g, t)) / v(g) *
               real_power(bare_factor(g, t), k, HalfPlane::lower);
    };
}

}  // namespace ncperiods
