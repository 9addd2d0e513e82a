#include "ncperiods/iterated_periods.hpp"

#include <algorithm>
#include <cmath>

#include "ncperiods/modular_group.hpp"

namespace ncperiods {

FormFamily::FormFamily(std::vector<CuspForm> forms, std::size_t depth)
    : forms_(std::move(forms)), depth_(depth) {
    if (forms_.empty()) throw std::invalid_argument("FormFamily: need at least one form");
}

Complex FormFamily::one_form_value(std::size_t j, Complex z, Complex t) const {
    return forms_[j].evaluate(z) * real_power(z - t, power(j), HalfPlane::upper);
}

std::vector<Complex> FormFamily::multiplier_values(const UniModular& g) const {
    std::vector<Complex> v(forms_.size());
    for (std::size_t j = 0; j < forms_.size(); ++j) v[j] = forms_[j].multiplier()(g);
    return v;
}

namespace {

/// All letter one-forms omega_j(z(u)) z'(u) at one parameter value.
std::vector<Complex> letter_values(const FormFamily& fam, const PathParam& path,
                                   double u, Complex t) {
    const Complex z = path.point(u);
    const Complex vel = path.velocity(u);
    std::vector<Complex> om(fam.size());
    for (std::size_t j = 0; j < fam.size(); ++j)
        om[j] = fam.one_form_value(j, z, t) * vel;
    return om;
}

double max_abs(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

/// A(u) Y where A(u) = sum_j om[j] A_j: prepends one letter to every word.
NCSeries apply_letters(const std::vector<Complex>& om, const NCSeries& y) {
    const std::size_t l = y.letters();
    NCSeries r(l, y.depth());
    for (std::size_t n = 1; n <= y.depth(); ++n) {
        std::size_t tail = 1;
        for (std::size_t i = 1; i < n; ++i) tail *= l;
        const std::size_t count = tail * l;
        for (std::size_t w = 0; w < count; ++w)
            r.at(n, w) = om[w / tail] * y.at(n - 1, w % tail);
    }
    return r;
}

/// Classical RK4 across [u, u+h] given the letter values at u, u+h/2, u+h.
NCSeries rk4_step(const NCSeries& y, double h, const std::vector<Complex>& om_a,
                  const std::vector<Complex>& om_m, const std::vector<Complex>& om_b) {
    const NCSeries k1 = apply_letters(om_a, y);
    const NCSeries k2 = apply_letters(om_m, y + Complex(0.5 * h) * k1);
    const NCSeries k3 = apply_letters(om_m, y + Complex(0.5 * h) * k2);
    const NCSeries k4 = apply_letters(om_b, y + Complex(h) * k3);
    NCSeries r = y;
    r += Complex(h / 6.0) * (k1 + Complex(2.0) * k2 + Complex(2.0) * k3 + k4);
    return r;
}

}  // namespace

std::pair<double, double> transport_range(const FormFamily& fam, const PathParam& path,
                                          Complex t, const TransportOptions& opt) {
    double u0 = 0.0;
    if (path.m[1][0] != 0.0 && path.m[1][1] != 0.0)
        u0 = std::log(std::abs(path.m[1][1] / path.m[1][0]));
    const double cutoff = std::max(opt.tol * 1e-2, 1e-300);
    const auto march = [&](double dir) {
        int consec = 0;
        double u = u0;
        while (true) {
            u += dir;
            if (std::abs(u - u0) > opt.u_limit)
                throw ConvergenceError("transport_range: one-forms do not decay in range");
            if (max_abs(letter_values(fam, path, u, t)) < cutoff) {
                if (++consec >= 3) return u;
            } else {
                consec = 0;
            }
        }
    };
    const double hi = march(+1.0);
    const double lo = march(-1.0);
    return {lo, hi};
}

NCSeries transport(const FormFamily& fam, const PathParam& path, double u_lo,
                   double u_hi, Complex t, const TransportOptions& opt) {
    if (t.imag() > 0.0)
        throw std::domain_error("transport: base point must have Im t <= 0");
    NCSeries y = NCSeries::one(fam.size(), fam.depth());
    if (u_lo == u_hi) return y;
    if (u_lo > u_hi) throw std::invalid_argument("transport: reversed parameter range");

    const double range = u_hi - u_lo;
    double u = u_lo;
    double h = std::min(opt.h_init, range);
    auto om_lo = letter_values(fam, path, u, t);  // reused across step retries
    long steps = 0;

    while (u < u_hi) {
        if (++steps > opt.max_steps)
            throw ConvergenceError("transport: step budget exhausted");
        h = std::min(h, u_hi - u);
        if (h < 1e-13)
            throw ConvergenceError("transport: step size collapsed");

        const auto om_q1 = letter_values(fam, path, u + 0.25 * h, t);
        const auto om_mid = letter_values(fam, path, u + 0.50 * h, t);
        const auto om_q3 = letter_values(fam, path, u + 0.75 * h, t);
        const auto om_hi = letter_values(fam, path, u + h, t);

        const NCSeries coarse = rk4_step(y, h, om_lo, om_mid, om_hi);
        NCSeries fine = rk4_step(y, 0.5 * h, om_lo, om_q1, om_mid);
        fine = rk4_step(fine, 0.5 * h, om_mid, om_q3, om_hi);

        const double err = distance(coarse, fine);
        // The doubled-step estimate cannot resolve below roundoff on the
        // current series magnitude; without this floor the controller
        // rejects forever once tol_step dives under it.
        const double tol_step = std::max(opt.tol * (h / range),
                                         1e-15 * std::max(1.0, y.max_abs()));
        if (err <= tol_step) {
            // local extrapolation: the doubled step is one order better
            fine += Complex(1.0 / 15.0) * (fine - coarse);
            y = std::move(fine);
            u += h;
            om_lo = om_hi;
            const double grow =
                err > 0.0 ? 0.9 * std::pow(tol_step / err, 0.2) : 3.0;
            h *= std::clamp(grow, 1.0, 3.0);
        } else {
            h *= std::max(0.25, 0.9 * std::pow(tol_step / err, 0.25));
        }
    }
    return y;
}

NCSeries iterated_period(const FormFamily& fam, const Cusp& a, const Cusp& b,
                         Complex t, const TransportOptions& opt) {
    if (a == b) return NCSeries::one(fam.size(), fam.depth());
    const PathParam path = cusp_geodesic(a, b);
    const auto [lo, hi] = transport_range(fam, path, t, opt);
    return transport(fam, path, lo, hi, t, opt);
}

Complex nested_reference(const FormFamily& fam, const PathParam& path, double u_lo,
                         double u_hi, Complex t, const Word& word, double tol) {
    if (word.empty()) return Complex(1.0, 0.0);
    const std::size_t j0 = static_cast<std::size_t>(word.front());
    const Word rest(word.begin() + 1, word.end());
    QuadratureOptions q;
    q.tol = tol;
    const auto integrand = [&](double u) {
        const Complex om =
            fam.one_form_value(j0, path.point(u), t) * path.velocity(u);
        if (rest.empty()) return om;
        return om * nested_reference(fam, path, u_lo, u, t, rest, tol);
    };
    return integrate_adaptive(integrand, u_lo, u_hi, q).value;
}

double equivariance_residual(const FormFamily& fam, const UniModular& g, const Cusp& a,
                             const Cusp& b, Complex t, const TransportOptions& opt) {
    const Complex gt = act_moebius(g, t);
    const NCSeries J = iterated_period(fam, a, b, gt, opt);
    const auto v = fam.multiplier_values(g);
    std::vector<Complex> fac(fam.size());
    for (std::size_t j = 0; j < fam.size(); ++j)
        fac[j] = real_power(bare_factor(g, t), fam.power(j), HalfPlane::lower) / v[j];
    const NCSeries lhs = J.diagonal_scale(fac);
    const UniModular gi = g.inverse();
    const NCSeries rhs = iterated_period(fam, act_cusp(gi, a), act_cusp(gi, b), t, opt);
    return distance(lhs, rhs) / std::max(1.0, rhs.max_abs());
}

double inverse_identity_residual(const FormFamily& fam, const Cusp& a, const Cusp& b,
                                 Complex t, const TransportOptions& opt) {
    const NCSeries fwd = iterated_period(fam, a, b, t, opt);
    const NCSeries bwd = iterated_period(fam, b, a, t, opt);
    return distance(bwd * fwd, NCSeries::one(fam.size(), fam.depth()));
}

double composition_residual(const FormFamily& fam, const Cusp& a, const Cusp& b,
                            Complex t, Complex c, const TransportOptions& opt) {
    const PathParam path = cusp_geodesic(a, b);
    const auto [lo, hi] = transport_range(fam, path, t, opt);
    const double uc = path.param_of(c);
    if (uc <= lo || uc >= hi)
        throw std::invalid_argument("composition_residual: split point outside window");
    const NCSeries whole = transport(fam, path, lo, hi, t, opt);
    const NCSeries first = transport(fam, path, lo, uc, t, opt);
    const NCSeries second = transport(fam, path, uc, hi, t, opt);
    return distance(second * first, whole) / std::max(1.0, whole.max_abs());
}

double shuffle_residual(const NCSeries& J) {
    const std::size_t l = J.letters();
    double worst = 0.0;
    for (std::size_t n1 = 1; n1 + 1 <= J.depth(); ++n1) {
        for (std::size_t n2 = 1; n1 + n2 <= J.depth(); ++n2) {
            std::size_t c1 = 1, c2 = 1;
            for (std::size_t i = 0; i < n1; ++i) c1 *= l;
            for (std::size_t i = 0; i < n2; ++i) c2 *= l;
            for (std::size_t i1 = 0; i1 < c1; ++i1) {
                const Word u = index_to_word(i1, n1, l);
                for (std::size_t i2 = 0; i2 < c2; ++i2) {
                    const Word v = index_to_word(i2, n2, l);
                    Complex sum(0.0, 0.0);
                    for (const Word& w : shuffle_words(u, v)) sum += J.coeff(w);
                    const Complex prod = J.coeff(u) * J.coeff(v);
                    const double rel = std::abs(prod - sum) /
                                       std::max(1.0, std::abs(prod));
                    worst = std::max(worst, rel);
                }
            }
        }
    }
    return worst;
}

}  // namespace ncperiods
