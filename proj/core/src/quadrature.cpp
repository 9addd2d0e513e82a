#include "ncperiods/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace ncperiods {

Complex PathParam::point(double u) const {
    const Complex zeta(0.0, std::exp(u));
    return (m[0][0] * zeta + m[0][1]) / (m[1][0] * zeta + m[1][1]);
}

Complex PathParam::velocity(double u) const {
    const Complex zeta(0.0, std::exp(u));
    const Complex den = m[1][0] * zeta + m[1][1];
    return det() * zeta / (den * den);
}

double PathParam::param_of(Complex z) const {
    // Moebius action ignores scaling, so the un-normalized inverse suffices.
    const Complex w = (m[1][1] * z - m[0][1]) / (-m[1][0] * z + m[0][0]);
    if (!(w.imag() > 0.0) || std::abs(w.real()) > 1e-9 * std::abs(w))
        throw std::domain_error("PathParam::param_of: point is not on the geodesic");
    return std::log(w.imag());
}

PathParam cusp_geodesic(const Cusp& a, const Cusp& b) {
    if (a == b) throw std::invalid_argument("cusp_geodesic: endpoints coincide");
    PathParam p;
    p.m[0][0] = static_cast<double>(b.num);
    p.m[1][0] = static_cast<double>(b.den);
    p.m[0][1] = static_cast<double>(a.num);
    p.m[1][1] = static_cast<double>(a.den);
    if (p.det() < 0.0) {
        p.m[0][1] = -p.m[0][1];
        p.m[1][1] = -p.m[1][1];
    }
    return p;
}

const GaussLegendre15& gauss_legendre_15() {
    static const GaussLegendre15 table = [] {
        GaussLegendre15 t{};
        constexpr int n = 15;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 64; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 1; k < n; ++k) {
                    const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            t.x[i] = x;
            t.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return t;
    }();
    return table;
}

Complex OneForm::eval(Complex z) const {
    Complex val = form->evaluate(z);
    if (k != 0.0) val *= real_power(z - t, k, HalfPlane::upper);
    return val;
}

namespace {

struct Panel {
    Complex value;
    double abssum;  // integral of |w_i f(x_i)|: the roundoff scale of value
};

Panel gl15_segment(const std::function<Complex(double)>& f, double a, double b,
                   long& evals) {
    const auto& G = gauss_legendre_15();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Complex s(0.0, 0.0);
    double m = 0.0;
    for (int i = 0; i < 15; ++i) {
        const Complex v = G.w[i] * f(c + h * G.x[i]);
        s += v;
        m += std::abs(v);
    }
    evals += 15;
    return Panel{s * h, m * h};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<Complex(double)>& f, double lo,
                              double hi, const QuadratureOptions& opt) {
    QuadResult r{Complex(0.0, 0.0), 0.0, 0};
    if (lo == hi) return r;

    struct Seg {
        double a, b, tol;
        Complex coarse;
        int depth;
    };
    std::vector<Seg> work;
    work.push_back({lo, hi, opt.tol, gl15_segment(f, lo, hi, r.evals).value, 0});

    while (!work.empty()) {
        const Seg s = work.back();
        work.pop_back();
        const double mid = 0.5 * (s.a + s.b);
        const Panel p1 = gl15_segment(f, s.a, mid, r.evals);
        const Panel p2 = gl15_segment(f, mid, s.b, r.evals);
        const double err = std::abs(p1.value + p2.value - s.coarse);
        // The floor is the roundoff level of the node sums themselves:
        // refining past it cannot improve the answer, only loop.  Summed
        // over all panels it contributes at most ~2e-15 * int |f|.
        const double accept =
            std::max(s.tol, 2e-15 * (p1.abssum + p2.abssum));
        if (err <= accept) {
            r.value += p1.value + p2.value;
            r.err_estimate += err;
        } else if (s.depth >= opt.max_depth) {
            throw ConvergenceError("integrate_adaptive: bisection depth exhausted");
        } else {
            work.push_back({s.a, mid, 0.5 * s.tol, p1.value, s.depth + 1});
            work.push_back({mid, s.b, 0.5 * s.tol, p2.value, s.depth + 1});
        }
    }
    return r;
}

QuadResult integrate_one_form(const OneForm& w, const PathParam& path,
                              const QuadratureOptions& opt) {
    if (w.t.imag() > 0.0)
        throw std::domain_error("integrate_one_form: base point must have Im t <= 0");
    const auto F = [&](double u) { return w.eval(path.point(u)) * path.velocity(u); };

    // Start near the apex of the geodesic (the maximum of Im z) when it has
    // one; the integrand envelope peaks nearby and decays double-
    // exponentially outward, so unit-step probing finds safe truncation
    // points quickly.
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
                throw ConvergenceError("integrate_one_form: integrand does not decay in range");
            if (std::abs(F(u)) < cutoff) {
                if (++consec >= 3) return u;
            } else {
                consec = 0;
            }
        }
    };
    const double hi = march(+1.0);
    const double lo = march(-1.0);
    return integrate_adaptive(F, lo, hi, opt);
}

QuadResult period_integral(const OneForm& w, const Cusp& a, const Cusp& b,
                           const QuadratureOptions& opt) {
    if (a == b) return QuadResult{Complex(0.0, 0.0), 0.0, 0};
    return integrate_one_form(w, cusp_geodesic(a, b), opt);
}

QuadResult period_function(const CuspForm& f, Complex t, const QuadratureOptions& opt) {
    const OneForm w{&f, f.weight() - 2.0, t};
    return period_integral(w, Cusp::from_integer(0), Cusp(), opt);
}

}  // namespace ncperiods
