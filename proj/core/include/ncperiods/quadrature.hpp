#pragma once

// Numerical integration along hyperbolic geodesics.
//
// Every geodesic between two points of the closed upper half plane is the
// image of the imaginary axis under a real 2x2 matrix with positive
// determinant, so paths are parameterized once and for all as
//
//     z(u) = g . (i e^u),   u from -inf (second column cusp) to +inf (first),
//
// which turns cusp-to-cusp period integrals into rapidly decaying integrals
// over the real line: the integrand decays double-exponentially in u at both
// ends because the form is cuspidal.  Truncation limits are found by probing
// and the finite piece is handled by adaptive 15-point Gauss-Legendre.

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>

#include "ncperiods/forms.hpp"
#include "ncperiods/rational.hpp"

namespace ncperiods {

/// Raised when truncation probing or adaptive refinement fails to reach the
/// requested tolerance; the command line maps it to its own exit code.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// z(u) = (m00 ie^u + m01) / (m10 ie^u + m11), det m > 0.
struct PathParam {
    double m[2][2];

    Complex point(double u) const;
    /// dz/du = det(m) ie^u / (m10 ie^u + m11)^2.
    Complex velocity(double u) const;
    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    /// Parameter of a point on the geodesic: u = log Im(m^{-1} z).  Throws
    /// std::domain_error when z is off the geodesic by more than a sliver.
    double param_of(Complex z) const;
};

/// The geodesic running from cusp a (u = -inf) to cusp b (u = +inf).
/// Throws std::invalid_argument when a == b.
PathParam cusp_geodesic(const Cusp& a, const Cusp& b);

/// Nodes and weights of the 15-point Gauss-Legendre rule on [-1, 1],
/// computed once at runtime by Newton iteration on P_15.
struct GaussLegendre15 {
    std::array<double, 15> x;
    std::array<double, 15> w;
};
const GaussLegendre15& gauss_legendre_15();

/// The integrand f(z) (z - t)^k dz restricted to a path.  The power uses the
/// principal branch, which is safe because Im(z - t) > 0 everywhere on the
/// open geodesic when Im t <= 0.
struct OneForm {
    const CuspForm* form;
    double k;   // exponent on (z - t); weight - 2 for period functions
    Complex t;  // Im t <= 0 (t = 0 covers plain moments z^k dz)

    Complex eval(Complex z) const;
};

struct QuadratureOptions {
    double tol = 1e-12;   // absolute tolerance on the whole integral
    int max_depth = 30;   // adaptive bisection depth limit
    double u_limit = 60;  // truncation probing range
};

struct QuadResult {
    Complex value;
    double err_estimate;  // accumulated |coarse - fine| over accepted leaves
    long evals;           // integrand evaluations
};

/// Adaptive Gauss-Legendre for a generic complex integrand on [lo, hi].
QuadResult integrate_adaptive(const std::function<Complex(double)>& f, double lo,
                              double hi, const QuadratureOptions& opt = {});

/// Integral of the one-form over the full geodesic of `path`, both ends at
/// cusps; truncation limits are found automatically.
QuadResult integrate_one_form(const OneForm& w, const PathParam& path,
                              const QuadratureOptions& opt = {});

/// int_a^b form(z) (z-t)^k dz along the connecting geodesic (0 when a == b).
QuadResult period_integral(const OneForm& w, const Cusp& a, const Cusp& b,
                           const QuadratureOptions& opt = {});

/// The period function of a form: int_0^{i inf} f(z) (z-t)^{w-2} dz.
QuadResult period_function(const CuspForm& f, Complex t,
                           const QuadratureOptions& opt = {});

}  // namespace ncperiods
