#pragma once

// Iterated period integrals of a tuple of forms.
//
// Fix forms f_0..f_{l-1} of weights w_j and a base point t with Im t <= 0.
// Attach to each the one-form omega_j = f_j(z) (z-t)^{w_j-2} dz.  The series
//
//     J_a^b(t) = 1 + sum_words c_w(t) A_w
//
// collects all iterated integrals of the omega_j along the geodesic from a
// to b.  It is computed here as the parallel transport of the linear ODE
// dJ/du = A(u) J(u), A(u) = sum_j omega_j(z(u)) z'(u) A_j, integrated by an
// adaptive doubled Runge-Kutta step: new letters accumulate on the left as
// the upper limit advances, matching the composition rule
// J_a^b = J_c^b . J_a^c.

#include <utility>
#include <vector>

#include "ncperiods/nc_series.hpp"
#include "ncperiods/quadrature.hpp"

namespace ncperiods {

/// The tuple of forms whose iterated integrals are being assembled, plus the
/// truncation depth of the series algebra.
class FormFamily {
public:
    FormFamily(std::vector<CuspForm> forms, std::size_t depth);

    std::size_t size() const { return forms_.size(); }
    std::size_t depth() const { return depth_; }
    const CuspForm& form(std::size_t j) const { return forms_[j]; }

    /// Exponent on (z - t) for letter j: weight minus 2.
    double power(std::size_t j) const { return forms_[j].weight() - 2.0; }

    /// f_j(z) (z - t)^{k_j}, principal branch of the power.
    Complex one_form_value(std::size_t j, Complex z, Complex t) const;

    /// (v_0(g), ..., v_{l-1}(g)).
    std::vector<Complex> multiplier_values(const UniModular& g) const;

private:
    std::vector<CuspForm> forms_;
    std::size_t depth_;
};

struct TransportOptions {
    double tol = 1e-10;    // target accuracy of the whole transport
    double h_init = 0.25;  // initial step in the geodesic parameter
    double u_limit = 60.0; // truncation probing range
    long max_steps = 200000;
};

/// Truncation window [lo, hi] outside which every letter's one-form is
/// negligible along the path (both path ends must be cusps).
std::pair<double, double> transport_range(const FormFamily& fam, const PathParam& path,
                                          Complex t, const TransportOptions& opt = {});

/// Transport of the ODE above across [u_lo, u_hi] from the identity series.
NCSeries transport(const FormFamily& fam, const PathParam& path, double u_lo,
                   double u_hi, Complex t, const TransportOptions& opt = {});

/// J_a^b(t) along the connecting geodesic; the identity series when a == b.
NCSeries iterated_period(const FormFamily& fam, const Cusp& a, const Cusp& b,
                         Complex t, const TransportOptions& opt = {});

/// Direct evaluation of one coefficient by nested adaptive quadrature over
/// the simplex, no ODE involved.  Cost grows fast with word length; meant
/// as an independent cross-check at depth <= 2.
Complex nested_reference(const FormFamily& fam, const PathParam& path, double u_lo,
                         double u_hi, Complex t, const Word& word, double tol = 1e-10);

/// Largest relative coefficient error in the transformation law
///   v_w(g)^{-1} (ct + d)^{k_w} J_a^b(g t)[w] = J_{g^{-1}a}^{g^{-1}b}(t)[w],
/// where v_w and (ct+d)^{k_w} factor over the letters of w (lower-half-plane
/// branch in the power, since Im t <= 0).
double equivariance_residual(const FormFamily& fam, const UniModular& g, const Cusp& a,
                             const Cusp& b, Complex t, const TransportOptions& opt = {});

/// Distance of J_b^a . J_a^b from the identity series.
double inverse_identity_residual(const FormFamily& fam, const Cusp& a, const Cusp& b,
                                 Complex t, const TransportOptions& opt = {});

/// Relative distance between J_a^b and the product of the transports of the
/// two pieces split at the interior point c of the geodesic.
double composition_residual(const FormFamily& fam, const Cusp& a, const Cusp& b,
                            Complex t, Complex c, const TransportOptions& opt = {});

/// Largest relative violation of J[u] J[v] = sum of J over shuffles of u, v
/// across all word pairs that fit inside the truncation depth.
double shuffle_residual(const NCSeries& J);

}  // namespace ncperiods
