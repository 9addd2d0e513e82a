#pragma once

// Reciprocity series attached to a form family.
//
// For coprime p > 0, q the series
//
//     f(p, q) = diag(p^{k_j}) . J_0^inf(q/p)
//
// packages every iterated period integral evaluated at the rational point
// q/p, each word weighted by p raised to the sum of its letters' exponents.
// Positive q is the defining range ("direct"); negative q is reached by
// inverting the sigma image ("extended") because p^k for real k has no
// canonical value at p < 0.  The family of f values obeys a two-term
// recursion along Stern-Brocot neighbours and an inversion symmetry, both of
// which follow from path composition plus the transformation law of the
// transported series; the residual helpers below measure each of them, plus
// the single-quadrature scalar shadows that the depth-1 coefficients must
// reproduce.
//
// Residual normalization: coefficients carry prefactors like p^{k_j} that
// reach 1e6..1e9 for the weight-12 form already at single-digit p, q, so an
// absolute coefficient gap is meaningless there (doubles cannot cancel nine
// digits and leave 1e-7).  All residuals here therefore divide by
// max(1, |coefficient|) per word -- absolute for order-one data, relative
// beyond.

#include <complex>
#include <cstddef>

#include "ncperiods/iterated_periods.hpp"

namespace ncperiods {

/// How a reciprocity value was produced: by direct transport along the
/// {0, i inf} geodesic, or through the inversion extension (the only route
/// to q < 0).
enum class ReciprocityRoute { direct, extended };

struct ReciprocityValue {
    long long p = 1;
    long long q = 1;
    NCSeries value;
    ReciprocityRoute route = ReciprocityRoute::direct;
    /// q == 0 places the evaluation point on the endpoint cusp of the
    /// integration path itself.  The integrals still converge (the forms
    /// vanish at the cusp fast enough), but the identity suites skip the
    /// degenerate pair, so the flag travels with the value.
    bool endpoint_degenerate = false;
};

/// f(p, q) for coprime pairs with p > 0.  Throws std::domain_error when
/// p <= 0 or gcd(p, q) != 1; quadrature failures surface as
/// ConvergenceError.
ReciprocityValue reciprocity_function(const FormFamily& fam, long long p,
                                      long long q,
                                      const TransportOptions& opt = {});

/// The depth-1 coefficient of letter j by one direct quadrature,
/// independent of the ODE transport: p^{k_j} int_0^{i inf} f_j(z)
/// (z - q/p)^{k_j} dz.  Defined for p > 0 and either sign of q.
Complex scalar_reciprocity(const FormFamily& fam, std::size_t j, long long p,
                           long long q, const QuadratureOptions& opt = {});

/// Largest normalized coefficient gap between the depth-1 slice of the
/// transported f(p, q) and the scalar_reciprocity quadrature values: two
/// fully independent evaluation routes for the same numbers.
double scalar_vs_series_residual(const FormFamily& fam, long long p, long long q,
                                 const TransportOptions& topt = {},
                                 const QuadratureOptions& qopt = {});

/// Normalized residual of the two-term recursion
///     f(p, q) = diag(v_j(theta)^{-1}) f(p, q+p)
///             . diag(v_j(theta sigma theta)^{-1}) f(q+p, q)
/// for coprime p, q > 0.
double recursion_residual(const FormFamily& fam, long long p, long long q,
                          const TransportOptions& opt = {});

/// Normalized distance of f(p, q) . diag(v_j(sigma)^{-1}) f~(q, -p) from the
/// identity series, where f~(q, -p) is the direct transport formula applied
/// at the negative rational -p/q (coprime p, q > 0).  This is the series
/// form of the inversion symmetry that the extension route inverts.
double inversion_residual(const FormFamily& fam, long long p, long long q,
                          const TransportOptions& opt = {});

/// Normalized distance between the extended value f(p, q), q < 0, and the
/// direct transport formula evaluated at the same (now negative) rational
/// q/p.  Checks that the extension and the boundary-extended integrals
/// agree where both make sense.
double extension_consistency_residual(const FormFamily& fam, long long p,
                                      long long q,
                                      const TransportOptions& opt = {});

/// Scalar shadow of recursion_residual for letter j, all three terms by
/// single quadratures:
///     s(p,q) - v_j(theta)^{-1} s(p,q+p) - v_j(theta sigma theta)^{-1} s(q+p,q)
/// normalized by the largest term magnitude (floored at 1).
double scalar_recursion_residual(const FormFamily& fam, std::size_t j,
                                 long long p, long long q,
                                 const QuadratureOptions& opt = {});

/// Scalar shadow of inversion_residual for letter j:
///     s(p, q) + v_j(sigma)^{-1} s(q, -p),
/// normalized like the others (coprime p, q > 0).
double scalar_inversion_residual(const FormFamily& fam, std::size_t j,
                                 long long p, long long q,
                                 const QuadratureOptions& opt = {});

/// Residual of the translated-path step underlying the recursion: the
/// integral of omega_j(.; t) over {-1, i inf} against v_j(theta)^{-1} times
/// the integral of omega_j(.; t+1) over {0, i inf}.  Real t.
double shifted_path_residual(const FormFamily& fam, std::size_t j, double t,
                             const QuadratureOptions& opt = {});

/// Residual of the inverted-path step: the integral of omega_j(.; t) over
/// {0, -1} against v_j(theta sigma theta)^{-1} (t+1)^{k_j} times the
/// integral of omega_j(.; t/(t+1)) over {0, i inf}.  Real t > -1.
double inverted_path_residual(const FormFamily& fam, std::size_t j, double t,
                              const QuadratureOptions& opt = {});

}  // namespace ncperiods
