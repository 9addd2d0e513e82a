#pragma once

// Cusp forms realized as powers of the Dedekind eta function.
//
// For real w > 0 the form is eta(z)^{2w}, a cusp form of weight w for the
// full modular group with unitary multiplier system (EtaPowerMultiplier).
// Its Fourier expansion is
//
//     eta(z)^{2w} = q^alpha * sum_{m>=0} b_m q^m,   q = e^{2 pi i z},
//
// with alpha = w/12 and b_0 = 1.  The b_m satisfy the convolution recurrence
// m b_m = -2w sum_{j=1..m} sigma_1(j) b_{m-j}, which is how they are built
// here (no factored product truncation, so the coefficients are exact up to
// double rounding, and exact integers when 2w is an integer).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ncperiods/multipliers.hpp"
#include "ncperiods/rational.hpp"

namespace ncperiods {

/// sigma_1(1..M) by sieve (index 0 unused, kept 0).
std::vector<long long> sigma1_table(std::size_t M);

/// b_0..b_M of prod_{n>=1} (1-q^n)^{two_w} (the eta power without q^alpha).
std::vector<double> eta_power_coefficients(double two_w, std::size_t M);

/// Same recurrence in exact integers; requires integral exponent.
/// two_w = 24 gives the Ramanujan tau values tau(m+1).
std::vector<BigInt> eta_power_coefficients_exact(long long two_w, std::size_t M);

/// c_0..c_M of prod (1-q^n)^{-two_w}: all positive, and |b_m| <= c_m
/// termwise (induction on the recurrence), so it majorizes the series above.
std::vector<double> eta_power_majorant(double two_w, std::size_t M);

/// Upper bound for sum_{m>M} c_m x^m where c_m is the majorant sequence:
/// for any 0 < x < 1/2,  tail <= (2x)^{M+1} * prod_n (1-2^{-n})^{-two_w}.
/// Throws std::domain_error when x >= 1/2 (bound hypothesis violated).
double majorant_tail_bound(double two_w, std::size_t M, double x);

/// A member of the eta power family together with everything needed to
/// evaluate it anywhere on the upper half plane.
class CuspForm {
public:
    /// Weight w > 0; the expansion is truncated after q^{alpha + M}.
    explicit CuspForm(double w, std::size_t M = 256);

    double weight() const { return w_; }
    double q_exponent() const { return w_ / 12.0; }
    std::size_t terms() const { return coeffs_.size() - 1; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    const EtaPowerMultiplier& multiplier() const { return mult_; }
    MultiplierFn multiplier_fn() const;

    /// F(z) via reduction to the fundamental domain: write z = h zr with zr
    /// reduced, then F(z) = v(h) exp(w Log(c zr + d) + 2 pi i alpha zr) S(zr).
    /// The exponentials are combined before a single exp so that deep-cusp
    /// points neither overflow nor lose the phase.  Requires Im z > 0.
    Complex evaluate(Complex z) const;

    /// Truncated series at z itself, no reduction.  Only accurate when Im z
    /// is not small; pair with truncation_bound.  Requires Im z > 0.
    Complex evaluate_direct(Complex z) const;

    /// Bound on |sum_{m>M} b_m e^{2 pi i m z}| for Im z = im_z, valid for
    /// im_z > log(2)/(2 pi).  The q^alpha prefactor is not included.
    double truncation_bound(double im_z) const;

    /// FNV-1a over the family tag, weight bits, M and coefficient bits.
    /// Stable across runs; used to key caches and stamp reports.
    std::uint64_t content_hash() const;

    std::string to_json() const;
    static CuspForm from_json(const std::string& text);

    /// The four weights exercised throughout the test suite:
    /// 1/2 (eta itself), 5.3, 10.6, and 12 (discriminant form).
    static const std::vector<double>& builtin_weights();

private:
    double w_;
    std::size_t M_;
    std::vector<double> coeffs_;
    EtaPowerMultiplier mult_;
};

}  // namespace ncperiods
