#include "ncperiods/reciprocity.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ncperiods/modular_group.hpp"

namespace ncperiods {

namespace {

// diag(p^{k_j}) J_0^inf(q/p) taken literally for p > 0 and either sign of
// q.  The public entry point restricts q < 0 to the extension route; this
// helper is what the inversion residuals compare that route against.
NCSeries formal_value(const FormFamily& fam, long long p, long long q,
                      const TransportOptions& opt) {
    const Complex t(static_cast<double>(q) / static_cast<double>(p), 0.0);
    NCSeries J = iterated_period(fam, Cusp(0, 1), Cusp::infinity(), t, opt);
    std::vector<Complex> fac(fam.size());
    for (std::size_t j = 0; j < fam.size(); ++j)
        fac[j] = std::pow(static_cast<double>(p), fam.power(j));
    return J.diagonal_scale(fac);
}

std::vector<Complex> inverted(std::vector<Complex> v) {
    for (auto& x : v) x = 1.0 / x;
    return v;
}

void require_positive_pair(const char* who, long long p, long long q) {
    if (p <= 0 || q <= 0)
        throw std::domain_error(std::string(who) + ": needs p, q > 0");
    if (gcd_ll(p, q) != 1)
        throw std::domain_error(std::string(who) + ": needs gcd(p, q) = 1");
}

}  // namespace

ReciprocityValue reciprocity_function(const FormFamily& fam, long long p,
                                      long long q, const TransportOptions& opt) {
    if (p <= 0)
        throw std::domain_error("reciprocity_function: needs p > 0");
    if (gcd_ll(p, q) != 1)
        throw std::domain_error("reciprocity_function: needs gcd(p, q) = 1");
    if (q >= 0)
        return ReciprocityValue{p, q, formal_value(fam, p, q, opt),
                                ReciprocityRoute::direct, q == 0};
    // The only route to q < 0: take the value at (-q, p), scale each letter
    // by its sigma multiplier, and invert the series.
    NCSeries inner = formal_value(fam, -q, p, opt);
    return ReciprocityValue{
        p, q, inner.diagonal_scale(fam.multiplier_values(sigma_gen())).inverse(),
        ReciprocityRoute::extended, false};
}

Complex scalar_reciprocity(const FormFamily& fam, std::size_t j, long long p,
                           long long q, const QuadratureOptions& opt) {
    if (p <= 0)
        throw std::domain_error("scalar_reciprocity: needs p > 0");
    const double k = fam.power(j);
    const Complex t(static_cast<double>(q) / static_cast<double>(p), 0.0);
    const OneForm w{&fam.form(j), k, t};
    const QuadResult r = period_integral(w, Cusp(0, 1), Cusp::infinity(), opt);
    return std::pow(static_cast<double>(p), k) * r.value;
}

double scalar_vs_series_residual(const FormFamily& fam, long long p, long long q,
                                 const TransportOptions& topt,
                                 const QuadratureOptions& qopt) {
    const ReciprocityValue rv = reciprocity_function(fam, p, q, topt);
    double res = 0.0;
    for (std::size_t j = 0; j < fam.size(); ++j) {
        const Complex c = rv.value.coeff(Word{static_cast<int>(j)});
        const Complex s = scalar_reciprocity(fam, j, p, q, qopt);
        const double scale = std::max({1.0, std::abs(c), std::abs(s)});
        res = std::max(res, std::abs(c - s) / scale);
    }
    return res;
}

double recursion_residual(const FormFamily& fam, long long p, long long q,
                          const TransportOptions& opt) {
    require_positive_pair("recursion_residual", p, q);
    const NCSeries lhs = reciprocity_function(fam, p, q, opt).value;
    const NCSeries r1 =
        reciprocity_function(fam, p, q + p, opt)
            .value.diagonal_scale(inverted(fam.multiplier_values(theta_gen())));
    const NCSeries r2 =
        reciprocity_function(fam, q + p, q, opt)
            .value.diagonal_scale(inverted(fam.multiplier_values(theta_sigma_theta())));
    return normalized_distance(lhs, r1 * r2);
}

double inversion_residual(const FormFamily& fam, long long p, long long q,
                          const TransportOptions& opt) {
    require_positive_pair("inversion_residual", p, q);
    const NCSeries prod =
        formal_value(fam, p, q, opt) *
        formal_value(fam, q, -p, opt)
            .diagonal_scale(inverted(fam.multiplier_values(sigma_gen())));
    return normalized_distance(prod, NCSeries::one(fam.size(), fam.depth()));
}

double extension_consistency_residual(const FormFamily& fam, long long p,
                                      long long q, const TransportOptions& opt) {
    if (p <= 0 || q >= 0)
        throw std::domain_error("extension_consistency_residual: needs p > 0, q < 0");
    const NCSeries ext = reciprocity_function(fam, p, q, opt).value;
    const NCSeries direct = formal_value(fam, p, q, opt);
    return normalized_distance(ext, direct);
}

double scalar_recursion_residual(const FormFamily& fam, std::size_t j,
                                 long long p, long long q,
                                 const QuadratureOptions& opt) {
    require_positive_pair("scalar_recursion_residual", p, q);
    const Complex s0 = scalar_reciprocity(fam, j, p, q, opt);
    const Complex s1 = scalar_reciprocity(fam, j, p, q + p, opt) /
                       fam.multiplier_values(theta_gen())[j];
    const Complex s2 = scalar_reciprocity(fam, j, q + p, q, opt) /
                       fam.multiplier_values(theta_sigma_theta())[j];
    const double scale =
        std::max({1.0, std::abs(s0), std::abs(s1), std::abs(s2)});
    return std::abs(s0 - s1 - s2) / scale;
}

double scalar_inversion_residual(const FormFamily& fam, std::size_t j,
                                 long long p, long long q,
                                 const QuadratureOptions& opt) {
    require_positive_pair("scalar_inversion_residual", p, q);
    const Complex s0 = scalar_reciprocity(fam, j, p, q, opt);
    const Complex s1 = scalar_reciprocity(fam, j, q, -p, opt) /
                       fam.multiplier_values(sigma_gen())[j];
    const double scale = std::max({1.0, std::abs(s0), std::abs(s1)});
    return std::abs(s0 + s1) / scale;
}

double shifted_path_residual(const FormFamily& fam, std::size_t j, double t,
                             const QuadratureOptions& opt) {
    const CuspForm& f = fam.form(j);
    const double k = fam.power(j);
    const QuadResult lhs = period_integral(OneForm{&f, k, Complex(t, 0.0)},
                                           Cusp(-1, 1), Cusp::infinity(), opt);
    const QuadResult inner = period_integral(OneForm{&f, k, Complex(t + 1.0, 0.0)},
                                             Cusp(0, 1), Cusp::infinity(), opt);
    const Complex rhs = inner.value / fam.multiplier_values(theta_gen())[j];
    const double scale = std::max({1.0, std::abs(lhs.value), std::abs(rhs)});
    return std::abs(lhs.value - rhs) / scale;
}

double inverted_path_residual(const FormFamily& fam, std::size_t j, double t,
                              const QuadratureOptions& opt) {
    if (t <= -1.0)
        throw std::domain_error("inverted_path_residual: needs t > -1");
    const CuspForm& f = fam.form(j);
    const double k = fam.power(j);
    const QuadResult lhs = period_integral(OneForm{&f, k, Complex(t, 0.0)},
                                           Cusp(0, 1), Cusp(-1, 1), opt);
    const QuadResult inner =
        period_integral(OneForm{&f, k, Complex(t / (t + 1.0), 0.0)},
                        Cusp(0, 1), Cusp::infinity(), opt);
    const Complex rhs = std::pow(t + 1.0, k) * inner.value /
                        fam.multiplier_values(theta_sigma_theta())[j];
    const double scale = std::max({1.0, std::abs(lhs.value), std::abs(rhs)});
    return std::abs(lhs.value - rhs) / scale;
}

}  // namespace ncperiods
