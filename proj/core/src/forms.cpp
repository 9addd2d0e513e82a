#include "ncperiods/forms.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ncperiods/modular_group.hpp"

namespace ncperiods {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

std::vector<long long> sigma1_table(std::size_t M) {
    std::vector<long long> s(M + 1, 0);
    for (std::size_t d = 1; d <= M; ++d)
        for (std::size_t j = d; j <= M; j += d) s[j] += static_cast<long long>(d);
    return s;
}

// Shared recurrence m b_m = expo * sum_j sigma_1(j) b_{m-j} for (1-q^n)
// products; expo = -two_w gives the eta power, +two_w its majorant.
static std::vector<double> product_coefficients(double expo, std::size_t M) {
    const auto sig = sigma1_table(M);
    std::vector<double> b(M + 1, 0.0);
    b[0] = 1.0;
    for (std::size_t m = 1; m <= M; ++m) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= m; ++j)
            acc += static_cast<double>(sig[j]) * b[m - j];
        b[m] = expo * acc / static_cast<double>(m);
    }
    return b;
}

std::vector<double> eta_power_coefficients(double two_w, std::size_t M) {
    return product_coefficients(-two_w, M);
}

std::vector<double> eta_power_majorant(double two_w, std::size_t M) {
    return product_coefficients(two_w, M);
}

std::vector<BigInt> eta_power_coefficients_exact(long long two_w, std::size_t M) {
    const auto sig = sigma1_table(M);
    std::vector<BigInt> b(M + 1);
    b[0] = 1;
    for (std::size_t m = 1; m <= M; ++m) {
        BigInt acc = 0;
        for (std::size_t j = 1; j <= m; ++j) acc += BigInt(sig[j]) * b[m - j];
        acc *= -two_w;
        // The convolution is divisible by m in exact arithmetic.
        BigInt q = acc / BigInt(m);
        if (q * BigInt(m) != acc)
            throw std::logic_error("eta_power_coefficients_exact: recurrence not divisible");
        b[m] = q;
    }
    return b;
}

double majorant_tail_bound(double two_w, std::size_t M, double x) {
    if (!(x > 0.0) || x >= 0.5)
        throw std::domain_error("majorant_tail_bound: needs 0 < x < 1/2");
    // sum_{m>M} c_m x^m <= (x/xi)^{M+1} sum c_m xi^m with xi = 1/2, and the
    // full sum at xi is prod (1-xi^n)^{-two_w}.
    double s = 0.0;
    double t = 0.5;
    while (t > 1e-18) {
        s += -std::log1p(-t);
        t *= 0.5;
    }
    s += 4.0 * t;  // covers the dropped product tail
    const double log_bound =
        (static_cast<double>(M) + 1.0) * std::log(2.0 * x) + two_w * s;
    return std::max(std::exp(log_bound), std::numeric_limits<double>::min());
}

CuspForm::CuspForm(double w, std::size_t M) : w_(w), M_(M), mult_(w) {
    if (!(w > 0.0)) throw std::invalid_argument("CuspForm: weight must be positive");
    if (M < 8) throw std::invalid_argument("CuspForm: need at least 8 terms");
    coeffs_ = eta_power_coefficients(2.0 * w, M);
}

MultiplierFn CuspForm::multiplier_fn() const {
    return [m = mult_](const UniModular& g) { return m(g); };
}

static Complex horner_sum(const std::vector<double>& b, Complex q) {
    Complex s(b.back(), 0.0);
    for (std::size_t m = b.size() - 1; m-- > 0;) s = Complex(b[m], 0.0) + q * s;
    return s;
}

Complex CuspForm::evaluate(Complex z) const {
    if (!(z.imag() > 0.0))
        throw std::domain_error("CuspForm::evaluate: point must lie in the upper half plane");
    const Reduction red = reduce_to_fundamental_domain(z);
    const UniModular h = red.g.inverse();  // z = h zr
    const Complex y = red.zr;
    const Complex q = std::exp(Complex(-kTwoPi * y.imag(), kTwoPi * y.real()));
    const Complex S = horner_sum(coeffs_, q);

    const Complex j = bare_factor(h, y);
    double a = std::arg(j);
    if (j.imag() == 0.0 && j.real() < 0.0) a = kPi;  // upper-half-plane branch
    const double alpha = q_exponent();
    // E = w Log(c zr + d) + 2 pi i alpha zr, assembled before the single exp.
    const Complex E(w_ * std::log(std::abs(j)) - kTwoPi * alpha * y.imag(),
                    w_ * a + kTwoPi * alpha * y.real());
    return mult_(h) * std::exp(E) * S;
}

Complex CuspForm::evaluate_direct(Complex z) const {
    if (!(z.imag() > 0.0))
        throw std::domain_error("CuspForm::evaluate_direct: point must lie in the upper half plane");
    const Complex q = std::exp(Complex(-kTwoPi * z.imag(), kTwoPi * z.real()));
    const double alpha = q_exponent();
    const Complex head =
        std::exp(Complex(-kTwoPi * alpha * z.imag(), kTwoPi * alpha * z.real()));
    return head * horner_sum(coeffs_, q);
}

double CuspForm::truncation_bound(double im_z) const {
    return majorant_tail_bound(2.0 * w_, M_, std::exp(-kTwoPi * im_z));
}

static std::uint64_t fnv1a_bytes(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t CuspForm::content_hash() const {
    std::uint64_t h = 14695981039346656037ULL;
    static const char tag[] = "eta_power";
    h = fnv1a_bytes(h, tag, sizeof(tag) - 1);
    std::uint64_t bits;
    std::memcpy(&bits, &w_, sizeof bits);
    h = fnv1a_bytes(h, &bits, sizeof bits);
    const std::uint64_t m = M_;
    h = fnv1a_bytes(h, &m, sizeof m);
    for (double c : coeffs_) {
        std::memcpy(&bits, &c, sizeof bits);
        h = fnv1a_bytes(h, &bits, sizeof bits);
    }
    return h;
}

std::string CuspForm::to_json() const {
    nlohmann::json j;
    j["family"] = "eta_power";
    j["w"] = w_;
    j["weight"] = w_;  // = w for the eta powers; kept separate for other families
    j["alpha"] = q_exponent();
    j["M"] = M_;
    j["coefficients"] = coeffs_;
    return j.dump(2);
}

CuspForm CuspForm::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("family").get<std::string>() != "eta_power")
        throw std::invalid_argument("CuspForm::from_json: unknown family");
    const double w = j.at("w").get<double>();
    const std::size_t M = j.at("M").get<std::size_t>();
    CuspForm f(w, M);
    // The payload is redundant with (family, weight, terms); use it to catch
    // corrupted or hand-edited files rather than trusting it blindly.
    const auto stored = j.at("coefficients").get<std::vector<double>>();
    if (stored.size() != f.coeffs_.size())
        throw std::runtime_error("CuspForm::from_json: coefficient count mismatch");
    for (std::size_t i = 0; i < stored.size(); ++i) {
        const double scale = std::max(1.0, std::abs(f.coeffs_[i]));
        if (std::abs(stored[i] - f.coeffs_[i]) > 1e-9 * scale)
            throw std::runtime_error(
                "CuspForm::from_json: coefficients do not match the family recurrence");
    }
    return f;
}

const std::vector<double>& CuspForm::builtin_weights() {
    static const std::vector<double> ws{0.5, 5.3, 10.6, 12.0};
    return ws;
}

}  // namespace ncperiods
