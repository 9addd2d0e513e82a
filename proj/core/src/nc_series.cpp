#include "ncperiods/nc_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ncperiods {

namespace {
std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}
}  // namespace

std::size_t word_index(const Word& w, std::size_t letters) {
    std::size_t idx = 0;
    for (int d : w) {
        if (d < 0 || static_cast<std::size_t>(d) >= letters)
            throw std::out_of_range("word_index: letter out of range");
        idx = idx * letters + static_cast<std::size_t>(d);
    }
    return idx;
}

Word index_to_word(std::size_t idx, std::size_t len, std::size_t letters) {
    Word w(len);
    for (std::size_t i = len; i-- > 0;) {
        w[i] = static_cast<int>(idx % letters);
        idx /= letters;
    }
    return w;
}

std::vector<Word> shuffle_words(const Word& u, const Word& v) {
    if (u.empty()) return {v};
    if (v.empty()) return {u};
    std::vector<Word> out;
    const Word ru(u.begin() + 1, u.end());
    for (Word w : shuffle_words(ru, v)) {
        w.insert(w.begin(), u.front());
        out.push_back(std::move(w));
    }
    const Word rv(v.begin() + 1, v.end());
    for (Word w : shuffle_words(u, rv)) {
        w.insert(w.begin(), v.front());
        out.push_back(std::move(w));
    }
    return out;
}

NCSeries::NCSeries(std::size_t letters, std::size_t depth)
    : letters_(letters), depth_(depth), data_(depth + 1) {
    if (letters == 0) throw std::invalid_argument("NCSeries: need at least one letter");
    for (std::size_t n = 0; n <= depth; ++n)
        data_[n].assign(ipow(letters, n), Complex(0.0, 0.0));
}

NCSeries NCSeries::one(std::size_t letters, std::size_t depth) {
    NCSeries s(letters, depth);
    s.data_[0][0] = Complex(1.0, 0.0);
    return s;
}

Complex NCSeries::coeff(const Word& w) const {
    if (w.size() > depth_) throw std::out_of_range("NCSeries::coeff: word too long");
    return data_[w.size()][word_index(w, letters_)];
}

void NCSeries::set_coeff(const Word& w, Complex value) {
    if (w.size() > depth_) throw std::out_of_range("NCSeries::set_coeff: word too long");
    data_[w.size()][word_index(w, letters_)] = value;
}

void NCSeries::check_same_shape(const NCSeries& o) const {
    if (letters_ != o.letters_ || depth_ != o.depth_)
        throw std::invalid_argument("NCSeries: shape mismatch");
}

NCSeries& NCSeries::operator+=(const NCSeries& o) {
    check_same_shape(o);
    for (std::size_t n = 0; n <= depth_; ++n)
        for (std::size_t i = 0; i < data_[n].size(); ++i) data_[n][i] += o.data_[n][i];
    return *this;
}

NCSeries& NCSeries::operator-=(const NCSeries& o) {
    check_same_shape(o);
    for (std::size_t n = 0; n <= depth_; ++n)
        for (std::size_t i = 0; i < data_[n].size(); ++i) data_[n][i] -= o.data_[n][i];
    return *this;
}

NCSeries& NCSeries::operator*=(Complex s) {
    for (auto& lvl : data_)
        for (auto& c : lvl) c *= s;
    return *this;
}

NCSeries NCSeries::operator*(const NCSeries& o) const {
    if (letters_ != o.letters_)
        throw std::invalid_argument("NCSeries: letter count mismatch in product");
    const std::size_t d = std::min(depth_, o.depth_);
    NCSeries r(letters_, d);
    for (std::size_t n = 0; n <= d; ++n) {
        for (std::size_t w = 0; w < r.data_[n].size(); ++w) {
            Complex acc(0.0, 0.0);
            // split w into prefix (length j, from *this) and suffix
            for (std::size_t j = 0; j <= n; ++j) {
                const std::size_t tail = ipow(letters_, n - j);
                acc += data_[j][w / tail] * o.data_[n - j][w % tail];
            }
            r.data_[n][w] = acc;
        }
    }
    return r;
}

NCSeries NCSeries::inverse() const {
    const Complex c = data_[0][0];
    if (c == Complex(0.0, 0.0))
        throw std::domain_error("NCSeries::inverse: constant term is zero");
    NCSeries y(letters_, depth_);
    y.data_[0][0] = 1.0 / c;
    for (std::size_t n = 1; n <= depth_; ++n) {
        for (std::size_t w = 0; w < y.data_[n].size(); ++w) {
            Complex acc(0.0, 0.0);
            for (std::size_t j = 1; j <= n; ++j) {
                const std::size_t tail = ipow(letters_, n - j);
                acc += data_[j][w / tail] * y.data_[n - j][w % tail];
            }
            y.data_[n][w] = -acc / c;
        }
    }
    return y;
}

NCSeries NCSeries::diagonal_scale(const std::vector<Complex>& factor) const {
    if (factor.size() != letters_)
        throw std::invalid_argument("NCSeries::diagonal_scale: need one factor per letter");
    NCSeries r(*this);
    for (std::size_t n = 1; n <= depth_; ++n) {
        for (std::size_t w = 0; w < r.data_[n].size(); ++w) {
            Complex m(1.0, 0.0);
            std::size_t idx = w;
            for (std::size_t i = 0; i < n; ++i) {
                m *= factor[idx % letters_];
                idx /= letters_;
            }
            r.data_[n][w] *= m;
        }
    }
    return r;
}

NCSeries NCSeries::truncated(std::size_t new_depth) const {
    NCSeries r(letters_, std::min(new_depth, depth_));
    for (std::size_t n = 0; n <= r.depth_; ++n) r.data_[n] = data_[n];
    return r;
}

double NCSeries::max_abs() const {
    double m = 0.0;
    for (const auto& lvl : data_)
        for (const auto& c : lvl) m = std::max(m, std::abs(c));
    return m;
}

NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }
NCSeries operator*(Complex s, NCSeries a) { return a *= s; }

double distance(const NCSeries& a, const NCSeries& b) {
    if (a.letters() != b.letters())
        throw std::invalid_argument("distance: letter count mismatch");
    const std::size_t d = std::min(a.depth(), b.depth());
    double m = 0.0;
    for (std::size_t n = 0; n <= d; ++n)
        for (std::size_t i = 0; i < a.level(n).size(); ++i)
            m = std::max(m, std::abs(a.at(n, i) - b.at(n, i)));
    return m;
}

double normalized_distance(const NCSeries& a, const NCSeries& b) {
    if (a.letters() != b.letters())
        throw std::invalid_argument("normalized_distance: letter count mismatch");
    const std::size_t d = std::min(a.depth(), b.depth());
    double m = 0.0;
    for (std::size_t n = 0; n <= d; ++n)
        for (std::size_t i = 0; i < a.level(n).size(); ++i) {
            const double scale =
                std::max({1.0, std::abs(a.at(n, i)), std::abs(b.at(n, i))});
            m = std::max(m, std::abs(a.at(n, i) - b.at(n, i)) / scale);
        }
    return m;
}

std::string NCSeries::to_json() const {
    nlohmann::json j;
    j["letters"] = letters_;
    j["depth"] = depth_;
    nlohmann::json coeffs = nlohmann::json::object();
    for (std::size_t n = 0; n <= depth_; ++n) {
        for (std::size_t i = 0; i < data_[n].size(); ++i) {
            const Word w = index_to_word(i, n, letters_);
            std::string key;
            for (int d : w) key += static_cast<char>('0' + d);
            coeffs[key] = {data_[n][i].real(), data_[n][i].imag()};
        }
    }
    j["coefficients"] = std::move(coeffs);
    return j.dump(2);
}

NCSeries NCSeries::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    NCSeries s(j.at("letters").get<std::size_t>(), j.at("depth").get<std::size_t>());
    for (const auto& [key, val] : j.at("coefficients").items()) {
        Word w;
        for (char ch : key) w.push_back(ch - '0');
        s.set_coeff(w, Complex(val.at(0).get<double>(), val.at(1).get<double>()));
    }
    return s;
}

}  // namespace ncperiods
