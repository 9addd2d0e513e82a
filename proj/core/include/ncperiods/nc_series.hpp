#pragma once

// Truncated power series in noncommuting letters.
//
// Iterated period integrals of an l-tuple of forms live in the algebra of
// formal series over letters A_0..A_{l-1}, truncated beyond a fixed word
// length.  Coefficients are stored densely per length: the word
// (d_0, d_1, ..., d_{n-1}) with d_0 leftmost sits at index
// d_0 l^{n-1} + d_1 l^{n-2} + ... + d_{n-1}, so prefix/suffix splits are
// div/mod by a power of l and products stay allocation-light.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace ncperiods {

using Complex = std::complex<double>;

/// A word in letter indices; index 0 is the leftmost letter.
using Word = std::vector<int>;

std::size_t word_index(const Word& w, std::size_t letters);
Word index_to_word(std::size_t idx, std::size_t len, std::size_t letters);

/// All interleavings of u and v keeping each word's internal order, with
/// multiplicity (a word obtainable several ways appears several times).
std::vector<Word> shuffle_words(const Word& u, const Word& v);

class NCSeries {
public:
    /// The zero series on `letters` letters, keeping words up to `depth`.
    NCSeries(std::size_t letters, std::size_t depth);

    /// The multiplicative unit (empty-word coefficient 1).
    static NCSeries one(std::size_t letters, std::size_t depth);

    std::size_t letters() const { return letters_; }
    std::size_t depth() const { return depth_; }

    Complex coeff(const Word& w) const;
    void set_coeff(const Word& w, Complex value);
    Complex& at(std::size_t len, std::size_t idx) { return data_[len][idx]; }
    const Complex& at(std::size_t len, std::size_t idx) const { return data_[len][idx]; }
    const std::vector<Complex>& level(std::size_t n) const { return data_[n]; }

    NCSeries& operator+=(const NCSeries& o);
    NCSeries& operator-=(const NCSeries& o);
    NCSeries& operator*=(Complex s);

    /// Concatenation product, truncated at min(depth, o.depth).
    NCSeries operator*(const NCSeries& o) const;

    /// Two-sided inverse modulo truncation; the constant term must be
    /// invertible (throws std::domain_error when it is 0).
    NCSeries inverse() const;

    /// Algebra map A_j -> factor[j] A_j: the coefficient of each word is
    /// multiplied by the product of its letters' factors.  This is how a
    /// tuple of multiplier values acts on a series.
    NCSeries diagonal_scale(const std::vector<Complex>& factor) const;

    NCSeries truncated(std::size_t new_depth) const;

    double max_abs() const;

    std::string to_json() const;
    static NCSeries from_json(const std::string& text);

private:
    std::size_t letters_;
    std::size_t depth_;
    std::vector<std::vector<Complex>> data_;  // data_[n][word index], n = word length

    void check_same_shape(const NCSeries& o) const;
};

NCSeries operator+(NCSeries a, const NCSeries& b);
NCSeries operator-(NCSeries a, const NCSeries& b);
NCSeries operator*(Complex s, NCSeries a);

/// Largest coefficient difference over words both series know about
/// (letter counts must agree; depths may differ).
double distance(const NCSeries& a, const NCSeries& b);

/// Like `distance`, but each word's difference is divided by
/// max(1, |a_w|, |b_w|): an absolute comparison for small coefficients that
/// degrades gracefully to a relative one where prefactors push coefficients
/// far above 1 and double precision cannot hold an absolute gap.
double normalized_distance(const NCSeries& a, const NCSeries& b);

}  // namespace ncperiods
