#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "achset/rational.hpp"

namespace achset {

using Digit = int;

/// Eventually periodic digit sequence d_1 d_2 ... = preamble, then cycle repeated forever.
///
/// Constructed words are always canonical: the cycle is primitive (not a power
/// of a shorter word) and the preamble is as short as possible. A finite word
/// is encoded with cycle {0}. The alphabet is sorted, duplicate-free and
/// contains 0.
class DigitWord {
public:
    DigitWord(std::vector<Digit> preamble, std::vector<Digit> cycle, std::vector<Digit> alphabet);
    /// Alphabet defaults to the digits that occur, plus 0.
    DigitWord(std::vector<Digit> preamble, std::vector<Digit> cycle);

    const std::vector<Digit>& preamble() const { return preamble_; }
    const std::vector<Digit>& cycle() const { return cycle_; }
    const std::vector<Digit>& alphabet() const { return alphabet_; }

    /// Digit at 1-based position n.
    Digit at(std::size_t n) const;

    /// Same sequence with the preamble unrolled to at least `len` digits and the
    /// cycle repeated to a multiple of `period_multiple`. Not canonical.
    struct Unrolled {
        std::vector<Digit> preamble;
        std::vector<Digit> cycle;
    };
    Unrolled unrolled(std::size_t len, std::size_t period_multiple = 1) const;

    /// "pre|cycle", digits concatenated when all are < 10, comma separated otherwise.
    std::string str() const;
    /// Inverse of str(); also accepts comma or space separated digits on each side.
    static DigitWord parse(std::string_view text, std::vector<Digit> alphabet = {});

    friend bool operator==(const DigitWord& a, const DigitWord& b) = default;

private:
    void canonicalize();

    std::vector<Digit> preamble_;
    std::vector<Digit> cycle_;
    std::vector<Digit> alphabet_;
};

/// Sum_{n>=1} d_n q^n, exactly, via the closed form for the periodic tail.
/// Throws DomainError unless 0 < q < 1.
Rational eval_digit_word(const DigitWord& w, const Rational& q);

/// Position-by-position comparison of the infinite sequences; throws
/// PreconditionError when the alphabets differ.
bool digit_word_equal(const DigitWord& a, const DigitWord& b);

}  // namespace achset
