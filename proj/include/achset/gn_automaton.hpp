#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "achset/digit_word.hpp"
#include "achset/rational.hpp"
#include "achset/series.hpp"

namespace achset {

/// E(2^r, ..., 4, 3, 2; 1/2^{r+1}). r = 1 is E(3,2;1/4) with digits {0,2,3,5}.
struct GNFamily {
    explicit GNFamily(unsigned r);

    unsigned r;
    std::vector<Rational> coeffs;  // descending: 2^r, ..., 4, 3, 2
    std::vector<Digit> alphabet;   // {0, ..., base+1} without 1 and base
    Digit base;                    // 2^{r+1}
    Rational ratio;                // 1/base

    SeriesSpec spec() const { return SeriesSpec::gn_family(r); }
    /// The forbidden successor pairs of the uniqueness characterization (r = 1 only).
    static const std::vector<std::pair<Digit, Digit>>& bad_pairs();
};

/// Blocks of r+1 bits (in coefficient order 2^r, ..., 3, 2) become digits.
/// Throws PreconditionError for bits other than 0/1.
DigitWord epsilon_to_digits(const DigitWord& eps, unsigned r);
DigitWord digits_to_epsilon(const DigitWord& digits, unsigned r);

struct BadPairScan {
    /// Positions n (1-based) with (a_n, a_{n+1}) a bad pair. When the cycle has
    /// no bad pair this is the complete set.
    std::vector<std::size_t> positions;
    bool cycle_contains_bad_pair = false;
};

/// Throws PreconditionError for r != 1: the pair characterization is proven only there.
BadPairScan bad_pair_positions(const DigitWord& w, const GNFamily& family);

struct TwoRepWitness {
    DigitWord first;
    DigitWord second;
    std::size_t n0 = 0;
    /// n_1 < n_2 < ... listed up to the end of one unrolled cycle after n0.
    std::vector<std::size_t> break_indices;
    /// The break indices continue periodically beyond the listed ones.
    bool breaks_periodic = false;
};

struct GNVerdict {
    bool unique = true;
    std::optional<TwoRepWitness> witness;
};

/// Uniqueness test for a digit word of E(3,2;1/4) and, when it fails, the
/// partner representation. Throws PreconditionError on digits outside {0,2,3,5}.
GNVerdict gn_classify(const DigitWord& w);

/// Second representation for any member of the family, built digit by digit
/// from the running scaled difference of partial sums (which must stay at +-1).
std::optional<TwoRepWitness> generalized_second_rep(const DigitWord& w, const GNFamily& family);

struct StructureCheck {
    bool ok = false;
    std::string failure;
};

/// Structure of a double representation (common prefix, a 2+j/3+j split at n0,
/// then alternating high and low phases separated by breaks), generalized to base 2^{r+1}
/// and symmetric in the roles of the two words.
StructureCheck check_two_rep_structure(const TwoRepWitness& w, const GNFamily& family);

struct PairAvoidance {
    BigInt count;
    Rational fraction;  // count / 4^L
};

/// Words of length L over {0,2,3,5} without a bad adjacent pair (transfer-matrix power).
PairAvoidance pair_avoiding_count(std::size_t L);

/// The 4x4 successor relation over {0,2,3,5} with the bad pairs removed.
std::vector<std::vector<int>> gn_transfer_matrix();

/// A pair of finite index sets with equal sums; indices are positions in the series
/// as written (prefix first, then c_i q^n at (n-1)m + i), 1-based.
struct IndexBlock {
    std::vector<std::size_t> i0;
    std::vector<std::size_t> i1;
};

/// True when every block has equal sums on its two sides. Throws
/// PreconditionError when the listed sets are not pairwise disjoint.
bool disjoint_family_check(const std::vector<IndexBlock>& blocks, const SeriesSpec& s);

/// Blocks from a repeated subset sum of the coefficients, one per level 1..levels.
/// Empty when Sigma is one-to-one.
std::vector<IndexBlock> duplicate_coefficient_blocks(const SeriesSpec& s, std::size_t levels);

/// Term at a written position (see IndexBlock).
Rational written_term(const SeriesSpec& s, std::size_t index);

}  // namespace achset
