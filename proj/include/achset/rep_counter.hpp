#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "achset/rational.hpp"
#include "achset/series.hpp"

namespace achset {

/// Element of {0, 1, 2, ..., omega, c}: the size of a representation fiber.
class CardinalValue {
public:
    enum class Tag { Finite, Omega, Continuum };

    static CardinalValue finite(BigInt n) { return CardinalValue(Tag::Finite, std::move(n)); }
    static CardinalValue omega() { return CardinalValue(Tag::Omega, 0); }
    static CardinalValue continuum() { return CardinalValue(Tag::Continuum, 0); }

    Tag tag() const { return tag_; }
    bool is_finite() const { return tag_ == Tag::Finite; }
    /// Only meaningful for finite values.
    const BigInt& count() const { return n_; }

    /// "Finite(n)", "Omega" or "Continuum".
    std::string str() const;

    friend bool operator==(const CardinalValue& a, const CardinalValue& b) {
        return a.tag_ == b.tag_ && (a.tag_ != Tag::Finite || a.n_ == b.n_);
    }
    /// Cardinal addition.
    friend CardinalValue operator+(const CardinalValue& a, const CardinalValue& b);

private:
    CardinalValue(Tag t, BigInt n) : tag_(t), n_(std::move(n)) {}
    Tag tag_;
    BigInt n_;
};

inline constexpr std::size_t kMeetInMiddleCap = 40;

/// Number of subsets of `terms` summing exactly to `target` (meet in the middle).
/// Throws ResourceError for more than 40 terms.
std::uint64_t count_subset_sums(const std::vector<Rational>& terms, const Rational& target);

struct AutomatonEdge {
    Rational digit;
    std::uint64_t weight;
    std::size_t next;
};

/// Residual automaton for the periodic part of a multigeometric series.
///
/// A state w stands for the value still to be produced, scaled so that
/// w = d_1 + d_2 q + d_3 q^2 + ...; reading digit d moves to (w - d)/q. Every
/// stored state lies in the window [0, sigma_max/(1-q)].
struct ResidualAutomaton {
    Rational ratio;
    Rational window_hi;
    std::vector<Rational> states;
    std::vector<std::vector<AutomatonEdge>> edges;
    /// Entry states with the number of prefix subsets leading to each.
    std::vector<std::pair<std::size_t, std::uint64_t>> initial;
    /// BFS distance from the entry states.
    std::vector<std::size_t> depth;
    /// False for frontier states left unexplored when the state cap was hit.
    std::vector<bool> expanded;
    /// live[v]: an infinite path starts at v. Frontier states count as live.
    std::vector<bool> live;
    /// Exploration finished below the state cap.
    bool closed = false;

    std::size_t frontier_size() const;
    /// Every path of this length from an entry state stays inside the explored part.
    std::size_t explored_depth() const;

    /// Weighted number of length-L digit paths from the entry states. With
    /// live_only == false every in-window path counts, including dead ends.
    BigInt count_prefixes(std::size_t L, bool live_only = true) const;
};

struct AutomatonOptions {
    /// Treat every digit as one representation (digit words instead of subsets).
    bool digit_words = false;
    std::size_t state_cap = 100000;
};

/// Exact for q = 1/N (finitely many residuals are possible); for other ratios
/// exploration may stop at the state cap, leaving `closed == false`.
/// The prefix is handled by branching over its subsets first.
ResidualAutomaton build_residual_automaton(const SeriesSpec& s, const Rational& target,
                                           const AutomatonOptions& opt = {});

/// Fiber size read off a closed automaton.
CardinalValue analyze_automaton(const ResidualAutomaton& a);

struct CardinalResult {
    CardinalValue value = CardinalValue::finite(0);
    bool exact = true;
    std::string method;
    /// For inexact results: frontier states or unresolved branches left open.
    std::size_t unresolved = 0;
};

CardinalResult cardinal_of(const SeriesSpec& s, const Rational& target, const AutomatonOptions& opt = {});

/// A point with continuum many representations generated by a repeated subset sum.
struct CPointWitness {
    Rational y;
    Rational sigma;
    std::vector<std::size_t> first;   // 1-based coefficient indices
    std::vector<std::size_t> second;
    std::string description;
};

std::optional<CPointWitness> cpoint_witness(const SeriesSpec& s);

struct LevelCollision {
    Rational value;
    std::uint64_t eps_tuples;                       // 0-1 tuples producing the value
    std::vector<std::vector<Rational>> digit_tuples;  // distinct Sigma-digit tuples
};

struct LevelSums {
    std::uint64_t tuple_count = 0;  // 2^{m k}
    std::size_t distinct = 0;
    std::vector<LevelCollision> collisions;
};

/// All sums sigma_1 q + ... + sigma_k q^k with sigma_i in Sigma. Throws
/// ResourceError when |Sigma|^k exceeds 2^24.
LevelSums level_sums(const std::vector<Rational>& coeffs, const Rational& q, std::size_t k);

using IndexSet = std::vector<std::size_t>;  // sorted 1-based indices

/// Given a finite index set A and two distinct index sets B, C beyond max(A)
/// with equal sums below x_{max A}, returns the equal-sum pair (A u B, A u C).
std::pair<IndexSet, IndexSet> shift_nonunique(const std::vector<Rational>& terms, const IndexSet& A,
                                              const IndexSet& B, const IndexSet& C);

}  // namespace achset
