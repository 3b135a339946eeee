#pragma once

#include <optional>
#include <string>
#include <vector>

#include "achset/cover.hpp"
#include "achset/series.hpp"

namespace achset {

enum class Verdict { IntervalUnion, CantorSet, Cantorval, Unknown };

std::string to_string(Verdict v);

struct Certificate {
    enum class Kind {
        KakeyaSlowTail,   // x_k <= r_k for all k >= index
        KakeyaQuickAll,   // x_k > r_k for all k >= index (index 1: quickly convergent)
        SmallRatio,       // q < 1/|Sigma|
        KnownFamily,      // cited result, periodic part only
        MixedPeriodicPlusKnownInterior  // finite prefix + known family
    };
    Kind kind;
    std::size_t index = 0;
    Rational ratio;
    std::size_t sigma_size = 0;
    std::string citation;
    std::string parameter_range;
};

std::string to_string(Certificate::Kind k);

/// Attached to Unknown verdicts.
struct CoverEvidence {
    std::size_t depth = 0;
    std::size_t interval_count = 0;
    std::size_t gap_count = 0;
    Interval longest_interval;
};

struct Classification {
    Verdict verdict = Verdict::Unknown;
    std::optional<Certificate> certificate;
    std::optional<CoverEvidence> evidence;
};

/// An entry of the database of achievement sets whose type is known from the literature.
struct KnownFamily {
    std::string key;
    std::string parameter_range;
    Verdict verdict;
    /// nullopt when the minimality of this representation is not recorded.
    std::optional<bool> minimal;
};

/// Matches the periodic part (coefficients up to a common positive scale, and the ratio).
std::optional<KnownFamily> match_known_family(const MultigeometricSeries& g);

/// Default cover depth: 12 for up to three coefficients, shrinking as m grows.
std::size_t default_depth(const SeriesSpec& s);

Classification classify(const SeriesSpec& s);
Classification classify(const SeriesSpec& s, std::size_t evidence_depth);

/// Sign of x_k - r_k for k = 1..count (true when x_k <= r_k).
std::vector<bool> slow_pattern(const SeriesSpec& s, std::size_t count);

struct LockerResult {
    bool holds = false;
    std::optional<std::size_t> fails_at;
    /// False when the check could only be carried out on a finite prefix.
    bool conclusive = false;
    std::size_t checked_up_to = 0;
};

/// x_k <= r_{k+1} for k <= K (all k for multigeometric series).
LockerResult is_locker(const SeriesSpec& s, std::size_t K);

struct MinimalityResult {
    enum class Kind { Minimal, NotMinimal, KnownFamily, Inconclusive };
    Kind kind = Kind::Inconclusive;
    /// Indices k <= K with x_k < r_{k+1}.
    std::vector<std::size_t> witness_indices;
    std::optional<KnownFamily> family;
    std::string note;
};

std::string to_string(MinimalityResult::Kind k);

MinimalityResult is_minimal(const SeriesSpec& s, std::size_t K);

}  // namespace achset
