#pragma once

#include <optional>
#include <vector>

#include "achset/rational.hpp"
#include "achset/series.hpp"

namespace achset {

struct Interval {
    Rational lo, hi;
    Rational length() const { return hi - lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Open interval (a, b) missing from the achievement set.
struct Gap {
    Rational a, b;
    Rational width() const { return b - a; }
    friend bool operator==(const Gap&, const Gap&) = default;
};

/// Depth-d cover: the union over all subsets A of the first d terms of
/// [sum(A), sum(A) + r_d], merged into disjoint closed intervals (ascending).
/// Every endpoint lies in E(x_n), so the complement gaps are exact gaps of E.
struct Cover {
    std::vector<Interval> intervals;
    std::size_t depth = 0;
    Rational tail;  // r_depth
};

/// Certified gaps of E inside [0, total], sorted by b descending.
struct GapList {
    std::vector<Gap> gaps;
    std::size_t depth = 0;
    /// r_depth: gaps of E narrower than this may still be hidden inside the cover.
    Rational resolution;
};

inline constexpr std::size_t kCoverCap = std::size_t{1} << 24;

/// Throws ResourceError (with the depth reached) once more than 2^24 distinct
/// partial sums would be needed.
Cover depth_cover(const SeriesSpec& s, std::size_t depth);
GapList gaps(const SeriesSpec& s, std::size_t depth);
GapList gaps_of(const Cover& c);

/// Gaps longer than every gap to their left, restricted to those wider than the
/// cover resolution (so no hidden gap can outrank them). Sorted by b descending.
std::vector<Gap> longest_from_left(const GapList& gl);

/// The leftmost gap of maximal width, if any gap was found.
std::optional<Gap> longest_gap(const GapList& gl);

/// The index k with (a, b) == (r_k, x_k), searched over k <= max_k.
std::optional<std::size_t> third_gap_index(const SeriesSpec& s, const Gap& g, std::size_t max_k);

}  // namespace achset
