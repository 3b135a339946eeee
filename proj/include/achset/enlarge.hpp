#pragma once

#include <optional>
#include <vector>

#include "achset/cover.hpp"
#include "achset/series.hpp"

namespace achset {

struct EnlargeResult {
    SeriesSpec spec;
    /// Gaps of the new set whose right endpoint is a duplicated term.
    std::vector<Gap> selected;
    /// Terms that now occur one extra time (the first `count` of them for a periodic duplication).
    std::vector<Rational> duplicated;
    /// A point with continuum many representations; set when infinitely many terms were duplicated.
    std::optional<Rational> cpoint;
    /// Cover depth used to re-detect the selected gaps.
    std::size_t verified_depth = 0;
};

/// Adds a second copy of gap right endpoints while keeping those gaps open.
///
/// Finite and semi-fast series: greedy selection n_1 = 1, n_{k+1} the first j with
/// sum_{n >= j} b_n < b_{n_k} - a_{n_k}; `count` gaps are required.
/// Multigeometric series: the first gap's right endpoint b = c_i q^n is duplicated
/// at every p-th level (p minimal with b q^p / (1 - q^p) < b - a), which keeps the
/// series multigeometric with ratio q^p; `count` of the resulting gaps are reported.
///
/// Every selected gap is re-detected on the new series; failure throws
/// PreconditionError. An empty gap list returns the input unchanged.
EnlargeResult enlarge_with_cpoints(const SeriesSpec& s, const std::vector<Gap>& gaps, std::size_t count);

}  // namespace achset
