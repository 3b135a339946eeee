#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "achset/cover.hpp"
#include "achset/rational.hpp"
#include "achset/series.hpp"

namespace achset {

struct SemiFastValidation {
    bool valid = true;
    /// First block k (1-based) with alpha_k <= sum_{i>k} N_i alpha_i + tail.
    std::optional<std::size_t> fails_at;
};

/// Exact check of the semi-fast inequality at every listed block.
SemiFastValidation validate_semifast(const SemiFastSeries& s);

/// Reads the first `count` terms of any series as semi-fast blocks (equal terms
/// grouped), with the remainder r_count as the tail.
SemiFastSeries semifast_reading(const SeriesSpec& s, std::size_t count);

/// Block counts N_k as an eventually periodic sequence: prefix, then `cycle`
/// repeated forever. An empty cycle means the list is only a finite truncation.
struct CountSequence {
    std::vector<std::uint64_t> prefix;
    std::vector<std::uint64_t> cycle;
};

enum class SlimMode { Unique, Slim };

struct SlimVerdict {
    enum class Answer { Yes, Violations, Undecided };
    Answer answer = Answer::Yes;
    /// 1-based block indices whose count is not 2^n - 1, over the prefix and one cycle.
    std::vector<std::size_t> violations;
    /// Some cycle entry violates the condition, so violations recur forever.
    bool recurring = false;
};

/// Unique mode: every N_k is 2^n - 1. Slim mode: all but finitely many are.
/// A plain finite list (empty cycle) in slim mode only reports violations.
SlimVerdict slim_unique_test(const CountSequence& counts, SlimMode mode);

bool is_mersenne_count(std::uint64_t n);

/// Gaps (P + j alpha_k + R_k, P + (j+1) alpha_k) at every level k, for every
/// subset sum P of the earlier blocks, where R_k = sum_{i>k} N_i alpha_i + tail.
/// Throws PreconditionError on an invalid spec, ResourceError past 2^24 gaps.
GapList semifast_gaps(const SemiFastSeries& s);

struct SemiFastCPoint {
    Rational point;
    std::vector<std::size_t> blocks;  // the J bad blocks used (1-based)
    BigInt rep_count;                 // representations on the listed terms
};

/// A point with at least 2^J representations built from J blocks whose count is
/// not of the form 2^n - 1: the block term is taken once, and either of its
/// first two copies may supply it. Throws PreconditionError with fewer than J bad blocks.
SemiFastCPoint semifast_cpoint_witness(const SemiFastSeries& s, std::size_t J);

}  // namespace achset
