#include "achset/semifast.hpp"

#include <algorithm>

#include "achset/rep_counter.hpp"

namespace achset {

SemiFastValidation validate_semifast(const SemiFastSeries& s) {
    if (s.alphas.size() != s.counts.size()) throw PreconditionError("alphas and counts differ in length");
    SemiFastValidation out;
    Rational below = s.tail;  // sum_{i>k} N_i alpha_i + tail
    std::optional<std::size_t> last_failure;
    for (std::size_t k = s.alphas.size(); k-- > 0;) {
        if (!(s.alphas[k] > below)) last_failure = k + 1;
        below += Rational(BigInt(static_cast<unsigned long>(s.counts[k]))) * s.alphas[k];
    }
    if (last_failure) {
        out.valid = false;
        out.fails_at = last_failure;
    }
    return out;
}

SemiFastSeries semifast_reading(const SeriesSpec& s, std::size_t count) {
    if (auto len = s.listed_length()) count = std::min(count, *len);
    SemiFastSeries out;
    for (const auto& x : terms(s, count)) {
        if (!out.alphas.empty() && out.alphas.back() == x) {
            ++out.counts.back();
        } else {
            out.alphas.push_back(x);
            out.counts.push_back(1);
        }
    }
    out.tail = remainder(s, count);
    return out;
}

bool is_mersenne_count(std::uint64_t n) { return n > 0 && ((n + 1) & n) == 0; }

SlimVerdict slim_unique_test(const CountSequence& counts, SlimMode mode) {
    SlimVerdict out;
    const std::size_t P = counts.prefix.size();
    for (std::size_t i = 0; i < P; ++i) {
        if (!is_mersenne_count(counts.prefix[i])) out.violations.push_back(i + 1);
    }
    for (std::size_t i = 0; i < counts.cycle.size(); ++i) {
        if (!is_mersenne_count(counts.cycle[i])) {
            out.violations.push_back(P + i + 1);
            out.recurring = true;
        }
    }
    if (mode == SlimMode::Unique) {
        out.answer = out.violations.empty() ? SlimVerdict::Answer::Yes : SlimVerdict::Answer::Violations;
    } else if (out.recurring) {
        out.answer = SlimVerdict::Answer::Violations;
    } else if (counts.cycle.empty()) {
        out.answer = out.violations.empty() ? SlimVerdict::Answer::Yes : SlimVerdict::Answer::Undecided;
    } else {
        out.answer = SlimVerdict::Answer::Yes;
    }
    return out;
}

GapList semifast_gaps(const SemiFastSeries& s) {
    const auto v = validate_semifast(s);
    if (!v.valid) throw PreconditionError("not semi-fast: fails at block " + std::to_string(*v.fails_at));

    const std::size_t K = s.alphas.size();
    std::vector<Rational> R(K + 1, s.tail);  // R[k] = sum over blocks after k (0-based) + tail
    for (std::size_t k = K; k-- > 0;) {
        R[k] = (k + 1 < K ? R[k + 1] + Rational(BigInt(static_cast<unsigned long>(s.counts[k + 1]))) * s.alphas[k + 1]
                          : s.tail);
    }

    GapList gl;
    gl.depth = K;
    gl.resolution = s.tail;
    std::vector<Rational> bases{Rational(0)};  // subset sums of the earlier blocks, ascending
    for (std::size_t k = 0; k < K; ++k) {
        const std::uint64_t N = s.counts[k];
        if (static_cast<double>(bases.size()) * static_cast<double>(N) + static_cast<double>(gl.gaps.size()) >
            static_cast<double>(kCoverCap)) {
            throw ResourceError("semi-fast gap list exceeds 2^24 gaps at level " + std::to_string(k + 1), k);
        }
        for (const auto& P : bases) {
            for (std::uint64_t j = 0; j < N; ++j) {
                const Rational jr(BigInt(static_cast<unsigned long>(j)));
                gl.gaps.push_back({P + jr * s.alphas[k] + R[k], P + (jr + Rational(1)) * s.alphas[k]});
            }
        }
        std::vector<Rational> next;
        next.reserve(bases.size() * (N + 1));
        for (const auto& P : bases) {
            for (std::uint64_t j = 0; j <= N; ++j) next.push_back(P + Rational(BigInt(static_cast<unsigned long>(j))) * s.alphas[k]);
        }
        // semi-fast: blocks never overlap, so this stays sorted
        bases.swap(next);
    }
    std::sort(gl.gaps.begin(), gl.gaps.end(), [](const Gap& a, const Gap& b) { return a.b > b.b; });
    return gl;
}

SemiFastCPoint semifast_cpoint_witness(const SemiFastSeries& s, std::size_t J) {
    if (J == 0) throw PreconditionError("J must be positive");
    const auto v = validate_semifast(s);
    if (!v.valid) throw PreconditionError("not semi-fast: fails at block " + std::to_string(*v.fails_at));
    SemiFastCPoint out;
    out.point = Rational(0);
    for (std::size_t k = 0; k < s.counts.size() && out.blocks.size() < J; ++k) {
        if (is_mersenne_count(s.counts[k])) continue;
        // counts other than 2^n - 1 are at least 2; {first copy} and {second copy}
        // are the lexicographically smallest colliding pair of 0-1 tuples.
        out.blocks.push_back(k + 1);
        out.point += s.alphas[k];
    }
    if (out.blocks.size() < J) {
        throw PreconditionError("only " + std::to_string(out.blocks.size()) + " blocks with a count not of the form 2^n-1");
    }
    const SeriesSpec listed = SeriesSpec::semifast(s.alphas, s.counts, Rational(0));
    const auto result = cardinal_of(listed, out.point);
    out.rep_count = result.value.count();
    return out;
}

}  // namespace achset
