#include "achset/cover.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace achset {

namespace {

// Partial sums are merged as scaled integers: every value is a multiple of 1/scale.
template <class Int>
std::vector<Int> partial_sums(const std::vector<Int>& steps, std::size_t& reached) {
    std::vector<Int> sums{Int(0)};
    std::vector<Int> next;
    reached = 0;
    for (const Int& x : steps) {
        next.clear();
        next.reserve(sums.size() * 2);
        std::size_t i = 0, j = 0;
        const std::size_t n = sums.size();
        while (i < n || j < n) {
            Int v = (j == n || (i < n && sums[i] <= sums[j] + x)) ? sums[i++] : Int(sums[j++] + x);
            if (next.empty() || next.back() != v) next.push_back(v);
        }
        if (next.size() > kCoverCap) {
            throw ResourceError("depth cover exceeds 2^24 partial sums at depth " +
                                    std::to_string(reached + 1),
                                reached);
        }
        sums.swap(next);
        ++reached;
    }
    return sums;
}

template <class Int>
std::vector<std::pair<Int, Int>> merge_cover(const std::vector<Int>& sums, const Int& tail) {
    std::vector<std::pair<Int, Int>> out;
    for (const Int& s : sums) {
        Int hi = s + tail;
        if (!out.empty() && s <= out.back().second) {
            if (hi > out.back().second) out.back().second = hi;
        } else {
            out.emplace_back(s, hi);
        }
    }
    return out;
}

Rational scaled(const BigInt& v, const BigInt& scale) { return Rational(v, scale); }
Rational scaled(std::int64_t v, const BigInt& scale) { return Rational(BigInt(static_cast<long>(v)), scale); }

template <class Int, class Conv>
Cover build(const std::vector<Rational>& xs, const Rational& tail, const BigInt& scale, Conv conv) {
    std::vector<Int> steps;
    steps.reserve(xs.size());
    for (const auto& x : xs) steps.push_back(conv(x * Rational(scale)));
    std::size_t reached = 0;
    const auto sums = partial_sums(steps, reached);
    const auto merged = merge_cover(sums, conv(tail * Rational(scale)));
    Cover c;
    c.depth = xs.size();
    c.tail = tail;
    c.intervals.reserve(merged.size());
    for (const auto& [lo, hi] : merged) c.intervals.push_back({scaled(lo, scale), scaled(hi, scale)});
    return c;
}

}  // namespace

Cover depth_cover(const SeriesSpec& s, std::size_t depth) {
    if (auto len = s.listed_length()) depth = std::min(depth, *len);
    const auto xs = terms(s, depth);
    const Rational tail = remainder(s, depth);

    BigInt scale = tail.denominator();
    for (const auto& x : xs) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.raw().get_den_mpz_t());

    const Rational top = total(s) * Rational(scale);
    const BigInt limit = BigInt(1) << 62;
    if (top.numerator() < limit) {
        return build<std::int64_t>(xs, tail, scale, [](const Rational& v) {
            return static_cast<std::int64_t>(v.numerator().get_si());
        });
    }
    return build<BigInt>(xs, tail, scale, [](const Rational& v) { return v.numerator(); });
}

GapList gaps_of(const Cover& c) {
    GapList gl;
    gl.depth = c.depth;
    gl.resolution = c.tail;
    for (std::size_t i = c.intervals.size(); i-- > 1;) {
        gl.gaps.push_back({c.intervals[i - 1].hi, c.intervals[i].lo});
    }
    return gl;
}

GapList gaps(const SeriesSpec& s, std::size_t depth) { return gaps_of(depth_cover(s, depth)); }

std::vector<Gap> longest_from_left(const GapList& gl) {
    std::vector<Gap> records;
    std::optional<Rational> best;
    for (auto it = gl.gaps.rbegin(); it != gl.gaps.rend(); ++it) {
        const Rational w = it->width();
        if (!best || w > *best) {
            best = w;
            if (w > gl.resolution) records.push_back(*it);
        }
    }
    std::reverse(records.begin(), records.end());
    return records;
}

std::optional<Gap> longest_gap(const GapList& gl) {
    std::optional<Gap> best;
    for (auto it = gl.gaps.rbegin(); it != gl.gaps.rend(); ++it) {
        if (!best || it->width() > best->width()) best = *it;
    }
    return best;
}

std::optional<std::size_t> third_gap_index(const SeriesSpec& s, const Gap& g, std::size_t max_k) {
    if (auto len = s.listed_length()) max_k = std::min(max_k, *len);
    const auto xs = terms(s, max_k);
    Rational r = total(s);
    for (std::size_t k = 1; k <= xs.size(); ++k) {
        r -= xs[k - 1];
        if (xs[k - 1] == g.b && r == g.a) return k;
    }
    return std::nullopt;
}

}  // namespace achset
