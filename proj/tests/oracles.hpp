#pragma once

// Brute-force reference implementations. They deliberately avoid the library's
// scaled-integer and meet-in-the-middle machinery: plain subset enumeration over
// exact rationals only.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "achset/rational.hpp"

namespace oracle {

using achset::Rational;

inline std::vector<Rational> all_subset_sums(const std::vector<Rational>& xs) {
    std::vector<Rational> sums;
    const std::size_t n = xs.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Rational s(0);
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1U) s += xs[i];
        }
        sums.push_back(s);
    }
    return sums;
}

inline std::uint64_t subset_count(const std::vector<Rational>& xs, const Rational& t) {
    std::uint64_t c = 0;
    for (const auto& s : all_subset_sums(xs)) c += s == t ? 1 : 0;
    return c;
}

struct Gap {
    Rational a, b;
};

// Union of [s, s + tail] over all subset sums s of xs; returns the holes
// between merged intervals in ascending order.
inline std::vector<Gap> cover_gaps(const std::vector<Rational>& xs, const Rational& tail) {
    auto sums = all_subset_sums(xs);
    std::sort(sums.begin(), sums.end());
    std::vector<Gap> gaps;
    Rational reach = sums.front() + tail;
    for (const auto& s : sums) {
        if (s > reach) gaps.push_back({reach, s});
        if (s + tail > reach) reach = s + tail;
    }
    return gaps;
}

// Sum_{n=1..N} d_n q^n for an explicit digit list.
inline Rational digit_partial_sum(const std::vector<int>& digits, const Rational& q) {
    Rational s(0), p(1);
    for (int d : digits) {
        p *= q;
        s += Rational(d) * p;
    }
    return s;
}

// Words over {0,2,3,5} of length L without the four forbidden successor pairs.
inline std::uint64_t brute_pair_avoiding(std::size_t L) {
    const int digits[4] = {0, 2, 3, 5};
    auto bad = [](int a, int b) {
        return (a == 2 && b == 3) || (a == 3 && b == 2) || (a == 3 && b == 0) || (a == 2 && b == 5);
    };
    std::uint64_t total = 0;
    std::vector<int> w(L, 0);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * L)); ++code) {
        for (std::size_t i = 0; i < L; ++i) w[i] = digits[(code >> (2 * i)) & 3U];
        bool ok = true;
        for (std::size_t i = 0; i + 1 < L && ok; ++i) ok = !bad(w[i], w[i + 1]);
        total += ok ? 1 : 0;
    }
    return total;
}

// All partitions of n (parts nonincreasing).
inline void partitions(std::uint64_t n, std::uint64_t max_part, std::vector<std::uint64_t>& cur,
                       std::vector<std::vector<std::uint64_t>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (std::uint64_t p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

// Partitions of n whose subset sums are 0..n, each exactly once.
inline std::vector<std::vector<std::uint64_t>> one_to_one_partitions(std::uint64_t n) {
    std::vector<std::vector<std::uint64_t>> all, good;
    std::vector<std::uint64_t> cur;
    partitions(n, n, cur, all);
    for (const auto& parts : all) {
        std::vector<Rational> xs;
        for (auto p : parts) xs.emplace_back(static_cast<long>(p));
        std::map<Rational, int> seen;
        for (const auto& v : all_subset_sums(xs)) ++seen[v];
        bool ok = seen.size() == n + 1;
        for (const auto& [v, c] : seen) ok = ok && c == 1;
        if (ok) good.push_back(parts);
    }
    return good;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(20240611);
    return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

}  // namespace oracle
