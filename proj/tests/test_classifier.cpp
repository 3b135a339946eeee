#include <doctest.h>

#include <algorithm>

#include "achset/classifier.hpp"
#include "achset/cover.hpp"
#include "oracles.hpp"

using namespace achset;

namespace {

SeriesSpec mg(std::vector<Rational> c, Rational q, std::vector<Rational> prefix = {}) {
    return SeriesSpec::multigeometric(std::move(c), std::move(q), std::move(prefix));
}

SeriesSpec gn() { return mg({3, 2}, Rational(1, 4)); }

// closed intervals of the depth-d cover, from the brute-force oracle
struct OracleCover {
    std::vector<Rational> lo, hi;
};

OracleCover oracle_cover(const SeriesSpec& s, std::size_t d) {
    auto sums = oracle::all_subset_sums(terms(s, d));
    std::sort(sums.begin(), sums.end());
    const Rational tail = remainder(s, d);
    OracleCover c;
    for (const auto& x : sums) {
        if (!c.hi.empty() && x <= c.hi.back()) {
            c.hi.back() = max(c.hi.back(), x + tail);
        } else {
            c.lo.push_back(x);
            c.hi.push_back(x + tail);
        }
    }
    return c;
}

}  // namespace

TEST_CASE("classify examples") {
    auto c = classify(gn());
    CHECK(c.verdict == Verdict::Cantorval);
    REQUIRE(c.certificate);
    CHECK(c.certificate->kind == Certificate::Kind::KnownFamily);
    CHECK(c.certificate->citation == "GN");

    c = classify(mg({1, 1, 1}, Rational(1, 3)));
    CHECK(c.verdict == Verdict::IntervalUnion);
    CHECK(c.certificate->kind == Certificate::Kind::KakeyaSlowTail);

    c = classify(mg({3, 2}, Rational(1, 6)));
    CHECK(c.verdict == Verdict::CantorSet);
    CHECK(c.certificate->kind == Certificate::Kind::SmallRatio);
    CHECK(c.certificate->sigma_size == 4);

    c = classify(mg({7, 6, 5, 4, 3}, Rational(2, 27)));
    CHECK(c.verdict == Verdict::Cantorval);
    CHECK(c.certificate->citation == "Ferens");

    c = classify(mg({3, 2, 2, 2}, Rational(17, 100)));
    CHECK(c.verdict == Verdict::Cantorval);
    CHECK(c.certificate->citation == "GNJ");

    c = classify(SeriesSpec::geometric(Rational(1, 3)));
    CHECK(c.verdict == Verdict::CantorSet);
    CHECK(c.certificate->kind == Certificate::Kind::KakeyaQuickAll);
    CHECK(c.certificate->index == 1);

    CHECK(classify(SeriesSpec::geometric(Rational(1, 2))).verdict == Verdict::IntervalUnion);
}

TEST_CASE("classify: prefixes, scaled coefficients and unknowns") {
    // 7, then the pair (2,2) halving
    const auto lp = mg({4, 4}, Rational(1, 2), {7});
    const auto c = classify(lp);
    CHECK(c.verdict == Verdict::IntervalUnion);
    CHECK(c.certificate->index == 1);
    CHECK(total(lp) == Rational(15));

    // a scaled copy of GN with a finite prefix
    const auto g2 = mg({Rational(3, 7), Rational(2, 7)}, Rational(1, 4), {Rational(5)});
    const auto c2 = classify(g2);
    CHECK(c2.verdict == Verdict::Cantorval);
    CHECK(c2.certificate->kind == Certificate::Kind::MixedPeriodicPlusKnownInterior);

    // outside every database entry: Unknown with cover evidence
    const auto u = classify(mg({5, 1}, Rational(1, 4)));
    CHECK(u.verdict == Verdict::Unknown);
    CHECK_FALSE(u.certificate);
    REQUIRE(u.evidence);
    CHECK(u.evidence->depth > 0);
    CHECK(u.evidence->gap_count > 0);

    CHECK(classify(SeriesSpec::finite({3, 1})).verdict == Verdict::IntervalUnion);
    CHECK(classify(SeriesSpec::finite({3, 1}, Rational(1, 2))).verdict == Verdict::Unknown);
}

TEST_CASE("gaps examples") {
    CHECK(longest_gap(gaps(gn(), 4)) == std::optional<Gap>(Gap{Rational(5, 12), Rational(1, 2)}));
    for (std::size_t d : {6, 8, 10}) {
        const auto lfl = longest_from_left(gaps(gn(), d));
        REQUIRE_FALSE(lfl.empty());
        CHECK(lfl.front() == Gap{Rational(5, 12), Rational(1, 2)});
    }
    const auto g8 = gaps(gn(), 8);
    const auto lg = longest_gap(g8);
    REQUIRE(lg);
    CHECK(*lg == Gap{Rational(5, 12), Rational(1, 2)});
    CHECK(third_gap_index(gn(), *lg, 10) == std::optional<std::size_t>(2));

    const auto g3 = gaps(SeriesSpec::geometric(Rational(1, 3)), 3);
    REQUIRE_FALSE(g3.gaps.empty());
    const Gap first = g3.gaps.back();  // leftmost
    CHECK(first == Gap{Rational(1, 54), Rational(1, 27)});
    CHECK(std::any_of(g3.gaps.begin(), g3.gaps.end(),
                      [](const Gap& g) { return g == Gap{Rational(1, 6), Rational(1, 3)}; }));
    CHECK(longest_gap(g3)->width() == Rational(1, 6));
    CHECK(g3.gaps.size() == 7);

    for (std::size_t d : {1, 5, 10}) CHECK(gaps(SeriesSpec::geometric(Rational(1, 2)), d).gaps.empty());
}

TEST_CASE("gaps match the brute-force cover") {
    const std::vector<SeriesSpec> specs{gn(), mg({3, 2, 2, 2}, Rational(17, 100)), SeriesSpec::geometric(Rational(2, 7)),
                                        mg({7, 6, 5, 4, 3}, Rational(2, 27)), mg({4, 4}, Rational(1, 2), {7})};
    for (const auto& s : specs) {
        for (std::size_t d = 0; d <= 10; ++d) {
            const auto oc = oracle_cover(s, d);
            const auto gl = gaps(s, d);
            REQUIRE(gl.gaps.size() + 1 == oc.lo.size());
            for (std::size_t i = 0; i < gl.gaps.size(); ++i) {
                // gaps are listed right to left
                const std::size_t j = oc.lo.size() - 1 - i;
                CHECK(gl.gaps[i].b == oc.lo[j]);
                CHECK(gl.gaps[i].a == oc.hi[j - 1]);
            }
            CHECK(gl.resolution == remainder(s, d));
        }
    }
}

TEST_CASE("property: covers are nested and gaps persist") {
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rational> cs;
        for (int i = oracle::uniform(1, 3); i > 0; --i) cs.emplace_back(oracle::uniform(1, 9));
        std::sort(cs.begin(), cs.end(), std::greater<>());
        const auto s = mg(cs, Rational(1, oracle::uniform(2, 9)));
        for (std::size_t d = 1; d < 8; ++d) {
            const auto outer = depth_cover(s, d);
            const auto inner = depth_cover(s, d + 1);
            for (const auto& iv : inner.intervals) {
                CHECK(std::any_of(outer.intervals.begin(), outer.intervals.end(),
                                  [&](const Interval& o) { return o.lo <= iv.lo && iv.hi <= o.hi; }));
            }
            for (const auto& g : gaps_of(outer).gaps) {
                const auto deeper = gaps_of(inner).gaps;
                // every shallow gap is contained in some deeper gap
                CHECK(std::any_of(deeper.begin(), deeper.end(),
                                  [&](const Gap& h) { return h.a <= g.a && g.b <= h.b; }));
            }
        }
    }
}

TEST_CASE("property: the longest gap from the left is (r_k, x_k)") {
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rational> cs;
        for (int i = oracle::uniform(1, 3); i > 0; --i) cs.emplace_back(oracle::uniform(1, 9));
        std::sort(cs.begin(), cs.end(), std::greater<>());
        const auto s = mg(cs, Rational(1, oracle::uniform(2, 12)));
        const auto lfl = longest_from_left(gaps(s, 9));
        for (const auto& g : lfl) CHECK(third_gap_index(s, g, 9).has_value());
    }
}

TEST_CASE("property: sign pattern of x_k - r_k is periodic beyond the prefix") {
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rational> cs;
        for (int i = oracle::uniform(1, 4); i > 0; --i) cs.emplace_back(oracle::uniform(1, 9));
        std::sort(cs.begin(), cs.end(), std::greater<>());
        std::vector<Rational> prefix;
        for (int i = oracle::uniform(0, 2); i > 0; --i) prefix.emplace_back(oracle::uniform(1, 9), 3);
        const auto s = mg(cs, Rational(1, oracle::uniform(2, 8)), prefix);
        const auto ns = normalize(s);
        const auto& g = *ns.as_multigeometric();
        const std::size_t K = periodic_start(g);
        const std::size_t m = cs.size();
        const auto pat = slow_pattern(s, K + 3 * m);
        for (std::size_t k = K; k + m <= K + 2 * m; ++k) CHECK(pat[k - 1] == pat[k - 1 + m]);
    }
}

TEST_CASE("property: IntervalUnion leaves only finitely many gap levels") {
    const auto s = mg({1, 1, 1}, Rational(1, 3), {5});
    const auto c = classify(s);
    REQUIRE(c.verdict == Verdict::IntervalUnion);
    const std::size_t K = c.certificate->index;
    const auto base = gaps(s, K).gaps.size();
    for (std::size_t d = K; d <= K + 6; ++d) CHECK(gaps(s, d).gaps.size() == base);
}

TEST_CASE("is_locker examples") {
    auto r = is_locker(SeriesSpec::geometric(Rational(2, 3)), 10);
    CHECK(r.holds);
    CHECK(r.conclusive);
    r = is_locker(SeriesSpec::finite({7, 2, 2, 1, 1}, Rational(2)), 5);
    CHECK_FALSE(r.holds);
    CHECK(r.fails_at == std::optional<std::size_t>(1));
    r = is_locker(SeriesSpec::geometric(Rational(1, 2)), 10);
    CHECK_FALSE(r.holds);
    CHECK(r.fails_at == std::optional<std::size_t>(1));
    // 1/2 repeated three times then halving: x_k <= r_{k+1} everywhere
    r = is_locker(mg({Rational(1, 2), Rational(1, 2), Rational(1, 2)}, Rational(1, 2)), 3);
    CHECK(r.holds);
}

TEST_CASE("is_minimal examples") {
    auto r = is_minimal(SeriesSpec::geometric(Rational(1, 2)), 10);
    CHECK(r.kind == MinimalityResult::Kind::Minimal);
    r = is_minimal(SeriesSpec::geometric(Rational(3, 4)), 10);
    CHECK(r.kind == MinimalityResult::Kind::NotMinimal);
    CHECK_FALSE(r.witness_indices.empty());
    r = is_minimal(gn(), 10);
    CHECK(r.kind == MinimalityResult::Kind::KnownFamily);
    REQUIRE(r.family);
    CHECK(r.family->minimal == std::optional<bool>(true));
    r = is_minimal(mg({8, 4, 3, 2}, Rational(1, 16)), 10);
    CHECK(r.kind == MinimalityResult::Kind::KnownFamily);
    CHECK(r.family->minimal == std::optional<bool>(true));
    // GNJ with n = 6 and q in [1/10, 2/17]
    r = is_minimal(mg({3, 2, 2, 2, 2, 2, 2}, Rational(1, 9)), 10);
    CHECK(r.kind == MinimalityResult::Kind::KnownFamily);
    CHECK(r.family->minimal == std::optional<bool>(false));
    CHECK(is_minimal(mg({3, 2, 2, 2}, Rational(17, 100)), 10).kind == MinimalityResult::Kind::Inconclusive);
    CHECK(is_minimal(mg({3, 2}, Rational(1, 6)), 10).kind == MinimalityResult::Kind::Inconclusive);
}

TEST_CASE("property: lockers classify as IntervalUnion") {
    int lockers = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Rational> cs;
        for (int i = oracle::uniform(1, 4); i > 0; --i) cs.emplace_back(oracle::uniform(1, 6));
        std::sort(cs.begin(), cs.end(), std::greater<>());
        const auto s = mg(cs, Rational(oracle::uniform(1, 4), oracle::uniform(5, 8)));
        if (is_locker(s, 1).holds) {
            ++lockers;
            CHECK(classify(s).verdict == Verdict::IntervalUnion);
        }
    }
    CHECK(lockers > 10);
}

TEST_CASE("property: locker and minimality on geometric ratios follow q^2 + q against 1") {
    for (long b = 2; b <= 60; ++b) {
        for (long a = 1; a < b; ++a) {
            const Rational q(a, b);
            const Rational lhs = q * q + q;
            const auto s = SeriesSpec::geometric(q);
            CHECK(is_locker(s, 5).holds == (lhs >= Rational(1)));
            if (q >= Rational(1, 2)) {
                CHECK((is_minimal(s, 5).kind == MinimalityResult::Kind::Minimal) == (lhs <= Rational(1)));
            }
        }
    }
}
