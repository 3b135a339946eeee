#include <doctest.h>

#include <algorithm>
#include <set>

#include "achset/gn_automaton.hpp"
#include "achset/rep_counter.hpp"
#include "oracles.hpp"

using namespace achset;

namespace {

const std::vector<Digit> kGN{0, 2, 3, 5};

DigitWord gw(std::vector<Digit> pre, std::vector<Digit> cyc) { return DigitWord(std::move(pre), std::move(cyc), kGN); }

DigitWord random_word(const std::vector<Digit>& alphabet, int max_pre, int max_cyc) {
    std::vector<Digit> pre(static_cast<std::size_t>(oracle::uniform(0, max_pre)));
    std::vector<Digit> cyc(static_cast<std::size_t>(oracle::uniform(1, max_cyc)));
    const int top = static_cast<int>(alphabet.size()) - 1;
    for (auto& d : pre) d = alphabet[static_cast<std::size_t>(oracle::uniform(0, top))];
    for (auto& d : cyc) d = alphabet[static_cast<std::size_t>(oracle::uniform(0, top))];
    return DigitWord(pre, cyc, alphabet);
}

CardinalValue fin(long n) { return CardinalValue::finite(BigInt(n)); }

}  // namespace

TEST_CASE("family parameters") {
    const GNFamily f1(1);
    CHECK(f1.alphabet == kGN);
    CHECK(f1.base == 4);
    CHECK(f1.ratio == Rational(1, 4));
    CHECK(f1.coeffs == std::vector<Rational>{3, 2});
    for (unsigned r = 1; r <= 5; ++r) {
        const GNFamily f(r);
        CHECK(f.alphabet.size() == (std::size_t{1} << (r + 1)));
        // {0, ..., base+1} without 1 and base
        std::vector<Digit> expect;
        for (Digit d = 0; d <= f.base + 1; ++d) {
            if (d != 1 && d != f.base) expect.push_back(d);
        }
        CHECK(f.alphabet == expect);
        CHECK(sigma_set(f.coeffs).one_to_one());
    }
    CHECK(GNFamily(3).coeffs == std::vector<Rational>{8, 4, 3, 2});
    CHECK(GNFamily::bad_pairs().size() == 4);
}

TEST_CASE("epsilon_to_digits examples") {
    const DigitWord ones({}, {1, 1}, {0, 1});
    CHECK(epsilon_to_digits(ones, 1) == gw({}, {5}));
    CHECK(epsilon_to_digits(DigitWord({}, {1, 0}, {0, 1}), 1) == gw({}, {3}));
    CHECK(epsilon_to_digits(DigitWord({}, {0}, {0, 1}), 1) == gw({}, {0}));
    CHECK(epsilon_to_digits(DigitWord({0, 1}, {0}, {0, 1}), 1) == gw({2}, {0}));
    // odd period: blocks straddle the period and the digit cycle doubles
    CHECK(epsilon_to_digits(DigitWord({}, {1}, {0, 1}), 1) == gw({}, {5}));
    CHECK(epsilon_to_digits(DigitWord({}, {1, 0, 0}, {0, 1}), 1) == gw({}, {3, 2, 0}));
    CHECK(epsilon_to_digits(DigitWord({}, {1, 0, 1}, {0, 1}), 2) == DigitWord({}, {6}, GNFamily(2).alphabet));
    CHECK_THROWS_AS(epsilon_to_digits(DigitWord({}, {2}), 1), PreconditionError);
}

TEST_CASE("property: epsilon and digit words convert both ways and keep the value") {
    for (unsigned r = 1; r <= 3; ++r) {
        const GNFamily f(r);
        for (int trial = 0; trial < 60; ++trial) {
            const DigitWord eps = random_word({0, 1}, 7, 5);
            const DigitWord d = epsilon_to_digits(eps, r);
            CHECK(digits_to_epsilon(d, r) == eps);
            // the value sum_n eps_n * c_{(n-1) mod m + 1} q^{ceil(n/m)} computed bit by bit
            const std::size_t m = r + 1;
            Rational direct(0);
            const std::size_t N = 12 * m;
            for (std::size_t n = 1; n <= N; ++n) {
                if (eps.at(n)) direct += f.coeffs[(n - 1) % m] * pow(f.ratio, static_cast<long>((n - 1) / m + 1));
            }
            const Rational v = eval_digit_word(d, f.ratio);
            CHECK(direct <= v);
            CHECK(v - direct <= Rational(f.base + 1) * pow(f.ratio, 13) / (Rational(1) - f.ratio));
        }
    }
}

TEST_CASE("bad_pair_positions examples") {
    const GNFamily f(1);
    auto s = bad_pair_positions(gw({2}, {3}), f);
    CHECK(s.positions == std::vector<std::size_t>{1});
    CHECK_FALSE(s.cycle_contains_bad_pair);
    s = bad_pair_positions(gw({}, {2, 3}), f);
    CHECK(s.cycle_contains_bad_pair);
    s = bad_pair_positions(gw({}, {5}), f);
    CHECK(s.positions.empty());
    CHECK_FALSE(s.cycle_contains_bad_pair);
    s = bad_pair_positions(gw({3, 0, 5, 2, 5}, {0}), f);
    CHECK(s.positions == std::vector<std::size_t>{1, 4});
    CHECK_THROWS_AS(bad_pair_positions(DigitWord({}, {0}, GNFamily(2).alphabet), GNFamily(2)), PreconditionError);
}

TEST_CASE("gn_classify examples") {
    auto v = gn_classify(gw({2}, {3}));
    REQUIRE_FALSE(v.unique);
    REQUIRE(v.witness);
    CHECK(v.witness->second == gw({3}, {0}));
    CHECK(v.witness->n0 == 1);
    CHECK(eval_digit_word(v.witness->first, Rational(1, 4)) == Rational(3, 4));
    CHECK(eval_digit_word(v.witness->second, Rational(1, 4)) == Rational(3, 4));
    CHECK(gn_classify(gw({}, {2, 3})).unique);
    CHECK(gn_classify(gw({}, {5})).unique);
    CHECK(gn_classify(gw({}, {0})).unique);
    CHECK_THROWS_AS(gn_classify(DigitWord({}, {1})), PreconditionError);
}

TEST_CASE("generalized_second_rep examples") {
    const GNFamily f2(2);
    const auto w = generalized_second_rep(DigitWord({4}, {0}, f2.alphabet), f2);
    REQUIRE(w);
    CHECK(w->second == DigitWord({3}, {7}, f2.alphabet));
    CHECK(eval_digit_word(w->first, f2.ratio) == Rational(1, 2));
    CHECK(eval_digit_word(w->second, f2.ratio) == Rational(1, 2));
    CHECK(check_two_rep_structure(*w, f2).ok);

    CHECK_FALSE(generalized_second_rep(DigitWord({}, {0}, f2.alphabet), f2));
    CHECK_FALSE(generalized_second_rep(gw({}, {0}), GNFamily(1)));
}

TEST_CASE("property: generalized construction agrees with the pair test for r = 1") {
    const GNFamily f(1);
    for (int trial = 0; trial < 150; ++trial) {
        const DigitWord w = random_word(kGN, 6, 4);
        const auto v = gn_classify(w);
        const auto g = generalized_second_rep(w, f);
        REQUIRE(v.unique == !g.has_value());
        if (g) {
            CHECK(digit_word_equal(g->second, v.witness->second));
            CHECK(g->n0 == v.witness->n0);
        }
    }
}

TEST_CASE("property: witnesses for larger r are sound and confirmed by the counter") {
    for (unsigned r = 2; r <= 3; ++r) {
        const GNFamily f(r);
        int found = 0;
        for (int trial = 0; trial < 120; ++trial) {
            const DigitWord w = random_word(f.alphabet, 5, 3);
            const auto g = generalized_second_rep(w, f);
            const Rational t = eval_digit_word(w, f.ratio);
            const auto c = cardinal_of(f.spec(), t, AutomatonOptions{true, 100000});
            REQUIRE(c.exact);
            if (g) {
                ++found;
                CHECK(eval_digit_word(g->second, f.ratio) == t);
                CHECK(check_two_rep_structure(*g, f).ok);
                CHECK(c.value == fin(2));
            } else {
                CHECK(c.value == fin(1));
            }
        }
        CHECK(found > 0);
    }
}

TEST_CASE("property: every TwoReps witness is sound and has exactly two representations") {
    const GNFamily f(1);
    int found = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const DigitWord w = random_word(kGN, 6, 4);
        const auto v = gn_classify(w);
        const auto c = cardinal_of(f.spec(), eval_digit_word(w, f.ratio));
        if (v.unique) {
            CHECK(c.value == fin(1));
            continue;
        }
        ++found;
        const auto& x = *v.witness;
        CHECK(eval_digit_word(x.first, f.ratio) == eval_digit_word(x.second, f.ratio));
        const int diff = x.first.at(x.n0) - x.second.at(x.n0);
        CHECK((diff == 1 || diff == -1));
        for (std::size_t n = 1; n < x.n0; ++n) CHECK(x.first.at(n) == x.second.at(n));
        const auto sc = check_two_rep_structure(x, f);
        CHECK_MESSAGE(sc.ok, sc.failure);
        CHECK(c.value == fin(2));
    }
    CHECK(found > 20);
}

TEST_CASE("exhaustive agreement with the counter on short prefixes") {
    const GNFamily f(1);
    std::vector<Digit> pre(6);
    for (int code = 0; code < 4096; ++code) {
        for (std::size_t i = 0; i < 6; ++i) pre[i] = kGN[static_cast<std::size_t>(code >> (2 * i) & 3)];
        for (Digit tail : {0, 5}) {
            const DigitWord w(pre, {tail}, kGN);
            const auto v = gn_classify(w);
            const auto c = cardinal_of(f.spec(), eval_digit_word(w, f.ratio));
            CHECK(c.value == fin(v.unique ? 1 : 2));
        }
    }
}

TEST_CASE("structure check rejects broken witnesses") {
    const GNFamily f(1);
    auto x = *gn_classify(gw({2}, {3})).witness;
    x.second = gw({3}, {2});
    CHECK_FALSE(check_two_rep_structure(x, f).ok);
    x = *gn_classify(gw({2}, {3})).witness;
    x.break_indices.push_back(7);
    CHECK_FALSE(check_two_rep_structure(x, f).ok);
}

TEST_CASE("pair_avoiding_count examples and closed form") {
    CHECK(pair_avoiding_count(1).count == 4);
    CHECK(pair_avoiding_count(2).count == 12);
    CHECK(pair_avoiding_count(3).count == 36);
    for (std::size_t L = 1; L <= 8; ++L) CHECK(pair_avoiding_count(L).count == BigInt(static_cast<unsigned long>(oracle::brute_pair_avoiding(L))));
    Rational prev(2);
    for (std::size_t L = 1; L <= 60; ++L) {
        const auto p = pair_avoiding_count(L);
        BigInt closed = 4;
        for (std::size_t i = 1; i < L; ++i) closed *= 3;
        CHECK(p.count == closed);
        CHECK(p.fraction == Rational(p.count, BigInt(1) << (2 * L)));
        CHECK(p.fraction < prev);
        prev = p.fraction;
    }
    CHECK(prev < Rational(1, 1000000));
}

TEST_CASE("transfer diagram") {
    const auto M = gn_transfer_matrix();
    int allowed = 0;
    std::set<std::pair<Digit, Digit>> pairs;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            allowed += M[i][j];
            if (M[i][j]) pairs.insert({kGN[i], kGN[j]});
        }
    }
    CHECK(allowed == 12);
    // successors: 2 -> {0,2}, 0 -> all, 5 -> all, 3 -> {3,5}
    const std::set<std::pair<Digit, Digit>> expect{{2, 0}, {2, 2}, {0, 0}, {0, 2}, {0, 3}, {0, 5},
                                                   {5, 0}, {5, 2}, {5, 3}, {5, 5}, {3, 3}, {3, 5}};
    CHECK(pairs == expect);
}

TEST_CASE("disjoint_family_check examples") {
    const auto gnj = SeriesSpec::multigeometric({3, 2, 2, 2}, Rational(17, 100));
    const auto blocks = duplicate_coefficient_blocks(gnj, 4);
    REQUIRE(blocks.size() == 4);
    CHECK(blocks[0].i0 == std::vector<std::size_t>{2});
    CHECK(blocks[0].i1 == std::vector<std::size_t>{3});
    CHECK(blocks[1].i0 == std::vector<std::size_t>{6});
    CHECK(disjoint_family_check(blocks, gnj));

    const auto gn = SeriesSpec::gn_family(1);
    CHECK(duplicate_coefficient_blocks(gn, 4).empty());
    CHECK_FALSE(disjoint_family_check({IndexBlock{{1}, {2}}}, gn));
    CHECK_FALSE(disjoint_family_check({IndexBlock{{1}, {2, 3}}}, gn));
    CHECK(disjoint_family_check({}, gn));
    CHECK_THROWS_AS(disjoint_family_check({IndexBlock{{1}, {1}}}, gn), PreconditionError);
    CHECK_THROWS_AS(disjoint_family_check({IndexBlock{{1}, {2}}, IndexBlock{{2}, {3}}}, gnj), PreconditionError);
    CHECK(written_term(gnj, 5) == Rational(3) * Rational(17, 100) * Rational(17, 100));
}

TEST_CASE("property: GN has no equal-sum pair among small disjoint index sets") {
    const auto gn = SeriesSpec::gn_family(1);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::size_t> a, b;
        for (std::size_t i = 1; i <= 10; ++i) {
            const int pick = oracle::uniform(0, 2);
            if (pick == 1) a.push_back(i);
            if (pick == 2) b.push_back(i);
        }
        if (a.empty() || b.empty()) continue;
        CHECK_FALSE(disjoint_family_check({IndexBlock{a, b}}, gn));
    }
}
