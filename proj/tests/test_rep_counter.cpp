#include <doctest.h>

#include <algorithm>

#include "achset/digit_word.hpp"
#include "achset/rep_counter.hpp"
#include "oracles.hpp"

using namespace achset;

namespace {

SeriesSpec mg(std::vector<Rational> c, Rational q, std::vector<Rational> prefix = {}) {
    return SeriesSpec::multigeometric(std::move(c), std::move(q), std::move(prefix));
}

SeriesSpec gn() { return mg({3, 2}, Rational(1, 4)); }
SeriesSpec halves() { return mg({1}, Rational(1, 2), {Rational(1, 2)}); }

CardinalValue fin(long n) { return CardinalValue::finite(BigInt(n)); }

// eps-prefixes of length m*L whose scaled residual stays in [0, sigma_max/(1-q)]
std::uint64_t oracle_prefixes(const std::vector<Rational>& cs, const Rational& q, const Rational& t, std::size_t L) {
    const std::size_t m = cs.size();
    Rational smax(0);
    for (const auto& c : cs) smax += c;
    const Rational hi = smax / (Rational(1) - q);
    const Rational w0 = t / q;
    if (w0.sign() < 0 || w0 > hi) return 0;
    std::uint64_t count = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (m * L)); ++code) {
        Rational w = w0;
        bool ok = true;
        for (std::size_t n = 0; n < L && ok; ++n) {
            Rational d(0);
            for (std::size_t i = 0; i < m; ++i) {
                if (code >> (n * m + i) & 1U) d += cs[i];
            }
            w = (w - d) / q;
            ok = w.sign() >= 0 && w <= hi;
        }
        count += ok ? 1 : 0;
    }
    return count;
}

// subsets A of the first d terms with sum(A) <= t <= sum(A) + r_d
std::uint64_t truncation_count(const SeriesSpec& s, const Rational& t, std::size_t d) {
    const Rational tail = remainder(s, d);
    std::uint64_t c = 0;
    for (const auto& v : oracle::all_subset_sums(terms(s, d))) c += (v <= t && t <= v + tail) ? 1 : 0;
    return c;
}

}  // namespace

TEST_CASE("cardinal values") {
    CHECK(fin(3).str() == "Finite(3)");
    CHECK(CardinalValue::omega().str() == "Omega");
    CHECK(CardinalValue::continuum().str() == "Continuum");
    CHECK(fin(2) + fin(3) == fin(5));
    CHECK(fin(2) + CardinalValue::omega() == CardinalValue::omega());
    CHECK(CardinalValue::omega() + CardinalValue::continuum() == CardinalValue::continuum());
    CHECK_FALSE(fin(0) == CardinalValue::omega());
}

TEST_CASE("count_subset_sums examples") {
    CHECK(count_subset_sums({Rational(1, 2), Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 16)}, Rational(1, 2)) == 2);
    CHECK(count_subset_sums({Rational(3, 4), Rational(1, 2), Rational(3, 16), Rational(1, 8)}, Rational(5, 16)) == 1);
    CHECK(count_subset_sums({3, 2, 2, 2}, Rational(2)) == 3);
    CHECK(count_subset_sums({}, Rational(0)) == 1);
    CHECK(count_subset_sums({1, 2}, Rational(-1)) == 0);
    CHECK(count_subset_sums(std::vector<Rational>(40, Rational(1)), Rational(20)) == 137846528820ULL);
    CHECK_THROWS_AS(count_subset_sums(std::vector<Rational>(41, Rational(1)), Rational(1)), ResourceError);
}

TEST_CASE("property: count_subset_sums matches the oracle and is symmetric") {
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<Rational> xs;
        for (int i = oracle::uniform(1, 14); i > 0; --i) xs.emplace_back(oracle::uniform(1, 8), oracle::uniform(1, 4));
        Rational S(0);
        for (const auto& x : xs) S += x;
        const auto sums = oracle::all_subset_sums(xs);
        for (int j = 0; j < 5; ++j) {
            const Rational t = sums[static_cast<std::size_t>(oracle::uniform(0, static_cast<int>(sums.size()) - 1))];
            const auto c = count_subset_sums(xs, t);
            CHECK(c == oracle::subset_count(xs, t));
            CHECK(c == count_subset_sums(xs, S - t));
        }
    }
}

TEST_CASE("residual automaton examples") {
    auto a = build_residual_automaton(gn(), Rational(5, 3));
    CHECK(a.closed);
    CHECK(analyze_automaton(a) == fin(1));
    CHECK(a.count_prefixes(6) == 1);

    a = build_residual_automaton(gn(), Rational(3, 4));
    CHECK(analyze_automaton(a) == fin(2));
    CHECK(a.count_prefixes(8) == 2);
    // truncation oracle settles on the same two subsets
    CHECK(truncation_count(gn(), Rational(3, 4), 12) == 2);

    a = build_residual_automaton(gn(), Rational(0));
    CHECK(analyze_automaton(a) == fin(1));
    CHECK(a.states.size() == 1);

    a = build_residual_automaton(gn(), Rational(2));
    CHECK(a.initial.empty());
    CHECK(analyze_automaton(a) == fin(0));
    CHECK_THROWS_AS(build_residual_automaton(SeriesSpec::finite({1}), Rational(1)), PreconditionError);
}

TEST_CASE("cardinal_of examples") {
    CHECK(cardinal_of(gn(), Rational(3, 4)).value == fin(2));
    CHECK(cardinal_of(halves(), Rational(1, 2)).value == fin(3));
    CHECK(cardinal_of(halves(), Rational(3, 4)).value == fin(4));
    CHECK(cardinal_of(halves(), Rational(1)).value == fin(3));
    CHECK(cardinal_of(halves(), Rational(0)).value == fin(1));
    CHECK(cardinal_of(halves(), Rational(3, 2)).value == fin(1));
    CHECK(cardinal_of(halves(), Rational(1, 3)).value == fin(1));
    const auto c = cardinal_of(mg({3, 2, 2}, Rational(1, 6)), Rational(2, 5));
    CHECK(c.value == CardinalValue::continuum());
    CHECK(c.exact);

    // finite series: exact subset counting
    CHECK(cardinal_of(SeriesSpec::finite({3, 2, 2, 2}), Rational(2)).value == fin(3));
    CHECK(cardinal_of(SeriesSpec::finite({3, 2}, Rational(1, 2)), Rational(2)).exact);
    const auto open = cardinal_of(SeriesSpec::finite({3, 2}, Rational(1, 2)), Rational(9, 4));
    CHECK_FALSE(open.exact);
    CHECK(open.unresolved == 1);
    CHECK(open.value == fin(0));
}

TEST_CASE("single-repeat table: dyadic points in (1/2, 1) have four representations") {
    for (long den : {4, 8, 16, 32}) {
        for (long num = den / 2 + 1; num < den; ++num) {
            const Rational t(num, den);
            if (t.denominator() == 2 || t == Rational(1)) continue;
            CHECK(cardinal_of(halves(), t).value == fin(4));
        }
    }
    for (long den : {3, 5, 7, 9}) {
        for (long num = 1; num < den; ++num) {
            const Rational t(num, den);
            if (t < Rational(1, 2)) CHECK(cardinal_of(halves(), t).value == fin(1));
        }
    }
}

TEST_CASE("omega fibers: countably many representations") {
    // 1/3 = 2/9 + 1/9 = 2/9 + 2/27 + 1/27 = ...: one finite subset per level
    const auto s = mg({2, 1}, Rational(1, 3));
    const auto c = cardinal_of(s, Rational(1, 3));
    CHECK(c.exact);
    CHECK(c.value == CardinalValue::omega());
    std::uint64_t prev = 0;
    for (std::size_t d = 2; d <= 20; d += 2) {
        const auto n = oracle::subset_count(terms(s, d), Rational(1, 3));
        CHECK(n > prev);
        CHECK(n <= d);
        prev = n;
    }
    CHECK(cardinal_of(mg({2, 2, 1}, Rational(1, 5)), Rational(1, 5)).value == CardinalValue::omega());
}

TEST_CASE("property: automaton prefix counts equal direct enumeration") {
    const std::vector<std::vector<Rational>> coeff_sets{{3, 2}, {3, 2, 2}, {1, 1}, {2, 1}, {5, 3, 1}};
    const std::vector<Rational> ratios{Rational(1, 4), Rational(1, 6), Rational(1, 3), Rational(1, 2), Rational(1, 5)};
    for (std::size_t i = 0; i < coeff_sets.size(); ++i) {
        const auto& cs = coeff_sets[i];
        const Rational& q = ratios[i];
        // targets from three-level sums
        const auto lv = level_sums(cs, q, 3);
        std::vector<Rational> targets;
        const auto sig = sigma_set(cs);
        for (int j = 0; j < 12; ++j) {
            Rational t(0);
            for (long n = 1; n <= 3; ++n) t += sig.values[static_cast<std::size_t>(oracle::uniform(0, static_cast<int>(sig.size()) - 1))] * pow(q, n);
            targets.push_back(t);
        }
        CHECK(lv.distinct > 0);
        const auto s = mg(cs, q);
        for (const auto& t : targets) {
            const auto a = build_residual_automaton(s, t);
            REQUIRE(a.closed);
            for (std::size_t L = 0; L <= 4 && cs.size() * L <= 12; ++L) {
                CHECK(a.count_prefixes(L, false) == BigInt(static_cast<unsigned long>(oracle_prefixes(cs, q, t, L))));
            }
        }
    }
}

TEST_CASE("property: GN fibers have one or two points") {
    int twos = 0;
    for (int trial = 0; trial < 250; ++trial) {
        std::vector<Digit> pre(static_cast<std::size_t>(oracle::uniform(0, 6)));
        std::vector<Digit> cyc(static_cast<std::size_t>(oracle::uniform(1, 4)));
        const Digit ds[4] = {0, 2, 3, 5};
        for (auto& d : pre) d = ds[oracle::uniform(0, 3)];
        for (auto& d : cyc) d = ds[oracle::uniform(0, 3)];
        const Rational t = eval_digit_word(DigitWord(pre, cyc, {0, 2, 3, 5}), Rational(1, 4));
        const auto c = cardinal_of(gn(), t);
        REQUIRE(c.exact);
        CHECK((c.value == fin(1) || c.value == fin(2)));
        twos += c.value == fin(2) ? 1 : 0;
    }
    CHECK(twos > 0);
    // arbitrary rationals: zero is also possible
    for (int trial = 0; trial < 100; ++trial) {
        const Rational t(oracle::uniform(0, 200), oracle::uniform(1, 120));
        const auto c = cardinal_of(gn(), t);
        CHECK((c.value == fin(0) || c.value == fin(1) || c.value == fin(2)));
    }
}

TEST_CASE("property: truncation counts bound the fiber from above") {
    for (int trial = 0; trial < 40; ++trial) {
        const Rational t(oracle::uniform(0, 100), 64);
        const auto c = cardinal_of(gn(), t).value;
        REQUIRE(c.is_finite());
        CHECK(BigInt(static_cast<unsigned long>(truncation_count(gn(), t, 14))) >= c.count());
    }
}

TEST_CASE("cpoint_witness examples") {
    auto w = cpoint_witness(mg({3, 2, 2, 2}, Rational(17, 100)));
    REQUIRE(w);
    CHECK(w->y == Rational(34, 83));
    CHECK(w->sigma == Rational(2));
    CHECK(w->first == std::vector<std::size_t>{2});
    CHECK(w->second == std::vector<std::size_t>{3});
    CHECK_FALSE(cpoint_witness(gn()));
    for (const Rational q : {Rational(1, 3), Rational(2, 5), Rational(1, 10)}) {
        w = cpoint_witness(mg({1, 1}, q));
        REQUIRE(w);
        CHECK(w->y == q / (Rational(1) - q));
    }
}

TEST_CASE("property: c-point witnesses are Continuum points") {
    int found = 0;
    for (int trial = 0; trial < 80; ++trial) {
        std::vector<Rational> cs;
        for (int i = oracle::uniform(2, 4); i > 0; --i) cs.emplace_back(oracle::uniform(1, 5));
        std::sort(cs.begin(), cs.end(), std::greater<>());
        const auto s = mg(cs, Rational(1, oracle::uniform(2, 10)));
        if (auto w = cpoint_witness(s)) {
            ++found;
            const auto c = cardinal_of(s, w->y);
            CHECK(c.exact);
            CHECK(c.value == CardinalValue::continuum());
        } else {
            CHECK(sigma_set(cs).one_to_one());
        }
    }
    CHECK(found > 10);
}

TEST_CASE("level_sums examples") {
    auto l = level_sums({3, 2}, Rational(1, 4), 1);
    CHECK(l.distinct == 4);
    CHECK(l.collisions.empty());
    l = level_sums({3, 2}, Rational(1, 4), 3);
    CHECK(l.distinct == 64);
    CHECK(l.collisions.empty());
    l = level_sums({3, 2, 2, 2}, Rational(17, 100), 1);
    CHECK(l.tuple_count == 16);
    CHECK(l.distinct == 8);
    CHECK_FALSE(l.collisions.empty());
    l = level_sums({1, 1}, Rational(1, 2), 2);
    // 2 d_1 + d_2 over {0,1,2} takes the seven values 0..6
    CHECK(l.distinct == 7);
}

TEST_CASE("shift_nonunique") {
    // E(3,2,2;1/6) written out: 1/2, 1/3, 1/3, 1/12, 1/18, 1/18, ...
    const auto xs = terms(mg({3, 2, 2}, Rational(1, 6)), 9);
    const auto [p, r] = shift_nonunique(xs, {1}, {5}, {6});
    CHECK(p == IndexSet{1, 5});
    CHECK(r == IndexSet{1, 6});
    Rational a(0), b(0);
    for (auto i : p) a += xs[i - 1];
    for (auto i : r) b += xs[i - 1];
    CHECK(a == b);

    const auto [p0, r0] = shift_nonunique(xs, {}, {2}, {3});
    CHECK(p0 == IndexSet{2});
    CHECK(r0 == IndexSet{3});

    CHECK_THROWS_AS(shift_nonunique(xs, {5}, {5}, {6}), PreconditionError);
    CHECK_THROWS_AS(shift_nonunique(xs, {1}, {5}, {4}), PreconditionError);
    CHECK_THROWS_AS(shift_nonunique(xs, {1}, {5}, {5}), PreconditionError);

    // hand-written list, not a GN prefix: 3/16 = 1/8 + 1/16
    const std::vector<Rational> ys{Rational(3, 4), Rational(1, 2), Rational(3, 16), Rational(1, 8), Rational(1, 16)};
    const auto [q1, q2] = shift_nonunique(ys, {1}, {3}, {4, 5});
    CHECK(q1 == IndexSet{1, 3});
    CHECK(q2 == IndexSet{1, 4, 5});
}

TEST_CASE("property: shifting keeps non-uniqueness for the GNJ family") {
    const auto xs = terms(mg({3, 2, 2, 2}, Rational(17, 100)), 16);
    for (int trial = 0; trial < 50; ++trial) {
        // B and C: the second and third copy of a level-L coefficient 2
        const std::size_t L = static_cast<std::size_t>(oracle::uniform(2, 4));
        const std::size_t b = 4 * (L - 1) + 2, c = b + 1;
        IndexSet A;
        for (std::size_t i = 1; i <= 4 * (L - 1); ++i) {
            if (oracle::uniform(0, 1)) A.push_back(i);
        }
        if (!A.empty() && !(xs[b - 1] < xs[A.back() - 1])) continue;
        const auto [p, r] = shift_nonunique(xs, A, {b}, {c});
        Rational sp(0), sr(0);
        for (auto i : p) sp += xs[i - 1];
        for (auto i : r) sr += xs[i - 1];
        CHECK(sp == sr);
        CHECK(p != r);
    }
}
