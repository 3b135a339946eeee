#include "achset/gn_automaton.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace achset {

GNFamily::GNFamily(unsigned r_) : r(r_) {
    if (r == 0) throw PreconditionError("family parameter r must be >= 1");
    if (r > 20) throw ResourceError("family parameter r above 20 is not supported", 20);
    for (unsigned e = r; e >= 2; --e) coeffs.emplace_back(BigInt(BigInt(1) << e));
    coeffs.emplace_back(3);
    coeffs.emplace_back(2);
    base = Digit{1} << (r + 1);
    ratio = Rational(1, base);
    for (Digit d = 0; d <= base + 1; ++d) {
        if (d != 1 && d != base) alphabet.push_back(d);
    }
}

const std::vector<std::pair<Digit, Digit>>& GNFamily::bad_pairs() {
    static const std::vector<std::pair<Digit, Digit>> pairs{{2, 3}, {3, 2}, {3, 0}, {2, 5}};
    return pairs;
}

namespace {

const std::vector<Digit> kGNDigits{0, 2, 3, 5};

bool is_bad(Digit a, Digit b) {
    const auto& bp = GNFamily::bad_pairs();
    return std::find(bp.begin(), bp.end(), std::make_pair(a, b)) != bp.end();
}

void require_digits(const DigitWord& w, const std::vector<Digit>& allowed, const char* what) {
    auto ok = [&](Digit d) { return std::binary_search(allowed.begin(), allowed.end(), d); };
    if (!std::all_of(w.preamble().begin(), w.preamble().end(), ok) ||
        !std::all_of(w.cycle().begin(), w.cycle().end(), ok)) {
        throw PreconditionError(std::string(what) + ": digit outside the alphabet");
    }
}

bool uses_only(const DigitWord& w, const std::vector<Digit>& allowed) {
    auto ok = [&](Digit d) { return std::binary_search(allowed.begin(), allowed.end(), d); };
    return std::all_of(w.preamble().begin(), w.preamble().end(), ok) &&
           std::all_of(w.cycle().begin(), w.cycle().end(), ok);
}

// Digit value of each block of r+1 bits, bit j weighted by coeffs[j].
Digit block_value(const GNFamily& f, const std::vector<Digit>& bits, std::size_t start) {
    Digit v = 0;
    for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
        if (bits[start + j] == 1) v += static_cast<Digit>(f.coeffs[j].numerator().get_si());
    }
    return v;
}

// Words a and b agree before n0 and use b_k for k >= n0; b_k is given for
// positions 1..P+L where P >= n0 and the pattern repeats with period L after P.
DigitWord make_word(std::vector<Digit> digits, std::size_t P, const std::vector<Digit>& alphabet) {
    std::vector<Digit> pre(digits.begin(), digits.begin() + static_cast<long>(P));
    std::vector<Digit> cyc(digits.begin() + static_cast<long>(P), digits.end());
    return DigitWord(std::move(pre), std::move(cyc), alphabet);
}

std::size_t lcm_cycles(const DigitWord& a, const DigitWord& b) {
    return std::lcm(a.cycle().size(), b.cycle().size());
}

}  // namespace

DigitWord epsilon_to_digits(const DigitWord& eps, unsigned r) {
    const GNFamily f(r);
    require_digits(eps, {0, 1}, "epsilon word");
    const std::size_t B = r + 1;
    const std::size_t pre_len = (eps.preamble().size() + B - 1) / B * B;
    const auto u = eps.unrolled(pre_len, B);
    std::vector<Digit> pre, cyc;
    for (std::size_t i = 0; i < u.preamble.size(); i += B) pre.push_back(block_value(f, u.preamble, i));
    for (std::size_t i = 0; i < u.cycle.size(); i += B) cyc.push_back(block_value(f, u.cycle, i));
    return DigitWord(std::move(pre), std::move(cyc), f.alphabet);
}

DigitWord digits_to_epsilon(const DigitWord& digits, unsigned r) {
    const GNFamily f(r);
    require_digits(digits, f.alphabet, "digit word");
    const std::size_t B = r + 1;
    std::vector<std::vector<Digit>> block_of(static_cast<std::size_t>(f.base) + 2);
    for (unsigned mask = 0; mask < (1U << B); ++mask) {
        std::vector<Digit> bits(B);
        for (std::size_t j = 0; j < B; ++j) bits[j] = (mask >> j) & 1U;
        block_of[static_cast<std::size_t>(block_value(f, bits, 0))] = bits;
    }
    auto expand = [&](const std::vector<Digit>& ds) {
        std::vector<Digit> out;
        for (Digit d : ds) {
            const auto& b = block_of[static_cast<std::size_t>(d)];
            out.insert(out.end(), b.begin(), b.end());
        }
        return out;
    };
    return DigitWord(expand(digits.preamble()), expand(digits.cycle()), {0, 1});
}

BadPairScan bad_pair_positions(const DigitWord& w, const GNFamily& family) {
    if (family.r != 1) {
        throw PreconditionError("the bad-pair characterization is proven only for r = 1 (unproven for r = " +
                                std::to_string(family.r) + ")");
    }
    require_digits(w, kGNDigits, "bad_pair_positions");
    BadPairScan scan;
    const std::size_t P = w.preamble().size();
    const std::size_t L = w.cycle().size();
    for (std::size_t n = 1; n <= P; ++n) {
        if (is_bad(w.at(n), w.at(n + 1))) scan.positions.push_back(n);
    }
    for (std::size_t n = P + 1; n <= P + L; ++n) {
        scan.cycle_contains_bad_pair = scan.cycle_contains_bad_pair || is_bad(w.at(n), w.at(n + 1));
    }
    return scan;
}

GNVerdict gn_classify(const DigitWord& w) {
    const GNFamily gn(1);
    const BadPairScan scan = bad_pair_positions(w, gn);
    GNVerdict out;
    if (scan.cycle_contains_bad_pair || scan.positions.empty()) return out;

    const std::size_t n0 = scan.positions.back();
    const std::size_t P = std::max(w.preamble().size(), n0);
    const std::size_t L = w.cycle().size();
    std::vector<Digit> b;
    TwoRepWitness wit{w, w, n0, {}, false};
    for (std::size_t i = 1; i <= P + L; ++i) {
        const Digit a = w.at(i), next = w.at(i + 1);
        if (i < n0) {
            b.push_back(a);
        } else if (i == n0) {
            b.push_back(a == 2 ? 3 : 2);
        } else {
            switch (a) {
                case 3: b.push_back(0); break;
                case 5: b.push_back(next == 3 || next == 5 ? 2 : 0); break;
                case 2: b.push_back(5); break;
                default: b.push_back(next == 0 || next == 2 ? 3 : 5); break;
            }
            const bool leaves_high = a == 5 && (next == 0 || next == 2);
            const bool leaves_low = a == 0 && (next == 3 || next == 5);
            if (leaves_high || leaves_low) {
                wit.break_indices.push_back(i);
                if (i > P) wit.breaks_periodic = true;
            }
        }
    }
    wit.second = make_word(std::move(b), P, gn.alphabet);
    if (eval_digit_word(wit.first, gn.ratio) != eval_digit_word(wit.second, gn.ratio)) {
        throw std::logic_error("gn_classify: partner word does not evaluate to the same point");
    }
    out.unique = false;
    out.witness = std::move(wit);
    return out;
}

std::optional<TwoRepWitness> generalized_second_rep(const DigitWord& w, const GNFamily& f) {
    if (!uses_only(w, f.alphabet)) return std::nullopt;
    const Digit beta = f.base;
    // Sign of the scaled partial-sum difference forced by the next digit of w.
    auto direction = [&](Digit d) -> int {
        if (d == beta - 1 || d == beta + 1) return 1;
        if (d == 0 || d == 2) return -1;
        return 0;
    };
    auto in_alphabet = [&](Digit d) { return std::binary_search(f.alphabet.begin(), f.alphabet.end(), d); };

    const std::size_t pre = w.preamble().size();
    const std::size_t L = w.cycle().size();
    for (std::size_t n0 = 1; n0 <= pre + L; ++n0) {
        const int s0 = direction(w.at(n0 + 1));
        if (s0 == 0 || !in_alphabet(w.at(n0) + s0)) continue;
        const std::size_t P = std::max(pre, n0);
        std::vector<Digit> b;
        TwoRepWitness wit{w, w, n0, {}, false};
        bool ok = true;
        for (std::size_t i = 1; i <= P + L && ok; ++i) {
            const Digit a = w.at(i);
            if (i < n0) {
                b.push_back(a);
            } else if (i == n0) {
                b.push_back(a + s0);
            } else {
                const int prev = direction(a), cur = direction(w.at(i + 1));
                const Digit d = a + cur - beta * prev;
                ok = prev != 0 && cur != 0 && in_alphabet(d);
                b.push_back(d);
                if (ok && prev != cur) {
                    wit.break_indices.push_back(i);
                    if (i > P) wit.breaks_periodic = true;
                }
            }
        }
        if (!ok) continue;
        wit.second = make_word(std::move(b), P, f.alphabet);
        if (eval_digit_word(wit.first, f.ratio) != eval_digit_word(wit.second, f.ratio)) continue;
        return wit;
    }
    return std::nullopt;
}

StructureCheck check_two_rep_structure(const TwoRepWitness& w, const GNFamily& f) {
    auto fail = [](std::string msg) { return StructureCheck{false, std::move(msg)}; };
    const Digit beta = f.base;
    const std::size_t n0 = w.n0;
    if (n0 == 0) return fail("n0 must be positive");
    if (eval_digit_word(w.first, f.ratio) != eval_digit_word(w.second, f.ratio)) {
        return fail("the two words evaluate differently");
    }
    for (std::size_t k = 1; k < n0; ++k) {
        if (w.first.at(k) != w.second.at(k)) return fail("words differ before n0 at " + std::to_string(k));
    }
    const bool first_low = w.first.at(n0) < w.second.at(n0);
    const DigitWord& lo = first_low ? w.first : w.second;
    const DigitWord& hi = first_low ? w.second : w.first;
    if (hi.at(n0) - lo.at(n0) != 1 || lo.at(n0) < 2 || hi.at(n0) > beta - 1) {
        return fail("digits at n0 are not 2+j and 3+j");
    }

    const std::size_t horizon =
        std::max({lo.preamble().size(), hi.preamble().size(), n0}) + 2 * lcm_cycles(lo, hi) + 1;
    bool high_phase = true;  // n_{2k} < i < n_{2k+1}
    std::vector<std::size_t> breaks;
    for (std::size_t i = n0 + 1; i <= horizon; ++i) {
        const Digit a = lo.at(i), b = hi.at(i);
        if (high_phase) {
            if (a == beta + 1 && b == 0) {
                breaks.push_back(i);
                high_phase = false;
            } else if (!((a == beta - 1 || a == beta + 1) && a - b == beta - 1)) {
                return fail("high-phase digit pair broken at " + std::to_string(i));
            }
        } else {
            if (a == 0 && b == beta + 1) {
                breaks.push_back(i);
                high_phase = true;
            } else if (!((a == 0 || a == 2) && b - a == beta - 1)) {
                return fail("low-phase digit pair broken at " + std::to_string(i));
            }
        }
    }
    // the break digits hold at the detected breaks by construction; they must match the witness.
    for (std::size_t k = 0; k < w.break_indices.size(); ++k) {
        if (k >= breaks.size() || breaks[k] != w.break_indices[k]) {
            return fail("break index " + std::to_string(w.break_indices[k]) + " not confirmed");
        }
    }
    return {true, {}};
}

std::vector<std::vector<int>> gn_transfer_matrix() {
    std::vector<std::vector<int>> m(4, std::vector<int>(4, 0));
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) m[i][j] = is_bad(kGNDigits[i], kGNDigits[j]) ? 0 : 1;
    }
    return m;
}

PairAvoidance pair_avoiding_count(std::size_t L) {
    if (L == 0) throw PreconditionError("pair_avoiding_count needs L >= 1");
    using Mat = std::vector<std::vector<BigInt>>;
    auto mul = [](const Mat& a, const Mat& b) {
        Mat c(4, std::vector<BigInt>(4, 0));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t j = 0; j < 4; ++j) c[i][j] += a[i][k] * b[k][j];
        return c;
    };
    Mat result(4, std::vector<BigInt>(4, 0));
    for (std::size_t i = 0; i < 4; ++i) result[i][i] = 1;
    Mat base(4, std::vector<BigInt>(4, 0));
    const auto t = gn_transfer_matrix();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) base[i][j] = t[i][j];
    for (std::size_t e = L - 1; e > 0; e >>= 1) {
        if (e & 1U) result = mul(result, base);
        base = mul(base, base);
    }
    PairAvoidance out;
    out.count = 0;
    for (const auto& row : result)
        for (const auto& x : row) out.count += x;
    BigInt words;
    mpz_ui_pow_ui(words.get_mpz_t(), 4, L);
    out.fraction = Rational(out.count, words);
    return out;
}

Rational written_term(const SeriesSpec& s, std::size_t index) {
    if (index == 0) throw PreconditionError("term positions are 1-based");
    if (const auto* g = s.as_multigeometric()) {
        if (index <= g->prefix.size()) return g->prefix[index - 1];
        const std::size_t j = index - g->prefix.size() - 1;
        const std::size_t m = g->coeffs.size();
        return g->coeffs[j % m] * pow(g->ratio, static_cast<long>(j / m + 1));
    }
    if (const auto* f = s.as_finite()) {
        if (index > f->terms.size()) throw PreconditionError("term position beyond the listed terms");
        return f->terms[index - 1];
    }
    return term(s, index);
}

bool disjoint_family_check(const std::vector<IndexBlock>& blocks, const SeriesSpec& s) {
    std::set<std::size_t> seen;
    for (const auto& blk : blocks) {
        if (blk.i0.empty() || blk.i1.empty()) throw PreconditionError("index blocks must be nonempty");
        for (const auto* side : {&blk.i0, &blk.i1}) {
            for (std::size_t i : *side) {
                if (!seen.insert(i).second) {
                    throw PreconditionError("index " + std::to_string(i) + " appears in two sets");
                }
            }
        }
    }
    for (const auto& blk : blocks) {
        Rational a(0), b(0);
        for (std::size_t i : blk.i0) a += written_term(s, i);
        for (std::size_t i : blk.i1) b += written_term(s, i);
        if (a != b) return false;
    }
    return true;
}

std::vector<IndexBlock> duplicate_coefficient_blocks(const SeriesSpec& s, std::size_t levels) {
    const auto* g = s.as_multigeometric();
    if (!g) throw PreconditionError("duplicate_coefficient_blocks needs a multigeometric series");
    const SigmaSet sigma = sigma_set(g->coeffs);
    std::vector<IndexBlock> out;
    for (std::size_t v = 0; v < sigma.size(); ++v) {
        if (sigma.multiplicity[v] < 2) continue;
        auto reps = sigma.representations(sigma.values[v]);
        std::sort(reps.begin(), reps.end());
        const std::uint32_t a = reps[0] & ~reps[1], b = reps[1] & ~reps[0];
        const std::size_t m = g->coeffs.size();
        for (std::size_t n = 1; n <= levels; ++n) {
            IndexBlock blk;
            const std::size_t offset = g->prefix.size() + (n - 1) * m;
            for (std::size_t i = 0; i < m; ++i) {
                if (a >> i & 1U) blk.i0.push_back(offset + i + 1);
                if (b >> i & 1U) blk.i1.push_back(offset + i + 1);
            }
            out.push_back(std::move(blk));
        }
        break;
    }
    return out;
}

}  // namespace achset
