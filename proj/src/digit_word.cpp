#include "achset/digit_word.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace achset {

namespace {

std::vector<Digit> normalize_alphabet(std::vector<Digit> alphabet) {
    alphabet.push_back(0);
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    return alphabet;
}

std::vector<Digit> parse_digits(std::string_view s) {
    std::vector<Digit> out;
    const bool separated = s.find_first_of(", ") != std::string_view::npos;
    if (!separated) {
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw PreconditionError("bad digit '" + std::string(1, c) + "' in digit word");
            }
            out.push_back(c - '0');
        }
        return out;
    }
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        out.push_back(std::stoi(token));
        token.clear();
    };
    for (char c : s) {
        if (c == ',' || c == ' ') {
            flush();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            token.push_back(c);
        } else {
            throw PreconditionError("bad digit '" + std::string(1, c) + "' in digit word");
        }
    }
    flush();
    return out;
}

}  // namespace

DigitWord::DigitWord(std::vector<Digit> preamble, std::vector<Digit> cycle,
                     std::vector<Digit> alphabet)
    : preamble_(std::move(preamble)), cycle_(std::move(cycle)),
      alphabet_(normalize_alphabet(std::move(alphabet))) {
    if (cycle_.empty()) throw PreconditionError("digit word cycle must be nonempty");
    auto check = [&](Digit d) {
        if (!std::binary_search(alphabet_.begin(), alphabet_.end(), d)) {
            throw PreconditionError("digit " + std::to_string(d) + " not in alphabet");
        }
    };
    std::for_each(preamble_.begin(), preamble_.end(), check);
    std::for_each(cycle_.begin(), cycle_.end(), check);
    canonicalize();
}

DigitWord::DigitWord(std::vector<Digit> preamble, std::vector<Digit> cycle)
    : DigitWord(preamble, cycle, [&] {
          std::vector<Digit> a(preamble);
          a.insert(a.end(), cycle.begin(), cycle.end());
          return a;
      }()) {}

void DigitWord::canonicalize() {
    // primitive root of the cycle
    const std::size_t n = cycle_.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = cycle_[i] == cycle_[i - p];
        if (periodic) {
            cycle_.resize(p);
            break;
        }
    }
    // absorb trailing preamble digits into a rotated cycle
    while (!preamble_.empty() && preamble_.back() == cycle_.back()) {
        preamble_.pop_back();
        std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
    }
}

Digit DigitWord::at(std::size_t n) const {
    if (n == 0) throw PreconditionError("digit positions are 1-based");
    if (n <= preamble_.size()) return preamble_[n - 1];
    return cycle_[(n - 1 - preamble_.size()) % cycle_.size()];
}

DigitWord::Unrolled DigitWord::unrolled(std::size_t len, std::size_t period_multiple) const {
    Unrolled u;
    const std::size_t pre_len = std::max(len, preamble_.size());
    for (std::size_t i = 1; i <= pre_len; ++i) u.preamble.push_back(at(i));
    const std::size_t cyc_len = std::lcm(cycle_.size(), std::max<std::size_t>(period_multiple, 1));
    for (std::size_t i = 1; i <= cyc_len; ++i) u.cycle.push_back(at(pre_len + i));
    return u;
}

std::string DigitWord::str() const {
    const bool wide = std::any_of(alphabet_.begin(), alphabet_.end(), [](Digit d) { return d > 9; });
    auto join = [&](const std::vector<Digit>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (wide && i > 0) s += ',';
            s += std::to_string(v[i]);
        }
        return s;
    };
    return join(preamble_) + "|" + join(cycle_);
}

DigitWord DigitWord::parse(std::string_view text, std::vector<Digit> alphabet) {
    const auto bar = text.find('|');
    if (bar == std::string_view::npos) {
        throw PreconditionError("digit word needs 'preamble|cycle' form: '" + std::string(text) + "'");
    }
    auto pre = parse_digits(text.substr(0, bar));
    auto cyc = parse_digits(text.substr(bar + 1));
    if (alphabet.empty()) return DigitWord(std::move(pre), std::move(cyc));
    return DigitWord(std::move(pre), std::move(cyc), std::move(alphabet));
}

Rational eval_digit_word(const DigitWord& w, const Rational& q) {
    if (q <= Rational(0) || q >= Rational(1)) {
        throw DomainError("ratio must lie in (0,1), got " + q.str());
    }
    Rational sum;
    Rational qn(1);
    for (Digit d : w.preamble()) {
        qn *= q;
        sum += Rational(d) * qn;
    }
    Rational cyc;
    Rational qi(1);
    for (Digit d : w.cycle()) {
        qi *= q;
        cyc += Rational(d) * qi;
    }
    // qi == q^{|cycle|}, qn == q^{|preamble|}
    return sum + qn * cyc / (Rational(1) - qi);
}

bool digit_word_equal(const DigitWord& a, const DigitWord& b) {
    if (a.alphabet() != b.alphabet()) throw PreconditionError("digit words over different alphabets");
    const std::size_t horizon = std::max(a.preamble().size(), b.preamble().size()) +
                                std::lcm(a.cycle().size(), b.cycle().size());
    for (std::size_t n = 1; n <= horizon; ++n) {
        if (a.at(n) != b.at(n)) return false;
    }
    return true;
}

}  // namespace achset
