#include "achset/rational.hpp"

#include <cctype>
#include <ostream>

namespace achset {

namespace {

bool parse_integer(std::string_view s, BigInt& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    }
    std::string digits(s.substr(i));
    out.set_str(digits, 10);
    if (s[0] == '-') out = -out;
    return true;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    BigInt num, den = 1;
    if (slash == std::string_view::npos) {
        if (!parse_integer(text, num)) {
            throw PreconditionError("not a rational: '" + std::string(text) + "'");
        }
    } else {
        if (!parse_integer(text.substr(0, slash), num) ||
            !parse_integer(text.substr(slash + 1), den)) {
            throw PreconditionError("not a rational: '" + std::string(text) + "'");
        }
    }
    return Rational(num, den);
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.sign() == 0) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational pow(const Rational& base, long exp) {
    if (exp < 0) return pow(Rational(1) / base, -exp);
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exp));
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exp));
    return Rational(num, den);
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

bool at_least_golden(const Rational& q) { return q * q + q >= Rational(1); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::size_t RationalHash::operator()(const Rational& r) const {
    const mpq_class& v = r.raw();
    const std::size_t h1 = static_cast<std::size_t>(mpz_getlimbn(v.get_num_mpz_t(), 0)) +
                           static_cast<std::size_t>(mpz_size(v.get_num_mpz_t())) * 31 +
                           static_cast<std::size_t>(sgn(v) + 1);
    const std::size_t h2 = static_cast<std::size_t>(mpz_getlimbn(v.get_den_mpz_t(), 0));
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

}  // namespace achset
