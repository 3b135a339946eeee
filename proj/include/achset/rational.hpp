#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace achset {

using BigInt = mpz_class;

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a caller violates a documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration would exceed its resource cap.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::size_t reached)
        : std::runtime_error(what), reached_(reached) {}
    /// Depth (or size) successfully processed before the cap was hit.
    std::size_t reached() const noexcept { return reached_; }

private:
    std::size_t reached_;
};

/// Exact rational number in canonical form (positive denominator, reduced).
///
/// Thin value wrapper around GMP's mpq_class; every operation leaves the
/// value canonical.
class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : v_(static_cast<long>(n)) {}  // NOLINT
    Rational(const BigInt& n) : v_(n) {}  // NOLINT
    Rational(const BigInt& num, const BigInt& den);
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    /// Parses "p", "-p" or "p/q" (q > 0 after sign normalisation).
    static Rational parse(std::string_view text);

    BigInt numerator() const { return v_.get_num(); }
    BigInt denominator() const { return v_.get_den(); }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    /// "p/q" in lowest terms, or "p" when the denominator is one.
    std::string str() const;
    double approx() const { return v_.get_d(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

/// base^exp for exp >= 0; negative exponents invert (base must be nonzero).
Rational pow(const Rational& base, long exp);
Rational abs(const Rational& x);
const Rational& min(const Rational& a, const Rational& b);
const Rational& max(const Rational& a, const Rational& b);

/// Golden-ratio comparison q >= (sqrt5 - 1)/2 without materialising the irrational.
bool at_least_golden(const Rational& q);

std::ostream& operator<<(std::ostream& os, const Rational& r);

struct RationalHash {
    std::size_t operator()(const Rational& r) const;
};

}  // namespace achset
