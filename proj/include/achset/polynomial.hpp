#pragma once

#include <string>
#include <utility>
#include <vector>

#include "achset/rational.hpp"

namespace achset {

/// Dense univariate polynomial over Q; coefficient index = degree.
/// The zero polynomial has no coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);

    /// c * x^k
    static Polynomial monomial(const Rational& c, std::size_t k);

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const Rational& leading() const;

    Rational operator()(const Rational& x) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    std::string str(const std::string& var = "q") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Euclidean division: returns (quotient, remainder). Throws DomainError on a zero divisor.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den);

/// sigma_max * (q + q^2 + ... + q^p) - (sigma_hi - sigma_lo): its root in (0,1) is the
/// ratio at which one step of size sigma_hi - sigma_lo can be traded for p top digits.
Polynomial replacement_polynomial(const Rational& sigma_lo, const Rational& sigma_hi,
                                  const Rational& sigma_max, unsigned p);

/// Checks, symbolically modulo replacement_polynomial, that
///   sigma_hi q^m == sigma_lo q^m + sigma_max (q^{m+1} + ... + q^{m+p})
/// for the exponents m = n(p+1) + 1 of the first few replaced summands.
bool verify_replacement_identity(const Rational& sigma_lo, const Rational& sigma_hi,
                                 const Rational& sigma_max, unsigned p);

}  // namespace achset
