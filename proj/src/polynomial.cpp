#include "achset/polynomial.hpp"

#include <algorithm>

namespace achset {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().sign() == 0) coeffs_.pop_back();
}

const Rational& Polynomial::leading() const {
    if (coeffs_.empty()) throw DomainError("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(Polynomial a, const Rational& c) {
    for (auto& x : a.coeffs_) x *= c;
    a.trim();
    return a;
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (long k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (c.sign() == 0) continue;
        if (!s.empty()) s += c.sign() < 0 ? " - " : " + ";
        else if (c.sign() < 0) s += "-";
        const Rational a = abs(c);
        if (k == 0 || a != Rational(1)) s += a.str();
        if (k >= 1) {
            if (a != Rational(1)) s += "*";
            s += var;
        }
        if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> rem = num.coeffs();
    const long dd = den.degree();
    if (num.degree() < dd) return {Polynomial{}, num};
    std::vector<Rational> quot(static_cast<std::size_t>(num.degree() - dd + 1));
    for (long k = num.degree(); k >= dd; --k) {
        const Rational c = rem[static_cast<std::size_t>(k)] / den.leading();
        quot[static_cast<std::size_t>(k - dd)] = c;
        if (c.sign() == 0) continue;
        for (long i = 0; i <= dd; ++i) {
            rem[static_cast<std::size_t>(k - dd + i)] -= c * den.coeffs()[static_cast<std::size_t>(i)];
        }
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial replacement_polynomial(const Rational& sigma_lo, const Rational& sigma_hi,
                                  const Rational& sigma_max, unsigned p) {
    std::vector<Rational> c(p + 1, sigma_max);
    c[0] = sigma_lo - sigma_hi;
    return Polynomial(std::move(c));
}

bool verify_replacement_identity(const Rational& sigma_lo, const Rational& sigma_hi,
                                 const Rational& sigma_max, unsigned p) {
    if (!(sigma_hi > sigma_lo) || sigma_lo.sign() < 0) {
        throw PreconditionError("replacement identity needs sigma_hi > sigma_lo >= 0");
    }
    if (sigma_max.sign() <= 0) throw PreconditionError("replacement identity needs sigma_max > 0");
    if (p == 0) throw PreconditionError("replacement identity needs p >= 1");

    const Polynomial defining = replacement_polynomial(sigma_lo, sigma_hi, sigma_max, p);
    for (std::size_t n = 0; n < 3; ++n) {
        const std::size_t m = n * (p + 1) + 1;
        Polynomial replaced = Polynomial::monomial(sigma_lo, m);
        for (std::size_t i = 1; i <= p; ++i) replaced += Polynomial::monomial(sigma_max, m + i);
        const Polynomial diff = Polynomial::monomial(sigma_hi, m) - replaced;
        if (!divmod(diff, defining).second.is_zero()) return false;
    }
    return true;
}

}  // namespace achset
