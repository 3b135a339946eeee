#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "achset/rational.hpp"

namespace achset {

/// Explicit terms followed by an opaque remainder of total `tail`
/// (tail == 0 for a genuinely finite series).
struct FiniteSeries {
    std::vector<Rational> terms;
    Rational tail;
    friend bool operator==(const FiniteSeries&, const FiniteSeries&) = default;
};

/// prefix terms, then c_i q^n for n = 1, 2, ... and i = 1..m.
struct MultigeometricSeries {
    std::vector<Rational> prefix;
    std::vector<Rational> coeffs;
    Rational ratio;
    friend bool operator==(const MultigeometricSeries&, const MultigeometricSeries&) = default;
};

/// counts[k] copies of alphas[k], then an opaque remainder of total `tail`.
struct SemiFastSeries {
    std::vector<Rational> alphas;
    std::vector<std::uint64_t> counts;
    Rational tail;
    friend bool operator==(const SemiFastSeries&, const SemiFastSeries&) = default;
};

enum class SeriesKind { Finite, Multigeometric, SemiFast };

/// A convergent series of positive rational terms.
///
/// Construction validates positivity and ranges; it does not reorder. All
/// term/remainder queries refer to the normalized (nonincreasing) sequence.
class SeriesSpec {
public:
    static SeriesSpec finite(std::vector<Rational> terms, Rational tail = Rational(0));
    static SeriesSpec multigeometric(std::vector<Rational> coeffs, Rational ratio,
                                     std::vector<Rational> prefix = {});
    static SeriesSpec geometric(Rational ratio);
    static SeriesSpec semifast(std::vector<Rational> alphas, std::vector<std::uint64_t> counts,
                               Rational tail = Rational(0));
    /// (2^r, 2^{r-1}, ..., 4, 3, 2; 1/2^{r+1}); r = 1 is E(3,2;1/4).
    static SeriesSpec gn_family(unsigned r);

    SeriesKind kind() const;
    const FiniteSeries* as_finite() const { return std::get_if<FiniteSeries>(&data_); }
    const MultigeometricSeries* as_multigeometric() const {
        return std::get_if<MultigeometricSeries>(&data_);
    }
    const SemiFastSeries* as_semifast() const { return std::get_if<SemiFastSeries>(&data_); }

    /// Number of explicitly known terms; nullopt for infinite periodic series.
    std::optional<std::size_t> listed_length() const;
    /// True when a positive remainder is known only by its total.
    bool has_opaque_tail() const;

    friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;

private:
    using Data = std::variant<FiniteSeries, MultigeometricSeries, SemiFastSeries>;
    explicit SeriesSpec(Data d) : data_(std::move(d)) {}
    Data data_;
};

/// Sum of all terms.
Rational total(const SeriesSpec& s);

/// n-th term (1-based) of the normalized sequence. Throws PreconditionError
/// when n exceeds the listed length of a finite or semi-fast spec.
Rational term(const SeriesSpec& s, std::size_t n);

/// First `count` terms of the normalized sequence.
std::vector<Rational> terms(const SeriesSpec& s, std::size_t count);

/// r_k = sum_{n > k} x_n, exact. For k beyond the listed terms of a spec with
/// an opaque tail, throws PreconditionError.
Rational remainder(const SeriesSpec& s, std::size_t k);

/// Sorted, merged representation; the term multiset and E(x_n) are unchanged.
SeriesSpec normalize(const SeriesSpec& s);

/// For multigeometric series: the first position K0 such that for every k >= K0,
/// x_{k+m} = q x_k and r_{k+m} = q r_k. Sign patterns of x_k - r_k (and
/// x_k - r_{k+1}) are therefore periodic with period m from K0 on.
std::size_t periodic_start(const MultigeometricSeries& g);

std::string describe(const SeriesSpec& s);

/// Distinct subset sums of a coefficient list, with the number of 0-1 tuples
/// realising each.
struct SigmaSet {
    std::vector<Rational> values;          // strictly increasing
    std::vector<std::uint64_t> multiplicity;  // parallel to values
    std::vector<Rational> source_coeffs;

    std::size_t size() const { return values.size(); }
    const Rational& max() const { return values.back(); }
    /// Smallest gap between consecutive values (0 for a single value).
    Rational min_gap() const;
    /// 0 when v is not a subset sum.
    std::uint64_t multiplicity_of(const Rational& v) const;
    bool one_to_one() const;
    /// Bitmasks over source_coeffs (bit i = coefficient i) whose sum equals v.
    std::vector<std::uint32_t> representations(const Rational& v) const;
};

inline constexpr std::size_t kSigmaCap = 24;

/// Full subset-sum enumeration. Throws ResourceError for more than 24 coefficients.
SigmaSet sigma_set(const std::vector<Rational>& coeffs);

}  // namespace achset
