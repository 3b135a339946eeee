#include "achset/series.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace achset {

namespace {

void require_positive(const std::vector<Rational>& v, const char* what) {
    for (const auto& x : v) {
        if (x.sign() <= 0) throw PreconditionError(std::string(what) + " must be positive, got " + x.str());
    }
}

std::vector<Rational> sorted_desc(std::vector<Rational> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

template <class... F>
struct Overloaded : F... {
    using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

std::vector<Rational> multigeometric_terms(const MultigeometricSeries& g, std::size_t count) {
    if (count == 0) return {};
    const auto coeffs = sorted_desc(g.coeffs);
    const Rational& c1 = coeffs.front();
    std::vector<Rational> pool = g.prefix;
    Rational qn(1);
    for (std::size_t level = 1;; ++level) {
        qn *= g.ratio;
        for (const auto& c : coeffs) pool.push_back(c * qn);
        // every term of a deeper level is <= c1 q^{level+1}
        const Rational bound = c1 * qn * g.ratio;
        if (pool.size() < count) continue;
        std::vector<Rational> sorted = sorted_desc(pool);
        if (sorted[count - 1] >= bound) {
            sorted.resize(count);
            return sorted;
        }
    }
}

std::vector<Rational> semifast_listed(const SemiFastSeries& s) {
    std::vector<Rational> out;
    for (std::size_t k = 0; k < s.alphas.size(); ++k) {
        out.insert(out.end(), s.counts[k], s.alphas[k]);
    }
    return sorted_desc(std::move(out));
}

std::string join(const std::vector<Rational>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s;
}

}  // namespace

SeriesSpec SeriesSpec::finite(std::vector<Rational> terms, Rational tail) {
    require_positive(terms, "terms");
    if (tail.sign() < 0) throw PreconditionError("tail sum must be >= 0");
    return SeriesSpec(FiniteSeries{std::move(terms), std::move(tail)});
}

SeriesSpec SeriesSpec::multigeometric(std::vector<Rational> coeffs, Rational ratio,
                                      std::vector<Rational> prefix) {
    if (coeffs.empty()) throw PreconditionError("multigeometric series needs coefficients");
    require_positive(coeffs, "coefficients");
    require_positive(prefix, "prefix terms");
    if (ratio <= Rational(0) || ratio >= Rational(1)) {
        throw DomainError("ratio must lie in (0,1), got " + ratio.str());
    }
    return SeriesSpec(MultigeometricSeries{std::move(prefix), std::move(coeffs), std::move(ratio)});
}

SeriesSpec SeriesSpec::geometric(Rational ratio) { return multigeometric({Rational(1)}, std::move(ratio)); }

SeriesSpec SeriesSpec::semifast(std::vector<Rational> alphas, std::vector<std::uint64_t> counts,
                                Rational tail) {
    if (alphas.size() != counts.size()) throw PreconditionError("alphas and counts differ in length");
    require_positive(alphas, "alphas");
    for (std::size_t k = 1; k < alphas.size(); ++k) {
        if (!(alphas[k] < alphas[k - 1])) throw PreconditionError("semi-fast alphas must strictly decrease");
    }
    for (auto n : counts) {
        if (n == 0) throw PreconditionError("semi-fast counts must be positive");
    }
    if (tail.sign() < 0) throw PreconditionError("tail sum must be >= 0");
    return SeriesSpec(SemiFastSeries{std::move(alphas), std::move(counts), std::move(tail)});
}

SeriesSpec SeriesSpec::gn_family(unsigned r) {
    if (r == 0) throw PreconditionError("family parameter r must be >= 1");
    std::vector<Rational> coeffs;
    for (unsigned e = r; e >= 2; --e) coeffs.emplace_back(BigInt(1) << e);
    coeffs.emplace_back(3);
    coeffs.emplace_back(2);
    return multigeometric(std::move(coeffs), Rational(BigInt(1), BigInt(1) << (r + 1)));
}

SeriesKind SeriesSpec::kind() const {
    return std::visit(Overloaded{[](const FiniteSeries&) { return SeriesKind::Finite; },
                                 [](const MultigeometricSeries&) { return SeriesKind::Multigeometric; },
                                 [](const SemiFastSeries&) { return SeriesKind::SemiFast; }},
                      data_);
}

std::optional<std::size_t> SeriesSpec::listed_length() const {
    return std::visit(
        Overloaded{[](const FiniteSeries& f) -> std::optional<std::size_t> { return f.terms.size(); },
                   [](const MultigeometricSeries&) -> std::optional<std::size_t> { return std::nullopt; },
                   [](const SemiFastSeries& s) -> std::optional<std::size_t> {
                       std::size_t n = 0;
                       for (auto c : s.counts) n += c;
                       return n;
                   }},
        data_);
}

bool SeriesSpec::has_opaque_tail() const {
    if (const auto* f = as_finite()) return f->tail.sign() > 0;
    if (const auto* s = as_semifast()) return s->tail.sign() > 0;
    return false;
}

Rational total(const SeriesSpec& s) {
    if (const auto* f = s.as_finite()) {
        Rational t = f->tail;
        for (const auto& x : f->terms) t += x;
        return t;
    }
    if (const auto* sf = s.as_semifast()) {
        Rational t = sf->tail;
        for (std::size_t k = 0; k < sf->alphas.size(); ++k) t += sf->alphas[k] * Rational(static_cast<long>(sf->counts[k]));
        return t;
    }
    const auto& g = *s.as_multigeometric();
    Rational t;
    for (const auto& x : g.prefix) t += x;
    Rational c;
    for (const auto& x : g.coeffs) c += x;
    return t + c * g.ratio / (Rational(1) - g.ratio);
}

std::vector<Rational> terms(const SeriesSpec& s, std::size_t count) {
    if (const auto* g = s.as_multigeometric()) return multigeometric_terms(*g, count);
    const auto len = *s.listed_length();
    if (count > len) {
        throw PreconditionError("requested " + std::to_string(count) + " terms but only " +
                                std::to_string(len) + " are listed");
    }
    std::vector<Rational> all =
        s.as_finite() ? sorted_desc(s.as_finite()->terms) : semifast_listed(*s.as_semifast());
    all.resize(count);
    return all;
}

Rational term(const SeriesSpec& s, std::size_t n) {
    if (n == 0) throw PreconditionError("term indices are 1-based");
    return terms(s, n).back();
}

Rational remainder(const SeriesSpec& s, std::size_t k) {
    Rational r = total(s);
    for (const auto& x : terms(s, k)) r -= x;
    return r;
}

SeriesSpec normalize(const SeriesSpec& s) {
    if (const auto* f = s.as_finite()) return SeriesSpec::finite(sorted_desc(f->terms), f->tail);
    if (const auto* g = s.as_multigeometric()) {
        return SeriesSpec::multigeometric(sorted_desc(g->coeffs), g->ratio, sorted_desc(g->prefix));
    }
    const auto& sf = *s.as_semifast();
    std::vector<std::size_t> idx(sf.alphas.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return sf.alphas[a] > sf.alphas[b]; });
    std::vector<Rational> alphas;
    std::vector<std::uint64_t> counts;
    for (auto i : idx) {
        if (!alphas.empty() && alphas.back() == sf.alphas[i]) {
            counts.back() += sf.counts[i];
        } else {
            alphas.push_back(sf.alphas[i]);
            counts.push_back(sf.counts[i]);
        }
    }
    return SeriesSpec::semifast(std::move(alphas), std::move(counts), sf.tail);
}

std::size_t periodic_start(const MultigeometricSeries& g) {
    Rational rho = *std::min_element(g.coeffs.begin(), g.coeffs.end());
    if (!g.prefix.empty()) {
        rho = min(rho, *std::min_element(g.prefix.begin(), g.prefix.end()));
    }
    std::size_t above = 0;
    for (const auto& p : g.prefix) above += p >= rho ? 1 : 0;
    for (const auto& c : g.coeffs) {
        Rational t = c * g.ratio;
        while (t >= rho) {
            ++above;
            t *= g.ratio;
        }
    }
    return above + 1;
}

std::string describe(const SeriesSpec& s) {
    std::ostringstream os;
    if (const auto* f = s.as_finite()) {
        os << "Finite(" << join(f->terms) << "; tail=" << f->tail << ")";
    } else if (const auto* g = s.as_multigeometric()) {
        os << "E(";
        if (!g->prefix.empty()) os << "prefix " << join(g->prefix) << " | ";
        os << join(g->coeffs) << "; " << g->ratio << ")";
    } else {
        const auto& sf = *s.as_semifast();
        os << "SemiFast(";
        for (std::size_t k = 0; k < sf.alphas.size(); ++k) {
            if (k) os << ", ";
            os << sf.alphas[k] << "x" << sf.counts[k];
        }
        os << "; tail=" << sf.tail << ")";
    }
    return os.str();
}

Rational SigmaSet::min_gap() const {
    if (values.size() < 2) return Rational(0);
    Rational best = values[1] - values[0];
    for (std::size_t i = 2; i < values.size(); ++i) best = min(best, values[i] - values[i - 1]);
    return best;
}

std::uint64_t SigmaSet::multiplicity_of(const Rational& v) const {
    auto it = std::lower_bound(values.begin(), values.end(), v);
    if (it == values.end() || *it != v) return 0;
    return multiplicity[static_cast<std::size_t>(it - values.begin())];
}

bool SigmaSet::one_to_one() const {
    return std::all_of(multiplicity.begin(), multiplicity.end(), [](auto m) { return m == 1; });
}

std::vector<std::uint32_t> SigmaSet::representations(const Rational& v) const {
    std::vector<std::uint32_t> out;
    const std::uint32_t m = static_cast<std::uint32_t>(source_coeffs.size());
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        Rational sum;
        for (std::uint32_t i = 0; i < m; ++i) {
            if (mask & (1u << i)) sum += source_coeffs[i];
        }
        if (sum == v) out.push_back(mask);
    }
    return out;
}

SigmaSet sigma_set(const std::vector<Rational>& coeffs) {
    if (coeffs.empty()) throw PreconditionError("sigma set needs at least one coefficient");
    if (coeffs.size() > kSigmaCap) {
        throw ResourceError("sigma set limited to " + std::to_string(kSigmaCap) + " coefficients", 0);
    }
    require_positive(coeffs, "coefficients");
    SigmaSet out;
    out.source_coeffs = coeffs;
    out.values = {Rational(0)};
    out.multiplicity = {1};
    for (const auto& c : coeffs) {
        // merge S and S + c, both sorted
        std::vector<Rational> vals;
        std::vector<std::uint64_t> mult;
        vals.reserve(out.values.size() * 2);
        mult.reserve(out.values.size() * 2);
        std::size_t i = 0, j = 0;
        const std::size_t n = out.values.size();
        auto push = [&](const Rational& v, std::uint64_t m) {
            if (!vals.empty() && vals.back() == v) {
                mult.back() += m;
            } else {
                vals.push_back(v);
                mult.push_back(m);
            }
        };
        while (i < n || j < n) {
            if (j == n || (i < n && out.values[i] <= out.values[j] + c)) {
                push(out.values[i], out.multiplicity[i]);
                ++i;
            } else {
                push(out.values[j] + c, out.multiplicity[j]);
                ++j;
            }
        }
        out.values = std::move(vals);
        out.multiplicity = std::move(mult);
    }
    return out;
}

}  // namespace achset
