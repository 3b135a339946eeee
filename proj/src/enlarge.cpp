#include "achset/enlarge.hpp"

#include <algorithm>
#include <functional>

namespace achset {

namespace {

void check_gap_list(const std::vector<Gap>& gaps) {
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (!(gaps[i].a < gaps[i].b)) throw PreconditionError("gap with a >= b");
        if (i > 0 && !(gaps[i].b < gaps[i - 1].b)) throw PreconditionError("gap right endpoints must strictly decrease");
    }
}

// Position (1-based) of the last occurrence of `value` among the first `limit` terms.
std::size_t last_position(const SeriesSpec& s, const Rational& value, std::size_t limit) {
    const auto xs = terms(s, limit);
    for (std::size_t k = xs.size(); k > 0; --k) {
        if (xs[k - 1] == value) return k;
    }
    throw PreconditionError("duplicated term " + value.str() + " not found in the new series");
}

// The gap of the depth-`depth` cover whose right endpoint is b.
std::optional<Gap> gap_ending_at(const GapList& gl, const Rational& b) {
    for (const auto& g : gl.gaps) {
        if (g.b == b) return g;
    }
    return std::nullopt;
}

// `limit` bounds the positions searched for the duplicated terms.
std::vector<Gap> redetect(const SeriesSpec& s, const std::vector<Rational>& ends, std::size_t limit,
                          std::size_t& depth) {
    std::size_t deepest = 0;
    for (const auto& b : ends) deepest = std::max(deepest, last_position(s, b, limit));
    depth = deepest;
    const GapList gl = gaps(s, depth);
    std::vector<Gap> out;
    for (const auto& b : ends) {
        auto g = gap_ending_at(gl, b);
        if (!g) throw PreconditionError("gap ending at " + b.str() + " is not retained");
        out.push_back(*g);
    }
    return out;
}

EnlargeResult enlarge_listed(const SeriesSpec& s, const std::vector<Gap>& gaps, std::size_t count) {
    std::vector<std::size_t> chosen{0};
    while (chosen.size() < count) {
        const Gap& last = gaps[chosen.back()];
        std::optional<std::size_t> next;
        for (std::size_t j = chosen.back() + 1; j < gaps.size() && !next; ++j) {
            Rational later(0);
            for (std::size_t n = j; n < gaps.size(); ++n) later += gaps[n].b;
            if (later < last.width()) next = j;
        }
        if (!next) {
            throw ResourceError("only " + std::to_string(chosen.size()) + " gaps selectable from the listed " +
                                    std::to_string(gaps.size()),
                                chosen.size());
        }
        chosen.push_back(*next);
    }

    std::vector<Rational> xs = terms(s, *s.listed_length());
    Rational tail(0);
    if (const auto* f = s.as_finite()) tail = f->tail;
    if (const auto* sf = s.as_semifast()) tail = sf->tail;
    EnlargeResult out{s, {}, {}, std::nullopt, 0};
    for (std::size_t idx : chosen) {
        xs.push_back(gaps[idx].b);
        out.duplicated.push_back(gaps[idx].b);
    }
    std::sort(xs.begin(), xs.end(), std::greater<>());
    out.spec = SeriesSpec::finite(std::move(xs), tail);
    out.selected = redetect(out.spec, out.duplicated, *out.spec.listed_length(), out.verified_depth);
    return out;
}

EnlargeResult enlarge_periodic(const MultigeometricSeries& g, const Gap& gap, std::size_t count) {
    const std::size_t m = g.coeffs.size();
    const Rational& q = g.ratio;
    // locate b = c_i q^n in the periodic part
    std::optional<std::pair<std::size_t, long>> where;
    for (long n = 1; n <= 4096 && !where; ++n) {
        const Rational level = pow(q, n);
        bool below = true;
        for (std::size_t i = 0; i < m && !where; ++i) {
            const Rational t = g.coeffs[i] * level;
            if (t == gap.b) where = std::make_pair(i, n);
            below = below && t < gap.b;
        }
        if (below) break;
    }
    if (!where) throw PreconditionError("gap right endpoint " + gap.b.str() + " is not a term of the periodic part");
    const auto [istar, nb] = *where;

    long p = 1;
    for (;; ++p) {
        const Rational qp = pow(q, p);
        if (gap.b * qp / (Rational(1) - qp) < gap.width()) break;
        if (p >= 256) throw ResourceError("no duplication period below 256 fits the gap", 256);
    }
    const Rational Q = pow(q, p);

    std::vector<Rational> prefix = g.prefix;
    for (long n = 1; n < nb; ++n) {
        for (const auto& c : g.coeffs) prefix.push_back(c * pow(q, n));
    }
    std::vector<Rational> coeffs;
    for (long l = 1; l <= p; ++l) {
        for (const auto& c : g.coeffs) coeffs.push_back(c * pow(q, nb - 1 + l - p));
    }
    coeffs.push_back(g.coeffs[istar] * pow(q, nb - p));
    std::sort(coeffs.begin(), coeffs.end(), std::greater<>());

    EnlargeResult out{SeriesSpec::multigeometric(std::move(coeffs), Q, std::move(prefix)), {}, {}, std::nullopt, 0};
    for (std::size_t k = 0; k < count; ++k) out.duplicated.push_back(gap.b * pow(Q, static_cast<long>(k)));
    out.cpoint = gap.b / (Rational(1) - Q);
    const auto* ng = out.spec.as_multigeometric();
    const std::size_t limit = ng->prefix.size() + ng->coeffs.size() * (count + 1);
    out.selected = redetect(out.spec, out.duplicated, limit, out.verified_depth);
    return out;
}

}  // namespace

EnlargeResult enlarge_with_cpoints(const SeriesSpec& s, const std::vector<Gap>& gaps, std::size_t count) {
    check_gap_list(gaps);
    if (gaps.empty() || count == 0) return EnlargeResult{s, {}, {}, std::nullopt, 0};
    if (const auto* g = s.as_multigeometric()) return enlarge_periodic(*g, gaps.front(), count);
    return enlarge_listed(s, gaps, count);
}

}  // namespace achset
