#include "achset/classifier.hpp"

#include <algorithm>
#include <functional>

namespace achset {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::IntervalUnion: return "IntervalUnion";
        case Verdict::CantorSet: return "CantorSet";
        case Verdict::Cantorval: return "Cantorval";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

std::string to_string(Certificate::Kind k) {
    switch (k) {
        case Certificate::Kind::KakeyaSlowTail: return "KakeyaSlowTail";
        case Certificate::Kind::KakeyaQuickAll: return "KakeyaQuickAll";
        case Certificate::Kind::SmallRatio: return "SmallRatio";
        case Certificate::Kind::KnownFamily: return "KnownFamily";
        case Certificate::Kind::MixedPeriodicPlusKnownInterior: return "MixedPeriodicPlusKnownInterior";
    }
    return "?";
}

std::string to_string(MinimalityResult::Kind k) {
    switch (k) {
        case MinimalityResult::Kind::Minimal: return "minimal";
        case MinimalityResult::Kind::NotMinimal: return "notMinimal";
        case MinimalityResult::Kind::KnownFamily: return "knownFamily";
        case MinimalityResult::Kind::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

bool in_closed(const Rational& q, const Rational& lo, const Rational& hi) { return lo <= q && q <= hi; }

// Coefficients sorted descending and divided by a common scale so the smallest
// one equals `smallest`.
std::vector<Rational> rescaled(const MultigeometricSeries& g, const Rational& smallest) {
    auto c = g.coeffs;
    std::sort(c.begin(), c.end(), std::greater<>());
    const Rational scale = c.back() / smallest;
    for (auto& x : c) x /= scale;
    return c;
}

struct PeriodScan {
    std::size_t start = 0;      // K0
    std::size_t last = 0;       // K0 + m - 1
    std::vector<Rational> xs;   // x_1 .. x_{last+1}
    std::vector<Rational> rs;   // r_1 .. r_{last+1}
};

PeriodScan scan_period(const MultigeometricSeries& g) {
    PeriodScan p;
    p.start = periodic_start(g);
    p.last = p.start + g.coeffs.size() - 1;
    const SeriesSpec s = SeriesSpec::multigeometric(g.coeffs, g.ratio, g.prefix);
    p.xs = terms(s, p.last + 1);
    Rational r = total(s);
    for (const auto& x : p.xs) {
        r -= x;
        p.rs.push_back(r);
    }
    return p;
}

CoverEvidence evidence_for(const SeriesSpec& s, std::size_t depth) {
    for (;; --depth) {
        try {
            const Cover c = depth_cover(s, depth);
            CoverEvidence e;
            e.depth = c.depth;
            e.interval_count = c.intervals.size();
            e.gap_count = c.intervals.empty() ? 0 : c.intervals.size() - 1;
            e.longest_interval = c.intervals.front();
            for (const auto& iv : c.intervals) {
                if (iv.length() > e.longest_interval.length()) e.longest_interval = iv;
            }
            return e;
        } catch (const ResourceError&) {
            if (depth == 0) throw;
        }
    }
}

}  // namespace

std::optional<KnownFamily> match_known_family(const MultigeometricSeries& g) {
    const std::size_t m = g.coeffs.size();
    const Rational& q = g.ratio;

    // (2^r, ..., 4, 3, 2; 1/2^{r+1})
    if (m >= 2 && m <= 30) {
        const unsigned r = static_cast<unsigned>(m - 1);
        const auto c = rescaled(g, Rational(2));
        bool match = c[m - 1] == Rational(2) && c[m - 2] == Rational(3);
        for (unsigned e = 2; match && e <= r; ++e) match = c[m - 1 - e] == Rational(BigInt(BigInt(1) << e));
        if (match && q == Rational(BigInt(1), BigInt(BigInt(1) << (r + 1)))) {
            return KnownFamily{r == 1 ? "GN" : "GN-r" + std::to_string(r), "q = 1/2^(r+1), r = " + std::to_string(r),
                               Verdict::Cantorval, true};
        }
    }
    // (3, 2 x n; q) for q in [1/(2n), 2/(2n+5)]
    if (m >= 2) {
        const long n = static_cast<long>(m - 1);
        const auto c = rescaled(g, Rational(2));
        bool match = c[0] == Rational(3);
        for (std::size_t i = 1; match && i < m; ++i) match = c[i] == Rational(2);
        if (match && in_closed(q, Rational(1, 2 * n), Rational(2, 2 * n + 5))) {
            KnownFamily f{"GNJ", "q in [1/" + std::to_string(2 * n) + ", 2/" + std::to_string(2 * n + 5) + "]",
                          Verdict::Cantorval, std::nullopt};
            if (n >= 5 && in_closed(q, Rational(1, 2 * n - 2), Rational(2, 2 * n + 5))) f.minimal = false;
            return f;
        }
    }
    // (7, 6, 5, 4, 3; 2/27)
    if (m == 5 && q == Rational(2, 27)) {
        const auto c = rescaled(g, Rational(3));
        if (c == std::vector<Rational>{7, 6, 5, 4, 3}) {
            return KnownFamily{"Ferens", "q = 2/27", Verdict::Cantorval, std::nullopt};
        }
    }
    return std::nullopt;
}

std::size_t default_depth(const SeriesSpec& s) {
    if (const auto* g = s.as_multigeometric()) {
        const std::size_t m = g->coeffs.size();
        const std::size_t d = m <= 3 ? 12 : (m < 7 ? 15 - m : m + 1);
        return std::min<std::size_t>(d + g->prefix.size(), 24);
    }
    return std::min<std::size_t>(*s.listed_length(), 16);
}

Classification classify(const SeriesSpec& s) { return classify(s, default_depth(s)); }

Classification classify(const SeriesSpec& spec, std::size_t evidence_depth) {
    const SeriesSpec s = normalize(spec);
    Classification out;
    const auto* g = s.as_multigeometric();
    if (!g) {
        if (!s.has_opaque_tail()) {
            // finitely many points: a finite union of degenerate intervals
            out.verdict = Verdict::IntervalUnion;
            out.certificate = Certificate{Certificate::Kind::KakeyaSlowTail, *s.listed_length() + 1, {}, 0, {}, {}};
            return out;
        }
        out.evidence = evidence_for(s, evidence_depth);
        return out;
    }

    const PeriodScan p = scan_period(*g);
    std::vector<bool> slow(p.last + 1);
    for (std::size_t k = 1; k <= p.last; ++k) slow[k] = p.xs[k - 1] <= p.rs[k - 1];

    auto tail_start = [&](bool want) {
        std::size_t K = p.last + 1;
        while (K > 1 && slow[K - 1] == want) --K;
        return K;
    };
    const bool period_slow = std::all_of(slow.begin() + static_cast<long>(p.start), slow.end(), [](bool b) { return b; });
    const bool period_quick = std::none_of(slow.begin() + static_cast<long>(p.start), slow.end(), [](bool b) { return b; });

    if (period_slow) {
        out.verdict = Verdict::IntervalUnion;
        out.certificate = Certificate{Certificate::Kind::KakeyaSlowTail, tail_start(true), g->ratio, 0, {}, {}};
        return out;
    }
    if (period_quick) {
        out.verdict = Verdict::CantorSet;
        out.certificate = Certificate{Certificate::Kind::KakeyaQuickAll, tail_start(false), g->ratio, 0, {}, {}};
        return out;
    }
    if (g->coeffs.size() <= kSigmaCap) {
        const SigmaSet sigma = sigma_set(g->coeffs);
        if (g->ratio * Rational(static_cast<long>(sigma.size())) < Rational(1)) {
            out.verdict = Verdict::CantorSet;
            out.certificate = Certificate{Certificate::Kind::SmallRatio, 0, g->ratio, sigma.size(), {}, {}};
            return out;
        }
    }
    if (auto fam = match_known_family(*g)) {
        out.verdict = fam->verdict;
        out.certificate = Certificate{g->prefix.empty() ? Certificate::Kind::KnownFamily
                                                        : Certificate::Kind::MixedPeriodicPlusKnownInterior,
                                      0, g->ratio, 0, fam->key, fam->parameter_range};
        return out;
    }
    out.evidence = evidence_for(s, evidence_depth);
    return out;
}

std::vector<bool> slow_pattern(const SeriesSpec& s, std::size_t count) {
    const auto xs = terms(s, count);
    std::vector<bool> out;
    Rational r = total(s);
    for (const auto& x : xs) {
        r -= x;
        out.push_back(x <= r);
    }
    return out;
}

LockerResult is_locker(const SeriesSpec& spec, std::size_t K) {
    const SeriesSpec s = normalize(spec);
    LockerResult out;
    std::size_t upto = K;
    std::size_t available = 0;  // terms we may request
    if (const auto* g = s.as_multigeometric()) {
        const std::size_t last = periodic_start(*g) + g->coeffs.size() - 1;
        upto = std::max(K, last);
        available = upto + 1;
        out.conclusive = true;
    } else {
        const std::size_t n = *s.listed_length();
        available = n;
        upto = std::min(K, n);
        out.conclusive = !s.has_opaque_tail() && K >= n;
    }
    const auto xs = terms(s, std::min(upto + 1, available));
    Rational r_next = total(s);
    if (!xs.empty()) r_next -= xs[0];
    for (std::size_t k = 1; k <= upto; ++k) {
        // r_{k+1} = r_k - x_{k+1}; beyond the listed terms of a finite series it is 0
        if (k < xs.size()) {
            r_next -= xs[k];
        } else if (s.has_opaque_tail()) {
            out.conclusive = false;
            break;
        } else {
            r_next = Rational(0);
        }
        out.checked_up_to = k;
        if (xs[k - 1] > r_next) {
            out.fails_at = k;
            out.holds = false;
            out.conclusive = true;
            return out;
        }
    }
    out.holds = true;
    return out;
}

MinimalityResult is_minimal(const SeriesSpec& spec, std::size_t K) {
    const SeriesSpec s = normalize(spec);
    MinimalityResult out;
    const auto* g = s.as_multigeometric();

    std::size_t upto = K;
    std::size_t period_start = 0, period_last = 0;
    if (g) {
        period_start = periodic_start(*g);
        period_last = period_start + g->coeffs.size() - 1;
        upto = std::max(K, period_last);
    } else {
        upto = std::min(K, *s.listed_length() > 0 ? *s.listed_length() - 1 : 0);
    }
    const auto xs = terms(s, upto + 1);
    std::vector<bool> strict(upto + 1);
    Rational r_next = total(s);
    if (!xs.empty()) r_next -= xs[0];
    for (std::size_t k = 1; k <= upto; ++k) {
        r_next -= xs[k];
        strict[k] = xs[k - 1] < r_next;
        if (strict[k] && k <= std::max(K, period_last)) out.witness_indices.push_back(k);
    }

    const Classification c = classify(s);
    if (c.verdict == Verdict::IntervalUnion) {
        if (!g) {
            out.kind = MinimalityResult::Kind::Minimal;
            out.note = "finite series: no infinite subsequence to remove";
            out.witness_indices.clear();
            return out;
        }
        bool recurring = false;
        for (std::size_t k = period_start; k <= period_last; ++k) recurring = recurring || strict[k];
        out.kind = recurring ? MinimalityResult::Kind::NotMinimal : MinimalityResult::Kind::Minimal;
        out.note = recurring ? "x_k < r_{k+1} recurs in every period" : "x_k >= r_{k+1} for all k >= " + std::to_string(period_start);
        return out;
    }
    if (c.verdict == Verdict::Cantorval && g) {
        if (auto fam = match_known_family(*g); fam && fam->minimal) {
            out.kind = MinimalityResult::Kind::KnownFamily;
            out.family = fam;
            out.note = *fam->minimal ? "minimal representation (known family)" : "not minimal (known family)";
            return out;
        }
        out.note = "Cantorval outside the minimality database";
        return out;
    }
    out.note = c.verdict == Verdict::CantorSet ? "minimality is not defined for Cantor sets"
                                               : "type undecided; strict indices reported up to K";
    return out;
}

}  // namespace achset
