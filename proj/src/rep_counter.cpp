#include "achset/rep_counter.hpp"
#include "achset/cover.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <unordered_map>

namespace achset {

std::string CardinalValue::str() const {
    switch (tag_) {
        case Tag::Finite: return "Finite(" + n_.get_str() + ")";
        case Tag::Omega: return "Omega";
        case Tag::Continuum: return "Continuum";
    }
    return "?";
}

CardinalValue operator+(const CardinalValue& a, const CardinalValue& b) {
    if (a.is_finite() && b.is_finite()) return CardinalValue::finite(a.n_ + b.n_);
    if (a.tag_ == CardinalValue::Tag::Continuum || b.tag_ == CardinalValue::Tag::Continuum) {
        return CardinalValue::continuum();
    }
    return CardinalValue::omega();
}

namespace {

BigInt common_denominator(const std::vector<Rational>& xs, const Rational& extra) {
    BigInt d = extra.denominator();
    for (const auto& x : xs) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.raw().get_den_mpz_t());
    return d;
}

template <class Int>
std::vector<Int> all_sums(const std::vector<Int>& xs) {
    // terms are positive, so shifting a sorted list keeps it sorted; merge instead of sorting
    std::vector<Int> sums{Int(0)}, shifted, merged;
    for (const Int& x : xs) {
        shifted.clear();
        for (const Int& v : sums) shifted.push_back(Int(v + x));
        merged.resize(2 * sums.size());
        std::merge(sums.begin(), sums.end(), shifted.begin(), shifted.end(), merged.begin());
        sums.swap(merged);
    }
    return sums;
}

template <class Int>
std::uint64_t meet_in_middle(const std::vector<Int>& xs, const Int& target) {
    const std::size_t half = xs.size() / 2;
    const auto left = all_sums(std::vector<Int>(xs.begin(), xs.begin() + static_cast<long>(half)));
    const auto right = all_sums(std::vector<Int>(xs.begin() + static_cast<long>(half), xs.end()));
    std::uint64_t count = 0;
    // left ascending, right descending
    std::size_t i = 0, j = right.size();
    while (i < left.size() && j > 0) {
        const Int s = left[i] + right[j - 1];
        if (s < target) {
            ++i;
        } else if (s > target) {
            --j;
        } else {
            std::size_t i2 = i, j2 = j;
            while (i2 < left.size() && left[i2] == left[i]) ++i2;
            while (j2 > 0 && right[j2 - 1] == right[j - 1]) --j2;
            count += static_cast<std::uint64_t>(i2 - i) * static_cast<std::uint64_t>(j - j2);
            i = i2;
            j = j2;
        }
    }
    return count;
}

// Subset sums of `terms` not exceeding `bound`, with their multiplicities.
std::map<Rational, BigInt> bounded_subset_sums(const std::vector<Rational>& terms, const Rational& bound) {
    std::map<Rational, BigInt> sums{{Rational(0), BigInt(1)}};
    for (const auto& x : terms) {
        std::map<Rational, BigInt> next = sums;
        for (const auto& [v, c] : sums) {
            const Rational w = v + x;
            if (w > bound) break;
            next[w] += c;
        }
        sums.swap(next);
        if (sums.size() > kCoverCap) throw ResourceError("subset-sum table exceeds 2^24 entries", 0);
    }
    return sums;
}

struct Graph {
    const ResidualAutomaton& a;
    std::vector<std::size_t> comp;       // SCC id, in Tarjan completion order (sinks first)
    std::vector<bool> cyclic;            // per SCC
    std::size_t comp_count = 0;

    explicit Graph(const ResidualAutomaton& aut) : a(aut) { tarjan(); }

    bool usable(const AutomatonEdge& e) const { return a.live[e.next]; }

    void tarjan() {
        const std::size_t n = a.states.size();
        constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
        std::vector<std::size_t> index(n, none), low(n, 0);
        std::vector<bool> on_stack(n, false);
        std::vector<std::size_t> stack;
        comp.assign(n, none);
        std::size_t counter = 0;
        struct Frame { std::size_t v; std::size_t edge; };
        for (std::size_t root = 0; root < n; ++root) {
            if (index[root] != none || !a.live[root]) continue;
            std::vector<Frame> call{{root, 0}};
            index[root] = low[root] = counter++;
            stack.push_back(root);
            on_stack[root] = true;
            while (!call.empty()) {
                Frame& f = call.back();
                const auto& out = a.edges[f.v];
                if (f.edge < out.size()) {
                    const auto& e = out[f.edge++];
                    if (!usable(e)) continue;
                    const std::size_t w = e.next;
                    if (index[w] == none) {
                        index[w] = low[w] = counter++;
                        stack.push_back(w);
                        on_stack[w] = true;
                        call.push_back({w, 0});
                    } else if (on_stack[w]) {
                        low[f.v] = std::min(low[f.v], index[w]);
                    }
                    continue;
                }
                const std::size_t v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
                if (low[v] == index[v]) {
                    std::size_t size = 0;
                    bool self_loop = false;
                    for (;;) {
                        const std::size_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = comp_count;
                        ++size;
                        if (w == v) break;
                    }
                    for (const auto& e : a.edges[v]) self_loop = self_loop || e.next == v;
                    cyclic.push_back(size > 1 || self_loop);
                    ++comp_count;
                }
            }
        }
    }

    bool on_cycle(std::size_t v) const { return cyclic[comp[v]]; }

    std::uint64_t internal_outdegree(std::size_t v) const {
        std::uint64_t d = 0;
        for (const auto& e : a.edges[v]) {
            if (usable(e) && comp[e.next] == comp[v]) d += e.weight;
        }
        return d;
    }

    std::uint64_t live_outdegree(std::size_t v) const {
        std::uint64_t d = 0;
        for (const auto& e : a.edges[v]) {
            if (usable(e)) d += e.weight;
        }
        return d;
    }

    bool has_returning_branch() const {
        for (std::size_t v = 0; v < a.states.size(); ++v) {
            if (a.live[v] && a.expanded[v] && on_cycle(v) && internal_outdegree(v) >= 2) return true;
        }
        return false;
    }
};

void mark_live(ResidualAutomaton& a) {
    const std::size_t n = a.states.size();
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::size_t> outdeg(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        for (const auto& e : a.edges[v]) {
            preds[e.next].push_back(v);
            ++outdeg[v];
        }
    }
    a.live.assign(n, true);
    std::deque<std::size_t> dead;
    for (std::size_t v = 0; v < n; ++v) {
        if (a.expanded[v] && outdeg[v] == 0) dead.push_back(v);
    }
    while (!dead.empty()) {
        const std::size_t v = dead.front();
        dead.pop_front();
        a.live[v] = false;
        for (std::size_t p : preds[v]) {
            if (--outdeg[p] == 0) dead.push_back(p);
        }
    }
}

}  // namespace

std::uint64_t count_subset_sums(const std::vector<Rational>& terms, const Rational& target) {
    if (terms.size() > kMeetInMiddleCap) {
        throw ResourceError("count_subset_sums supports at most 40 terms", kMeetInMiddleCap);
    }
    for (const auto& t : terms) {
        if (t.sign() <= 0) throw PreconditionError("count_subset_sums needs positive terms");
    }
    if (target.sign() < 0) return 0;
    // integer data small enough for int64 skips the rescaling
    bool small_ints = mpz_cmp_ui(target.raw().get_den_mpz_t(), 1) == 0 && mpz_fits_slong_p(target.raw().get_num_mpz_t());
    for (const auto& t : terms) {
        small_ints = small_ints && mpz_cmp_ui(t.raw().get_den_mpz_t(), 1) == 0 &&
                     mpz_cmpabs_ui(t.raw().get_num_mpz_t(), 1ul << 56) < 0;
    }
    if (small_ints) {
        std::vector<std::int64_t> small;
        for (const auto& t : terms) small.push_back(mpz_get_si(t.raw().get_num_mpz_t()));
        return meet_in_middle(small, static_cast<std::int64_t>(mpz_get_si(target.raw().get_num_mpz_t())));
    }

    const BigInt scale = common_denominator(terms, target);
    std::vector<BigInt> xs;
    BigInt sum = 0;
    for (const auto& t : terms) {
        xs.push_back(t.numerator() * (scale / t.denominator()));
        sum += xs.back();
    }
    const BigInt goal = target.numerator() * (scale / target.denominator());
    if (goal > sum) return 0;

    if (sum < BigInt(1) << 62) {
        std::vector<std::int64_t> small;
        for (const auto& x : xs) small.push_back(x.get_si());
        return meet_in_middle(small, static_cast<std::int64_t>(goal.get_si()));
    }
    return meet_in_middle(xs, goal);
}

std::size_t ResidualAutomaton::frontier_size() const {
    return static_cast<std::size_t>(std::count(expanded.begin(), expanded.end(), false));
}

std::size_t ResidualAutomaton::explored_depth() const {
    std::size_t d = std::numeric_limits<std::size_t>::max();
    for (std::size_t v = 0; v < states.size(); ++v) {
        if (!expanded[v]) d = std::min(d, depth[v]);
    }
    return d;
}

BigInt ResidualAutomaton::count_prefixes(std::size_t L, bool live_only) const {
    std::vector<BigInt> cur(states.size());
    for (const auto& [v, w] : initial) {
        if (!live_only || live[v]) cur[v] += BigInt(static_cast<unsigned long>(w));
    }
    for (std::size_t step = 0; step < L; ++step) {
        std::vector<BigInt> next(states.size());
        for (std::size_t v = 0; v < states.size(); ++v) {
            if (cur[v] == 0) continue;
            for (const auto& e : edges[v]) {
                if (live_only && !live[e.next]) continue;
                next[e.next] += cur[v] * BigInt(static_cast<unsigned long>(e.weight));
            }
        }
        cur.swap(next);
    }
    BigInt total = 0;
    for (const auto& c : cur) total += c;
    return total;
}

ResidualAutomaton build_residual_automaton(const SeriesSpec& spec, const Rational& target,
                                           const AutomatonOptions& opt) {
    const auto* g = spec.as_multigeometric();
    if (!g) throw PreconditionError("residual automaton needs a multigeometric series");
    if (g->prefix.size() > kSigmaCap) throw ResourceError("prefix longer than 24 terms", kSigmaCap);

    const SigmaSet sigma = sigma_set(g->coeffs);
    ResidualAutomaton a;
    a.ratio = g->ratio;
    a.window_hi = sigma.max() / (Rational(1) - g->ratio);

    std::unordered_map<Rational, std::size_t, RationalHash> index;
    std::deque<std::size_t> queue;
    auto intern = [&](const Rational& w, std::size_t depth) -> std::optional<std::size_t> {
        if (w.sign() < 0 || w > a.window_hi) return std::nullopt;
        auto [it, fresh] = index.try_emplace(w, a.states.size());
        if (fresh) {
            a.states.push_back(w);
            a.edges.emplace_back();
            a.depth.push_back(depth);
            a.expanded.push_back(false);
            queue.push_back(it->second);
        }
        return it->second;
    };

    // One entry per distinct prefix subset sum.
    std::map<Rational, std::uint64_t> prefix_sums{{Rational(0), 1}};
    for (const auto& p : g->prefix) {
        auto next = prefix_sums;
        for (const auto& [v, c] : prefix_sums) next[v + p] += c;
        prefix_sums.swap(next);
    }
    for (const auto& [p, c] : prefix_sums) {
        if (auto id = intern((target - p) / g->ratio, 0)) {
            a.initial.emplace_back(*id, opt.digit_words ? 1 : c);
        }
    }

    a.closed = true;
    while (!queue.empty()) {
        if (a.states.size() > opt.state_cap) {
            a.closed = false;
            break;
        }
        const std::size_t v = queue.front();
        queue.pop_front();
        const Rational w = a.states[v];
        const std::size_t d = a.depth[v];
        std::vector<AutomatonEdge> out;
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            if (sigma.values[i] > w) break;
            if (auto id = intern((w - sigma.values[i]) / g->ratio, d + 1)) {
                out.push_back({sigma.values[i], opt.digit_words ? 1 : sigma.multiplicity[i], *id});
            }
        }
        a.edges[v] = std::move(out);
        a.expanded[v] = true;
    }
    mark_live(a);
    return a;
}

CardinalValue analyze_automaton(const ResidualAutomaton& a) {
    if (!a.closed) throw PreconditionError("automaton exploration did not close");
    const Graph gr(a);
    if (gr.has_returning_branch()) return CardinalValue::continuum();

    const std::size_t n = a.states.size();
    // reaches_branch[v]: some state reachable from v (v included) has two live continuations
    std::vector<bool> reaches_branch(n, false);
    std::vector<BigInt> paths(n);
    // Tarjan numbers components sinks first, so successors are finished before v.
    std::vector<std::vector<std::size_t>> by_comp(gr.comp_count);
    for (std::size_t v = 0; v < n; ++v) {
        if (a.live[v]) by_comp[gr.comp[v]].push_back(v);
    }
    bool omega = false;
    for (std::size_t c = 0; c < gr.comp_count; ++c) {
        bool rb = false;
        for (std::size_t v : by_comp[c]) {
            rb = rb || gr.live_outdegree(v) >= 2;
            for (const auto& e : a.edges[v]) {
                if (gr.usable(e) && gr.comp[e.next] != c) rb = rb || reaches_branch[e.next];
            }
        }
        for (std::size_t v : by_comp[c]) reaches_branch[v] = rb;
        if (gr.cyclic[c]) {
            if (rb) omega = true;
            // a non-branching cycle continues in exactly one way
            for (std::size_t v : by_comp[c]) paths[v] = 1;
        } else {
            const std::size_t v = by_comp[c].front();
            for (const auto& e : a.edges[v]) {
                if (gr.usable(e)) paths[v] += paths[e.next] * BigInt(static_cast<unsigned long>(e.weight));
            }
        }
    }
    if (omega) return CardinalValue::omega();

    BigInt total = 0;
    for (const auto& [v, w] : a.initial) {
        if (a.live[v]) total += paths[v] * BigInt(static_cast<unsigned long>(w));
    }
    return CardinalValue::finite(total);
}

CardinalResult cardinal_of(const SeriesSpec& spec, const Rational& target, const AutomatonOptions& opt) {
    CardinalResult out;
    if (spec.as_multigeometric()) {
        const ResidualAutomaton a = build_residual_automaton(spec, target, opt);
        if (a.closed) {
            out.value = analyze_automaton(a);
            out.method = "residual automaton (" + std::to_string(a.states.size()) + " states)";
            return out;
        }
        if (Graph(a).has_returning_branch()) {
            out.value = CardinalValue::continuum();
            out.method = "residual automaton, branching cycle found before the state cap";
            return out;
        }
        const std::size_t d = a.explored_depth();
        out.value = CardinalValue::finite(a.count_prefixes(d, false));
        out.exact = false;
        out.unresolved = a.frontier_size();
        out.method = "bounded exploration: in-window digit paths of length " + std::to_string(d);
        return out;
    }

    // Finite list of terms, possibly followed by an opaque tail.
    std::vector<Rational> listed;
    Rational tail(0);
    if (const auto* f = spec.as_finite()) {
        listed = f->terms;
        tail = f->tail;
    } else {
        const auto* s = spec.as_semifast();
        tail = s->tail;
        const std::size_t n = *spec.listed_length();
        if (n > kCoverCap) throw ResourceError("semi-fast spec lists more than 2^24 terms", 0);
        listed = terms(spec, n);
    }
    if (target.sign() < 0) return out;
    const auto sums = bounded_subset_sums(listed, target);
    BigInt exact_hits = 0;
    std::size_t open = 0;
    for (const auto& [v, c] : sums) {
        if (v == target) {
            exact_hits += c;
        } else if (tail.sign() > 0 && target <= v + tail) {
            open += c > BigInt(std::numeric_limits<long>::max()) ? std::numeric_limits<std::size_t>::max()
                                                                  : static_cast<std::size_t>(c.get_si());
        }
    }
    out.value = CardinalValue::finite(exact_hits);
    out.method = "subset-sum enumeration over " + std::to_string(listed.size()) + " listed terms";
    if (open > 0) {
        out.exact = false;
        out.unresolved = open;
        out.method += "; lower bound, the opaque tail may add representations";
    }
    return out;
}

std::optional<CPointWitness> cpoint_witness(const SeriesSpec& spec) {
    const auto* g = spec.as_multigeometric();
    if (!g) throw PreconditionError("cpoint_witness needs a multigeometric series");
    const SigmaSet sigma = sigma_set(g->coeffs);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma.multiplicity[i] < 2) continue;
        auto reps = sigma.representations(sigma.values[i]);
        std::sort(reps.begin(), reps.end());
        auto to_indices = [](std::uint32_t mask) {
            std::vector<std::size_t> idx;
            for (std::size_t b = 0; b < 32; ++b) {
                if (mask >> b & 1U) idx.push_back(b + 1);
            }
            return idx;
        };
        CPointWitness w;
        w.sigma = sigma.values[i];
        w.y = w.sigma * g->ratio / (Rational(1) - g->ratio);
        w.first = to_indices(reps[0]);
        w.second = to_indices(reps[1]);
        w.description = "digit " + w.sigma.str() + " at every level, chosen from two coefficient sets";
        return w;
    }
    return std::nullopt;
}

LevelSums level_sums(const std::vector<Rational>& coeffs, const Rational& q, std::size_t k) {
    const SigmaSet sigma = sigma_set(coeffs);
    BigInt tuples = 1;
    for (std::size_t i = 0; i < k; ++i) tuples *= BigInt(static_cast<unsigned long>(sigma.size()));
    if (tuples > BigInt(static_cast<unsigned long>(kCoverCap))) {
        throw ResourceError("level sums exceed 2^24 digit tuples", 0);
    }
    if (coeffs.size() * k >= 64) throw ResourceError("0-1 tuple count exceeds 64 bits", 0);

    struct Entry {
        std::uint64_t eps = 0;
        std::vector<std::vector<Rational>> digits;
    };
    std::map<Rational, Entry> table;
    std::vector<std::size_t> pick(k, 0);
    std::vector<Rational> qpow(k + 1, Rational(1));
    for (std::size_t i = 1; i <= k; ++i) qpow[i] = qpow[i - 1] * q;

    for (;;) {
        Rational v(0);
        std::uint64_t eps = 1;
        std::vector<Rational> digits;
        for (std::size_t i = 0; i < k; ++i) {
            v += sigma.values[pick[i]] * qpow[i + 1];
            eps *= sigma.multiplicity[pick[i]];
            digits.push_back(sigma.values[pick[i]]);
        }
        Entry& e = table[v];
        e.eps += eps;
        if (e.digits.size() < 4) e.digits.push_back(std::move(digits));

        std::size_t i = 0;
        while (i < k && ++pick[i] == sigma.size()) pick[i++] = 0;
        if (i == k) break;
    }

    LevelSums out;
    out.tuple_count = std::uint64_t{1} << (coeffs.size() * k);
    out.distinct = table.size();
    for (auto& [v, e] : table) {
        if (e.eps > 1) out.collisions.push_back({v, e.eps, std::move(e.digits)});
    }
    return out;
}

std::pair<IndexSet, IndexSet> shift_nonunique(const std::vector<Rational>& terms, const IndexSet& A,
                                              const IndexSet& B, const IndexSet& C) {
    auto check_set = [&](const IndexSet& s, const char* name) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == 0 || s[i] > terms.size()) {
                throw PreconditionError(std::string("index out of range in ") + name);
            }
            if (i > 0 && s[i] <= s[i - 1]) throw PreconditionError(std::string(name) + " must be strictly increasing");
        }
    };
    check_set(A, "A");
    check_set(B, "B");
    check_set(C, "C");
    if (B == C) throw PreconditionError("B and C must differ");
    auto sum = [&](const IndexSet& s) {
        Rational t(0);
        for (std::size_t i : s) t += terms[i - 1];
        return t;
    };
    const Rational y = sum(B);
    if (y != sum(C)) throw PreconditionError("B and C must have equal sums");
    if (A.empty()) return {B, C};

    const std::size_t m = A.back();
    for (const IndexSet* s : {&B, &C}) {
        if (!s->empty() && s->front() <= m) throw PreconditionError("B and C must lie beyond max(A)");
    }
    if (!(y < terms[m - 1])) throw PreconditionError("sum over B must be below x_{max A}");

    IndexSet first = A, second = A;
    first.insert(first.end(), B.begin(), B.end());
    second.insert(second.end(), C.begin(), C.end());
    if (sum(first) != sum(second)) throw PreconditionError("shifted sums disagree");
    return {first, second};
}

}  // namespace achset
