#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "achset/classifier.hpp"
#include "achset/cover.hpp"
#include "achset/digit_word.hpp"
#include "achset/enlarge.hpp"
#include "achset/gn_automaton.hpp"
#include "achset/rep_counter.hpp"
#include "achset/semifast.hpp"
#include "render.hpp"

namespace achset::cli {

using ojson = nlohmann::ordered_json;

namespace {

constexpr std::size_t kGapIndexSearch = 64;
constexpr std::size_t kTopGaps = 5;

std::string join(const std::vector<Rational>& xs, const char* sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i].str();
    return out;
}

ojson strings(const std::vector<Rational>& xs) {
    ojson a = ojson::array();
    for (const auto& x : xs) a.push_back(x.str());
    return a;
}

std::string gap_str(const Gap& g) { return "(" + g.a.str() + ", " + g.b.str() + ")"; }

ojson gap_json(const Gap& g, std::optional<std::size_t> k = std::nullopt) {
    ojson j{{"a", g.a.str()}, {"b", g.b.str()}, {"width", g.width().str()}};
    if (k) j["k"] = *k;
    return j;
}

std::string gap_line(const Gap& g, std::optional<std::size_t> k) {
    std::string s = "  " + gap_str(g) + "  width " + g.width().str();
    if (k) s += "  = (r_" + std::to_string(*k) + ", x_" + std::to_string(*k) + ")";
    return s;
}

std::size_t pick(std::optional<std::size_t> flag, std::optional<std::size_t> file, std::size_t fallback) {
    return flag ? *flag : (file ? *file : fallback);
}

std::string certificate_text(const Certificate& c) {
    switch (c.kind) {
        case Certificate::Kind::KakeyaSlowTail:
            return "x_k <= r_k for all k >= " + std::to_string(c.index);
        case Certificate::Kind::KakeyaQuickAll:
            return "x_k > r_k for all k >= " + std::to_string(c.index);
        case Certificate::Kind::SmallRatio:
            return "q = " + c.ratio.str() + " < 1/" + std::to_string(c.sigma_size);
        case Certificate::Kind::KnownFamily:
        case Certificate::Kind::MixedPeriodicPlusKnownInterior:
            return c.citation + ", " + c.parameter_range;
    }
    return "";
}

ojson certificate_json(const Certificate& c) {
    ojson j{{"kind", to_string(c.kind)}, {"index", c.index}};
    if (c.kind == Certificate::Kind::SmallRatio) {
        j["ratio"] = c.ratio.str();
        j["sigma_size"] = c.sigma_size;
    }
    if (!c.citation.empty()) j["citation"] = c.citation;
    if (!c.parameter_range.empty()) j["parameter_range"] = c.parameter_range;
    return j;
}

std::optional<unsigned> gn_member(const SeriesSpec& s) {
    for (unsigned r = 1; r <= 8; ++r) {
        if (s == SeriesSpec::gn_family(r)) return r;
    }
    return std::nullopt;
}

Report cmd_classify(const SpecFile& f, const Flags& fl) {
    Report rep;
    const auto& s = f.series;
    const std::size_t depth = pick(fl.depth, f.options.depth, default_depth(s));
    const auto c = classify(s, depth);
    rep.json["verdict"] = to_string(c.verdict);
    std::string head = "verdict: " + to_string(c.verdict);
    if (c.certificate) {
        head += " (" + to_string(c.certificate->kind) + ")";
        rep.json["certificate"] = certificate_json(*c.certificate);
    }
    rep.lines.push_back(head);
    if (c.certificate) rep.lines.push_back("certificate: " + certificate_text(*c.certificate));
    if (c.evidence) {
        const auto& e = *c.evidence;
        rep.json["evidence"] = ojson{{"depth", e.depth},
                                     {"intervals", e.interval_count},
                                     {"gaps", e.gap_count},
                                     {"longest_interval", {e.longest_interval.lo.str(), e.longest_interval.hi.str()}}};
        rep.lines.push_back("evidence: depth " + std::to_string(e.depth) + ", " + std::to_string(e.interval_count) +
                            " intervals, " + std::to_string(e.gap_count) + " gaps, longest interval [" +
                            e.longest_interval.lo.str() + ", " + e.longest_interval.hi.str() + "]");
    }

    const auto gl = gaps(s, depth);
    const auto lfl = longest_from_left(gl);
    ojson top = ojson::array();
    rep.lines.push_back("gaps at depth " + std::to_string(gl.depth) + ": " + std::to_string(gl.gaps.size()) +
                        " certified, resolution " + gl.resolution.str());
    if (!lfl.empty()) rep.lines.push_back("longest from left:");
    for (std::size_t i = 0; i < lfl.size() && i < kTopGaps; ++i) {
        const auto k = third_gap_index(s, lfl[i], kGapIndexSearch);
        top.push_back(gap_json(lfl[i], k));
        rep.lines.push_back(gap_line(lfl[i], k));
    }
    rep.json["gaps"] = ojson{{"depth", gl.depth},
                             {"count", gl.gaps.size()},
                             {"resolution", gl.resolution.str()},
                             {"longest_from_left", top}};
    if (c.verdict == Verdict::Unknown) rep.exit_code = kUnknownVerdict;
    return rep;
}

struct CardinalLine {
    std::string text;
    ojson json;
    bool exact = true;
};

CardinalLine cardinal_for_target(const SeriesSpec& s, const Rational& t) {
    const auto r = cardinal_of(s, t);
    CardinalLine out;
    out.exact = r.exact;
    out.text = t.str() + ": " + r.value.str();
    out.json = ojson{{"target", t.str()}, {"value", r.value.str()}, {"exact", r.exact}, {"method", r.method}};
    if (!r.exact) {
        out.text += " (lower bound, " + std::to_string(r.unresolved) + " unresolved)";
        out.json["unresolved"] = r.unresolved;
    }
    return out;
}

CardinalLine cardinal_for_digits(const SeriesSpec& s, const std::string& text) {
    const auto* g = s.as_multigeometric();
    if (!g || !g->prefix.empty()) throw PreconditionError("--digits needs a multigeometric series without prefix");
    const auto gn = gn_member(s);
    std::vector<Digit> alphabet;
    if (gn) {
        alphabet = GNFamily(*gn).alphabet;
    } else {
        for (const auto& v : sigma_set(g->coeffs).values) {
            if (!v.is_integer()) throw PreconditionError("--digits needs integer subset sums of the coefficients");
            alphabet.push_back(static_cast<Digit>(v.numerator().get_si()));
        }
    }
    const auto w = DigitWord::parse(text, alphabet);
    for (const auto* part : {&w.preamble(), &w.cycle()}) {
        for (Digit d : *part) {
            if (!std::binary_search(alphabet.begin(), alphabet.end(), d)) {
                throw PreconditionError("digit " + std::to_string(d) + " is not a subset sum of the coefficients");
            }
        }
    }
    const Rational t = eval_digit_word(w, g->ratio);
    CardinalLine out = cardinal_for_target(s, t);
    out.json["digits"] = w.str();
    out.text = w.str() + " = " + out.text;

    std::optional<TwoRepWitness> partner;
    if (gn == std::optional<unsigned>(1)) {
        const auto v = gn_classify(w);
        out.json["pair_test"] = v.unique ? "unique" : "two";
        partner = v.witness;
        if (v.unique) out.text += "; unique by the pair test";
    } else if (gn) {
        partner = generalized_second_rep(w, GNFamily(*gn));
    }
    if (partner) {
        const DigitWord& other = partner->first == w ? partner->second : partner->first;
        out.json["partner"] = other.str();
        out.text += "; partner " + other.str();
    }
    return out;
}

Report cmd_cardinal(const SpecFile& f, const Flags& fl) {
    Report rep;
    std::vector<CardinalLine> lines;
    if (fl.target) lines.push_back(cardinal_for_target(f.series, Rational::parse(*fl.target)));
    if (fl.digits) lines.push_back(cardinal_for_digits(f.series, *fl.digits));
    if (!fl.target && !fl.digits) {
        for (const auto& t : f.options.targets) lines.push_back(cardinal_for_target(f.series, t));
        for (const auto& d : f.options.digits) lines.push_back(cardinal_for_digits(f.series, d));
    }
    if (lines.empty()) throw PreconditionError("cardinal needs --target, --digits or targets in the spec file");
    ojson results = ojson::array();
    for (const auto& l : lines) {
        rep.lines.push_back(l.text);
        results.push_back(l.json);
        if (!l.exact) rep.exit_code = kInexact;
    }
    rep.json["results"] = results;
    return rep;
}

Report cmd_sigma(const SpecFile& f, const Flags&) {
    Report rep;
    std::vector<Rational> coeffs;
    if (const auto* g = f.series.as_multigeometric()) {
        coeffs = g->coeffs;
    } else if (const auto* fs = f.series.as_finite()) {
        coeffs = fs->terms;
    } else {
        throw PreconditionError("sigma needs a multigeometric or finite series");
    }
    const auto sig = sigma_set(coeffs);
    ojson values = ojson::array();
    std::vector<std::string> repeated;
    for (std::size_t i = 0; i < sig.size(); ++i) {
        values.push_back(ojson{{"value", sig.values[i].str()}, {"multiplicity", sig.multiplicity[i]}});
        if (sig.multiplicity[i] > 1) {
            repeated.push_back(sig.values[i].str() + " (x" + std::to_string(sig.multiplicity[i]) + ")");
        }
    }
    rep.json["coeffs"] = strings(coeffs);
    rep.json["size"] = sig.size();
    rep.json["max"] = sig.max().str();
    rep.json["min_gap"] = sig.min_gap().str();
    rep.json["one_to_one"] = sig.one_to_one();
    rep.json["values"] = values;
    rep.lines.push_back("Sigma = {" + join(sig.values) + "}");
    rep.lines.push_back("size " + std::to_string(sig.size()) + ", max " + sig.max().str() + ", min gap " +
                        sig.min_gap().str());
    if (repeated.empty()) {
        rep.lines.push_back("one-to-one");
    } else {
        std::string r = "repeated:";
        for (const auto& x : repeated) r += " " + x;
        rep.lines.push_back(r);
    }
    return rep;
}

Report cmd_gaps(const SpecFile& f, const Flags& fl) {
    Report rep;
    const auto& s = f.series;
    const std::size_t depth = pick(fl.depth, f.options.depth, default_depth(s));
    const auto gl = gaps(s, depth);
    std::vector<Gap> asc(gl.gaps.rbegin(), gl.gaps.rend());
    ojson all = ojson::array();
    rep.lines.push_back("depth " + std::to_string(gl.depth) + ", resolution " + gl.resolution.str() + ", " +
                        std::to_string(asc.size()) + " gaps");
    for (const auto& g : asc) {
        const auto k = third_gap_index(s, g, kGapIndexSearch);
        all.push_back(gap_json(g, k));
        rep.lines.push_back(gap_line(g, k));
    }
    rep.json["depth"] = gl.depth;
    rep.json["resolution"] = gl.resolution.str();
    rep.json["gaps"] = all;
    if (const auto lg = longest_gap(gl)) {
        rep.json["longest"] = gap_json(*lg, third_gap_index(s, *lg, kGapIndexSearch));
        rep.lines.push_back("longest " + gap_str(*lg));
    }
    ojson lfl = ojson::array();
    for (const auto& g : longest_from_left(gl)) lfl.push_back(gap_json(g, third_gap_index(s, g, kGapIndexSearch)));
    rep.json["longest_from_left"] = lfl;
    return rep;
}

Report cmd_locker(const SpecFile& f, const Flags& fl) {
    Report rep;
    const std::size_t K = pick(fl.K, f.options.K, 20);
    const auto r = is_locker(f.series, K);
    rep.json["locker"] = r.holds;
    rep.json["conclusive"] = r.conclusive;
    rep.json["checked_up_to"] = r.checked_up_to;
    if (r.fails_at) rep.json["fails_at"] = *r.fails_at;
    std::string line = std::string("locker: ") + (r.holds ? "yes" : "no");
    if (r.fails_at) line += " (x_k > r_{k+1} at k = " + std::to_string(*r.fails_at) + ")";
    rep.lines.push_back(line);
    rep.lines.push_back(r.conclusive ? "conclusive for all k"
                                     : "checked k <= " + std::to_string(r.checked_up_to) + " only");
    return rep;
}

Report cmd_minimal(const SpecFile& f, const Flags& fl) {
    Report rep;
    const std::size_t K = pick(fl.K, f.options.K, 20);
    const auto m = is_minimal(f.series, K);
    rep.json["result"] = to_string(m.kind);
    rep.json["witness_indices"] = m.witness_indices;
    if (m.family) {
        rep.json["family"] = m.family->key;
        if (m.family->minimal) rep.json["family_minimal"] = *m.family->minimal;
    }
    rep.json["note"] = m.note;
    rep.lines.push_back("minimality: " + to_string(m.kind) + (m.family ? " (" + m.family->key + ")" : ""));
    if (!m.witness_indices.empty()) {
        std::string w = "x_k < r_{k+1} at k =";
        for (auto k : m.witness_indices) w += " " + std::to_string(k);
        rep.lines.push_back(w);
    }
    if (!m.note.empty()) rep.lines.push_back(m.note);
    return rep;
}

std::string answer_str(SlimVerdict::Answer a) {
    switch (a) {
        case SlimVerdict::Answer::Yes: return "yes";
        case SlimVerdict::Answer::Violations: return "no";
        case SlimVerdict::Answer::Undecided: return "undecided";
    }
    return "?";
}

Report cmd_semifast(const SpecFile& f, const Flags& fl) {
    Report rep;
    const SemiFastSeries s = f.series.as_semifast() ? *f.series.as_semifast()
                                                    : semifast_reading(f.series, pick(fl.count, f.options.count, 12));
    const auto v = validate_semifast(s);
    rep.json["blocks"] = s.alphas.size();
    rep.json["valid"] = v.valid;
    rep.lines.push_back("blocks: " + describe(SeriesSpec::semifast(s.alphas, s.counts, s.tail)));
    if (!v.valid) {
        rep.json["fails_at"] = *v.fails_at;
        rep.lines.push_back("not semi-fast: block " + std::to_string(*v.fails_at) + " is not above what follows");
        return rep;
    }
    rep.lines.push_back("semi-fast: yes");

    const CountSequence seq{s.counts, f.options.count_cycle};
    for (const auto mode : {SlimMode::Unique, SlimMode::Slim}) {
        const auto sv = slim_unique_test(seq, mode);
        const std::string name = mode == SlimMode::Unique ? "unique" : "slim";
        rep.json[name] = ojson{{"answer", answer_str(sv.answer)}, {"violations", sv.violations}, {"recurring", sv.recurring}};
        std::string line = name + ": " + answer_str(sv.answer);
        if (!sv.violations.empty()) {
            line += " (blocks";
            for (auto k : sv.violations) line += " " + std::to_string(k);
            line += sv.recurring ? ", recurring)" : ")";
        }
        rep.lines.push_back(line);
    }

    const auto gl = semifast_gaps(s);
    rep.json["gap_count"] = gl.gaps.size();
    rep.lines.push_back("gaps: " + std::to_string(gl.gaps.size()));

    std::size_t bad = 0;
    for (auto n : s.counts) bad += is_mersenne_count(n) ? 0 : 1;
    const std::size_t J = pick(fl.J, f.options.J, std::min<std::size_t>(bad, 3));
    if (J > 0) {
        const auto w = semifast_cpoint_witness(s, J);
        ojson blocks = w.blocks;
        rep.json["witness"] = ojson{{"point", w.point.str()}, {"blocks", blocks}, {"rep_count", w.rep_count.get_str()}};
        std::string line = "witness: " + w.point.str() + " has " + w.rep_count.get_str() + " representations (blocks";
        for (auto k : w.blocks) line += " " + std::to_string(k);
        rep.lines.push_back(line + ")");
    }
    return rep;
}

Report cmd_render(const SpecFile& f, const Flags& fl) {
    Report rep;
    const auto& s = f.series;
    const std::size_t depth = pick(fl.depth, f.options.depth, 6);
    const auto c = depth_cover(s, depth);
    const auto gl = gaps_of(c);
    std::optional<GapLabel> label;
    if (const auto lg = longest_gap(gl)) label = GapLabel{*lg, third_gap_index(s, *lg, kGapIndexSearch)};
    const Rational tot = total(s);
    const std::string body = fl.ascii ? render_ascii(c, tot, label) : render_svg(c, tot, label);

    rep.json["depth"] = depth;
    rep.json["format"] = fl.ascii ? "ascii" : "svg";
    rep.json["intervals"] = c.intervals.size();
    if (label) rep.json["annotated"] = gap_json(label->gap, label->k);
    if (fl.out.empty()) {
        rep.lines.push_back(body.substr(0, body.size() - 1));
    } else {
        std::ofstream out(fl.out);
        if (!out || !(out << body)) throw std::runtime_error("cannot write " + fl.out);
        rep.json["out"] = fl.out;
        rep.lines.push_back("wrote " + fl.out + " (depth " + std::to_string(depth) + ", " +
                            std::to_string(c.intervals.size()) + " intervals)");
        if (label) rep.lines.push_back("longest gap " + label_text(*label));
    }
    return rep;
}

Report cmd_enlarge(const SpecFile& f, const Flags& fl) {
    Report rep;
    const auto& s = f.series;
    const std::size_t depth = pick(fl.depth, f.options.depth, 10);
    const std::size_t count = pick(fl.count, f.options.count, 3);
    const auto r = enlarge_with_cpoints(s, longest_from_left(gaps(s, depth)), count);
    rep.json["enlarged"] = describe(r.spec);
    rep.json["enlarged_spec"] = to_json(spec_file_for(r.spec));
    ojson sel = ojson::array();
    for (const auto& g : r.selected) sel.push_back(gap_json(g));
    rep.json["selected"] = sel;
    rep.json["duplicated"] = strings(r.duplicated);
    if (r.cpoint) rep.json["cpoint"] = r.cpoint->str();
    rep.json["verified_depth"] = r.verified_depth;

    rep.lines.push_back("enlarged: " + describe(r.spec));
    rep.lines.push_back("selected gaps:");
    for (const auto& g : r.selected) rep.lines.push_back(gap_line(g, std::nullopt));
    rep.lines.push_back("duplicated terms: " + join(r.duplicated));
    if (r.cpoint) rep.lines.push_back("c-point: " + r.cpoint->str());
    rep.lines.push_back("gaps re-checked at depth " + std::to_string(r.verified_depth));
    if (!fl.write.empty()) {
        std::ofstream out(fl.write);
        if (!out || !(out << serialize_spec(spec_file_for(r.spec)))) {
            throw std::runtime_error("cannot write " + fl.write);
        }
        rep.lines.push_back("wrote " + fl.write);
    }
    return rep;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"classify", "cardinal", "sigma",    "gaps",   "locker",
                                                "minimal",  "semifast", "render", "enlarge"};
    return names;
}

Report run_command(const std::string& command, const std::string& spec_path, const SpecFile& spec,
                   const Flags& flags) {
    using Fn = Report (*)(const SpecFile&, const Flags&);
    static const std::map<std::string, Fn> table{
        {"classify", cmd_classify}, {"cardinal", cmd_cardinal}, {"sigma", cmd_sigma},
        {"gaps", cmd_gaps},         {"locker", cmd_locker},     {"minimal", cmd_minimal},
        {"semifast", cmd_semifast}, {"render", cmd_render},     {"enlarge", cmd_enlarge},
    };
    const auto it = table.find(command);
    if (it == table.end()) throw PreconditionError("unknown command " + command);
    Report body = it->second(spec, flags);

    Report rep;
    rep.json["tool"] = "achset";
    rep.json["version"] = kToolVersion;
    rep.json["schema"] = kReportSchema;
    rep.json["command"] = command;
    rep.json["spec"] = spec_path;
    rep.json["series"] = describe(spec.series);
    for (auto& [k, v] : body.json.items()) rep.json[k] = v;
    rep.lines.push_back("series: " + describe(spec.series));
    rep.lines.insert(rep.lines.end(), body.lines.begin(), body.lines.end());
    rep.exit_code = body.exit_code;
    return rep;
}

}  // namespace achset::cli
