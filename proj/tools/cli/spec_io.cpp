#include "spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "achset/rational.hpp"

namespace achset::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& ptr, const std::string& what) {
    throw SpecError("at " + (ptr.empty() ? std::string("/") : ptr) + ": " + what);
}

void only_keys(const json& obj, const std::string& ptr, const std::set<std::string>& allowed) {
    for (const auto& [k, v] : obj.items()) {
        if (!allowed.count(k)) fail(ptr + "/" + k, "unknown key");
    }
}

const json& need(const json& obj, const std::string& ptr, const std::string& key) {
    if (!obj.contains(key)) fail(ptr + "/" + key, "missing");
    return obj.at(key);
}

Rational rational_at(const json& v, const std::string& ptr) {
    if (!v.is_string()) fail(ptr, "rational must be a string like \"p/q\"");
    try {
        return Rational::parse(v.get<std::string>());
    } catch (const std::exception& e) {
        fail(ptr, e.what());
    }
}

std::vector<Rational> rationals_at(const json& v, const std::string& ptr) {
    if (!v.is_array()) fail(ptr, "expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_at(v[i], ptr + "/" + std::to_string(i)));
    return out;
}

std::uint64_t count_at(const json& v, const std::string& ptr) {
    if (!v.is_number_unsigned()) fail(ptr, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::vector<std::uint64_t> counts_at(const json& v, const std::string& ptr) {
    if (!v.is_array()) fail(ptr, "expected an array");
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(count_at(v[i], ptr + "/" + std::to_string(i)));
    return out;
}

json strings(const std::vector<Rational>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(x.str());
    return a;
}

SpecOptions parse_options(const json& o) {
    const std::string p = "/options";
    if (!o.is_object()) fail(p, "expected an object");
    only_keys(o, p, {"depth", "targets", "digits", "K", "count", "J", "count_cycle"});
    SpecOptions opt;
    if (o.contains("depth")) opt.depth = count_at(o["depth"], p + "/depth");
    if (o.contains("targets")) opt.targets = rationals_at(o["targets"], p + "/targets");
    if (o.contains("digits")) {
        const auto& d = o["digits"];
        if (!d.is_array()) fail(p + "/digits", "expected an array");
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (!d[i].is_string()) fail(p + "/digits/" + std::to_string(i), "digit word must be a string");
            opt.digits.push_back(d[i].get<std::string>());
        }
    }
    if (o.contains("K")) opt.K = count_at(o["K"], p + "/K");
    if (o.contains("count")) opt.count = count_at(o["count"], p + "/count");
    if (o.contains("J")) opt.J = count_at(o["J"], p + "/J");
    if (o.contains("count_cycle")) opt.count_cycle = counts_at(o["count_cycle"], p + "/count_cycle");
    return opt;
}

SpecFile parse_series(const json& s) {
    const std::string p = "/series";
    if (!s.is_object()) fail(p, "expected an object");
    const auto& kind_v = need(s, p, "kind");
    if (!kind_v.is_string()) fail(p + "/kind", "expected a string");
    SpecFile f;
    f.kind = kind_v.get<std::string>();
    try {
        if (f.kind == "finite") {
            only_keys(s, p, {"kind", "terms", "tail"});
            const Rational tail = s.contains("tail") ? rational_at(s["tail"], p + "/tail") : Rational(0);
            f.series = SeriesSpec::finite(rationals_at(need(s, p, "terms"), p + "/terms"), tail);
        } else if (f.kind == "multigeometric") {
            only_keys(s, p, {"kind", "coeffs", "ratio", "prefix"});
            std::vector<Rational> prefix;
            if (s.contains("prefix")) prefix = rationals_at(s["prefix"], p + "/prefix");
            f.series = SeriesSpec::multigeometric(rationals_at(need(s, p, "coeffs"), p + "/coeffs"),
                                                  rational_at(need(s, p, "ratio"), p + "/ratio"), prefix);
        } else if (f.kind == "geometric") {
            only_keys(s, p, {"kind", "ratio"});
            f.series = SeriesSpec::geometric(rational_at(need(s, p, "ratio"), p + "/ratio"));
        } else if (f.kind == "semifast") {
            only_keys(s, p, {"kind", "alphas", "counts", "tail"});
            const Rational tail = s.contains("tail") ? rational_at(s["tail"], p + "/tail") : Rational(0);
            f.series = SeriesSpec::semifast(rationals_at(need(s, p, "alphas"), p + "/alphas"),
                                            counts_at(need(s, p, "counts"), p + "/counts"), tail);
        } else if (f.kind == "gn") {
            only_keys(s, p, {"kind", "r"});
            const auto r = count_at(need(s, p, "r"), p + "/r");
            if (r < 1 || r > 8) fail(p + "/r", "r must be between 1 and 8");
            f.r = static_cast<unsigned>(r);
            f.series = SeriesSpec::gn_family(f.r);
        } else if (f.kind == "gnj") {
            only_keys(s, p, {"kind", "n", "ratio"});
            f.n = count_at(need(s, p, "n"), p + "/n");
            if (f.n < 1 || f.n > 20) fail(p + "/n", "n must be between 1 and 20");
            std::vector<Rational> coeffs{Rational(3)};
            coeffs.insert(coeffs.end(), f.n, Rational(2));
            f.series = SeriesSpec::multigeometric(coeffs, rational_at(need(s, p, "ratio"), p + "/ratio"));
        } else {
            fail(p + "/kind", "unknown kind '" + f.kind + "'");
        }
    } catch (const PreconditionError& e) {
        fail(p, e.what());
    } catch (const DomainError& e) {
        fail(p, e.what());
    }
    return f;
}

}  // namespace

SpecFile parse_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) fail("", "expected an object");
    only_keys(doc, "", {"version", "series", "options"});
    const auto& v = need(doc, "", "version");
    if (!v.is_number_integer() || v.get<long>() != kSpecVersion) {
        fail("/version", "unsupported version (expected " + std::to_string(kSpecVersion) + ")");
    }
    SpecFile f = parse_series(need(doc, "", "series"));
    if (doc.contains("options")) f.options = parse_options(doc["options"]);
    return f;
}

SpecFile load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_spec(buf.str());
    } catch (const SpecError& e) {
        throw SpecError(path + ": " + e.what());
    }
}

json to_json(const SpecFile& f) {
    json s;
    s["kind"] = f.kind;
    if (f.kind == "finite") {
        const auto& fs = *f.series.as_finite();
        s["terms"] = strings(fs.terms);
        s["tail"] = fs.tail.str();
    } else if (f.kind == "multigeometric") {
        const auto& g = *f.series.as_multigeometric();
        s["coeffs"] = strings(g.coeffs);
        s["ratio"] = g.ratio.str();
        if (!g.prefix.empty()) s["prefix"] = strings(g.prefix);
    } else if (f.kind == "geometric") {
        s["ratio"] = f.series.as_multigeometric()->ratio.str();
    } else if (f.kind == "semifast") {
        const auto& sf = *f.series.as_semifast();
        s["alphas"] = strings(sf.alphas);
        s["counts"] = sf.counts;
        s["tail"] = sf.tail.str();
    } else if (f.kind == "gn") {
        s["r"] = f.r;
    } else if (f.kind == "gnj") {
        s["n"] = f.n;
        s["ratio"] = f.series.as_multigeometric()->ratio.str();
    }

    json o = json::object();
    const auto& opt = f.options;
    if (opt.depth) o["depth"] = *opt.depth;
    if (!opt.targets.empty()) o["targets"] = strings(opt.targets);
    if (!opt.digits.empty()) o["digits"] = opt.digits;
    if (opt.K) o["K"] = *opt.K;
    if (opt.count) o["count"] = *opt.count;
    if (opt.J) o["J"] = *opt.J;
    if (!opt.count_cycle.empty()) o["count_cycle"] = opt.count_cycle;

    json doc;
    doc["version"] = kSpecVersion;
    doc["series"] = s;
    if (!o.empty()) doc["options"] = o;
    return doc;
}

std::string serialize_spec(const SpecFile& f) { return to_json(f).dump(2) + "\n"; }

SpecFile spec_file_for(const SeriesSpec& s) {
    SpecFile f;
    f.series = s;
    switch (s.kind()) {
        case SeriesKind::Finite: f.kind = "finite"; break;
        case SeriesKind::Multigeometric: f.kind = "multigeometric"; break;
        case SeriesKind::SemiFast: f.kind = "semifast"; break;
    }
    return f;
}

}  // namespace achset::cli
