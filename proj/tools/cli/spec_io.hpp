#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "achset/series.hpp"

namespace achset::cli {

inline constexpr int kSpecVersion = 1;

/// Bad spec file. The message names the byte offset (syntax errors) or the JSON
/// pointer of the offending value.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SpecOptions {
    std::optional<std::size_t> depth;
    std::vector<Rational> targets;
    std::vector<std::string> digits;
    std::optional<std::size_t> K;
    std::optional<std::size_t> count;
    std::optional<std::size_t> J;
    std::vector<std::uint64_t> count_cycle;
    friend bool operator==(const SpecOptions&, const SpecOptions&) = default;
};

/// A series as written in the file (kind and family parameters are kept so the
/// file can be written back unchanged) plus analysis options.
struct SpecFile {
    std::string kind;  // finite | multigeometric | geometric | semifast | gn | gnj
    SeriesSpec series = SeriesSpec::finite({});
    unsigned r = 0;      // gn
    std::size_t n = 0;   // gnj: E(3, 2 x n; q)
    SpecOptions options;
    friend bool operator==(const SpecFile&, const SpecFile&) = default;
};

SpecFile parse_spec(const std::string& text);
SpecFile load_spec(const std::string& path);

nlohmann::json to_json(const SpecFile& f);
std::string serialize_spec(const SpecFile& f);

/// Generic file for any series (finite, multigeometric or semifast kind).
SpecFile spec_file_for(const SeriesSpec& s);

}  // namespace achset::cli
