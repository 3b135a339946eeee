#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spec_io.hpp"

namespace achset::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

enum ExitCode { kOk = 0, kParseError = 1, kUnknownVerdict = 2, kInexact = 3 };

/// Command-line flags; unset values fall back to the spec file's options.
struct Flags {
    std::optional<std::size_t> depth;
    std::optional<std::string> target;
    std::optional<std::string> digits;
    std::optional<std::size_t> K;
    std::optional<std::size_t> count;
    std::optional<std::size_t> J;
    std::string out;
    std::string write;
    bool ascii = false;
};

struct Report {
    nlohmann::ordered_json json;
    std::vector<std::string> lines;
    int exit_code = kOk;
};

/// Runs one subcommand on a parsed spec file. Library errors propagate.
Report run_command(const std::string& command, const std::string& spec_path, const SpecFile& spec,
                   const Flags& flags);

const std::vector<std::string>& command_names();

}  // namespace achset::cli
