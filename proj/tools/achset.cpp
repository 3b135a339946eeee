#include <chrono>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "achset/rational.hpp"
#include "cli/commands.hpp"
#include "cli/spec_io.hpp"

using namespace achset;
using namespace achset::cli;

namespace {

int run(const std::string& command, const std::string& path, const Flags& flags, bool as_json, bool timing) {
    const auto t0 = std::chrono::steady_clock::now();
    SpecFile spec;
    try {
        spec = load_spec(path);
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    }
    Report rep;
    try {
        rep = run_command(command, path, spec, flags);
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << " (reached " << e.reached() << ")\n";
        return kInexact;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (as_json) {
        if (timing) rep.json["timing_ms"] = ms;
        std::cout << rep.json.dump(2) << "\n";
    } else {
        for (const auto& l : rep.lines) std::cout << l << "\n";
        if (timing) std::printf("time: %.1f ms\n", ms);
    }
    return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Achievement sets of convergent positive series"};
    app.set_version_flag("--version", std::string("achset ") + kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false, timing = false;
    app.add_flag("--json", as_json, "Machine-readable report");
    app.add_flag("--timing", timing, "Report elapsed time");

    std::string path;
    Flags flags;
    for (const auto& name : command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("spec", path, "JSON spec file")->required();
        if (name == "classify" || name == "gaps" || name == "render" || name == "enlarge") {
            sub->add_option("--depth", flags.depth, "Cover depth");
        }
        if (name == "cardinal") {
            sub->add_option("--target", flags.target, "Target rational p/q");
            sub->add_option("--digits", flags.digits, "Digit word pre|cycle");
        }
        if (name == "locker" || name == "minimal") sub->add_option("--K", flags.K, "Index bound for finite checks");
        if (name == "semifast") {
            sub->add_option("--count", flags.count, "Terms read as blocks (non-semifast specs)");
            sub->add_option("--J", flags.J, "Bad blocks used by the c-point witness");
        }
        if (name == "enlarge") {
            sub->add_option("--count", flags.count, "Gaps to select");
            sub->add_option("--write", flags.write, "Write the enlarged series as a spec file");
        }
        if (name == "render") {
            sub->add_option("--out", flags.out, "Output file (stdout when omitted)");
            sub->add_flag("--ascii", flags.ascii, "ASCII diagram instead of SVG");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParseError;
    }
    for (const auto* sub : app.get_subcommands()) return run(sub->get_name(), path, flags, as_json, timing);
    return kParseError;
}
