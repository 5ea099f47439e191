#include "rlsheaf/cli/commands.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#ifndef RLSHEAF_DATA_DIR
#define RLSHEAF_DATA_DIR "data"
#endif

using namespace rlsheaf;
using namespace rlsheaf::cli;

namespace {

bool machine(const std::string& format) { return format == "json" || format == "machine-readable"; }

int report_error(const std::string& format, const std::string& cmd, int code, const std::string& kind,
                 const std::vector<Diagnostic>& diags, const std::string& message) {
    if (machine(format)) {
        json d = json::array();
        for (const auto& x : diags) d.push_back({{"path", x.path}, {"message", x.message}});
        json out = {{"command", cmd}, {"ok", false}, {"exit", code},
                    {"error", {{"kind", kind}, {"message", message}, {"diagnostics", d}}}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cerr << "error: " << message << "\n";
        if (kind == "validation")
            for (const auto& x : diags) std::cerr << "  " << x.line() << "\n";
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite residuated lattices, bundles and étalé spaces"};
    std::string workspace = std::string(RLSHEAF_DATA_DIR) + "/fixtures.json";
    std::string format = "text";
    std::string cmd;
    std::vector<std::string> args;
    bool lenient = false;
    Flags flags;
    flags.seed = seed_from_env();
    std::string set, flavor, open;

    app.add_option("-w,--workspace", workspace, "workspace JSON document")->capture_default_str();
    app.add_option("--format", format, "text, json or machine-readable")
        ->check(CLI::IsMember({"text", "json", "machine-readable"}))
        ->capture_default_str();
    app.add_flag("--lenient", lenient, "record validation failures instead of stopping");
    app.add_option("--set", set, "prime family: spec, max or min");
    app.add_option("--flavor", flavor, "spectral topology: hull, dual or patch");
    app.add_option("--open", open, "open set of base points, e.g. {x,y}");
    app.add_option("--seed", flags.seed, "seed for randomized suites (default RLSHEAF_SEED)");
    app.add_flag("--exploratory", flags.exploratory, "adjunction checks over non-discrete bases too");
    app.add_option("command", cmd, "one of: validate filters classify quotient spectrum sections check-etale "
                                   "check-rl-bundle sheafify counit-check pullback compose-rle gamma "
                                   "adjunction-suite law-suite export-dot serialize")
        ->required();
    app.add_option("args", args, "command arguments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (!set.empty()) flags.set = set;
    if (!flavor.empty()) flags.flavor = flavor;
    if (!open.empty()) flags.open = open;

    std::ifstream in(workspace);
    if (!in) return report_error(format, cmd, 2, "io", {}, "cannot read workspace '" + workspace + "'");
    std::stringstream buf;
    buf << in.rdbuf();

    try {
        auto ws = parse_workspace_text(buf.str(), !lenient);
        auto outcome = run_command(ws, cmd, args, flags);
        if (machine(format)) {
            std::cout << outcome_to_json(cmd, outcome).dump(2) << "\n";
        } else {
            for (const auto& line : outcome.text) std::cout << line << "\n";
            for (const auto& f : outcome.failures) std::cout << "failure: " << f << "\n";
        }
        return outcome.exit;
    } catch (const InputError& e) {
        return report_error(format, cmd, 2, e.kind(), {e.diagnostic()}, e.what());
    } catch (const UsageError& e) {
        return report_error(format, cmd, 2, "usage", {}, e.what());
    } catch (const StrictFailure& e) {
        return report_error(format, cmd, 1, "validation", e.diagnostics(), e.what());
    } catch (const std::exception& e) {
        return report_error(format, cmd, 1, "internal", {}, e.what());
    }
}
