// veldrift: run, validate and list velocity-diffusion experiments.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "veldrift/config.hpp"
#include "veldrift/errors.hpp"
#include "veldrift/runner.hpp"

namespace {

using namespace veldrift;

std::optional<config::ExperimentConfig> load_or_report(const std::string& path) {
    auto outcome = config::load_config(path);
    for (const auto& e : outcome.errors) std::cerr << path << ": " << e << '\n';
    return outcome.config;
}

int list_experiments() {
    for (const auto& e : config::experiments()) {
        std::cout << config::to_string(e.id) << "  (" << to_string(e.default_units) << ")\n"
                  << "    " << e.summary << '\n';
        for (const auto& p : e.params) {
            std::cout << "    " << p.name << " = " << (p.default_value ? *p.default_value : "<unset>");
            if (!p.doc.empty()) std::cout << "    # " << p.doc;
            std::cout << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Velocity diffusion from mutual quantum measurement: experiment runner"};
    app.set_version_flag("--version", VELDRIFT_VERSION);
    app.require_subcommand(1);

    std::string run_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    auto* run_cmd = app.add_subcommand("run", "run the experiment described by a config file");
    run_cmd->add_option("config", run_path, "config file")->required();
    run_cmd->add_option("--seed", seed, "override the config seed");
    run_cmd->add_option("--out", out_dir, "override the output directory");

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "parse a config and report every error");
    validate_cmd->add_option("config", validate_path, "config file")->required();

    auto* list_cmd = app.add_subcommand("list-experiments", "list experiments and their parameters");

    CLI11_PARSE(app, argc, argv);

    if (*list_cmd) return list_experiments();

    if (*validate_cmd) {
        auto cfg = load_or_report(validate_path);
        if (!cfg) return 1;
        std::cout << validate_path << ": ok (" << config::to_string(cfg->experiment) << ")\n";
        return 0;
    }

    auto cfg = load_or_report(run_path);
    if (!cfg) return 1;
    if (seed) cfg->seed = *seed;
    if (out_dir) cfg->output_dir = *out_dir;
    try {
        const auto record = run(*cfg);
        for (const auto& f : record.files) std::cout << "wrote " << f.string() << '\n';
        if (record.document["summary"].contains("pass")) {
            std::cout << "check: " << (record.passed ? "pass" : "FAIL") << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
