#include "gevrey/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <optional>

namespace {

int run(const std::string& suite, const std::string& config_path, const std::string& out_dir,
        std::optional<std::uint64_t> seed, const std::string& format_name) {
    auto config = gevrey::load_config(config_path);
    if (!suite.empty()) config.suite = suite;
    if (seed) config.seed = *seed;
    const auto format = gevrey::parse_format(format_name);
    const auto records = gevrey::run_suite(config);
    const std::string dir = out_dir.empty() ? config.output_dir : out_dir;
    const auto files = gevrey::emit_report(records, config.suite, dir, format);

    std::size_t failed = 0;
    for (const auto& r : records) failed += r.pass ? 0 : 1;
    std::printf("%s: %zu records, %zu failed\n", config.suite.c_str(), records.size(), failed);
    for (const auto& f : files) std::printf("  wrote %s\n", f.string().c_str());
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gevrey pseudodifferential operator verification suites"};
    app.require_subcommand(1);

    std::string suite, config_path, out_dir, format = "csv";
    std::uint64_t seed_value = 0;
    auto* run_cmd = app.add_subcommand("run", "run one suite and write its report");
    run_cmd->add_option("--suite", suite, "suite name (overrides the config)");
    run_cmd->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", out_dir, "output directory (overrides the config)");
    auto* seed_opt = run_cmd->add_option("--seed", seed_value, "64-bit seed (overrides the config)");
    run_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* list_cmd = app.add_subcommand("list-suites", "list the available suites");

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate-config", "check a config file without running it");
    validate_cmd->add_option("path", validate_path, "JSON config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            std::optional<std::uint64_t> seed;
            if (*seed_opt) seed = seed_value;
            return run(suite, config_path, out_dir, seed, format);
        }
        if (*list_cmd) {
            for (const auto& name : gevrey::suite_names()) {
                std::printf("%-13s %s\n", name.c_str(), gevrey::suite_description(name).c_str());
            }
            return 0;
        }
        if (*validate_cmd) {
            const auto config = gevrey::load_config(validate_path);
            gevrey::validate_config(config);
            std::printf("%s: ok (suite %s)\n", validate_path.c_str(), config.suite.c_str());
            return 0;
        }
    } catch (const gevrey::ConfigError& e) {
        std::fprintf(stderr, "invalid config: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
