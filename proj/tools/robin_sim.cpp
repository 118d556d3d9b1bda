#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <string>

#include "robin/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"robin_sim: channel-randomized orthogonal blinding experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir;
    int workers = -1;
    bool quiet = false;

    CLI::App* run = app.add_subcommand("run", "run a scenario from a config file");
    run->add_option("config", config_path, "config file (key = value with [sections])")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "override the experiment seed")
        ->each([&](const std::string&) { seed_set = true; });
    run->add_option("--out-dir", out_dir, "directory for CSV outputs");
    run->add_option("--workers", workers, "worker threads (0 = hardware concurrency)");
    run->add_flag("--quiet", quiet, "suppress per-point progress lines");

    CLI::App* list = app.add_subcommand("list", "list built-in scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& scenario : robin::list_scenarios()) {
                std::cout << scenario.name << " - " << scenario.description << "\n";
            }
            return 0;
        }
        robin::ExperimentConfig config = robin::parse_config_file(config_path);
        if (seed_set) {
            config.seed = seed;
        }
        if (!out_dir.empty()) {
            config.out_dir = out_dir;
        }
        if (workers >= 0) {
            config.workers = workers;
        }
        config.quiet = config.quiet || quiet;
        return robin::run_scenario(config);
    } catch (const std::exception& error) {
        std::cerr << "robin_sim: " << error.what() << "\n";
        return 2;
    }
}
