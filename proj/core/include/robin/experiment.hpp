#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "robin/protocol.hpp"
#include "robin/secrecy.hpp"

namespace robin {

// Declarative description of one scenario run. Built from a scenario preset,
// then overridden by the config file and command-line flags.
struct ExperimentConfig {
    std::string scenario = "smoke";
    std::uint64_t seed = 1;
    int num_environments = 100;
    int workers = 0; // 0 = hardware concurrency
    std::string out_dir = ".";
    bool quiet = false;

    ExperimentSettings settings;

    std::string sweep_variable; // protocol field swept by the scenario
    std::vector<double> sweep_values;
    std::vector<double> snr_values = {15.0, 25.0, 35.0}; // secondary axis of fig2b

    // Secrecy scenarios.
    std::size_t secrecy_samples = 3'000'000;
    double temporal_correlation = 0.5;
    std::size_t replay_steps = 240;      // chain length per environment (table1)
    std::size_t replay_samples_per_step = 64;

    void validate() const;
};

// Preset for a built-in scenario name; throws ConfigError for unknown names.
ExperimentConfig scenario_defaults(const std::string& name);

// Parse the flat key=value config format with [section] headers. Unknown
// keys are rejected with a diagnostic naming the offending key. The file
// must name a scenario; all other keys override that scenario's preset.
ExperimentConfig parse_config_file(const std::string& path);

struct ScenarioInfo {
    std::string name;
    std::string description;
};
const std::vector<ScenarioInfo>& list_scenarios();

// Execute a scenario and write its CSV outputs under config.out_dir.
// Returns a process exit status: nonzero when an invariant check fails.
int run_scenario(const ExperimentConfig& config);

} // namespace robin
