#include "robin/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "robin/errors.hpp"

namespace robin {

namespace {

std::string format_number(double value) {
    std::ostringstream out;
    out << std::setprecision(12) << value;
    return out.str();
}

int effective_workers(const ExperimentConfig& config) {
    if (config.workers > 0) {
        return config.workers;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// CSV with a comment line (timestamp and wall time, excluded from
// reproducibility comparisons), a header row, and validated row widths.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& scenario,
              const std::vector<std::string>& columns)
        : path_(path), scenario_(scenario), columns_(columns) {}

    void add_row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_.size()) {
            throw ContractError("csv: row width does not match schema of " + path_);
        }
        rows_.push_back(cells);
    }

    void flush(long wall_ms) const {
        std::ofstream out(path_);
        if (!out) {
            throw ConfigError("cannot open '" + path_ + "' for writing");
        }
        const auto now = std::chrono::system_clock::now();
        const std::time_t stamp = std::chrono::system_clock::to_time_t(now);
        out << "# scenario=" << scenario_ << " generated="
            << std::put_time(std::gmtime(&stamp), "%FT%TZ") << "  wall_ms=" << wall_ms
            << "\n";
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            out << columns_[c] << (c + 1 < columns_.size() ? "," : "\n");
        }
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << row[c] << (c + 1 < row.size() ? "," : "\n");
            }
        }
    }

  private:
    std::string path_;
    std::string scenario_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

class Stopwatch {
  public:
    long elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace

namespace {

void apply_sweep_value(ExperimentSettings& settings, const std::string& variable,
                       double value) {
    if (variable == "training_modes") {
        settings.protocol.num_training_modes = static_cast<int>(value);
    } else if (variable == "switching_period") {
        settings.protocol.switching_period = static_cast<int>(value);
    } else if (variable == "ndr") {
        settings.protocol.ndr = value;
    } else if (variable == "snr_db") {
        settings.protocol.snr_db = value;
    } else if (variable == "known_symbols_per_frame") {
        settings.protocol.known_symbols_per_frame = static_cast<int>(value);
    } else if (variable == "rho") {
        // consumed by the secrecy scenarios directly
    } else {
        throw ConfigError("experiment: unknown sweep variable '" + variable + "'");
    }
}

} // namespace

void ExperimentConfig::validate() const {
    if (num_environments < 1) {
        throw ConfigError("experiment: num_environments must be >= 1");
    }
    if (workers < 0) {
        throw ConfigError("experiment: workers must be >= 0");
    }
    if (settings.n_a < 2 || settings.n_b < 1 || settings.n_e < 1 ||
        settings.n_b >= settings.n_a) {
        throw ConfigError("experiment: need n_a >= 2 and 1 <= n_b < n_a");
    }
    if (settings.num_paths < 0) {
        throw ConfigError("experiment: num_paths must be >= 0");
    }
    if (secrecy_samples < 1000) {
        throw ConfigError("experiment: secrecy_samples too small to estimate anything");
    }
    if (temporal_correlation < 0.0 || temporal_correlation >= 1.0) {
        throw ConfigError("experiment: temporal_correlation must be in [0, 1)");
    }
    for (double rho : sweep_values) {
        if (scenario == "fig3" && (rho < 0.0 || rho > 1.0)) {
            throw ConfigError("experiment: fig3 sweep values must be in [0, 1]");
        }
    }
    // Protocol geometry is validated per sweep point before any run starts.
    ExperimentSettings probe = settings;
    for (double value : sweep_values.empty() ? std::vector<double>{0.0} : sweep_values) {
        if (!sweep_variable.empty()) {
            apply_sweep_value(probe, sweep_variable, value);
        }
        if (scenario != "fig3" && scenario != "table1_trend") {
            probe.protocol.validate(probe.pattern_modes);
            const int blocks = (probe.protocol.frames_per_coherence +
                                probe.protocol.switching_period - 1) /
                               probe.protocol.switching_period;
            if (probe.protocol.num_training_modes + blocks > probe.pattern_modes) {
                throw ConfigError(
                    "experiment: not enough antenna modes for disjoint S_1 and S_2");
            }
        }
    }
}

const std::vector<ScenarioInfo>& list_scenarios() {
    static const std::vector<ScenarioInfo> scenarios = {
        {"fig2a", "Bob/Eve SER vs number of training modes, static mode (T=120)"},
        {"fig2b", "Bob SER vs NDR for several SNRs, T=6, 20 training modes"},
        {"fig2c", "Eve SER vs NLMS iterations for NDR in {1,4,8}, T=60, SNR 25 dB"},
        {"fig2d", "Eve SER vs NLMS iterations for SNR in {15,25,35} dB, NDR 1, T=60"},
        {"fig2e", "Eve SER vs antenna switching period T, with security improvement"},
        {"fig3", "secrecy leakage vs cross-channel correlation coefficient"},
        {"table1_trend", "replayed secrecy leakage vs number of training modes"},
        {"smoke", "one tiny environment end to end, pipeline invariant checks"},
    };
    return scenarios;
}

ExperimentConfig scenario_defaults(const std::string& name) {
    ExperimentConfig config;
    config.scenario = name;
    config.settings.protocol.subcarriers = 1;
    config.settings.attacker.iterations = 240;
    config.settings.attacker.step_size = 0.5;

    if (name == "fig2a") {
        config.sweep_variable = "training_modes";
        config.sweep_values = {10, 20, 30, 40};
        config.settings.protocol.switching_period = 120;
        config.settings.record_trace = false;
    } else if (name == "fig2b") {
        config.sweep_variable = "ndr";
        config.sweep_values = {0, 1, 2, 4, 8};
        config.settings.protocol.switching_period = 6;
        config.settings.protocol.num_training_modes = 20;
        config.num_environments = 50;
    } else if (name == "fig2c") {
        config.sweep_variable = "ndr";
        config.sweep_values = {1, 4, 8};
        config.settings.protocol.switching_period = 60;
        config.settings.protocol.snr_db = 25.0;
        config.settings.record_trace = true;
        config.settings.attacker.trace_stride = 1;
    } else if (name == "fig2d") {
        config.sweep_variable = "snr_db";
        config.sweep_values = {15, 25, 35};
        config.settings.protocol.switching_period = 60;
        config.settings.protocol.ndr = 1.0;
        config.settings.record_trace = true;
        config.settings.attacker.trace_stride = 1;
    } else if (name == "fig2e") {
        config.sweep_variable = "switching_period";
        config.sweep_values = {1, 6, 12, 60, 120};
        config.settings.protocol.ndr = 1.0;
        config.settings.protocol.snr_db = 25.0;
    } else if (name == "fig3") {
        config.sweep_variable = "rho";
        config.sweep_values = {0.0, 0.2, 0.4, 0.6, 0.8, 0.95};
        config.secrecy_samples = 3'000'000;
    } else if (name == "table1_trend") {
        config.sweep_variable = "training_modes";
        config.sweep_values = {10, 20, 30, 40};
        config.num_environments = 20;
    } else if (name == "smoke") {
        config.num_environments = 1;
        config.settings.protocol.frames_per_coherence = 4;
        config.settings.protocol.switching_period = 2;
        config.settings.protocol.symbols_per_frame = 48;
        config.settings.protocol.subcarriers = 2;
        config.settings.protocol.num_training_modes = 16;
        config.settings.attacker.iterations = 20;
        config.secrecy_samples = 100'000;
        config.sweep_variable = "ndr";
        config.sweep_values = {1};
    } else {
        throw ConfigError("unknown scenario '" + name + "'");
    }
    return config;
}

// ---------------------------------------------------------------------------
// Config file parsing.

namespace {

struct ConfigEntry {
    std::string section;
    std::string key;
    std::string value;
    int line;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_list(const std::string& value) {
    std::vector<double> out;
    std::stringstream stream(value);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(std::stod(item));
        }
    }
    return out;
}

bool parse_bool(const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no") {
        return false;
    }
    throw ConfigError("expected boolean, got '" + value + "'");
}

void apply_entry(ExperimentConfig& config, const ConfigEntry& entry) {
    const std::string id = entry.section + "." + entry.key;
    auto& protocol = config.settings.protocol;
    auto& attacker = config.settings.attacker;
    try {
        if (id == "experiment.scenario") {
            config.scenario = entry.value;
        } else if (id == "experiment.seed") {
            config.seed = std::stoull(entry.value);
        } else if (id == "experiment.num_environments") {
            config.num_environments = std::stoi(entry.value);
        } else if (id == "experiment.workers") {
            config.workers = std::stoi(entry.value);
        } else if (id == "experiment.out_dir") {
            config.out_dir = entry.value;
        } else if (id == "experiment.quiet") {
            config.quiet = parse_bool(entry.value);
        } else if (id == "experiment.snr_values") {
            config.snr_values = parse_list(entry.value);
        } else if (id == "environment.n_a") {
            config.settings.n_a = std::stoi(entry.value);
        } else if (id == "environment.n_b") {
            config.settings.n_b = std::stoi(entry.value);
        } else if (id == "environment.n_e") {
            config.settings.n_e = std::stoi(entry.value);
        } else if (id == "environment.num_paths") {
            config.settings.num_paths = std::stoi(entry.value);
        } else if (id == "environment.pattern_family") {
            config.settings.pattern.family = entry.value;
        } else if (id == "environment.pattern_directivity") {
            config.settings.pattern.directivity = std::stod(entry.value);
        } else if (id == "environment.pattern_floor") {
            config.settings.pattern.floor = std::stod(entry.value);
        } else if (id == "environment.pattern_modes") {
            config.settings.pattern_modes = std::stoi(entry.value);
        } else if (id == "environment.pattern_angles") {
            config.settings.pattern_angles = std::stoi(entry.value);
        } else if (id == "protocol.training_modes") {
            protocol.num_training_modes = std::stoi(entry.value);
        } else if (id == "protocol.switching_period") {
            protocol.switching_period = std::stoi(entry.value);
        } else if (id == "protocol.frames_per_coherence") {
            protocol.frames_per_coherence = std::stoi(entry.value);
        } else if (id == "protocol.symbols_per_frame") {
            protocol.symbols_per_frame = std::stoi(entry.value);
        } else if (id == "protocol.subcarriers") {
            protocol.subcarriers = std::stoi(entry.value);
        } else if (id == "protocol.ndr") {
            protocol.ndr = std::stod(entry.value);
        } else if (id == "protocol.snr_db") {
            protocol.snr_db = std::stod(entry.value);
        } else if (id == "protocol.known_symbols_per_frame") {
            protocol.known_symbols_per_frame = std::stoi(entry.value);
        } else if (id == "protocol.feedback_noise_power") {
            protocol.feedback_noise_power = std::stod(entry.value);
        } else if (id == "attacker.step_size") {
            attacker.step_size = std::stod(entry.value);
        } else if (id == "attacker.iterations") {
            attacker.iterations = std::stoi(entry.value);
        } else if (id == "attacker.trace_stride") {
            attacker.trace_stride = std::stoi(entry.value);
        } else if (id == "sweep.variable") {
            config.sweep_variable = entry.value;
        } else if (id == "sweep.values") {
            config.sweep_values = parse_list(entry.value);
        } else if (id == "secrecy.samples") {
            config.secrecy_samples = std::stoull(entry.value);
        } else if (id == "secrecy.temporal_correlation") {
            config.temporal_correlation = std::stod(entry.value);
        } else if (id == "secrecy.replay_steps") {
            config.replay_steps = std::stoull(entry.value);
        } else if (id == "secrecy.replay_samples_per_step") {
            config.replay_samples_per_step = std::stoull(entry.value);
        } else {
            throw ConfigError("unknown config key '" + id + "' (line " +
                              std::to_string(entry.line) + ")");
        }
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad value for '" + id + "': '" + entry.value + "' (line " +
                          std::to_string(entry.line) + ")");
    } catch (const std::out_of_range&) {
        throw ConfigError("value out of range for '" + id + "' (line " +
                          std::to_string(entry.line) + ")");
    }
}

} // namespace

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::vector<ConfigEntry> entries;
    std::string section = "experiment";
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto equals = line.find('=');
        if (equals == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_number) +
                              ": expected key = value");
        }
        entries.push_back({section, trim(line.substr(0, equals)),
                           trim(line.substr(equals + 1)), line_number});
    }

    // The scenario preset seeds every other field.
    std::string scenario = "smoke";
    for (const auto& entry : entries) {
        if (entry.section == "experiment" && entry.key == "scenario") {
            scenario = entry.value;
        }
    }
    ExperimentConfig config = scenario_defaults(scenario);
    for (const auto& entry : entries) {
        apply_entry(config, entry);
    }
    config.validate();
    return config;
}

// ---------------------------------------------------------------------------
// Scenario execution.

namespace {

struct CheckFailure {
    std::string message;
};

class InvariantLog {
  public:
    void check(bool ok, const std::string& message) {
        if (!ok) {
            failures_.push_back(message);
        }
    }
    int report(const std::string& scenario) const {
        for (const auto& failure : failures_) {
            std::cerr << scenario << ": INVARIANT VIOLATION: " << failure << "\n";
        }
        return failures_.empty() ? 0 : 1;
    }

  private:
    std::vector<std::string> failures_;
};

std::string csv_path(const ExperimentConfig& config, const std::string& suffix) {
    std::filesystem::create_directories(config.out_dir);
    return (std::filesystem::path(config.out_dir) / (config.scenario + suffix)).string();
}

void print_point(const ExperimentConfig& config, const std::string& text) {
    if (!config.quiet) {
        std::cout << config.scenario << ": " << text << "\n";
    }
}

// Shared SER-sweep runner for fig2a/c/d/e and smoke.
int run_ser_sweep(const ExperimentConfig& config) {
    Stopwatch watch;
    InvariantLog log;

    CsvWriter main_csv(csv_path(config, ".csv"), config.scenario,
                       {"scenario", "seed", "parameter", "value", "bob_ser", "eve_ser",
                        "bob_ser_ob", "eve_ser_ob"});
    const bool traced = config.settings.record_trace;
    CsvWriter trace_csv(csv_path(config, "_trace.csv"), config.scenario,
                        {"scenario", "seed", "parameter", "value", "iteration", "eve_ser"});

    std::vector<double> improvements;
    for (double value : config.sweep_values) {
        ExperimentSettings settings = config.settings;
        apply_sweep_value(settings, config.sweep_variable, value);
        settings.protocol.seed = derive_seed(config.seed, 0x73776565ULL,
                                             static_cast<std::uint64_t>(value * 1024));
        const MetricsSummary summary =
            run_experiment(settings, config.num_environments, effective_workers(config));

        for (const auto& outcome : summary.per_environment) {
            main_csv.add_row({config.scenario, std::to_string(outcome.seed),
                              config.sweep_variable, format_number(value),
                              format_number(outcome.bob_ser), format_number(outcome.eve_ser),
                              format_number(outcome.baseline_bob_ser),
                              format_number(outcome.baseline_eve_ser)});
            if (traced) {
                const int stride = std::max(settings.attacker.trace_stride, 1);
                for (std::size_t k = 0; k < outcome.eve_trace.size(); ++k) {
                    trace_csv.add_row({config.scenario, std::to_string(outcome.seed),
                                       config.sweep_variable, format_number(value),
                                       std::to_string((k + 1) * static_cast<std::size_t>(stride)),
                                       format_number(outcome.eve_trace[k])});
                }
            }
            log.check(outcome.bob_ser >= 0.0 && outcome.bob_ser <= 1.0, "bob_ser in [0,1]");
            log.check(outcome.eve_ser >= 0.0 && outcome.eve_ser <= 1.0, "eve_ser in [0,1]");
        }
        if (settings.run_baseline) {
            improvements.push_back(summary.security_improvement);
            // Paired Monte-Carlo estimates; allow a small negative tolerance.
            log.check(summary.security_improvement >= -0.01,
                      "security improvement non-negative at " + config.sweep_variable + "=" +
                          format_number(value));
        }
        std::ostringstream status;
        status << config.sweep_variable << "=" << format_number(value)
               << "  bob_ser=" << format_number(summary.mean_bob_ser)
               << "  eve_ser=" << format_number(summary.mean_eve_ser);
        if (settings.run_baseline) {
            status << "  eve_ser_ob=" << format_number(summary.mean_baseline_eve_ser)
                   << "  improvement=" << format_number(summary.security_improvement);
        }
        print_point(config, status.str());
    }

    main_csv.flush(watch.elapsed_ms());
    if (traced) {
        trace_csv.flush(watch.elapsed_ms());
    }
    return log.report(config.scenario);
}

int run_fig2b(const ExperimentConfig& config) {
    Stopwatch watch;
    InvariantLog log;
    CsvWriter csv(csv_path(config, ".csv"), config.scenario,
                  {"scenario", "seed", "parameter", "value", "snr_db", "bob_ser", "eve_ser",
                   "bob_ser_ob", "eve_ser_ob"});
    for (double snr : config.snr_values) {
        for (double ndr : config.sweep_values) {
            ExperimentSettings settings = config.settings;
            settings.protocol.snr_db = snr;
            settings.protocol.ndr = ndr;
            settings.protocol.seed =
                derive_seed(config.seed, 0x66326221ULL, static_cast<std::uint64_t>(ndr * 64),
                            static_cast<std::uint64_t>(snr));
            const MetricsSummary summary = run_experiment(settings, config.num_environments,
                                                          effective_workers(config));
            for (const auto& outcome : summary.per_environment) {
                csv.add_row({config.scenario, std::to_string(outcome.seed), "ndr",
                             format_number(ndr), format_number(snr),
                             format_number(outcome.bob_ser), format_number(outcome.eve_ser),
                             format_number(outcome.baseline_bob_ser),
                             format_number(outcome.baseline_eve_ser)});
                log.check(outcome.bob_ser >= 0.0 && outcome.bob_ser <= 1.0,
                          "bob_ser in [0,1]");
            }
            print_point(config, "snr=" + format_number(snr) + " ndr=" + format_number(ndr) +
                                    "  bob_ser=" + format_number(summary.mean_bob_ser) +
                                    "  bob_ser_ob=" +
                                    format_number(summary.mean_baseline_bob_ser));
        }
    }
    csv.flush(watch.elapsed_ms());
    return log.report(config.scenario);
}

int run_fig3(const ExperimentConfig& config) {
    Stopwatch watch;
    InvariantLog log;
    CsvWriter csv(csv_path(config, ".csv"), config.scenario,
                  {"scenario", "seed", "rho", "leakage_bits", "n_samples",
                   "coverage_ratio"});
    double previous = -1.0;
    bool first = true;
    for (double rho : config.sweep_values) {
        MarkovChannelParams params;
        params.cross_correlation = rho;
        params.temporal_correlation = config.temporal_correlation;
        const std::uint64_t point_seed = derive_seed(config.seed, 0x66696733ULL);
        const CmiEstimate estimate = leakage_model(params, config.secrecy_samples,
                                                   point_seed, effective_workers(config));
        csv.add_row({config.scenario, std::to_string(point_seed), format_number(rho),
                     format_number(estimate.bits), std::to_string(estimate.samples),
                     format_number(estimate.coverage_ratio)});
        log.check(estimate.bits >= -0.01, "leakage >= -0.01 bits");
        log.check(estimate.bits <= 2.01, "leakage <= 2.01 bits");
        if (!first) {
            log.check(estimate.bits >= previous - 0.01,
                      "leakage non-decreasing in rho at rho=" + format_number(rho));
        }
        first = false;
        previous = estimate.bits;
        print_point(config, "rho=" + format_number(rho) +
                                "  leakage_bits=" + format_number(estimate.bits) +
                                "  coverage=" + format_number(estimate.coverage_ratio));
    }
    csv.flush(watch.elapsed_ms());
    return log.report(config.scenario);
}

int run_table1(const ExperimentConfig& config) {
    Stopwatch watch;
    InvariantLog log;
    CsvWriter csv(csv_path(config, ".csv"), config.scenario,
                  {"scenario", "seed", "training_modes", "leakage_bits", "n_samples",
                   "coverage_ratio"});

    const AntennaPattern pattern =
        make_pattern(config.settings.pattern, config.settings.pattern_modes,
                     config.settings.pattern_angles);

    for (double modes_value : config.sweep_values) {
        const int num_modes = static_cast<int>(modes_value);
        std::vector<ReplayTrace> traces;
        for (int e = 0; e < config.num_environments; ++e) {
            const std::uint64_t env_seed = derive_seed(
                config.seed, 0x74616231ULL, static_cast<std::uint64_t>(e));
            // Reduced single-antenna scheme: the secrecy metric's channel pair.
            const MultipathEnvironment env = synthesize_environment(
                env_seed, 1, 1, 1, config.settings.num_paths, config.settings.pattern_angles);

            const auto training_modes = select_training_modes(
                derive_seed(env_seed, 1), num_modes, pattern.num_modes);
            CVec measurements(static_cast<Eigen::Index>(training_modes.size()));
            for (std::size_t u = 0; u < training_modes.size(); ++u) {
                measurements(static_cast<Eigen::Index>(u)) =
                    csi_from_aod(env.ab(0, 0), pattern, training_modes[u]);
            }
            const SparseSolution solution =
                solve_bp(make_sensing_problem(pattern, training_modes, measurements));

            std::vector<int> free_modes;
            for (int u = 0; u < pattern.num_modes; ++u) {
                if (!std::binary_search(training_modes.begin(), training_modes.end(), u)) {
                    free_modes.push_back(u);
                }
            }
            Rng mode_rng(derive_seed(env_seed, 2));
            ReplayTrace trace;
            for (std::size_t t = 0; t < config.replay_steps; ++t) {
                const int mode =
                    free_modes[mode_rng.uniform_index(free_modes.size())];
                trace.h_ab.push_back(csi_from_aod(env.ab(0, 0), pattern, mode));
                trace.h_ae.push_back(csi_from_aod(env.ae(0, 0), pattern, mode));
                trace.h_ab_applied.push_back(predict_csi(solution, pattern, mode));
            }
            traces.push_back(std::move(trace));
        }
        const CmiEstimate estimate = replay_leakage(traces, config.replay_samples_per_step,
                                                    derive_seed(config.seed, 3));
        csv.add_row({config.scenario, std::to_string(config.seed),
                     std::to_string(num_modes), format_number(estimate.bits),
                     std::to_string(estimate.samples),
                     format_number(estimate.coverage_ratio)});
        log.check(estimate.bits >= -0.01 && estimate.bits <= 2.01,
                  "leakage within [0, 2] bits");
        print_point(config, "training_modes=" + std::to_string(num_modes) +
                                "  leakage_bits=" + format_number(estimate.bits));
    }
    csv.flush(watch.elapsed_ms());
    return log.report(config.scenario);
}

int run_smoke(const ExperimentConfig& config) {
    Stopwatch watch;
    InvariantLog log;

    // Full pipeline at a desk-toy scale, with direct transcript checks.
    ExperimentSettings settings = config.settings;
    settings.protocol.seed = derive_seed(config.seed, 0x736d6f6bULL);
    settings.record_trace = true;
    settings.attacker.trace_stride = 1;

    const AntennaPattern pattern =
        make_pattern(settings.pattern, settings.pattern_modes, settings.pattern_angles);
    const MultipathEnvironment env =
        synthesize_environment(derive_seed(settings.protocol.seed, 1), settings.n_a,
                               settings.n_b, settings.n_e, settings.num_paths,
                               settings.pattern_angles);
    const TrainingResult training = training_phase(env, pattern, settings.protocol);
    const TranscriptPair transcript =
        transmission_phase(env, pattern, training, settings.protocol);

    // S_1 and the modes actually used must be disjoint; modes change exactly
    // every T frames.
    for (int mode : transcript.modes_used) {
        log.check(!std::binary_search(training.training_modes.begin(),
                                      training.training_modes.end(), mode),
                  "transmit mode overlaps the training set");
    }
    for (std::size_t f = 0; f + 1 < transcript.modes_used.size(); ++f) {
        const bool boundary =
            ((f + 1) % static_cast<std::size_t>(settings.protocol.switching_period)) == 0;
        if (!boundary) {
            log.check(transcript.modes_used[f] == transcript.modes_used[f + 1],
                      "mode changed inside a switching block");
        }
    }

    const double bob = bob_ser(transcript);
    const EveOutcome eve = attack_transcript(transcript, settings.attacker);
    log.check(bob >= 0.0 && bob <= 1.0, "bob_ser in [0,1]");
    log.check(eve.final_ser >= 0.0 && eve.final_ser <= 1.0, "eve_ser in [0,1]");

    // Small leakage estimate exercises the secrecy path.
    MarkovChannelParams params;
    params.cross_correlation = 0.5;
    params.temporal_correlation = config.temporal_correlation;
    const CmiEstimate leakage =
        leakage_model(params, config.secrecy_samples, derive_seed(config.seed, 2),
                      effective_workers(config));
    log.check(leakage.bits >= -0.01 && leakage.bits <= 2.01, "leakage within bounds");

    // Determinism: the same seeds must reproduce the same numbers.
    const TranscriptPair transcript2 =
        transmission_phase(env, pattern, training, settings.protocol);
    log.check(bob == bob_ser(transcript2), "repeat run reproduces Bob SER");

    CsvWriter csv(csv_path(config, ".csv"), config.scenario,
                  {"scenario", "seed", "parameter", "value", "bob_ser", "eve_ser",
                   "leakage_bits"});
    csv.add_row({config.scenario, std::to_string(settings.protocol.seed), "ndr",
                 format_number(settings.protocol.ndr), format_number(bob),
                 format_number(eve.final_ser), format_number(leakage.bits)});
    csv.flush(watch.elapsed_ms());

    print_point(config, "bob_ser=" + format_number(bob) +
                            "  eve_ser=" + format_number(eve.final_ser) +
                            "  leakage_bits=" + format_number(leakage.bits));
    return log.report(config.scenario);
}

} // namespace

int run_scenario(const ExperimentConfig& config) {
    config.validate();
    const std::string& name = config.scenario;
    if (name == "fig2a" || name == "fig2c" || name == "fig2d" || name == "fig2e") {
        return run_ser_sweep(config);
    }
    if (name == "fig2b") {
        return run_fig2b(config);
    }
    if (name == "fig3") {
        return run_fig3(config);
    }
    if (name == "table1_trend") {
        return run_table1(config);
    }
    if (name == "smoke") {
        return run_smoke(config);
    }
    throw ConfigError("unknown scenario '" + name + "'");
}

} // namespace robin
