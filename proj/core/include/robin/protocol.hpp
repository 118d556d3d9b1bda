#pragma once

#include <cstdint>
#include <vector>

#include "robin/aod_cs.hpp"
#include "robin/attacker.hpp"
#include "robin/blinding.hpp"
#include "robin/channel.hpp"
#include "robin/types.hpp"

namespace robin {

struct ProtocolConfig {
    int num_training_modes = 20; // |S_1|
    int switching_period = 1;    // T: frames sent per antenna mode
    int frames_per_coherence = 120;
    int symbols_per_frame = 192;
    int subcarriers = 1;
    double ndr = 1.0;
    double snr_db = 25.0;
    int known_symbols_per_frame = 2;
    std::uint64_t seed = 0;
    double feedback_noise_power = 0.0; // additive noise on the fed-back CSI
    SolverOptions solver;

    void validate(int total_modes) const;
};

// Per-subcarrier, per-pair AoD estimates from the training phase.
struct TrainingResult {
    std::vector<int> training_modes; // S_1
    // solutions[s][i * n_a + j] estimates the (i, j) Alice-Bob pair of
    // subcarrier s.
    std::vector<std::vector<SparseSolution>> solutions;
    bool all_converged = true;

    CMat predict_h_ab(const AntennaPattern& pattern, int subcarrier, int mode, int n_b,
                      int n_a) const;
};

// Independent flat sub-channels sharing one environment geometry: index 0 is
// the environment itself, the rest re-draw the per-pair fading.
std::vector<MultipathEnvironment> subcarrier_environments(const MultipathEnvironment& env,
                                                          std::uint64_t seed,
                                                          int subcarriers);

TrainingResult training_phase(const MultipathEnvironment& env, const AntennaPattern& pattern,
                              const ProtocolConfig& config);

// Reception record of one coherence window. Frames whose predicted channel
// could not be inverted are dropped before emission, so every emitted frame
// is contiguous and SER accounting stays uniform.
struct TranscriptPair {
    std::vector<CMat> bob_received;          // per subcarrier, n_b x total
    std::vector<CMat> eve_received;          // per subcarrier, n_e x total
    std::vector<SymbolStream> ground_truth;  // per subcarrier
    std::vector<std::size_t> known_positions; // Eve's plaintext positions
    std::vector<int> modes_used;             // per emitted frame
    int symbols_per_frame = 0;
    int skipped_frames = 0;
};

TranscriptPair transmission_phase(const MultipathEnvironment& env,
                                  const AntennaPattern& pattern,
                                  const TrainingResult& training,
                                  const ProtocolConfig& config);

// Plain orthogonal blinding baseline: one fixed antenna mode for the whole
// coherence window and a transmit filter built from the measured (true)
// channel of that mode.
TranscriptPair baseline_transmission(const MultipathEnvironment& env,
                                     const AntennaPattern& pattern,
                                     const ProtocolConfig& config);

// Bob decodes every received symbol directly (no pilots, no equalizer).
double bob_ser(const TranscriptPair& transcript);

// Known-plaintext NLMS attack, one filter per subcarrier; returns the SER
// over unknown positions averaged across subcarriers, plus the averaged
// per-iteration trace when tracing is enabled.
struct EveOutcome {
    double final_ser = 1.0;
    std::vector<double> ser_trace;
};

EveOutcome attack_transcript(const TranscriptPair& transcript, const AttackConfig& attacker);

struct ExperimentSettings {
    int n_a = 2;
    int n_b = 1;
    int n_e = 2;
    int num_paths = 5;
    PatternSpec pattern;
    int pattern_modes = 360;
    int pattern_angles = 360;
    ProtocolConfig protocol;
    AttackConfig attacker;
    bool run_baseline = true;
    bool record_trace = false;
};

struct EnvironmentOutcome {
    std::uint64_t seed = 0;
    double bob_ser = 0.0;
    double eve_ser = 0.0;
    double baseline_bob_ser = 0.0;
    double baseline_eve_ser = 0.0;
    std::vector<double> eve_trace;
    bool training_converged = true;
    double mean_prediction_error = 0.0; // relative, over the transmit modes used
};

// Full pipeline for one seeded environment: synthesize, train, transmit,
// demodulate, attack, optionally run the measured-CSI baseline.
EnvironmentOutcome run_environment(const ExperimentSettings& settings,
                                   std::uint64_t environment_seed);

struct MetricsSummary {
    double mean_bob_ser = 0.0;
    double std_bob_ser = 0.0;
    double mean_eve_ser = 0.0;
    double std_eve_ser = 0.0;
    double mean_baseline_bob_ser = 0.0;
    double mean_baseline_eve_ser = 0.0;
    double security_improvement = 0.0; // (eve_robin - eve_baseline) / 0.75
    std::vector<double> mean_eve_trace;
    std::vector<EnvironmentOutcome> per_environment;
};

// num_environments seeded runs; per-environment seeds derive from the
// protocol seed, so results do not depend on the worker count.
MetricsSummary run_experiment(const ExperimentSettings& settings, int num_environments,
                              int workers = 1);

} // namespace robin
