#include "robin/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "robin/errors.hpp"

namespace robin {

namespace {

// Seed-derivation tags for the independent random streams of one run.
enum StreamTag : std::uint64_t {
    kTagTrainingModes = 1,
    kTagFeedback = 2,
    kTagSubcarrier = 3,
    kTagTransmitModes = 4,
    kTagData = 5,
    kTagArtificialNoise = 6,
    kTagChannelNoise = 7,
    kTagNullSpace = 8,
    kTagBaseline = 9,
};

// Average power of the data rows as Bob receives them with exact CSI; the
// SNR reference excludes artificial noise.
double received_data_power(double ndr) {
    return 2.0 / ((ndr + 1.0) * (ndr + 1.0));
}

} // namespace

void ProtocolConfig::validate(int total_modes) const {
    if (switching_period < 1 || switching_period > frames_per_coherence) {
        throw ConfigError("protocol: switching_period must be in [1, frames_per_coherence]");
    }
    if (num_training_modes < 0 || num_training_modes > total_modes) {
        throw ConfigError("protocol: training mode count out of range");
    }
    if (symbols_per_frame < 1 || frames_per_coherence < 1 || subcarriers < 1) {
        throw ConfigError("protocol: frame geometry must be positive");
    }
    if (known_symbols_per_frame < 0 || known_symbols_per_frame > symbols_per_frame) {
        throw ConfigError("protocol: known_symbols_per_frame out of range");
    }
    if (ndr < 0.0) {
        throw ConfigError("protocol: ndr must be >= 0");
    }
}

std::vector<MultipathEnvironment> subcarrier_environments(const MultipathEnvironment& env,
                                                          std::uint64_t seed,
                                                          int subcarriers) {
    std::vector<MultipathEnvironment> out;
    out.reserve(static_cast<std::size_t>(subcarriers));
    out.push_back(env);
    for (int s = 1; s < subcarriers; ++s) {
        out.push_back(regenerate_fading(
            env, derive_seed(seed, kTagSubcarrier, static_cast<std::uint64_t>(s))));
    }
    return out;
}

CMat TrainingResult::predict_h_ab(const AntennaPattern& pattern, int subcarrier, int mode,
                                  int n_b, int n_a) const {
    CMat h(n_b, n_a);
    const auto& pair_solutions = solutions[static_cast<std::size_t>(subcarrier)];
    for (int i = 0; i < n_b; ++i) {
        for (int j = 0; j < n_a; ++j) {
            h(i, j) = predict_csi(pair_solutions[static_cast<std::size_t>(i * n_a + j)],
                                  pattern, mode);
        }
    }
    return h;
}

TrainingResult training_phase(const MultipathEnvironment& env, const AntennaPattern& pattern,
                              const ProtocolConfig& config) {
    config.validate(pattern.num_modes);

    TrainingResult result;
    result.training_modes =
        select_training_modes(derive_seed(config.seed, kTagTrainingModes),
                              config.num_training_modes, pattern.num_modes);

    const auto sub_envs = subcarrier_environments(env, config.seed, config.subcarriers);
    Rng feedback_rng(derive_seed(config.seed, kTagFeedback));
    for (int s = 0; s < config.subcarriers; ++s) {
        std::vector<SparseSolution> pair_solutions;
        for (int i = 0; i < env.n_b; ++i) {
            for (int j = 0; j < env.n_a; ++j) {
                CVec measurements(static_cast<Eigen::Index>(result.training_modes.size()));
                for (std::size_t u = 0; u < result.training_modes.size(); ++u) {
                    cxd h = csi_from_aod(sub_envs[static_cast<std::size_t>(s)].ab(i, j),
                                         pattern, result.training_modes[u]);
                    if (config.feedback_noise_power > 0.0) {
                        h += std::sqrt(config.feedback_noise_power) *
                             feedback_rng.complex_gaussian();
                    }
                    measurements(static_cast<Eigen::Index>(u)) = h;
                }
                SparseSolution solution = solve_bp(
                    make_sensing_problem(pattern, result.training_modes, measurements),
                    config.solver);
                result.all_converged = result.all_converged && solution.converged;
                pair_solutions.push_back(std::move(solution));
            }
        }
        result.solutions.push_back(std::move(pair_solutions));
    }
    return result;
}

namespace {

// Shared frame loop for the randomized scheme and the static baseline. The
// per-block filter builder returns false to flag the block as unusable.
template <typename FilterForBlock>
TranscriptPair run_frames(const MultipathEnvironment& env, const AntennaPattern& pattern,
                          const ProtocolConfig& config, const std::vector<int>& block_modes,
                          std::uint64_t stream_seed, FilterForBlock&& filter_for_block) {
    const int n_b = env.n_b;
    const int n_e = env.n_e;
    const int frames = config.frames_per_coherence;
    const int per_frame = config.symbols_per_frame;
    const auto sub_envs = subcarrier_environments(env, config.seed, config.subcarriers);

    const double noise_power =
        noise_power_for_snr(received_data_power(config.ndr), config.snr_db);

    TranscriptPair transcript;
    transcript.symbols_per_frame = per_frame;

    struct SubcarrierState {
        std::vector<CMat> bob_frames;
        std::vector<CMat> eve_frames;
        SymbolStream truth;
    };
    std::vector<SubcarrierState> states(static_cast<std::size_t>(config.subcarriers));

    Rng data_rng(derive_seed(stream_seed, kTagData));
    Rng an_rng(derive_seed(stream_seed, kTagArtificialNoise));
    Rng noise_rng(derive_seed(stream_seed, kTagChannelNoise));

    // Per-subcarrier filters for the current block.
    std::vector<BlindingFilter> filters(static_cast<std::size_t>(config.subcarriers));
    std::vector<Csi> true_ab(static_cast<std::size_t>(config.subcarriers));
    std::vector<Csi> true_ae(static_cast<std::size_t>(config.subcarriers));
    bool block_ok = false;

    int emitted_frames = 0;
    for (int frame = 0; frame < frames; ++frame) {
        const int block = frame / config.switching_period;
        if (frame % config.switching_period == 0) {
            const int mode = block_modes[static_cast<std::size_t>(block)];
            block_ok = true;
            for (int s = 0; s < config.subcarriers; ++s) {
                const auto& sub = sub_envs[static_cast<std::size_t>(s)];
                true_ab[static_cast<std::size_t>(s)] = channel_matrix(sub, pattern, mode, Link::AB);
                true_ae[static_cast<std::size_t>(s)] = channel_matrix(sub, pattern, mode, Link::AE);
                try {
                    filters[static_cast<std::size_t>(s)] = filter_for_block(s, mode);
                } catch (const SingularError&) {
                    block_ok = false;
                }
            }
        }
        if (!block_ok) {
            ++transcript.skipped_frames;
            continue;
        }

        for (int s = 0; s < config.subcarriers; ++s) {
            auto& state = states[static_cast<std::size_t>(s)];
            CMat data(n_b, per_frame);
            for (int i = 0; i < n_b; ++i) {
                for (int t = 0; t < per_frame; ++t) {
                    data(i, t) = data_rng.qam_symbol();
                }
            }
            const CMat transmitted =
                encode(filters[static_cast<std::size_t>(s)].f_a, data, config.ndr, an_rng);
            state.bob_frames.push_back(add_awgn(
                true_ab[static_cast<std::size_t>(s)].matrix * transmitted, noise_power,
                noise_rng));
            state.eve_frames.push_back(add_awgn(
                true_ae[static_cast<std::size_t>(s)].matrix * transmitted, noise_power,
                noise_rng));
            for (int t = 0; t < per_frame; ++t) {
                state.truth.symbols.push_back(data(0, t));
            }
        }
        transcript.modes_used.push_back(block_modes[static_cast<std::size_t>(block)]);
        ++emitted_frames;
    }

    const Eigen::Index total = static_cast<Eigen::Index>(emitted_frames) * per_frame;
    for (int s = 0; s < config.subcarriers; ++s) {
        auto& state = states[static_cast<std::size_t>(s)];
        CMat bob(n_b, total);
        CMat eve(n_e, total);
        for (int f = 0; f < emitted_frames; ++f) {
            bob.middleCols(static_cast<Eigen::Index>(f) * per_frame, per_frame) =
                state.bob_frames[static_cast<std::size_t>(f)];
            eve.middleCols(static_cast<Eigen::Index>(f) * per_frame, per_frame) =
                state.eve_frames[static_cast<std::size_t>(f)];
        }
        transcript.bob_received.push_back(std::move(bob));
        transcript.eve_received.push_back(std::move(eve));
        transcript.ground_truth.push_back(std::move(state.truth));
    }

    for (int f = 0; f < emitted_frames; ++f) {
        for (int k = 0; k < config.known_symbols_per_frame; ++k) {
            transcript.known_positions.push_back(
                static_cast<std::size_t>(f) * static_cast<std::size_t>(per_frame) +
                static_cast<std::size_t>(k));
        }
    }
    return transcript;
}

} // namespace

TranscriptPair transmission_phase(const MultipathEnvironment& env,
                                  const AntennaPattern& pattern,
                                  const TrainingResult& training,
                                  const ProtocolConfig& config) {
    config.validate(pattern.num_modes);
    if (env.n_b != 1) {
        throw ContractError("transmission_phase: transcripts model a single-antenna Bob");
    }

    // S_2: distinct transmit modes outside S_1, one per block.
    const int blocks = (config.frames_per_coherence + config.switching_period - 1) /
                       config.switching_period;
    if (config.num_training_modes + blocks > pattern.num_modes) {
        throw ConfigError(
            "transmission_phase: not enough antenna modes for disjoint S_1 and S_2");
    }
    std::vector<int> available;
    for (int u = 0; u < pattern.num_modes; ++u) {
        if (!std::binary_search(training.training_modes.begin(),
                                training.training_modes.end(), u)) {
            available.push_back(u);
        }
    }
    Rng mode_rng(derive_seed(config.seed, kTagTransmitModes));
    std::vector<int> block_modes;
    for (int b = 0; b < blocks; ++b) {
        const std::size_t pick = mode_rng.uniform_index(available.size());
        block_modes.push_back(available[pick]);
        available.erase(available.begin() + static_cast<std::ptrdiff_t>(pick));
    }

    return run_frames(env, pattern, config, block_modes, config.seed,
                      [&](int subcarrier, int mode) {
                          const CMat predicted = training.predict_h_ab(
                              pattern, subcarrier, mode, env.n_b, env.n_a);
                          return build_blinding_filter(
                              predicted,
                              derive_seed(config.seed, kTagNullSpace,
                                          static_cast<std::uint64_t>(mode),
                                          static_cast<std::uint64_t>(subcarrier)));
                      });
}

TranscriptPair baseline_transmission(const MultipathEnvironment& env,
                                     const AntennaPattern& pattern,
                                     const ProtocolConfig& config) {
    config.validate(pattern.num_modes);
    if (env.n_b != 1) {
        throw ContractError("baseline_transmission: transcripts model a single-antenna Bob");
    }
    Rng mode_rng(derive_seed(config.seed, kTagBaseline));
    const int mode = static_cast<int>(mode_rng.uniform_index(pattern.num_modes));
    const int blocks = (config.frames_per_coherence + config.switching_period - 1) /
                       config.switching_period;
    const std::vector<int> block_modes(static_cast<std::size_t>(blocks), mode);

    const auto sub_envs = subcarrier_environments(env, config.seed, config.subcarriers);
    return run_frames(env, pattern, config, block_modes,
                      derive_seed(config.seed, kTagBaseline),
                      [&](int subcarrier, int block_mode) {
                          const CMat measured =
                              channel_matrix(sub_envs[static_cast<std::size_t>(subcarrier)],
                                             pattern, block_mode, Link::AB)
                                  .matrix;
                          return build_blinding_filter(
                              measured,
                              derive_seed(config.seed, kTagNullSpace, kTagBaseline,
                                          static_cast<std::uint64_t>(subcarrier)));
                      });
}

double bob_ser(const TranscriptPair& transcript) {
    std::size_t errors = 0;
    std::size_t total = 0;
    for (std::size_t s = 0; s < transcript.bob_received.size(); ++s) {
        const CMat& received = transcript.bob_received[s];
        const SymbolStream& truth = transcript.ground_truth[s];
        for (Eigen::Index t = 0; t < received.cols(); ++t) {
            const cxd decoded = demodulate_symbol(received(0, t));
            if (decoded != truth.symbols[static_cast<std::size_t>(t)]) {
                ++errors;
            }
            ++total;
        }
    }
    return total > 0 ? static_cast<double>(errors) / static_cast<double>(total) : 0.0;
}

EveOutcome attack_transcript(const TranscriptPair& transcript, const AttackConfig& attacker) {
    EveOutcome outcome;
    double ser_sum = 0.0;
    std::vector<double> trace_sum;
    for (std::size_t s = 0; s < transcript.eve_received.size(); ++s) {
        std::vector<KnownSymbol> known;
        known.reserve(transcript.known_positions.size());
        for (std::size_t position : transcript.known_positions) {
            known.push_back({position, transcript.ground_truth[s].symbols[position]});
        }
        const AttackResult result = train_and_attack(transcript.eve_received[s], known,
                                                     transcript.ground_truth[s], attacker);
        ser_sum += result.final_ser;
        if (trace_sum.empty()) {
            trace_sum = result.ser_trace;
        } else {
            for (std::size_t k = 0; k < trace_sum.size(); ++k) {
                trace_sum[k] += result.ser_trace[k];
            }
        }
    }
    const double subcarriers = static_cast<double>(transcript.eve_received.size());
    outcome.final_ser = ser_sum / subcarriers;
    for (double value : trace_sum) {
        outcome.ser_trace.push_back(value / subcarriers);
    }
    return outcome;
}

EnvironmentOutcome run_environment(const ExperimentSettings& settings,
                                   std::uint64_t environment_seed) {
    EnvironmentOutcome outcome;
    outcome.seed = environment_seed;

    const AntennaPattern pattern =
        make_pattern(settings.pattern, settings.pattern_modes, settings.pattern_angles);
    const MultipathEnvironment env = synthesize_environment(
        environment_seed, settings.n_a, settings.n_b, settings.n_e, settings.num_paths,
        settings.pattern_angles);

    ProtocolConfig config = settings.protocol;
    config.seed = derive_seed(environment_seed, 0x70726f74ULL);

    AttackConfig attacker = settings.attacker;
    if (!settings.record_trace) {
        attacker.trace_stride = 0;
    }

    const TrainingResult training = training_phase(env, pattern, config);
    outcome.training_converged = training.all_converged;

    const TranscriptPair transcript = transmission_phase(env, pattern, training, config);
    outcome.bob_ser = bob_ser(transcript);
    const EveOutcome eve = attack_transcript(transcript, attacker);
    outcome.eve_ser = eve.final_ser;
    outcome.eve_trace = eve.ser_trace;

    // Relative prediction error over the modes actually used for transmission.
    {
        double error_sum = 0.0;
        int counted = 0;
        std::vector<int> distinct_modes(transcript.modes_used);
        std::sort(distinct_modes.begin(), distinct_modes.end());
        distinct_modes.erase(std::unique(distinct_modes.begin(), distinct_modes.end()),
                             distinct_modes.end());
        for (int mode : distinct_modes) {
            const CMat predicted =
                training.predict_h_ab(pattern, 0, mode, env.n_b, env.n_a);
            const CMat truth = channel_matrix(env, pattern, mode, Link::AB).matrix;
            const double scale = truth.norm();
            if (scale > 0.0) {
                error_sum += (predicted - truth).norm() / scale;
                ++counted;
            }
        }
        outcome.mean_prediction_error =
            counted > 0 ? error_sum / static_cast<double>(counted) : 0.0;
    }

    if (settings.run_baseline) {
        const TranscriptPair baseline = baseline_transmission(env, pattern, config);
        outcome.baseline_bob_ser = bob_ser(baseline);
        AttackConfig baseline_attacker = settings.attacker;
        baseline_attacker.trace_stride = 0;
        outcome.baseline_eve_ser = attack_transcript(baseline, baseline_attacker).final_ser;
    }
    return outcome;
}

MetricsSummary run_experiment(const ExperimentSettings& settings, int num_environments,
                              int workers) {
    MetricsSummary summary;
    summary.per_environment.resize(static_cast<std::size_t>(num_environments));

    auto run_one = [&](int index) {
        const std::uint64_t env_seed =
            derive_seed(settings.protocol.seed, 0x656e7673ULL,
                        static_cast<std::uint64_t>(index));
        summary.per_environment[static_cast<std::size_t>(index)] =
            run_environment(settings, env_seed);
    };

    if (workers <= 1) {
        for (int i = 0; i < num_environments; ++i) {
            run_one(i);
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        const int pool_size = std::min(workers, num_environments);
        for (int w = 0; w < pool_size; ++w) {
            pool.emplace_back([&]() {
                for (int i = next.fetch_add(1); i < num_environments;
                     i = next.fetch_add(1)) {
                    run_one(i);
                }
            });
        }
        for (auto& thread : pool) {
            thread.join();
        }
    }

    const double n = static_cast<double>(num_environments);
    for (const auto& outcome : summary.per_environment) {
        summary.mean_bob_ser += outcome.bob_ser;
        summary.mean_eve_ser += outcome.eve_ser;
        summary.mean_baseline_bob_ser += outcome.baseline_bob_ser;
        summary.mean_baseline_eve_ser += outcome.baseline_eve_ser;
    }
    summary.mean_bob_ser /= n;
    summary.mean_eve_ser /= n;
    summary.mean_baseline_bob_ser /= n;
    summary.mean_baseline_eve_ser /= n;
    for (const auto& outcome : summary.per_environment) {
        summary.std_bob_ser += std::pow(outcome.bob_ser - summary.mean_bob_ser, 2);
        summary.std_eve_ser += std::pow(outcome.eve_ser - summary.mean_eve_ser, 2);
    }
    if (num_environments > 1) {
        summary.std_bob_ser = std::sqrt(summary.std_bob_ser / (n - 1.0));
        summary.std_eve_ser = std::sqrt(summary.std_eve_ser / (n - 1.0));
    } else {
        summary.std_bob_ser = 0.0;
        summary.std_eve_ser = 0.0;
    }
    summary.security_improvement =
        (summary.mean_eve_ser - summary.mean_baseline_eve_ser) / 0.75;

    // Mean per-iteration trace across environments (when recorded).
    std::size_t trace_length = 0;
    for (const auto& outcome : summary.per_environment) {
        trace_length = std::max(trace_length, outcome.eve_trace.size());
    }
    if (trace_length > 0) {
        summary.mean_eve_trace.assign(trace_length, 0.0);
        std::vector<int> counts(trace_length, 0);
        for (const auto& outcome : summary.per_environment) {
            for (std::size_t k = 0; k < outcome.eve_trace.size(); ++k) {
                summary.mean_eve_trace[k] += outcome.eve_trace[k];
                ++counts[k];
            }
        }
        for (std::size_t k = 0; k < trace_length; ++k) {
            summary.mean_eve_trace[k] /= static_cast<double>(counts[k]);
        }
    }
    return summary;
}

} // namespace robin
