#include "robin/secrecy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <thread>
#include <utility>

#include "robin/errors.hpp"

namespace robin {

double quantize_part(double value) {
    if (value < -1.0) {
        return -1.5;
    }
    if (value < 0.0) {
        return -0.5;
    }
    if (value < 1.0) {
        return 0.5;
    }
    return 1.5;
}

cxd quantize(cxd value) {
    return {quantize_part(value.real()), quantize_part(value.imag())};
}

int quantize_code_part(double value) {
    if (value < -1.0) {
        return 0;
    }
    if (value < 0.0) {
        return 1;
    }
    if (value < 1.0) {
        return 2;
    }
    return 3;
}

int quantize_code(cxd value) {
    return (quantize_code_part(value.real()) << 2) | quantize_code_part(value.imag());
}

namespace {

int qam_code(cxd symbol) {
    return ((symbol.real() < 0.0) ? 2 : 0) | ((symbol.imag() < 0.0) ? 1 : 0);
}

// One autoregressive chain pair (AB part, AE part) with truncation by
// resampling. AR(1) for the Markov kind; AR(2) for the negative control.
class PartChain {
  public:
    PartChain(const MarkovChannelParams& params, Rng& rng) : params_(params) {
        const double rho1 = lag1_correlation();
        // Stationary start: (t-1, t) pairs for both channels.
        do {
            const double g1 = rng.gaussian();
            const double g2 = rng.gaussian();
            ab_prev2_ = g1;
            ae_prev2_ = params_.cross_correlation * g1 +
                        std::sqrt(1.0 - square(params_.cross_correlation)) * g2;
        } while (!in_range(ab_prev2_) || !in_range(ae_prev2_));
        do {
            const double e1 = rng.gaussian();
            const double e2 = rng.gaussian();
            const double w_ab = e1;
            const double w_ae = params_.cross_correlation * e1 +
                                std::sqrt(1.0 - square(params_.cross_correlation)) * e2;
            const double spread = std::sqrt(1.0 - square(rho1));
            ab_prev_ = rho1 * ab_prev2_ + spread * w_ab;
            ae_prev_ = rho1 * ae_prev2_ + spread * w_ae;
        } while (!in_range(ab_prev_) || !in_range(ae_prev_));
    }

    // Advance one step; returns (ab, ae) at the new time.
    std::pair<double, double> step(Rng& rng) {
        double ab = 0.0;
        double ae = 0.0;
        do {
            const double e1 = rng.gaussian();
            const double e2 = rng.gaussian();
            const double w_ab = e1;
            const double w_ae = params_.cross_correlation * e1 +
                                std::sqrt(1.0 - square(params_.cross_correlation)) * e2;
            if (params_.kind == ChainKind::NonMarkov) {
                const double a = ar1_weight();
                const double b = params_.ar2_coefficient;
                const double sigma = innovation_sigma();
                ab = a * ab_prev_ + b * ab_prev2_ + sigma * w_ab;
                ae = a * ae_prev_ + b * ae_prev2_ + sigma * w_ae;
            } else {
                const double rho_t = params_.temporal_correlation;
                const double spread = std::sqrt(1.0 - square(rho_t));
                ab = rho_t * ab_prev_ + spread * w_ab;
                ae = rho_t * ae_prev_ + spread * w_ae;
            }
        } while (!in_range(ab) || !in_range(ae));
        ab_prev2_ = ab_prev_;
        ae_prev2_ = ae_prev_;
        ab_prev_ = ab;
        ae_prev_ = ae;
        return {ab, ae};
    }

    double ab_current() const { return ab_prev_; }
    double ae_current() const { return ae_prev_; }
    double ab_previous() const { return ab_prev2_; }
    double ae_previous() const { return ae_prev2_; }

  private:
    static double square(double x) { return x * x; }
    bool in_range(double x) const {
        return x > params_.truncation_lo && x < params_.truncation_hi;
    }
    double ar1_weight() const {
        return params_.kind == ChainKind::NonMarkov ? 0.3 : params_.temporal_correlation;
    }
    double lag1_correlation() const {
        if (params_.kind == ChainKind::NonMarkov) {
            return ar1_weight() / (1.0 - params_.ar2_coefficient);
        }
        return params_.temporal_correlation;
    }
    // Innovation scale that keeps the AR(2) stationary variance at one.
    double innovation_sigma() const {
        const double a = ar1_weight();
        const double b = params_.ar2_coefficient;
        const double variance = (1.0 + b) * ((1.0 - b) * (1.0 - b) - a * a) / (1.0 - b);
        return std::sqrt(std::max(variance, 1e-12));
    }

    const MarkovChannelParams& params_;
    double ab_prev_ = 0.0;
    double ae_prev_ = 0.0;
    double ab_prev2_ = 0.0;
    double ae_prev2_ = 0.0;
};

// Full complex chain: independent real and imaginary part chains.
class ChainSampler {
  public:
    ChainSampler(const MarkovChannelParams& params, Rng& rng)
        : re_(params, rng), im_(params, rng), params_(params) {}

    std::pair<cxd, cxd> current() const {
        if (params_.kind == ChainKind::Constant) {
            return {params_.constant_value, params_.constant_value};
        }
        return {cxd(re_.ab_current(), im_.ab_current()),
                cxd(re_.ae_current(), im_.ae_current())};
    }

    std::pair<cxd, cxd> step(Rng& rng) {
        if (params_.kind == ChainKind::Constant) {
            return {params_.constant_value, params_.constant_value};
        }
        const auto re = re_.step(rng);
        const auto im = im_.step(rng);
        return {cxd(re.first, im.first), cxd(re.second, im.second)};
    }

  private:
    PartChain re_;
    PartChain im_;
    const MarkovChannelParams& params_;
};

} // namespace

std::vector<ChannelPairSample> sample_chain(const MarkovChannelParams& params, int length,
                                            std::uint64_t seed) {
    if (params.cross_correlation < 0.0 || params.cross_correlation > 1.0 ||
        params.temporal_correlation < 0.0 || params.temporal_correlation >= 1.0) {
        throw ConfigError("sample_chain: correlations must satisfy rho in [0,1], rho_t in [0,1)");
    }
    std::vector<ChannelPairSample> out;
    if (length <= 0) {
        return out;
    }
    out.reserve(static_cast<std::size_t>(length));
    Rng rng(seed);
    ChainSampler sampler(params, rng);
    auto [ab0, ae0] = sampler.current();
    out.push_back({ab0, ae0});
    for (int t = 1; t < length; ++t) {
        auto [ab, ae] = sampler.step(rng);
        out.push_back({ab, ae});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conditional mutual information from packed integer codes.
// Key layout: [condition | r(4 bits) | d(2 bits)].

void CmiAccumulator::add(int d_code, int r_code, std::uint64_t condition_code) {
    keys_.push_back((condition_code << 6) | (static_cast<std::uint64_t>(r_code) << 2) |
                    static_cast<std::uint64_t>(d_code));
}

void CmiAccumulator::merge(const CmiAccumulator& other) {
    keys_.insert(keys_.end(), other.keys_.begin(), other.keys_.end());
}

namespace {

struct CountedCells {
    std::vector<std::uint64_t> keys;
    std::vector<std::uint32_t> counts;
};

CountedCells run_length_count(std::vector<std::uint64_t> keys) {
    std::sort(keys.begin(), keys.end());
    CountedCells cells;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) {
            ++j;
        }
        cells.keys.push_back(keys[i]);
        cells.counts.push_back(static_cast<std::uint32_t>(j - i));
        i = j;
    }
    return cells;
}

std::uint32_t lookup(const CountedCells& cells, std::uint64_t key) {
    const auto it = std::lower_bound(cells.keys.begin(), cells.keys.end(), key);
    return cells.counts[static_cast<std::size_t>(it - cells.keys.begin())];
}

} // namespace

CmiEstimate CmiAccumulator::estimate() const {
    CmiEstimate result;
    result.samples = keys_.size();
    if (keys_.empty()) {
        return result;
    }
    const double n = static_cast<double>(keys_.size());

    const CountedCells joint = run_length_count(keys_);

    auto project = [&](std::uint64_t keep_r, std::uint64_t keep_d) {
        std::vector<std::uint64_t> projected;
        projected.reserve(joint.keys.size());
        for (std::size_t i = 0; i < joint.keys.size(); ++i) {
            const std::uint64_t key = joint.keys[i];
            const std::uint64_t condition = key >> 6;
            const std::uint64_t r = (key >> 2) & 0xF;
            const std::uint64_t d = key & 0x3;
            projected.push_back((condition << 6) | (keep_r ? (r << 2) : 0) |
                                (keep_d ? d : 0));
        }
        // Counts must be aggregated, not just deduplicated.
        std::vector<std::size_t> order(projected.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return projected[a] < projected[b];
        });
        CountedCells cells;
        for (std::size_t i = 0; i < order.size();) {
            std::size_t j = i;
            std::uint32_t total = 0;
            while (j < order.size() && projected[order[j]] == projected[order[i]]) {
                total += joint.counts[order[j]];
                ++j;
            }
            cells.keys.push_back(projected[order[i]]);
            cells.counts.push_back(total);
            i = j;
        }
        return cells;
    };

    const CountedCells dc = project(0, 1);
    const CountedCells rc = project(1, 0);
    const CountedCells c = project(0, 0);

    double plugin = 0.0;
    for (std::size_t i = 0; i < joint.keys.size(); ++i) {
        const std::uint64_t key = joint.keys[i];
        const double n_drc = joint.counts[i];
        const double n_dc = lookup(dc, key & ~0x3CULL);
        const double n_rc = lookup(rc, key & ~0x3ULL);
        const double n_c = lookup(c, key & ~0x3FULL);
        plugin += n_drc * std::log2((n_drc * n_c) / (n_dc * n_rc));
    }
    plugin /= n;

    result.plugin_bits = plugin;
    // First-order (Miller-Madow style) bias correction from observed cell counts.
    const double k_correction =
        (static_cast<double>(dc.keys.size()) + static_cast<double>(rc.keys.size()) -
         static_cast<double>(joint.keys.size()) - static_cast<double>(c.keys.size()));
    result.bits = plugin + k_correction / (2.0 * n * std::log(2.0));

    // Observed per-coordinate alphabets.
    std::vector<std::uint64_t> d_values;
    std::vector<std::uint64_t> r_values;
    for (std::size_t i = 0; i < joint.keys.size(); ++i) {
        d_values.push_back(joint.keys[i] & 0x3);
        r_values.push_back((joint.keys[i] >> 2) & 0xF);
    }
    std::sort(d_values.begin(), d_values.end());
    d_values.erase(std::unique(d_values.begin(), d_values.end()), d_values.end());
    std::sort(r_values.begin(), r_values.end());
    r_values.erase(std::unique(r_values.begin(), r_values.end()), r_values.end());

    result.distinct_conditions = c.keys.size();
    const double alphabet = static_cast<double>(d_values.size()) *
                            static_cast<double>(r_values.size()) *
                            static_cast<double>(c.keys.size());
    result.coverage_ratio = n / (100.0 * alphabet);
    result.undersampled = result.coverage_ratio < 1.0;
    return result;
}

CmiEstimate estimate_cmi(const std::vector<DiscretizedSample>& samples) {
    CmiAccumulator accumulator;
    for (const DiscretizedSample& s : samples) {
        const std::uint64_t condition =
            (static_cast<std::uint64_t>(quantize_code(s.delta_h[0])) << 8) |
            (static_cast<std::uint64_t>(quantize_code(s.delta_h[1])) << 4) |
            static_cast<std::uint64_t>(quantize_code(s.delta_h[2]));
        accumulator.add(qam_code(s.d_b), quantize_code(s.r_e), condition);
    }
    CmiEstimate estimate = accumulator.estimate();
    if (estimate.undersampled) {
        std::cerr << "estimate_cmi: undersampled joint alphabet, coverage ratio "
                  << estimate.coverage_ratio << "\n";
    }
    return estimate;
}

// ---------------------------------------------------------------------------
// Leakage model.

namespace {

constexpr int kLogicalShards = 64;

std::size_t shard_samples(std::size_t total, int shard) {
    const std::size_t base = total / kLogicalShards;
    const std::size_t extra = total % kLogicalShards;
    return base + (static_cast<std::size_t>(shard) < extra ? 1 : 0);
}

cxd draw_qam(Rng& rng) {
    return rng.qam_symbol();
}

} // namespace

CmiEstimate leakage_model(const MarkovChannelParams& params, std::size_t n_samples,
                          std::uint64_t seed, int workers, double awgn_power) {
    std::vector<CmiAccumulator> shards(kLogicalShards);
    auto run_shard = [&](int shard) {
        Rng rng(derive_seed(seed, {0x6c65616bULL, static_cast<std::uint64_t>(shard)}));
        CmiAccumulator& acc = shards[static_cast<std::size_t>(shard)];
        const std::size_t count = shard_samples(n_samples, shard);
        for (std::size_t i = 0; i < count; ++i) {
            // Fresh two-step window per sample: stationary (T-1), one step to T.
            ChainSampler chain(params, rng);
            const auto [ab_prev, ae_prev] = chain.current();
            const auto [ab_now, ae_now] = chain.step(rng);
            if (std::abs(ab_now) == 0.0) {
                --i; // degenerate draw; the truncation resampler makes this rare
                continue;
            }
            const cxd message = draw_qam(rng);
            cxd reception = message / ab_now;
            if (awgn_power > 0.0) {
                reception += std::sqrt(awgn_power) * rng.complex_gaussian();
            }
            const std::uint64_t condition =
                (static_cast<std::uint64_t>(quantize_code(ab_prev)) << 8) |
                (static_cast<std::uint64_t>(quantize_code(ae_prev)) << 4) |
                static_cast<std::uint64_t>(quantize_code(ae_now));
            acc.add(qam_code(message), quantize_code(reception), condition);
        }
    };

    if (workers <= 1) {
        for (int shard = 0; shard < kLogicalShards; ++shard) {
            run_shard(shard);
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (int shard = next.fetch_add(1); shard < kLogicalShards;
                     shard = next.fetch_add(1)) {
                    run_shard(shard);
                }
            });
        }
        for (auto& thread : pool) {
            thread.join();
        }
    }

    CmiAccumulator merged;
    for (const auto& shard : shards) {
        merged.merge(shard);
    }
    CmiEstimate estimate = merged.estimate();
    if (estimate.undersampled) {
        std::cerr << "leakage_model: undersampled joint alphabet, coverage ratio "
                  << estimate.coverage_ratio << "\n";
    }
    return estimate;
}

// ---------------------------------------------------------------------------
// History-simplification verification.

namespace {

struct VerificationSample {
    std::uint8_t d_code;
    std::uint8_t r_code;
    std::uint16_t delta_code; // 12 bits: (h_AB(T-1), h_AE(T-1), h_AE(T))
    std::uint32_t extra_code; // 8 bits per extra history step
};

std::vector<VerificationSample> draw_verification_samples(const MarkovChannelParams& params,
                                                          std::size_t n_samples, int depth,
                                                          std::uint64_t seed) {
    std::vector<VerificationSample> samples;
    samples.reserve(n_samples);
    Rng rng(derive_seed(seed, {0x76657269ULL}));
    const int steps = depth; // window covers t = T-depth .. T
    for (std::size_t i = 0; i < n_samples; ++i) {
        ChainSampler chain(params, rng);
        std::vector<cxd> ab(static_cast<std::size_t>(steps) + 1);
        std::vector<cxd> ae(static_cast<std::size_t>(steps) + 1);
        auto [ab0, ae0] = chain.current();
        ab[0] = ab0;
        ae[0] = ae0;
        for (int t = 1; t <= steps; ++t) {
            auto [ab_t, ae_t] = chain.step(rng);
            ab[static_cast<std::size_t>(t)] = ab_t;
            ae[static_cast<std::size_t>(t)] = ae_t;
        }
        const cxd h_now = ab[static_cast<std::size_t>(steps)];
        if (std::abs(h_now) == 0.0) {
            --i;
            continue;
        }
        const cxd message = draw_qam(rng);
        const cxd reception = message / h_now;

        VerificationSample sample;
        sample.d_code = static_cast<std::uint8_t>(qam_code(message));
        sample.r_code = static_cast<std::uint8_t>(quantize_code(reception));
        const int t_prev = steps - 1;
        sample.delta_code = static_cast<std::uint16_t>(
            (quantize_code(ab[static_cast<std::size_t>(t_prev)]) << 8) |
            (quantize_code(ae[static_cast<std::size_t>(t_prev)]) << 4) |
            quantize_code(ae[static_cast<std::size_t>(steps)]));
        // Extra history: (h_AB(t), h_AE(t)) for t = T-2 .. T-depth.
        std::uint32_t extra = 0;
        for (int t = t_prev - 1; t >= 0; --t) {
            extra = (extra << 4) |
                    static_cast<std::uint32_t>(quantize_code(ab[static_cast<std::size_t>(t)]));
            extra = (extra << 4) |
                    static_cast<std::uint32_t>(quantize_code(ae[static_cast<std::size_t>(t)]));
        }
        sample.extra_code = extra;
        samples.push_back(sample);
    }
    return samples;
}

// Gap between the full-history and delta_H estimates over `indices`. The
// delta_H side conditions on (delta_H, extra permuted within the delta_H
// stratum), which equals I(D;R|delta_H) in population and reproduces the
// full-history estimator's finite-sample bias exactly.
double history_gap(const std::vector<VerificationSample>& samples,
                   const std::vector<std::uint32_t>& indices, std::uint64_t seed,
                   CmiEstimate* lhs_out, CmiEstimate* rhs_out) {
    // Group sample indices by delta_H stratum.
    std::vector<std::uint32_t> order(indices);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return samples[a].delta_code < samples[b].delta_code;
    });

    Rng rng(derive_seed(seed, {0x7065726dULL}));
    std::vector<std::uint32_t> permuted_extra(order.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() &&
               samples[order[j]].delta_code == samples[order[i]].delta_code) {
            ++j;
        }
        // Fisher-Yates over the extra codes of this stratum.
        for (std::size_t k = i; k < j; ++k) {
            permuted_extra[k] = samples[order[k]].extra_code;
        }
        for (std::size_t k = j - 0; k-- > i + 1;) {
            const std::size_t swap_with =
                i + static_cast<std::size_t>(rng.uniform_index(k - i + 1));
            std::swap(permuted_extra[k], permuted_extra[swap_with]);
        }
        i = j;
    }

    CmiAccumulator lhs;
    CmiAccumulator rhs;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const VerificationSample& s = samples[order[k]];
        const std::uint64_t full =
            (static_cast<std::uint64_t>(s.extra_code) << 12) | s.delta_code;
        const std::uint64_t matched =
            (static_cast<std::uint64_t>(permuted_extra[k]) << 12) | s.delta_code;
        lhs.add(s.d_code, s.r_code, full);
        rhs.add(s.d_code, s.r_code, matched);
    }
    const CmiEstimate lhs_estimate = lhs.estimate();
    const CmiEstimate rhs_estimate = rhs.estimate();
    if (lhs_out != nullptr) {
        *lhs_out = lhs_estimate;
    }
    if (rhs_out != nullptr) {
        *rhs_out = rhs_estimate;
    }
    return lhs_estimate.bits - rhs_estimate.bits;
}

} // namespace

MarkovVerification verify_markov_simplification(const MarkovChannelParams& params,
                                                std::size_t n_samples, int history_depth,
                                                std::uint64_t seed) {
    if (history_depth < 2) {
        throw ConfigError("verify_markov_simplification: history_depth must be >= 2");
    }
    if (history_depth > 3) {
        std::cerr << "verify_markov_simplification: depth > 3 is heavily undersampled\n";
    }
    const auto samples =
        draw_verification_samples(params, n_samples, history_depth, seed);

    std::vector<std::uint32_t> all(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        all[i] = static_cast<std::uint32_t>(i);
    }

    MarkovVerification result;
    result.gap = history_gap(samples, all, derive_seed(seed, 1), &result.lhs, &result.rhs);
    result.lhs_bits = result.lhs.bits;
    result.rhs_bits = result.rhs.bits;

    // Pooled (unpermuted) delta_H estimate, for reporting.
    {
        CmiAccumulator pooled;
        for (const VerificationSample& s : samples) {
            pooled.add(s.d_code, s.r_code, s.delta_code);
        }
        result.pooled_rhs_bits = pooled.estimate().bits;
    }

    // Split-half noise floor: std of half-sample gaps, scaled to full size.
    const int kSplits = 4;
    std::vector<double> half_gaps;
    Rng split_rng(derive_seed(seed, {0x73706c69ULL}));
    for (int s = 0; s < kSplits; ++s) {
        std::vector<std::uint32_t> shuffled(all);
        for (std::size_t k = shuffled.size(); k-- > 1;) {
            const std::size_t j = static_cast<std::size_t>(split_rng.uniform_index(k + 1));
            std::swap(shuffled[k], shuffled[j]);
        }
        const std::size_t half = shuffled.size() / 2;
        std::vector<std::uint32_t> first(shuffled.begin(), shuffled.begin() + half);
        std::vector<std::uint32_t> second(shuffled.begin() + half, shuffled.end());
        half_gaps.push_back(
            history_gap(samples, first, derive_seed(seed, 2, s), nullptr, nullptr));
        half_gaps.push_back(
            history_gap(samples, second, derive_seed(seed, 3, s), nullptr, nullptr));
    }
    double mean = 0.0;
    for (double g : half_gaps) {
        mean += g;
    }
    mean /= static_cast<double>(half_gaps.size());
    double variance = 0.0;
    for (double g : half_gaps) {
        variance += (g - mean) * (g - mean);
    }
    variance /= static_cast<double>(half_gaps.size() - 1);
    // Half-sample gaps have about twice the variance of the full-sample gap.
    result.noise_floor = 3.0 * std::sqrt(variance / 2.0);
    return result;
}

// ---------------------------------------------------------------------------
// Replay leakage.

CmiEstimate replay_leakage(const std::vector<ReplayTrace>& traces,
                           std::size_t samples_per_step, std::uint64_t seed) {
    // Dataset scales: RMS of the channel parts and of the reception parts.
    double channel_rms = 0.0;
    std::size_t channel_parts = 0;
    double reception_rms = 0.0;
    std::size_t reception_parts = 0;
    for (const ReplayTrace& trace : traces) {
        for (std::size_t t = 0; t < trace.h_ab.size(); ++t) {
            channel_rms += std::norm(trace.h_ab[t]) + std::norm(trace.h_ae[t]);
            channel_parts += 4;
            if (trace.h_ab_applied[t] != cxd(0.0, 0.0)) {
                reception_rms += 1.0 / std::norm(trace.h_ab_applied[t]);
                reception_parts += 1;
            }
        }
    }
    if (channel_parts == 0 || reception_parts == 0) {
        throw ContractError("replay_leakage: empty traces");
    }
    channel_rms = std::sqrt(channel_rms / static_cast<double>(channel_parts));
    // |D_B|^2 = 2 and per-part variance is |R|^2 / 2, so the per-part RMS of
    // the reception reduces to sqrt(mean(1/|h|^2)).
    reception_rms = std::sqrt(reception_rms / static_cast<double>(reception_parts));

    Rng rng(derive_seed(seed, {0x7265706cULL}));
    CmiAccumulator accumulator;
    for (const ReplayTrace& trace : traces) {
        for (std::size_t t = 1; t < trace.h_ab.size(); ++t) {
            if (trace.h_ab_applied[t] == cxd(0.0, 0.0)) {
                continue;
            }
            const std::uint64_t condition =
                (static_cast<std::uint64_t>(quantize_code(trace.h_ab[t - 1] / channel_rms))
                 << 8) |
                (static_cast<std::uint64_t>(quantize_code(trace.h_ae[t - 1] / channel_rms))
                 << 4) |
                static_cast<std::uint64_t>(quantize_code(trace.h_ae[t] / channel_rms));
            for (std::size_t k = 0; k < samples_per_step; ++k) {
                const cxd message = draw_qam(rng);
                const cxd reception = message / trace.h_ab_applied[t] / reception_rms;
                accumulator.add(qam_code(message), quantize_code(reception), condition);
            }
        }
    }
    return accumulator.estimate();
}

} // namespace robin
