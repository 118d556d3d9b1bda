#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "robin/rng.hpp"
#include "robin/types.hpp"

namespace robin {

// Nearest of {-1.5, -0.5, 0.5, 1.5} per real and imaginary part, bin edges
// at {-1, 0, 1}, exact edges mapping to the upper level.
double quantize_part(double value);
cxd quantize(cxd value);

// 2-bit code of one quantized part and its 4-bit complex combination.
int quantize_code_part(double value);
int quantize_code(cxd value);

enum class ChainKind {
    Markov,     // AR(1) per part
    NonMarkov,  // AR(2) per part: direct dependence on t-2, the negative control
    Constant,   // single CSI value, degenerate chain
};

struct MarkovChannelParams {
    double cross_correlation = 0.0;    // rho between h_AB and h_AE at equal t
    double temporal_correlation = 0.5; // rho_t between consecutive steps
    double truncation_lo = -2.0;
    double truncation_hi = 2.0;
    ChainKind kind = ChainKind::Markov;
    double ar2_coefficient = 0.45; // weight of the t-2 term in the NonMarkov kind
    cxd constant_value = cxd(1.0, 0.5); // channel of the Constant kind
};

struct ChannelPairSample {
    cxd h_ab;
    cxd h_ae;
};

// Jointly samples the Alice-Bob / Alice-Eve channel chains: each real and
// imaginary part is an autoregressive standard-Gaussian chain truncated to
// (lo, hi) by resampling, with cross-correlated innovations tying the two
// channels together at equal time.
std::vector<ChannelPairSample> sample_chain(const MarkovChannelParams& params, int length,
                                            std::uint64_t seed);

struct DiscretizedSample {
    cxd d_b;                    // 4-QAM message
    cxd r_e;                    // quantized reception
    std::array<cxd, 3> delta_h; // quantized (h_AB(T-1), h_AE(T-1), h_AE(T))
};

struct CmiEstimate {
    double bits = 0.0;           // first-order bias-corrected estimate
    double plugin_bits = 0.0;    // raw plug-in value
    double coverage_ratio = 0.0; // samples / (100 * observed joint alphabet)
    std::size_t samples = 0;
    std::size_t distinct_conditions = 0;
    bool undersampled = false;
};

// Streaming counter for I(D; R | C) over discrete codes: d in [0,4),
// r in [0,16), condition an arbitrary code of at most 48 bits.
class CmiAccumulator {
  public:
    void add(int d_code, int r_code, std::uint64_t condition_code);
    void merge(const CmiAccumulator& other);
    std::size_t size() const { return keys_.size(); }
    CmiEstimate estimate() const;

  private:
    std::vector<std::uint64_t> keys_;
};

// Plug-in conditional mutual information I(D_B; R_E | delta_H) in bits, with
// a Miller-Madow style first-order bias correction in `bits`. Warns to
// stderr when the sample budget is under 100x the observed joint alphabet.
CmiEstimate estimate_cmi(const std::vector<DiscretizedSample>& samples);

// Secrecy leakage of the reduced single-antenna scheme: samples the channel
// chain, forms R_E = D_B / h_AB(T) (plus optional AWGN), quantizes message,
// reception and conditioning triple, and estimates the conditional mutual
// information. Deterministic in (params, n_samples, seed) for any worker
// count: samples are generated in 64 fixed logical shards.
CmiEstimate leakage_model(const MarkovChannelParams& params, std::size_t n_samples,
                          std::uint64_t seed, int workers = 1, double awgn_power = 0.0);

struct MarkovVerification {
    double lhs_bits = 0.0; // I(D;R | truncated full history)
    double rhs_bits = 0.0; // I(D;R | delta_H), bias-matched (see below)
    double gap = 0.0;      // lhs_bits - rhs_bits
    double noise_floor = 0.0;
    double pooled_rhs_bits = 0.0; // plain I(D;R | delta_H) on the pooled table
    CmiEstimate lhs;
    CmiEstimate rhs;
};

// Empirical check of the history-simplification identity: compares
// I(D;R | h_AB(T-1..T-depth), h_AE(T..T-depth)) against I(D;R | delta_H).
// The right side is estimated with the extra-history coordinate permuted
// within each delta_H stratum, which preserves every marginal count and so
// matches the finite-sample bias of the left side exactly; the gap is then a
// fair conditional-independence statistic. The noise floor is three times
// the standard error of the gap measured by split-half resampling.
MarkovVerification verify_markov_simplification(const MarkovChannelParams& params,
                                                std::size_t n_samples, int history_depth,
                                                std::uint64_t seed);

// Leakage replayed from explicit channel sequences (e.g. synthesized CSI
// under per-frame mode switching with predicted precoding). h_ab_applied is
// the channel Alice actually inverted when precoding at each step. Values
// are scaled by the dataset RMS per part before quantization.
struct ReplayTrace {
    std::vector<cxd> h_ab;         // true Alice-Bob channel per step
    std::vector<cxd> h_ae;         // true Alice-Eve channel per step
    std::vector<cxd> h_ab_applied; // channel inverted by the precoder per step
};

CmiEstimate replay_leakage(const std::vector<ReplayTrace>& traces,
                           std::size_t samples_per_step, std::uint64_t seed);

} // namespace robin
