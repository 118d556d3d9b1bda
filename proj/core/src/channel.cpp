#include "robin/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "robin/errors.hpp"

namespace robin {

AntennaPattern make_pattern(const PatternSpec& spec, int num_modes, int num_angles) {
    if (num_modes < 1) {
        throw ConfigError("make_pattern: num_modes must be >= 1");
    }
    if (num_angles < num_modes) {
        throw ConfigError("make_pattern: num_angles must be >= num_modes");
    }

    AntennaPattern pattern;
    pattern.num_modes = num_modes;
    pattern.num_angles = num_angles;
    pattern.gains.resize(num_modes, num_angles);

    if (spec.family == "omni") {
        pattern.gains.setOnes();
        return pattern;
    }
    if (spec.family != "directional") {
        throw ConfigError("make_pattern: unknown family '" + spec.family + "'");
    }
    if (spec.directivity <= 0.0 || spec.floor < 0.0) {
        throw ConfigError("make_pattern: directivity must be > 0 and floor >= 0");
    }

    // Base row: von Mises lobe pointing at angle 0 plus an isotropic floor.
    // Every other mode is the base row circularly shifted by the mode index.
    std::vector<double> base(num_angles);
    for (int d = 0; d < num_angles; ++d) {
        const double theta = 2.0 * M_PI * d / num_angles;
        base[d] = spec.floor + std::exp(spec.directivity * (std::cos(theta) - 1.0));
    }
    for (int u = 0; u < num_modes; ++u) {
        for (int d = 0; d < num_angles; ++d) {
            const int shifted = ((d - u) % num_angles + num_angles) % num_angles;
            pattern.gains(u, d) = cxd(base[shifted], 0.0);
        }
    }
    return pattern;
}

namespace {

AoDDistribution draw_pair_distribution(const std::vector<int>& angles,
                                       const std::vector<double>& losses, int num_angles,
                                       Rng& rng) {
    AoDDistribution aod;
    aod.values = CVec::Zero(num_angles);
    aod.support = angles;
    for (std::size_t l = 0; l < angles.size(); ++l) {
        // Rayleigh(1) amplitude, uniform phase: independent fading per pair.
        const double amplitude = std::sqrt(-2.0 * std::log(1.0 - rng.uniform()));
        const double phase = rng.uniform(0.0, 2.0 * M_PI);
        aod.values(angles[l]) = losses[l] * amplitude * std::exp(cxd(0.0, -phase));
    }
    return aod;
}

} // namespace

MultipathEnvironment synthesize_environment(std::uint64_t seed, int n_a, int n_b, int n_e,
                                            int num_paths, int num_angles) {
    if (n_a < 1 || n_b < 1 || n_e < 1) {
        throw ContractError("synthesize_environment: antenna counts must be >= 1");
    }
    if (num_paths < 0 || num_paths > num_angles) {
        throw ContractError("synthesize_environment: invalid path count");
    }

    MultipathEnvironment env;
    env.n_a = n_a;
    env.n_b = n_b;
    env.n_e = n_e;
    env.num_angles = num_angles;

    Rng geometry_rng(derive_seed(seed, {0x67656f6dULL}));
    env.path_angles.reserve(num_paths);
    while (static_cast<int>(env.path_angles.size()) < num_paths) {
        const int angle = static_cast<int>(geometry_rng.uniform_index(num_angles));
        if (std::find(env.path_angles.begin(), env.path_angles.end(), angle) ==
            env.path_angles.end()) {
            env.path_angles.push_back(angle);
        }
    }
    std::sort(env.path_angles.begin(), env.path_angles.end());
    env.path_losses.reserve(num_paths);
    for (int l = 0; l < num_paths; ++l) {
        env.path_losses.push_back(geometry_rng.uniform(0.5, 1.0));
    }

    return regenerate_fading(env, derive_seed(seed, {0x66616465ULL}));
}

MultipathEnvironment regenerate_fading(const MultipathEnvironment& env, std::uint64_t seed) {
    MultipathEnvironment out = env;
    out.aod_ab.clear();
    out.aod_ae.clear();
    Rng fading_rng(seed);
    for (int i = 0; i < out.n_b; ++i) {
        for (int j = 0; j < out.n_a; ++j) {
            out.aod_ab.push_back(
                draw_pair_distribution(out.path_angles, out.path_losses, out.num_angles,
                                       fading_rng));
        }
    }
    for (int i = 0; i < out.n_e; ++i) {
        for (int j = 0; j < out.n_a; ++j) {
            out.aod_ae.push_back(
                draw_pair_distribution(out.path_angles, out.path_losses, out.num_angles,
                                       fading_rng));
        }
    }
    return out;
}

cxd csi_from_aod(const AoDDistribution& aod, const AntennaPattern& pattern, int mode) {
    if (mode < 0 || mode >= pattern.num_modes) {
        throw ContractError("csi_from_aod: mode out of range");
    }
    if (aod.values.size() != pattern.num_angles) {
        throw ContractError("csi_from_aod: angle grid mismatch between aod and pattern");
    }
    cxd h(0.0, 0.0);
    for (int d : aod.support) {
        h += pattern.gain(mode, d) * aod.values(d);
    }
    return h;
}

Csi channel_matrix(const MultipathEnvironment& env, const AntennaPattern& pattern, int mode,
                   Link link) {
    const int n_rx = (link == Link::AB) ? env.n_b : env.n_e;
    Csi csi;
    csi.mode = mode;
    csi.matrix.resize(n_rx, env.n_a);
    for (int i = 0; i < n_rx; ++i) {
        for (int j = 0; j < env.n_a; ++j) {
            const AoDDistribution& aod = (link == Link::AB) ? env.ab(i, j) : env.ae(i, j);
            csi.matrix(i, j) = csi_from_aod(aod, pattern, mode);
        }
    }
    return csi;
}

CMat add_awgn(const CMat& signal, double noise_power, Rng& rng) {
    if (noise_power < 0.0) {
        throw ContractError("add_awgn: negative noise power");
    }
    CMat out = signal;
    if (noise_power == 0.0) {
        return out;
    }
    const double amplitude = std::sqrt(noise_power);
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            out(i, j) += amplitude * rng.complex_gaussian();
        }
    }
    return out;
}

double noise_power_for_snr(double reference_power, double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0) {
        return 0.0;
    }
    return reference_power / std::pow(10.0, snr_db / 10.0);
}

CMat apply_channel(const CMat& h, const CMat& d, double snr_db, Rng& rng) {
    if (h.cols() != d.rows()) {
        throw ContractError("apply_channel: H columns must match D rows");
    }
    CMat received = h * d;
    const double mean_power =
        received.size() > 0 ? received.squaredNorm() / static_cast<double>(received.size())
                            : 0.0;
    return add_awgn(received, noise_power_for_snr(mean_power, snr_db), rng);
}

} // namespace robin
