#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "robin/rng.hpp"
#include "robin/types.hpp"

namespace robin {

// Gain table of a pattern-reconfigurable antenna: one row per antenna mode,
// one column per discretized azimuth angle. Every row of the built-in
// families is the mode-0 row rotated by the mode index, so a mode switch is
// a circular shift of the beam.
struct AntennaPattern {
    int num_modes = 0;
    int num_angles = 0;
    CMat gains; // num_modes x num_angles

    cxd gain(int mode, int angle) const { return gains(mode, angle); }
};

struct PatternSpec {
    std::string family = "directional"; // "omni" or "directional"
    // Lobe concentration of the directional family, exp(kappa*(cos(t)-1)).
    // Narrow enough that rotating one step decorrelates the mode rows.
    double directivity = 150.0;
    // Isotropic floor added to the lobe so no mode is completely blind.
    double floor = 0.02;
};

AntennaPattern make_pattern(const PatternSpec& spec, int num_modes, int num_angles);
inline AntennaPattern make_pattern(const std::string& family, int num_modes, int num_angles) {
    PatternSpec s;
    s.family = family;
    return make_pattern(s, num_modes, num_angles);
}

// Complex channel gain per discretized departure angle; nonzero only along
// the multipath directions.
struct AoDDistribution {
    CVec values;              // length num_angles
    std::vector<int> support; // indices of nonzero entries, ascending

    // Omnidirectional (all-gains-one) channel coefficient: the sum over angles.
    cxd physical_coefficient() const { return values.sum(); }
};

// One multipath environment, frozen for a coherence window. Scatterer angles
// and per-path losses are shared by every antenna pair; the fading amplitude
// and phase are drawn independently per pair.
struct MultipathEnvironment {
    int n_a = 0;
    int n_b = 0;
    int n_e = 0;
    int num_angles = 0;
    std::vector<int> path_angles;    // shared scatterer angle indices
    std::vector<double> path_losses; // shared per-path loss L_l

    // aod_ab[i * n_a + j] is the Alice(j) -> Bob(i) distribution; same layout
    // for aod_ae with Eve rows.
    std::vector<AoDDistribution> aod_ab;
    std::vector<AoDDistribution> aod_ae;

    const AoDDistribution& ab(int rx, int tx) const { return aod_ab[rx * n_a + tx]; }
    const AoDDistribution& ae(int rx, int tx) const { return aod_ae[rx * n_a + tx]; }
};

MultipathEnvironment synthesize_environment(std::uint64_t seed, int n_a, int n_b, int n_e,
                                            int num_paths, int num_angles = 360);

// Same geometry (angles, path losses), fresh per-pair fading. Used to model
// independent flat sub-channels of one physical environment.
MultipathEnvironment regenerate_fading(const MultipathEnvironment& env, std::uint64_t seed);

enum class Link { AB, AE };

struct Csi {
    CMat matrix; // n_rx x n_tx
    int mode = 0;
};

// Mode-dependent scalar CSI: sum_d G(mode, theta_d) * a(theta_d).
cxd csi_from_aod(const AoDDistribution& aod, const AntennaPattern& pattern, int mode);

Csi channel_matrix(const MultipathEnvironment& env, const AntennaPattern& pattern, int mode,
                   Link link);

// Additive circularly-symmetric complex Gaussian noise with per-entry
// variance noise_power.
CMat add_awgn(const CMat& signal, double noise_power, Rng& rng);

// H*D plus AWGN calibrated so mean received power over noise power equals
// 10^(snr_db/10). snr_db = +infinity transmits noiselessly.
CMat apply_channel(const CMat& h, const CMat& d, double snr_db, Rng& rng);

// Noise variance that puts `reference_power` at `snr_db` above the noise.
double noise_power_for_snr(double reference_power, double snr_db);

} // namespace robin
