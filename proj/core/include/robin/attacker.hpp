#pragma once

#include <cstddef>
#include <vector>

#include "robin/blinding.hpp"
#include "robin/types.hpp"

namespace robin {

// Adaptive receive filter of a multi-antenna eavesdropper, trained with
// normalized least mean squares against known plaintext symbols.
struct AttackerState {
    CMat f_e;            // n_streams x n_e receive filter, zero-initialized
    double step_size;    // mu in (0, 2)
    double epsilon;      // norm regularizer
    long iterations_run; // NLMS updates applied so far

    AttackerState(Eigen::Index n_streams, Eigen::Index n_e, double mu = 0.5,
                  double eps = 1e-8)
        : f_e(CMat::Zero(n_streams, n_e)), step_size(mu), epsilon(eps), iterations_run(0) {}
};

// One NLMS step toward f_e * r_e == known.
void nlms_update(AttackerState& state, const CVec& r_e, const CVec& known);

struct KnownSymbol {
    std::size_t position; // column index into the reception block
    cxd value;            // plaintext at that position
};

struct AttackConfig {
    double step_size = 0.5;
    double epsilon = 1e-8;
    // One iteration replays every known symbol once, in arrival order.
    int iterations = 240;
    // Record the SER trace every trace_stride iterations (0 disables tracing;
    // the final SER is always computed).
    int trace_stride = 1;
};

struct AttackResult {
    SymbolStream decoded;        // decoded unknown positions, in order
    std::vector<double> ser_trace; // SER after each traced iteration
    double final_ser = 1.0;
    bool trained = true; // false when the known set was empty
};

// Train a single filter over the whole reception block (the filter chases
// the channel if the transmit filter changes inside the block), then decode
// every unknown position with the final filter. `reference` supplies the
// ground truth for SER measurement only.
AttackResult train_and_attack(const CMat& r_e_all, const std::vector<KnownSymbol>& known,
                              const SymbolStream& reference, const AttackConfig& config);

} // namespace robin
