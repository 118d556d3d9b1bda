#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "robin/rng.hpp"
#include "robin/types.hpp"

namespace robin {

// 4-QAM constellation in tie-breaking order: the demodulator resolves exact
// midpoints toward the lowest index.
inline const std::array<cxd, 4>& qam_constellation() {
    static const std::array<cxd, 4> points = {cxd(1.0, 1.0), cxd(1.0, -1.0), cxd(-1.0, 1.0),
                                              cxd(-1.0, -1.0)};
    return points;
}

struct SymbolStream {
    std::vector<cxd> symbols;

    std::size_t size() const { return symbols.size(); }
};

// Gray-mapped 4-QAM: bit pair (b0, b1) -> ((1-2*b0) + (1-2*b1)j).
// An odd trailing bit is an error.
SymbolStream modulate(const std::vector<int>& bits);

// Nearest constellation point per received sample. Multi-row input is
// flattened row by row.
SymbolStream demodulate(const CMat& received);
cxd demodulate_symbol(cxd received);

// Fraction of mismatched symbols.
double ser(const SymbolStream& reference, const SymbolStream& decoded);

// Projector onto the row space of h_ab: H_p = H^H (H H^H)^{-1} H.
CMat projection_matrix(const CMat& h_ab);

// (n_a - n_b) x n_a matrix with unit-norm rows, mutually orthogonal and
// orthogonal to every row of h_ab. Built by projecting a random complex
// uniform matrix off the row space and Gram-Schmidt orthonormalizing.
CMat null_space_channels(const CMat& h_ab, std::uint64_t seed);

// Right inverse of the stacked [h_ab; h_an] matrix (Moore-Penrose form for a
// square full-rank stack).
CMat transmit_filter(const CMat& h_ab, const CMat& h_an);

struct BlindingFilter {
    CMat h_ab; // n_b x n_a channel the filter was built from
    CMat h_an; // (n_a - n_b) x n_a artificial-noise channels
    CMat f_a;  // n_a x n_a transmit filter
};

BlindingFilter build_blinding_filter(const CMat& h_ab, std::uint64_t seed);

// Pre-filter stack: data rows over artificial-noise rows (complex Gaussian,
// each noise row normalized to the data rows' realized average power and
// scaled by ndr), the whole stack scaled by 1/(ndr+1).
CMat stack_with_artificial_noise(const CMat& data, Eigen::Index n_a, double ndr, Rng& rng);

// Precode an n_b x length data block per the stack above, then apply f_a.
CMat encode(const CMat& f_a, const CMat& data, double ndr, Rng& rng);
CMat encode(const CMat& f_a, const SymbolStream& data, double ndr, Rng& rng);

} // namespace robin
