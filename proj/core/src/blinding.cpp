#include "robin/blinding.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "robin/errors.hpp"

namespace robin {

SymbolStream modulate(const std::vector<int>& bits) {
    if (bits.size() % 2 != 0) {
        throw ContractError("modulate: bit count must be even");
    }
    SymbolStream stream;
    stream.symbols.reserve(bits.size() / 2);
    for (std::size_t k = 0; k < bits.size(); k += 2) {
        stream.symbols.emplace_back(bits[k] ? -1.0 : 1.0, bits[k + 1] ? -1.0 : 1.0);
    }
    return stream;
}

cxd demodulate_symbol(cxd received) {
    const auto& constellation = qam_constellation();
    cxd best = constellation[0];
    double best_dist = std::norm(received - constellation[0]);
    for (std::size_t k = 1; k < constellation.size(); ++k) {
        const double dist = std::norm(received - constellation[k]);
        if (dist < best_dist) {
            best_dist = dist;
            best = constellation[k];
        }
    }
    return best;
}

SymbolStream demodulate(const CMat& received) {
    SymbolStream stream;
    stream.symbols.reserve(static_cast<std::size_t>(received.size()));
    for (Eigen::Index i = 0; i < received.rows(); ++i) {
        for (Eigen::Index j = 0; j < received.cols(); ++j) {
            stream.symbols.push_back(demodulate_symbol(received(i, j)));
        }
    }
    return stream;
}

double ser(const SymbolStream& reference, const SymbolStream& decoded) {
    if (reference.size() != decoded.size()) {
        throw ContractError("ser: stream lengths differ");
    }
    if (reference.size() == 0) {
        return 0.0;
    }
    std::size_t errors = 0;
    for (std::size_t k = 0; k < reference.size(); ++k) {
        if (reference.symbols[k] != decoded.symbols[k]) {
            ++errors;
        }
    }
    return static_cast<double>(errors) / static_cast<double>(reference.size());
}

namespace {

double condition_number(const CMat& m) {
    Eigen::JacobiSVD<CMat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(sv.size() - 1) <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return sv(0) / sv(sv.size() - 1);
}

} // namespace

CMat projection_matrix(const CMat& h_ab) {
    if (h_ab.rows() > h_ab.cols()) {
        throw ContractError("projection_matrix: need n_b <= n_a");
    }
    const CMat gram = h_ab * h_ab.adjoint();
    if (condition_number(gram) > kConditionLimit) {
        throw SingularError("projection_matrix: rank-deficient channel");
    }
    return h_ab.adjoint() * gram.llt().solve(h_ab);
}

CMat null_space_channels(const CMat& h_ab, std::uint64_t seed) {
    const Eigen::Index n_a = h_ab.cols();
    const Eigen::Index n_b = h_ab.rows();
    if (n_a <= n_b) {
        throw SingularError("null_space_channels: no null space when n_a <= n_b");
    }
    const CMat h_p = projection_matrix(h_ab);
    const Eigen::Index rows = n_a - n_b;

    Rng rng(seed);
    CMat h_an(rows, n_a);
    Eigen::Index accepted = 0;
    while (accepted < rows) {
        Eigen::RowVectorXcd seed_row(n_a);
        for (Eigen::Index j = 0; j < n_a; ++j) {
            seed_row(j) = rng.complex_uniform();
        }
        // Project off Bob's row space, then off the rows accepted so far.
        Eigen::RowVectorXcd candidate = seed_row - seed_row * h_p;
        for (Eigen::Index r = 0; r < accepted; ++r) {
            candidate -= (candidate * h_an.row(r).adjoint())(0, 0) * h_an.row(r);
        }
        const double norm = candidate.norm();
        if (norm < 1e-8) {
            continue; // degenerate draw, resample
        }
        h_an.row(accepted) = candidate / norm;
        ++accepted;
    }
    return h_an;
}

CMat transmit_filter(const CMat& h_ab, const CMat& h_an) {
    const Eigen::Index n_a = h_ab.cols();
    if (h_an.cols() != n_a || h_ab.rows() + h_an.rows() != n_a) {
        throw ContractError("transmit_filter: stacked matrix must be square n_a x n_a");
    }
    CMat stack(n_a, n_a);
    stack.topRows(h_ab.rows()) = h_ab;
    stack.bottomRows(h_an.rows()) = h_an;
    if (condition_number(stack) > kConditionLimit) {
        throw SingularError("transmit_filter: ill-conditioned stack");
    }
    const CMat gram = stack * stack.adjoint();
    return stack.adjoint() * gram.partialPivLu().solve(CMat::Identity(n_a, n_a));
}

BlindingFilter build_blinding_filter(const CMat& h_ab, std::uint64_t seed) {
    BlindingFilter filter;
    filter.h_ab = h_ab;
    filter.h_an = null_space_channels(h_ab, seed);
    filter.f_a = transmit_filter(h_ab, filter.h_an);
    return filter;
}

CMat stack_with_artificial_noise(const CMat& data, Eigen::Index n_a, double ndr, Rng& rng) {
    if (ndr < 0.0) {
        throw ConfigError("encode: ndr must be >= 0");
    }
    if (data.cols() < 1) {
        throw ContractError("encode: data must contain at least one symbol");
    }
    const Eigen::Index n_b = data.rows();
    const Eigen::Index an_rows = n_a - n_b;
    if (an_rows < 0) {
        throw ContractError("encode: more data rows than transmit antennas");
    }
    const Eigen::Index length = data.cols();

    CMat stack(n_a, length);
    stack.topRows(n_b) = data;
    const double data_power = data.squaredNorm() / static_cast<double>(data.size());
    for (Eigen::Index r = 0; r < an_rows; ++r) {
        Eigen::RowVectorXcd noise(length);
        for (Eigen::Index t = 0; t < length; ++t) {
            noise(t) = rng.complex_gaussian();
        }
        // Normalize the realized row to the data rows' average power, so ndr
        // is an exact amplitude ratio of noise to data.
        const double row_power = noise.squaredNorm() / static_cast<double>(length);
        if (row_power > 0.0 && data_power > 0.0) {
            noise *= std::sqrt(data_power / row_power);
        }
        stack.row(n_b + r) = ndr * noise;
    }
    stack /= (ndr + 1.0);
    return stack;
}

CMat encode(const CMat& f_a, const CMat& data, double ndr, Rng& rng) {
    return f_a * stack_with_artificial_noise(data, f_a.cols(), ndr, rng);
}

CMat encode(const CMat& f_a, const SymbolStream& data, double ndr, Rng& rng) {
    CMat row(1, static_cast<Eigen::Index>(data.size()));
    for (std::size_t k = 0; k < data.size(); ++k) {
        row(0, static_cast<Eigen::Index>(k)) = data.symbols[k];
    }
    return encode(f_a, row, ndr, rng);
}

} // namespace robin
