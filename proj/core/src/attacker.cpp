#include "robin/attacker.hpp"

#include <algorithm>
#include <iostream>

#include "robin/errors.hpp"

namespace robin {

void nlms_update(AttackerState& state, const CVec& r_e, const CVec& known) {
    if (r_e.size() != state.f_e.cols() || known.size() != state.f_e.rows()) {
        throw ContractError("nlms_update: dimension mismatch");
    }
    const CVec error = known - state.f_e * r_e;
    const double norm_sq = r_e.squaredNorm();
    state.f_e.noalias() +=
        (state.step_size / (state.epsilon + norm_sq)) * error * r_e.adjoint();
    ++state.iterations_run;
}

AttackResult train_and_attack(const CMat& r_e_all, const std::vector<KnownSymbol>& known,
                              const SymbolStream& reference, const AttackConfig& config) {
    const auto total = static_cast<std::size_t>(r_e_all.cols());
    for (const KnownSymbol& k : known) {
        if (k.position >= total) {
            throw ContractError("train_and_attack: known position out of bounds");
        }
    }
    const bool have_reference = reference.size() == total;

    std::vector<bool> is_known(total, false);
    for (const KnownSymbol& k : known) {
        is_known[k.position] = true;
    }

    AttackerState state(1, r_e_all.rows(), config.step_size, config.epsilon);

    AttackResult result;
    if (known.empty()) {
        std::cerr << "train_and_attack: empty known-plaintext set, decoding untrained\n";
        result.trained = false;
    }

    auto decode_unknown = [&](SymbolStream* decoded) {
        std::size_t errors = 0;
        std::size_t counted = 0;
        for (std::size_t t = 0; t < total; ++t) {
            if (is_known[t]) {
                continue;
            }
            const cxd estimate = (state.f_e * r_e_all.col(static_cast<Eigen::Index>(t)))(0);
            const cxd hard = demodulate_symbol(estimate);
            if (decoded != nullptr) {
                decoded->symbols.push_back(hard);
            }
            if (have_reference) {
                ++counted;
                if (hard != reference.symbols[t]) {
                    ++errors;
                }
            }
        }
        return counted > 0 ? static_cast<double>(errors) / static_cast<double>(counted)
                           : 0.0;
    };

    if (!known.empty()) {
        for (int iteration = 0; iteration < config.iterations; ++iteration) {
            for (const KnownSymbol& k : known) {
                CVec desired(1);
                desired(0) = k.value;
                nlms_update(state, r_e_all.col(static_cast<Eigen::Index>(k.position)),
                            desired);
            }
            if (have_reference && config.trace_stride > 0 &&
                ((iteration + 1) % config.trace_stride == 0 ||
                 iteration + 1 == config.iterations)) {
                result.ser_trace.push_back(decode_unknown(nullptr));
            }
        }
    }

    result.final_ser = decode_unknown(&result.decoded);
    return result;
}

} // namespace robin
