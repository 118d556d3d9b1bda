#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "robin/attacker.hpp"
#include "robin/blinding.hpp"

using namespace robin;

TEST_CASE("one nlms step at unit step size reproduces the known symbol") {
    AttackerState state(1, 1, 1.0);
    const cxd h(0.8, 0.3);
    const cxd known(1.0, -1.0);
    CVec r(1);
    r(0) = h * known;
    CVec d(1);
    d(0) = known;
    nlms_update(state, r, d);
    CHECK(state.iterations_run == 1);
    const cxd estimate = (state.f_e * r)(0);
    CHECK(std::abs(estimate - known) < 1e-6);
}

TEST_CASE("zero updates leave the filter at its zero initialization") {
    AttackerState state(1, 4, 0.5);
    CHECK(state.f_e.norm() == 0.0);
    CHECK(state.iterations_run == 0);
}

TEST_CASE("nlms converges on a static noiseless two-antenna mixture") {
    Rng rng(7);
    CMat mixing(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            mixing(i, j) = rng.complex_gaussian();
        }
    }
    AttackerState state(1, 2, 0.5);
    for (int step = 0; step < 100; ++step) {
        CVec source(2);
        source(0) = rng.qam_symbol();       // data
        source(1) = rng.complex_gaussian(); // interference
        const CVec received = mixing * source;
        CVec desired(1);
        desired(0) = source(0);
        nlms_update(state, received, desired);
    }
    double residual = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        CVec source(2);
        source(0) = rng.qam_symbol();
        source(1) = rng.complex_gaussian();
        const CVec received = mixing * source;
        residual = std::max(residual, std::abs((state.f_e * received)(0) - source(0)));
    }
    CHECK(residual < 1e-6);
}

TEST_CASE("nlms stays bounded over ten thousand updates") {
    Rng rng(8);
    AttackerState state(1, 2, 1.9); // near the upper stability edge
    for (int step = 0; step < 10000; ++step) {
        CVec r(2);
        r(0) = rng.complex_uniform();
        r(1) = rng.complex_uniform();
        CVec d(1);
        d(0) = rng.qam_symbol();
        nlms_update(state, r, d);
    }
    CHECK(std::isfinite(state.f_e.norm()));
    CHECK(state.f_e.norm() < 1e3);
}

TEST_CASE("noiseless static scalar channel with thirty known symbols decodes clean") {
    Rng rng(9);
    const cxd h(1.3, -0.7);
    const int total = 240;
    SymbolStream truth;
    CMat received(1, total);
    for (int t = 0; t < total; ++t) {
        const cxd symbol = rng.qam_symbol();
        truth.symbols.push_back(symbol);
        received(0, t) = h * symbol;
    }
    std::vector<KnownSymbol> known;
    for (int t = 0; t < 30; ++t) {
        known.push_back({static_cast<std::size_t>(t), truth.symbols[static_cast<std::size_t>(t)]});
    }
    AttackConfig config;
    config.iterations = 50;
    config.trace_stride = 1;
    const AttackResult result = train_and_attack(received, known, truth, config);
    CHECK(result.final_ser == 0.0);
    CHECK(result.decoded.size() == static_cast<std::size_t>(total - 30));
    CHECK(result.ser_trace.size() == 50);
    // Convergence: the trace ends no higher than it starts.
    CHECK(result.ser_trace.back() <= result.ser_trace.front());
}

TEST_CASE("empty known set decodes untrained with a warning") {
    Rng rng(10);
    CMat received(2, 16);
    for (int i = 0; i < 2; ++i) {
        for (int t = 0; t < 16; ++t) {
            received(i, t) = rng.complex_gaussian();
        }
    }
    SymbolStream truth;
    for (int t = 0; t < 16; ++t) {
        truth.symbols.push_back(rng.qam_symbol());
    }
    const AttackResult result = train_and_attack(received, {}, truth, AttackConfig{});
    CHECK_FALSE(result.trained);
    CHECK(result.decoded.size() == 16);
}

TEST_CASE("more known symbols within a fixed mode never hurt the attack") {
    // Static mixture, moderate noise: growing the training set from 2 to 20
    // known symbols must not degrade the final SER materially.
    auto attack_with_known = [](int known_count, std::uint64_t seed) {
        Rng rng(seed);
        CMat mixing(2, 2);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                mixing(i, j) = rng.complex_gaussian();
            }
        }
        const int total = 200;
        SymbolStream truth;
        CMat received(2, total);
        for (int t = 0; t < total; ++t) {
            CVec source(2);
            source(0) = rng.qam_symbol();
            source(1) = rng.complex_gaussian();
            CVec r = mixing * source;
            r(0) += 0.05 * rng.complex_gaussian();
            r(1) += 0.05 * rng.complex_gaussian();
            received.col(t) = r;
            truth.symbols.push_back(source(0));
        }
        std::vector<KnownSymbol> known;
        for (int t = 0; t < known_count; ++t) {
            known.push_back(
                {static_cast<std::size_t>(t), truth.symbols[static_cast<std::size_t>(t)]});
        }
        AttackConfig config;
        config.iterations = 240;
        config.trace_stride = 0;
        return train_and_attack(received, known, truth, config).final_ser;
    };
    double with_2 = 0.0;
    double with_20 = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        with_2 += attack_with_known(2, 100 + seed);
        with_20 += attack_with_known(20, 100 + seed);
    }
    CHECK(with_20 <= with_2 + 0.05 * 10);
}
