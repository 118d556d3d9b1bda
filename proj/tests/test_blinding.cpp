#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "robin/blinding.hpp"
#include "robin/errors.hpp"

using namespace robin;

namespace {

CMat random_channel(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    Rng rng(seed);
    CMat h(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            h(i, j) = rng.complex_gaussian();
        }
    }
    return h;
}

// Independent construction of the row-space projector: modified Gram-Schmidt
// on the rows, then sum of outer products of the orthonormal basis.
CMat gram_schmidt_projector(const CMat& h) {
    std::vector<Eigen::RowVectorXcd> basis;
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        Eigen::RowVectorXcd row = h.row(i);
        for (const auto& q : basis) {
            row -= (row * q.adjoint())(0, 0) * q;
        }
        if (row.norm() > 1e-12) {
            basis.push_back(row / row.norm());
        }
    }
    CMat projector = CMat::Zero(h.cols(), h.cols());
    for (const auto& q : basis) {
        projector += q.adjoint() * q;
    }
    return projector;
}

} // namespace

TEST_CASE("axis-aligned channel projects onto the first axis") {
    CMat h(1, 2);
    h(0, 0) = cxd(1.0, 0.0);
    h(0, 1) = cxd(0.0, 0.0);
    const CMat p = projection_matrix(h);
    CMat expected = CMat::Zero(2, 2);
    expected(0, 0) = cxd(1.0, 0.0);
    CHECK((p - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("projector is idempotent and Hermitian") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const CMat h = random_channel(2, 4, seed);
        const CMat p = projection_matrix(h);
        CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("projector matches the Gram-Schmidt oracle") {
    for (std::uint64_t seed : {4, 5, 6}) {
        const CMat h = random_channel(1, 2, seed);
        const CMat p = projection_matrix(h);
        const CMat oracle = gram_schmidt_projector(h);
        CHECK((p - oracle).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("rank-deficient channel raises a singular-channel error") {
    CMat h(2, 3);
    h.row(0) = random_channel(1, 3, 7);
    h.row(1) = h.row(0) * cxd(2.0, 1.0); // linearly dependent rows
    CHECK_THROWS_AS(projection_matrix(h), SingularError);
}

TEST_CASE("null space of an axis is the complementary axis") {
    CMat h(1, 2);
    h(0, 0) = cxd(1.0, 0.0);
    h(0, 1) = cxd(0.0, 0.0);
    const CMat an = null_space_channels(h, 99);
    REQUIRE(an.rows() == 1);
    CHECK(std::abs(an(0, 0)) < 1e-12);
    CHECK(std::abs(std::abs(an(0, 1)) - 1.0) < 1e-12);
}

TEST_CASE("null-space rows are unit, mutually orthogonal and channel-orthogonal") {
    for (std::uint64_t seed : {10, 11, 12}) {
        const CMat h = random_channel(1, 2, seed);
        const CMat an = null_space_channels(h, seed + 100);
        CHECK((h * an.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
        const CMat gram = an * an.adjoint();
        CHECK((gram - CMat::Identity(an.rows(), an.rows())).cwiseAbs().maxCoeff() < 1e-10);
    }
    // Wider case: n_a = 4, n_b = 2.
    const CMat h = random_channel(2, 4, 13);
    const CMat an = null_space_channels(h, 113);
    REQUIRE(an.rows() == 2);
    CHECK((h * an.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((an * an.adjoint() - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("no null space when n_a <= n_b") {
    const CMat h = random_channel(2, 2, 14);
    CHECK_THROWS_AS(null_space_channels(h, 1), SingularError);
}

TEST_CASE("identity stack yields the identity filter") {
    const CMat f = transmit_filter(CMat::Identity(1, 2).topRows(1),
                                   CMat::Identity(2, 2).bottomRows(1));
    CHECK((f - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("stacked channel times filter is the identity") {
    for (std::uint64_t seed : {20, 21, 22}) {
        const CMat h = random_channel(1, 3, seed);
        const BlindingFilter filter = build_blinding_filter(h, seed + 7);
        CMat stack(3, 3);
        stack.topRows(1) = h;
        stack.bottomRows(2) = filter.h_an;
        CHECK((stack * filter.f_a - CMat::Identity(3, 3)).norm() < 1e-8);
    }
}

TEST_CASE("filter absorbs a channel rescale") {
    const CMat h = random_channel(1, 2, 23);
    const BlindingFilter scaled = build_blinding_filter(2.0 * h, 5);
    CMat stack(2, 2);
    stack.topRows(1) = 2.0 * h;
    stack.bottomRows(1) = scaled.h_an;
    const CMat product = stack * scaled.f_a;
    CHECK(std::abs(product(0, 0) - cxd(1.0, 0.0)) < 1e-8);
    CHECK(std::abs(product(0, 1)) < 1e-8);
}

TEST_CASE("ndr zero carries no artificial noise and decodes exactly") {
    Rng rng(30);
    const CMat h = random_channel(1, 2, 31);
    const BlindingFilter filter = build_blinding_filter(h, 32);
    CMat data(1, 64);
    for (int t = 0; t < 64; ++t) {
        data(0, t) = rng.qam_symbol();
    }
    const CMat stack = stack_with_artificial_noise(data, 2, 0.0, rng);
    CHECK(stack.bottomRows(1).norm() == 0.0);

    Rng encode_rng(33);
    const CMat transmitted = encode(filter.f_a, data, 0.0, encode_rng);
    const CMat received = h * transmitted;
    CHECK((received - data).cwiseAbs().maxCoeff() < 1e-10);
    const SymbolStream decoded = demodulate(received);
    for (int t = 0; t < 64; ++t) {
        CHECK(decoded.symbols[static_cast<std::size_t>(t)] == data(0, t));
    }
}

TEST_CASE("ndr one equalizes noise and data row power before the outer scale") {
    Rng rng(34);
    CMat data(1, 256);
    for (int t = 0; t < 256; ++t) {
        data(0, t) = rng.qam_symbol();
    }
    const CMat stack = stack_with_artificial_noise(data, 2, 1.0, rng);
    const double data_row = stack.row(0).squaredNorm();
    const double noise_row = stack.row(1).squaredNorm();
    CHECK(noise_row == doctest::Approx(data_row).epsilon(1e-12));
}

TEST_CASE("artificial noise is invisible to Bob at every ndr") {
    Rng rng(35);
    const CMat h = random_channel(1, 2, 36);
    const BlindingFilter filter = build_blinding_filter(h, 37);
    CMat data(1, 32);
    for (int t = 0; t < 32; ++t) {
        data(0, t) = rng.qam_symbol();
    }
    for (double ndr : {0.0, 1.0, 2.0, 4.0, 8.0}) {
        const CMat received = h * encode(filter.f_a, data, ndr, rng);
        const CMat expected = data / (ndr + 1.0);
        CHECK((received - expected).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("encode equals filter times the separately built stack") {
    const CMat h = random_channel(1, 2, 38);
    const BlindingFilter filter = build_blinding_filter(h, 39);
    CMat data(1, 16);
    Rng data_rng(40);
    for (int t = 0; t < 16; ++t) {
        data(0, t) = data_rng.qam_symbol();
    }
    Rng rng_a(41);
    Rng rng_b(41);
    const CMat direct = encode(filter.f_a, data, 2.0, rng_a);
    const CMat via_stack = filter.f_a * stack_with_artificial_noise(data, 2, 2.0, rng_b);
    CHECK((direct - via_stack).norm() == 0.0);
    CHECK(std::isfinite(direct.squaredNorm()));
}

TEST_CASE("gray-mapped modem round-trips and slices to the nearest point") {
    const std::vector<int> bits = {0, 0, 0, 1, 1, 0, 1, 1};
    const SymbolStream stream = modulate(bits);
    REQUIRE(stream.size() == 4);
    CHECK(stream.symbols[0] == cxd(1.0, 1.0));
    CHECK(stream.symbols[1] == cxd(1.0, -1.0));
    CHECK(stream.symbols[2] == cxd(-1.0, 1.0));
    CHECK(stream.symbols[3] == cxd(-1.0, -1.0));

    CMat received(1, 4);
    for (int t = 0; t < 4; ++t) {
        received(0, t) = stream.symbols[static_cast<std::size_t>(t)];
    }
    const SymbolStream decoded = demodulate(received);
    CHECK(ser(stream, decoded) == 0.0);

    CHECK(demodulate_symbol(cxd(0.9, 1.1)) == cxd(1.0, 1.0));
    CHECK_THROWS_AS(modulate({0, 1, 0}), ContractError);
}

TEST_CASE("exact midpoints break ties deterministically toward the first point") {
    const cxd first = demodulate_symbol(cxd(0.0, 0.0));
    CHECK(first == qam_constellation()[0]);
    CHECK(demodulate_symbol(cxd(0.0, 0.0)) == first);
    CHECK(demodulate_symbol(cxd(0.0, 0.5)) == cxd(1.0, 1.0));
}

TEST_CASE("uniform random receptions decode at three-quarters error") {
    Rng rng(50);
    const int n = 100000;
    SymbolStream reference;
    CMat received(1, n);
    for (int t = 0; t < n; ++t) {
        reference.symbols.push_back(rng.qam_symbol());
        received(0, t) = cxd(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    }
    const double error_rate = ser(reference, demodulate(received));
    CHECK(error_rate == doctest::Approx(0.75).epsilon(0.0134));
}

TEST_CASE("ser counts mismatches") {
    SymbolStream a;
    SymbolStream b;
    for (int t = 0; t < 192; ++t) {
        a.symbols.push_back(cxd(1.0, 1.0));
        b.symbols.push_back(cxd(1.0, 1.0));
    }
    CHECK(ser(a, a) == 0.0);
    b.symbols[17] = cxd(-1.0, -1.0);
    CHECK(ser(a, b) == doctest::Approx(1.0 / 192.0));
    SymbolStream complement;
    for (int t = 0; t < 192; ++t) {
        complement.symbols.push_back(-a.symbols[static_cast<std::size_t>(t)]);
    }
    CHECK(ser(a, complement) == 1.0);
    SymbolStream shorter;
    shorter.symbols.push_back(cxd(1.0, 1.0));
    CHECK_THROWS_AS(ser(a, shorter), ContractError);
}
