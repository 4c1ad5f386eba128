#include <catch_amalgamated.hpp>

#include "fqam/rng.hpp"
#include "fqam/turbo.hpp"

using namespace fqam;

namespace {

BitVec random_bits(std::size_t n, Rng& rng) {
    BitVec b(n);
    for (auto& v : b) v = rng.bit();
    return b;
}

// Noiseless BPSK LLRs at high confidence.
std::vector<double> perfect_llrs(const BitVec& coded, double mag = 20.0) {
    std::vector<double> l(coded.size());
    for (std::size_t i = 0; i < coded.size(); ++i) l[i] = coded[i] ? -mag : mag;
    return l;
}

} // namespace

TEST_CASE("permutation: bijective, deterministic, full length") {
    const auto p = make_permutation(257, 42);
    const auto q = make_permutation(257, 42);
    CHECK(p == q);
    std::vector<bool> seen(257, false);
    for (auto v : p) {
        REQUIRE(v < 257);
        CHECK(!seen[v]);
        seen[v] = true;
    }
    Rng rng(1);
    const auto x = random_bits(257, rng);
    CHECK(unpermute(permute(x, p), p) == x);
    // no untouched prefix or suffix
    std::size_t moved = 0;
    for (std::size_t i = 0; i < p.size(); ++i) moved += p[i] != i;
    CHECK(moved > 200);
    CHECK(make_permutation(257, 43) != p);
}

TEST_CASE("encoder: all-zero input yields all-zero codeword") {
    const auto cfg = TurboConfig::make(64);
    const BitVec zeros(64, 0);
    const auto coded = turbo_encode(zeros, cfg);
    REQUIRE(static_cast<int>(coded.size()) == 3 * 64 + 12);
    for (auto b : coded) CHECK(b == 0);
}

TEST_CASE("encoder: GF(2) linearity") {
    const auto cfg = TurboConfig::make(128);
    Rng rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_bits(128, rng);
        const auto b = random_bits(128, rng);
        BitVec ab(128);
        for (std::size_t i = 0; i < 128; ++i) ab[i] = a[i] ^ b[i];
        const auto ca = turbo_encode(a, cfg);
        const auto cb = turbo_encode(b, cfg);
        const auto cab = turbo_encode(ab, cfg);
        for (std::size_t i = 0; i < cab.size(); ++i) CHECK(cab[i] == (ca[i] ^ cb[i]));
    }
}

TEST_CASE("encoder output length is 3K + 12") {
    for (int k : {1, 40, 1024}) {
        const auto cfg = TurboConfig::make(k);
        Rng rng(3);
        CHECK(static_cast<int>(turbo_encode(random_bits(static_cast<std::size_t>(k), rng), cfg)
                                   .size()) == 3 * k + 12);
    }
}

TEST_CASE("decoder: noiseless roundtrip") {
    Rng rng(4);
    for (int k : {40, 256, 1024}) {
        const auto cfg = TurboConfig::make(k);
        const auto info = random_bits(static_cast<std::size_t>(k), rng);
        const auto dec = turbo_decode(perfect_llrs(turbo_encode(info, cfg)), cfg);
        CHECK(dec.bits == info);
        CHECK(dec.iterations_run <= cfg.iterations);
    }
}

TEST_CASE("decoder: recovers from sparse sign flips") {
    Rng rng(5);
    const int k = 1024;
    const auto cfg = TurboConfig::make(k);
    const auto info = random_bits(k, rng);
    auto llrs = perfect_llrs(turbo_encode(info, cfg), 5.0);
    // flip < 5% of positions
    const std::size_t flips = llrs.size() / 25;
    for (std::size_t i = 0; i < flips; ++i) llrs[rng.below(llrs.size())] *= -1.0;
    CHECK(turbo_decode(llrs, cfg).bits == info);
}

TEST_CASE("decoder: BPSK/AWGN at Eb/N0 = 2 dB reaches BER < 1e-3") {
    const int k = 1024;
    const auto cfg = TurboConfig::make(k);
    const double rate = static_cast<double>(k) / (3 * k + 12);
    const double ebn0 = std::pow(10.0, 2.0 / 10.0);
    const double sigma2 = 1.0 / (2.0 * rate * ebn0);
    Rng rng(6);
    std::uint64_t errors = 0, bits = 0;
    for (int frame = 0; frame < 1000; ++frame) {
        const auto info = random_bits(k, rng);
        const auto coded = turbo_encode(info, cfg);
        std::vector<double> llrs(coded.size());
        for (std::size_t i = 0; i < coded.size(); ++i) {
            const double x = coded[i] ? -1.0 : 1.0;
            const double y = x + std::sqrt(sigma2) * rng.normal();
            llrs[i] = 2.0 * y / sigma2;
        }
        const auto dec = turbo_decode(llrs, cfg);
        for (int i = 0; i < k; ++i) errors += dec.bits[static_cast<std::size_t>(i)] !=
                                              info[static_cast<std::size_t>(i)];
        bits += k;
    }
    INFO("bits=" << bits << " errors=" << errors);
    CHECK(static_cast<double>(errors) / static_cast<double>(bits) < 1e-3);
}

TEST_CASE("decoder: extra iterations do not hurt") {
    const int k = 512;
    const double sigma2 = 1.0 / (2.0 * (1.0 / 3.0) * std::pow(10.0, 1.5 / 10.0));
    Rng rng(7);
    std::uint64_t err8 = 0, err12 = 0;
    const auto cfg8 = TurboConfig::make(k, 8);
    const auto cfg12 = TurboConfig::make(k, 12);
    for (int frame = 0; frame < 300; ++frame) {
        const auto info = random_bits(k, rng);
        const auto coded = turbo_encode(info, cfg8);
        std::vector<double> llrs(coded.size());
        for (std::size_t i = 0; i < coded.size(); ++i)
            llrs[i] = 2.0 * ((coded[i] ? -1.0 : 1.0) + std::sqrt(sigma2) * rng.normal()) / sigma2;
        const auto d8 = turbo_decode(llrs, cfg8);
        const auto d12 = turbo_decode(llrs, cfg12);
        for (int i = 0; i < k; ++i) {
            err8 += d8.bits[static_cast<std::size_t>(i)] != info[static_cast<std::size_t>(i)];
            err12 += d12.bits[static_cast<std::size_t>(i)] != info[static_cast<std::size_t>(i)];
        }
    }
    // allow statistical tolerance
    CHECK(err12 <= err8 + 50);
}

TEST_CASE("decoder input length validated") {
    const auto cfg = TurboConfig::make(64);
    CHECK_THROWS_AS(turbo_decode(std::vector<double>(100, 0.0), cfg), std::invalid_argument);
}
