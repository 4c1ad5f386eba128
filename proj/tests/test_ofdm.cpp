#include <catch_amalgamated.hpp>

#include "fqam/network.hpp"
#include "fqam/ofdm.hpp"
#include "fqam/rng.hpp"

using namespace fqam;

namespace {

// O(N^2) reference DFT, unscaled. Independent of the fft path.
CplxVec naive_dft(const CplxVec& x, std::size_t n) {
    CplxVec out(n, Cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t t = 0; t < x.size() && t < n; ++t)
            out[k] += x[t] * std::polar(1.0, -2.0 * M_PI * static_cast<double>(k * t) / n);
    return out;
}

FreqGrid random_grid(std::size_t n, Rng& rng) {
    FreqGrid g(n);
    for (auto& v : g) v = rng.cnormal();
    return g;
}

} // namespace

TEST_CASE("OfdmConfig validation") {
    CHECK_THROWS_AS(OfdmConfig::make(100, 8, 4), std::invalid_argument);
    CHECK_THROWS_AS(OfdmConfig::make(64, -1, 4), std::invalid_argument);
    CHECK_THROWS_AS(OfdmConfig::make(64, 8, 3), std::invalid_argument);
}

TEST_CASE("assemble_grid places symbols in contiguous groups") {
    const auto spec = FqamSpec::make(4, 4);
    const auto cfg = OfdmConfig::make(8, 2, 4);
    const auto grid = assemble_grid({{2, 1}, {0, 3}}, spec, cfg);
    int nonzero = 0;
    for (const auto& v : grid) nonzero += std::abs(v) > 0.0;
    CHECK(nonzero == 2);
    CHECK(std::abs(grid[2]) > 0.0); // symbol 0 at indices [0, 4)
    CHECK(std::abs(grid[4]) > 0.0); // symbol 1 at indices [4, 8)
    CHECK_THROWS_AS(assemble_grid({{0, 0}}, spec, cfg), std::invalid_argument);
}

TEST_CASE("assemble_grid with M_F = 1 is dense") {
    const auto spec = FqamSpec::make(1, 2);
    const auto cfg = OfdmConfig::make(8, 2, 1);
    std::vector<FqamSymbol> syms(8, {0, 1});
    const auto grid = assemble_grid(syms, spec, cfg);
    for (const auto& v : grid) CHECK(std::abs(v) > 0.0);
}

TEST_CASE("tx/rx identity channel roundtrip") {
    Rng rng(7);
    const auto cfg = OfdmConfig::make(64, 8, 4);
    const auto g = random_grid(64, rng);
    const auto rx = rx_grid(tx_waveform(g, cfg), {Cplx(1.0, 0.0)}, cfg);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(rx[k] - g[k]) < 1e-10);
}

TEST_CASE("Parseval: waveform energy without CP equals grid energy") {
    Rng rng(8);
    const auto cfg = OfdmConfig::make(128, 16, 4);
    const auto g = random_grid(128, rng);
    const auto w = tx_waveform(g, cfg);
    double et = 0.0, ef = 0.0;
    for (std::size_t i = static_cast<std::size_t>(cfg.cp_length); i < w.size(); ++i)
        et += std::norm(w[i]);
    for (const auto& v : g) ef += std::norm(v);
    CHECK(std::abs(et - ef) < 1e-10);
}

TEST_CASE("impulse grid produces a complex exponential tone") {
    const auto cfg = OfdmConfig::make(32, 4, 4);
    FreqGrid g(32, Cplx(0.0, 0.0));
    g[3] = Cplx(1.0, 0.0);
    const auto w = tx_waveform(g, cfg);
    const double amp = 1.0 / std::sqrt(32.0);
    for (int t = 0; t < 32; ++t) {
        const Cplx expect = amp * std::polar(1.0, 2.0 * M_PI * 3.0 * t / 32.0);
        CHECK(std::abs(w[static_cast<std::size_t>(t + cfg.cp_length)] - expect) < 1e-12);
    }
}

TEST_CASE("2-tap channel equals elementwise product with the channel DFT") {
    Rng rng(9);
    const auto cfg = OfdmConfig::make(64, 8, 4);
    const auto g = random_grid(64, rng);
    const CplxVec h = {Cplx(1.0, 0.0), Cplx(0.5, 0.0)};
    const auto rx = rx_grid(tx_waveform(g, cfg), h, cfg);
    const CplxVec href = naive_dft(h, 64);
    for (std::size_t k = 0; k < g.size(); ++k)
        CHECK(std::abs(rx[k] - href[k] * g[k]) < 1e-9);
}

TEST_CASE("one-tap equivalence for random channels up to CP + 1 taps") {
    Rng rng(10);
    const auto cfg = OfdmConfig::make(64, 8, 4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_grid(64, rng);
        const auto len = 1 + rng.below(static_cast<std::size_t>(cfg.cp_length) + 1);
        CplxVec h(len);
        for (auto& v : h) v = rng.cnormal();
        const auto rx = rx_grid(tx_waveform(g, cfg), h, cfg);
        const CplxVec href = naive_dft(h, 64);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const Cplx expect = href[k] * g[k];
            CHECK(std::abs(rx[k] - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST_CASE("all-zero waveform gives all-zero grid") {
    const auto cfg = OfdmConfig::make(32, 4, 4);
    const CplxVec w(36, Cplx(0.0, 0.0));
    for (const auto& v : rx_grid(w, {Cplx(1.0, 0.0)}, cfg)) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("channel longer than CP is rejected") {
    const auto cfg = OfdmConfig::make(32, 4, 4);
    const CplxVec w(36, Cplx(0.0, 0.0));
    CplxVec h(6, Cplx(0.1, 0.0));
    CHECK_THROWS_AS(rx_grid(w, h, cfg), std::invalid_argument);
}
