#pragma once

#include <stdexcept>
#include <vector>

#include "fqam/constellation.hpp"
#include "fqam/fft.hpp"

namespace fqam {

// Frequency-domain grid of one OFDM symbol: N_s/M_F consecutive groups of M_F
// components, group k carrying one FQAM symbol.
using FreqGrid = CplxVec;

struct OfdmConfig {
    int n_subcarriers = 1024;
    int cp_length = 72;
    int mf = 4;

    int groups() const { return n_subcarriers / mf; }

    static OfdmConfig make(int n_s, int cp, int mf) {
        if (!is_power_of_two(static_cast<unsigned>(n_s)))
            throw std::invalid_argument("OfdmConfig: N_s must be a power of two");
        if (cp < 0) throw std::invalid_argument("OfdmConfig: cp_length must be >= 0");
        if (n_s % mf != 0) throw std::invalid_argument("OfdmConfig: M_F must divide N_s");
        return OfdmConfig{n_s, cp, mf};
    }
};

inline FreqGrid assemble_grid(const std::vector<FqamSymbol>& symbols, const FqamSpec& spec,
                              const OfdmConfig& cfg) {
    if (static_cast<int>(symbols.size()) != cfg.groups())
        throw std::invalid_argument("assemble_grid: need N_s/M_F symbols");
    FreqGrid grid(static_cast<std::size_t>(cfg.n_subcarriers));
    for (int k = 0; k < cfg.groups(); ++k)
        symbol_to_grid(symbols[static_cast<std::size_t>(k)], spec,
                       grid.data() + static_cast<std::size_t>(k) * spec.mf);
    return grid;
}

// Unitary IFFT, then the last cp_length samples are prepended as cyclic prefix.
inline CplxVec tx_waveform(const FreqGrid& grid, const OfdmConfig& cfg) {
    if (static_cast<int>(grid.size()) != cfg.n_subcarriers)
        throw std::invalid_argument("tx_waveform: grid length != N_s");
    const CplxVec t = ifft_unitary(grid);
    CplxVec out(t.size() + static_cast<std::size_t>(cfg.cp_length));
    for (int i = 0; i < cfg.cp_length; ++i)
        out[static_cast<std::size_t>(i)] = t[t.size() - static_cast<std::size_t>(cfg.cp_length - i)];
    std::copy(t.begin(), t.end(), out.begin() + cfg.cp_length);
    return out;
}

// Passes the waveform through a time-domain channel (linear convolution),
// strips the CP and returns the FFT. Provided the channel fits inside the CP
// the result equals H .* X with H the unscaled DFT of the zero-padded channel.
inline FreqGrid rx_grid(const CplxVec& waveform, const CplxVec& channel_time,
                        const OfdmConfig& cfg) {
    if (static_cast<int>(channel_time.size()) > cfg.cp_length + 1)
        throw std::invalid_argument("rx_grid: channel longer than CP + 1");
    const auto n = static_cast<std::size_t>(cfg.n_subcarriers);
    const auto cp = static_cast<std::size_t>(cfg.cp_length);
    CplxVec core(n, Cplx(0.0, 0.0));
    // only samples [cp, cp+N) of the convolution are needed
    for (std::size_t i = 0; i < n; ++i) {
        Cplx acc(0.0, 0.0);
        const std::size_t t = cp + i;
        for (std::size_t j = 0; j < channel_time.size(); ++j) {
            if (t < j) break;
            const std::size_t src = t - j;
            if (src < waveform.size()) acc += channel_time[j] * waveform[src];
        }
        core[i] = acc;
    }
    return fft_unitary(core);
}

inline CplxVec channel_freq_response(const CplxVec& channel_time, const OfdmConfig& cfg) {
    return dft_zero_padded(channel_time, static_cast<std::size_t>(cfg.n_subcarriers));
}

} // namespace fqam
