#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fqam/bits.hpp"

namespace fqam {

using Cplx = std::complex<double>;
using CplxVec = std::vector<Cplx>;

// In-place iterative radix-2 FFT, unnormalized. inverse=true conjugates the
// twiddles but applies no 1/N scaling.
inline void fft_inplace(CplxVec& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_power_of_two(static_cast<unsigned>(n)))
        throw std::invalid_argument("fft: length must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const Cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Cplx u = a[i + k];
                const Cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Unitary transforms: 1/sqrt(N) scaling in both directions.
inline CplxVec fft_unitary(CplxVec a) {
    fft_inplace(a, false);
    const double s = 1.0 / std::sqrt(static_cast<double>(a.size()));
    for (auto& v : a) v *= s;
    return a;
}

inline CplxVec ifft_unitary(CplxVec a) {
    fft_inplace(a, true);
    const double s = 1.0 / std::sqrt(static_cast<double>(a.size()));
    for (auto& v : a) v *= s;
    return a;
}

// Unscaled N-point DFT of a (shorter) time-domain vector, zero padded.
inline CplxVec dft_zero_padded(const CplxVec& h, std::size_t n) {
    if (h.size() > n) throw std::invalid_argument("dft_zero_padded: vector longer than N");
    CplxVec a(n, Cplx(0.0, 0.0));
    std::copy(h.begin(), h.end(), a.begin());
    fft_inplace(a, false);
    return a;
}

} // namespace fqam
