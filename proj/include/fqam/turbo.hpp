#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fqam/bits.hpp"
#include "fqam/rng.hpp"

namespace fqam {

// Deterministic full-length pseudorandom permutation (Fisher-Yates driven by
// the library RNG, so it is identical across runs and platforms).
inline std::vector<std::size_t> make_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    Rng rng = Rng::stream(seed, {0x9e1l, n});
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
    return p;
}

template <class T>
std::vector<T> permute(const std::vector<T>& x, const std::vector<std::size_t>& p) {
    if (x.size() != p.size()) throw std::invalid_argument("permute: size mismatch");
    std::vector<T> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[p[i]];
    return y;
}

template <class T>
std::vector<T> unpermute(const std::vector<T>& y, const std::vector<std::size_t>& p) {
    if (y.size() != p.size()) throw std::invalid_argument("unpermute: size mismatch");
    std::vector<T> x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[p[i]] = y[i];
    return x;
}

// Rate-1/3 PCCC: two identical 8-state RSC encoders, generators 13/15 octal
// (feedback 1+D^2+D^3, forward 1+D+D^3), trellis termination with tail bits.
// Codeword layout: [systematic K | parity1 K | parity2 K | tail1 (x,z)x3 |
// tail2 (x,z)x3], total 3K + 12.
struct TurboConfig {
    int block_length = 0;
    int iterations = 8;
    double extrinsic_scale = 0.75;
    std::vector<std::size_t> interleaver;

    int codeword_length() const { return 3 * block_length + 12; }

    static TurboConfig make(int k, int iterations = 8) {
        if (k < 1) throw std::invalid_argument("TurboConfig: block length must be >= 1");
        TurboConfig c;
        c.block_length = k;
        c.iterations = iterations;
        c.interleaver = make_permutation(static_cast<std::size_t>(k), 0x70a4b0ull);
        return c;
    }
};

namespace detail {

constexpr int kTurboStates = 8;

inline int rsc_step(int state, int u, int& parity) {
    const int r0 = (state >> 2) & 1, r1 = (state >> 1) & 1, r2 = state & 1;
    const int a = u ^ r1 ^ r2;
    parity = a ^ r0 ^ r2;
    return (a << 2) | (r0 << 1) | r1;
}

inline int rsc_termination_input(int state) {
    const int r1 = (state >> 1) & 1, r2 = state & 1;
    return r1 ^ r2; // drives the feedback to zero
}

struct RscTails {
    std::uint8_t sys[3];
    std::uint8_t par[3];
};

inline void rsc_encode(const std::uint8_t* u, int k, std::uint8_t* parity, RscTails& tails) {
    int s = 0;
    for (int t = 0; t < k; ++t) {
        int p = 0;
        s = rsc_step(s, u[t] & 1, p);
        parity[t] = static_cast<std::uint8_t>(p);
    }
    for (int t = 0; t < 3; ++t) {
        const int ut = rsc_termination_input(s);
        int p = 0;
        s = rsc_step(s, ut, p);
        tails.sys[t] = static_cast<std::uint8_t>(ut);
        tails.par[t] = static_cast<std::uint8_t>(p);
    }
}

} // namespace detail

inline BitVec turbo_encode(const BitVec& info, const TurboConfig& cfg) {
    const auto k = static_cast<std::size_t>(cfg.block_length);
    if (info.size() != k) throw std::invalid_argument("turbo_encode: info length != K");
    BitVec out(static_cast<std::size_t>(cfg.codeword_length()));
    std::copy(info.begin(), info.end(), out.begin());
    detail::RscTails t1{}, t2{};
    rsc_encode(info.data(), cfg.block_length, out.data() + k, t1);
    const BitVec interleaved = permute(info, cfg.interleaver);
    rsc_encode(interleaved.data(), cfg.block_length, out.data() + 2 * k, t2);
    std::uint8_t* tail = out.data() + 3 * k;
    for (int t = 0; t < 3; ++t) {
        *tail++ = t1.sys[t];
        *tail++ = t1.par[t];
    }
    for (int t = 0; t < 3; ++t) {
        *tail++ = t2.sys[t];
        *tail++ = t2.par[t];
    }
    return out;
}

namespace detail {

constexpr double kNegInf = -1e30;

// Max-log BCJR for one constituent code. lsys/lpar are length K (+3 tail
// entries in tsys/tpar); la is the a priori on the information bits. LLR
// convention: positive means bit 0.
inline void maxlog_bcjr(const std::vector<double>& lsys, const std::vector<double>& lpar,
                        const double* tsys, const double* tpar, const std::vector<double>& la,
                        std::vector<double>& lout) {
    const int k = static_cast<int>(lsys.size());
    const int n = k + 3;

    // precomputed trellis
    static thread_local int next[kTurboStates][2];
    static thread_local int par[kTurboStates][2];
    static thread_local bool init = false;
    if (!init) {
        for (int s = 0; s < kTurboStates; ++s)
            for (int u = 0; u < 2; ++u) {
                int p = 0;
                next[s][u] = rsc_step(s, u, p);
                par[s][u] = p;
            }
        init = true;
    }

    auto bip = [](int bit) { return bit ? -1.0 : 1.0; };

    std::vector<double> alpha(static_cast<std::size_t>(n + 1) * kTurboStates, kNegInf);
    alpha[0] = 0.0;
    std::vector<double> gam(static_cast<std::size_t>(n) * kTurboStates * 2);
    for (int t = 0; t < n; ++t) {
        const double lu = (t < k) ? lsys[static_cast<std::size_t>(t)] + la[static_cast<std::size_t>(t)]
                                  : tsys[t - k];
        const double lp = (t < k) ? lpar[static_cast<std::size_t>(t)] : tpar[t - k];
        double* a0 = alpha.data() + static_cast<std::size_t>(t) * kTurboStates;
        double* a1 = alpha.data() + static_cast<std::size_t>(t + 1) * kTurboStates;
        double* g = gam.data() + static_cast<std::size_t>(t) * kTurboStates * 2;
        for (int s = 0; s < kTurboStates; ++s) {
            if (a0[s] <= kNegInf) {
                g[2 * s] = g[2 * s + 1] = kNegInf;
                continue;
            }
            for (int u = 0; u < 2; ++u) {
                const double m = 0.5 * (bip(u) * lu + bip(par[s][u]) * lp);
                g[2 * s + u] = m;
                const double cand = a0[s] + m;
                if (cand > a1[next[s][u]]) a1[next[s][u]] = cand;
            }
        }
        // normalize to avoid drift
        double mx = kNegInf;
        for (int s = 0; s < kTurboStates; ++s) mx = std::max(mx, a1[s]);
        for (int s = 0; s < kTurboStates; ++s) a1[s] -= mx;
    }

    std::vector<double> beta(kTurboStates, kNegInf);
    beta[0] = 0.0; // terminated trellis
    std::vector<double> beta_next(kTurboStates);
    lout.assign(static_cast<std::size_t>(k), 0.0);
    for (int t = n - 1; t >= 0; --t) {
        const double* a0 = alpha.data() + static_cast<std::size_t>(t) * kTurboStates;
        const double* g = gam.data() + static_cast<std::size_t>(t) * kTurboStates * 2;
        double m0 = kNegInf, m1 = kNegInf;
        std::fill(beta_next.begin(), beta_next.end(), kNegInf);
        for (int s = 0; s < kTurboStates; ++s) {
            for (int u = 0; u < 2; ++u) {
                if (g[2 * s + u] <= kNegInf) continue;
                const double b = beta[static_cast<std::size_t>(next[s][u])];
                if (b <= kNegInf) continue;
                const double full = a0[s] + g[2 * s + u] + b;
                if (u == 0) m0 = std::max(m0, full);
                else m1 = std::max(m1, full);
                const double back = g[2 * s + u] + b;
                if (back > beta_next[static_cast<std::size_t>(s)])
                    beta_next[static_cast<std::size_t>(s)] = back;
            }
        }
        if (t < k) lout[static_cast<std::size_t>(t)] = m0 - m1;
        double mx = kNegInf;
        for (double b : beta_next) mx = std::max(mx, b);
        for (auto& b : beta_next) b -= mx;
        beta.swap(beta_next);
    }
}

} // namespace detail

struct TurboDecodeResult {
    BitVec bits;
    std::vector<double> posteriors; // positive means bit 0
    int iterations_run = 0;
};

inline TurboDecodeResult turbo_decode(const std::vector<double>& llrs, const TurboConfig& cfg) {
    const auto k = static_cast<std::size_t>(cfg.block_length);
    if (llrs.size() != static_cast<std::size_t>(cfg.codeword_length()))
        throw std::invalid_argument("turbo_decode: LLR length != codeword length");

    std::vector<double> lsys(llrs.begin(), llrs.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<double> lp1(llrs.begin() + static_cast<std::ptrdiff_t>(k),
                            llrs.begin() + static_cast<std::ptrdiff_t>(2 * k));
    std::vector<double> lp2(llrs.begin() + static_cast<std::ptrdiff_t>(2 * k),
                            llrs.begin() + static_cast<std::ptrdiff_t>(3 * k));
    double ts1[3], tp1[3], ts2[3], tp2[3];
    const double* tail = llrs.data() + 3 * k;
    for (int t = 0; t < 3; ++t) {
        ts1[t] = *tail++;
        tp1[t] = *tail++;
    }
    for (int t = 0; t < 3; ++t) {
        ts2[t] = *tail++;
        tp2[t] = *tail++;
    }
    const std::vector<double> lsys_i = permute(lsys, cfg.interleaver);

    std::vector<double> la1(k, 0.0), la2(k, 0.0), l1, l2;
    TurboDecodeResult res;
    BitVec prev_hard;
    for (int it = 0; it < cfg.iterations; ++it) {
        detail::maxlog_bcjr(lsys, lp1, ts1, tp1, la1, l1);
        std::vector<double> e1(k);
        for (std::size_t i = 0; i < k; ++i)
            e1[i] = cfg.extrinsic_scale * (l1[i] - lsys[i] - la1[i]);
        la2 = permute(e1, cfg.interleaver);

        detail::maxlog_bcjr(lsys_i, lp2, ts2, tp2, la2, l2);
        std::vector<double> e2(k);
        for (std::size_t i = 0; i < k; ++i)
            e2[i] = cfg.extrinsic_scale * (l2[i] - lsys_i[i] - la2[i]);
        la1 = unpermute(e2, cfg.interleaver);

        res.iterations_run = it + 1;
        res.posteriors = unpermute(l2, cfg.interleaver);
        BitVec hard(k);
        for (std::size_t i = 0; i < k; ++i) hard[i] = res.posteriors[i] < 0.0 ? 1 : 0;
        BitVec hard1(k);
        for (std::size_t i = 0; i < k; ++i) hard1[i] = l1[i] < 0.0 ? 1 : 0;
        if (hard == hard1 && hard == prev_hard) {
            res.bits = std::move(hard);
            return res;
        }
        prev_hard = std::move(hard);
    }
    res.bits = std::move(prev_hard);
    return res;
}

} // namespace fqam
