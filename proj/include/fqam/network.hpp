#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fqam/ofdm.hpp"
#include "fqam/rng.hpp"
#include "fqam/stats.hpp"

namespace fqam {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

inline double dist(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct NetworkLayout {
    std::vector<Vec2> bs_positions;
    int serving_index = 0;
    Vec2 ue_position;
    double tx_power_w = 1.0;
    double pathloss_exponent = 3.0;
    double isd_m = 50.0;

    int n_bs() const { return static_cast<int>(bs_positions.size()); }
    double serving_distance() const {
        return dist(bs_positions[static_cast<std::size_t>(serving_index)], ue_position);
    }
};

// Hexagonal layouts: serving BS at origin, ring counts 1..4 give 7/19/37/61.
// The 3-BS case is the serving BS plus two adjacent first-ring neighbours
// forming an equilateral triangle.
inline NetworkLayout hex_layout(int n_bs, double isd) {
    NetworkLayout lay;
    lay.isd_m = isd;
    lay.serving_index = 0;
    switch (n_bs) {
        case 1:
            lay.bs_positions = {{0.0, 0.0}};
            return lay;
        case 3:
            lay.bs_positions = {{0.0, 0.0}, {isd, 0.0}, {0.5 * isd, 0.5 * std::sqrt(3.0) * isd}};
            return lay;
        case 7:
        case 19:
        case 37:
        case 61:
            break;
        default:
            throw std::invalid_argument("hex_layout: supported n_bs are 1, 3, 7, 19, 37, 61");
    }
    // triangular lattice, sorted by distance then angle for determinism
    std::vector<Vec2> pts;
    for (int i = -6; i <= 6; ++i)
        for (int j = -6; j <= 6; ++j)
            pts.push_back({isd * (i + 0.5 * j), isd * (0.5 * std::sqrt(3.0) * j)});
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        const double ra = std::hypot(a.x, a.y), rb = std::hypot(b.x, b.y);
        if (std::abs(ra - rb) > 1e-9) return ra < rb;
        return std::atan2(a.y, a.x) < std::atan2(b.y, b.x);
    });
    lay.bs_positions.assign(pts.begin(), pts.begin() + n_bs);
    return lay;
}

inline Vec2 circumcenter(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if (std::abs(d) < 1e-12) throw std::invalid_argument("circumcenter: collinear points");
    const double a2 = a.x * a.x + a.y * a.y;
    const double b2 = b.x * b.x + b.y * b.y;
    const double c2 = c.x * c.x + c.y * c.y;
    return {(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
            (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
}

// UE at the worst-case ICI point: equidistant from the serving BS and its two
// nearest mutually adjacent neighbours. Single-cell layouts place the UE at
// isd/2 from the BS.
inline NetworkLayout place_ue_cell_edge(NetworkLayout lay) {
    const Vec2 serving = lay.bs_positions[static_cast<std::size_t>(lay.serving_index)];
    if (lay.n_bs() == 1) {
        lay.ue_position = {serving.x + 0.5 * lay.isd_m, serving.y};
        return lay;
    }
    // candidates: all non-serving BSs at (near) minimal distance from serving
    double dmin = 1e300;
    for (int i = 0; i < lay.n_bs(); ++i) {
        if (i == lay.serving_index) continue;
        dmin = std::min(dmin, dist(serving, lay.bs_positions[static_cast<std::size_t>(i)]));
    }
    std::vector<int> near;
    for (int i = 0; i < lay.n_bs(); ++i) {
        if (i == lay.serving_index) continue;
        if (dist(serving, lay.bs_positions[static_cast<std::size_t>(i)]) < dmin * (1.0 + 1e-9))
            near.push_back(i);
    }
    if (near.size() < 2) throw std::invalid_argument("place_ue_cell_edge: need >= 3 BSs");
    // pick the pair of nearest neighbours that are closest to each other
    int bi = near[0], bj = near[1];
    double best = 1e300;
    for (std::size_t u = 0; u < near.size(); ++u)
        for (std::size_t v = u + 1; v < near.size(); ++v) {
            const double d = dist(lay.bs_positions[static_cast<std::size_t>(near[u])],
                                  lay.bs_positions[static_cast<std::size_t>(near[v])]);
            if (d < best) {
                best = d;
                bi = near[u];
                bj = near[v];
            }
        }
    lay.ue_position = circumcenter(serving, lay.bs_positions[static_cast<std::size_t>(bi)],
                                   lay.bs_positions[static_cast<std::size_t>(bj)]);
    return lay;
}

// Per-BS frequency-domain channel coefficients, N_s per BS. Small-scale
// fading is i.i.d. CN(0,1) per BS and subcarrier; the large-scale amplitude
// scale sqrt(P_T d^-alpha) is folded in.
struct ChannelRealization {
    std::vector<CplxVec> h; // [n_bs][n_subcarriers]
};

inline double large_scale_gain(const NetworkLayout& lay, int bs) {
    const double d = dist(lay.bs_positions[static_cast<std::size_t>(bs)], lay.ue_position);
    return lay.tx_power_w * std::pow(d, -lay.pathloss_exponent);
}

inline ChannelRealization draw_channels(const NetworkLayout& lay, int n_subcarriers, Rng& rng) {
    ChannelRealization ch;
    ch.h.resize(static_cast<std::size_t>(lay.n_bs()));
    for (int a = 0; a < lay.n_bs(); ++a) {
        const double amp = std::sqrt(large_scale_gain(lay, a));
        auto& row = ch.h[static_cast<std::size_t>(a)];
        row.resize(static_cast<std::size_t>(n_subcarriers));
        for (auto& v : row) v = amp * rng.cnormal();
    }
    return ch;
}

struct RxObservation {
    FreqGrid omega;          // received grid
    FreqGrid true_noise_ici; // noise plus ICI, kept for analysis only
    FreqGrid serving_h;      // serving channel coefficients
};

inline RxObservation synthesize_rx(const FreqGrid& serving_grid,
                                   const std::vector<FreqGrid>& interferer_grids,
                                   const ChannelRealization& chans, const NetworkLayout& lay,
                                   double noise_power_per_component, Rng& rng) {
    const std::size_t n = serving_grid.size();
    if (static_cast<int>(interferer_grids.size()) != lay.n_bs() - 1)
        throw std::invalid_argument("synthesize_rx: need n_bs - 1 interferer grids");
    for (const auto& g : interferer_grids)
        if (g.size() != n) throw std::invalid_argument("synthesize_rx: grid size mismatch");
    if (chans.h.size() != static_cast<std::size_t>(lay.n_bs()) || chans.h[0].size() != n)
        throw std::invalid_argument("synthesize_rx: channel dimensions mismatch");

    RxObservation rx;
    rx.serving_h = chans.h[static_cast<std::size_t>(lay.serving_index)];
    rx.omega.resize(n);
    rx.true_noise_ici.assign(n, Cplx(0.0, 0.0));
    std::size_t gi = 0;
    for (int a = 0; a < lay.n_bs(); ++a) {
        if (a == lay.serving_index) continue;
        const auto& h = chans.h[static_cast<std::size_t>(a)];
        const auto& g = interferer_grids[gi++];
        for (std::size_t k = 0; k < n; ++k) rx.true_noise_ici[k] += h[k] * g[k];
    }
    for (std::size_t k = 0; k < n; ++k)
        rx.true_noise_ici[k] += rng.cnormal(noise_power_per_component);
    for (std::size_t k = 0; k < n; ++k)
        rx.omega[k] = rx.serving_h[k] * serving_grid[k] + rx.true_noise_ici[k];
    return rx;
}

inline FreqGrid random_fqam_grid(const FqamSpec& spec, const OfdmConfig& cfg, Rng& rng) {
    std::vector<FqamSymbol> syms(static_cast<std::size_t>(cfg.groups()));
    for (auto& s : syms) {
        s.freq_index = static_cast<int>(rng.below(static_cast<std::size_t>(spec.mf)));
        s.qam_index = static_cast<int>(rng.below(static_cast<std::size_t>(spec.qam.order)));
    }
    return assemble_grid(syms, spec, cfg);
}

enum class InterfererSignal { Fqam, GaussianControl };

struct IciSampleSummary {
    std::vector<double> samples; // real parts, normalized to unit variance
    double raw_variance = 0.0;
    double excess_kurtosis = 0.0;
};

// Noise-plus-ICI sample sets at the UE position. FQAM interferers transmit
// independent random symbol grids through Rayleigh fading; the Gaussian
// control replaces each interferer's received contribution with a complex
// Gaussian of matched average power (no fading, no sparsity).
inline IciSampleSummary collect_ici_samples(const NetworkLayout& lay, const FqamSpec& spec,
                                            const OfdmConfig& cfg, std::size_t n_samples,
                                            InterfererSignal kind, double noise_power_per_component,
                                            Rng& rng) {
    IciSampleSummary out;
    out.samples.reserve(n_samples + static_cast<std::size_t>(cfg.n_subcarriers));
    const auto n = static_cast<std::size_t>(cfg.n_subcarriers);
    while (out.samples.size() < n_samples) {
        CplxVec z(n, Cplx(0.0, 0.0));
        for (int a = 0; a < lay.n_bs(); ++a) {
            if (a == lay.serving_index) continue;
            const double gain = large_scale_gain(lay, a);
            if (kind == InterfererSignal::GaussianControl) {
                for (std::size_t k = 0; k < n; ++k) z[k] += rng.cnormal(gain);
            } else {
                const double amp = std::sqrt(gain);
                const FreqGrid g = random_fqam_grid(spec, cfg, rng);
                for (std::size_t k = 0; k < n; ++k) z[k] += amp * rng.cnormal() * g[k];
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            z[k] += rng.cnormal(noise_power_per_component);
            out.samples.push_back(z[k].real());
        }
    }
    out.samples.resize(n_samples);
    const MomentSummary m = moments(out.samples);
    out.raw_variance = m.variance;
    out.excess_kurtosis = m.excess_kurtosis;
    const double s = 1.0 / std::sqrt(m.variance);
    for (auto& v : out.samples) v = (v - m.mean) * s;
    return out;
}

} // namespace fqam
