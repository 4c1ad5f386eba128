#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fqam/constellation.hpp"
#include "fqam/ofdm.hpp"

namespace fqam {

// Shape/scale of the complex generalized Gaussian noise-plus-ICI model.
// alpha = 2 reduces to the complex Gaussian with variance beta^2.
struct CggParams {
    double alpha = 2.0;
    double beta = 1.0;
    bool clamped = false;
};

constexpr double kCggAlphaMin = 0.2;
constexpr double kCggAlphaMax = 4.0;
constexpr std::size_t kCggMinSamples = 256;

struct NoInterferenceError : std::runtime_error {
    NoInterferenceError() : std::runtime_error("estimate_cgg: all residuals are zero") {}
};

struct HardDecision {
    int freq_index = 0;
    int qam_index = 0;
};

// Exhaustive minimization of sum_l |omega_l - H_l s delta_{m,l}|^2 over the
// M_F * Q hypotheses, one group at a time. Only the candidate component
// changes, so the objective reduces to |omega_m - H_m s|^2 - |omega_m|^2.
// Ties break to the lowest (m, q).
inline std::vector<HardDecision> hard_detect(const FreqGrid& omega, const FreqGrid& serving_h,
                                             const FqamSpec& spec) {
    if (omega.size() != serving_h.size() || omega.size() % static_cast<std::size_t>(spec.mf) != 0)
        throw std::invalid_argument("hard_detect: dimension mismatch");
    const std::size_t groups = omega.size() / static_cast<std::size_t>(spec.mf);
    const double scale = active_scale(spec);
    std::vector<HardDecision> out(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        const Cplx* om = omega.data() + g * static_cast<std::size_t>(spec.mf);
        const Cplx* h = serving_h.data() + g * static_cast<std::size_t>(spec.mf);
        double best = std::numeric_limits<double>::infinity();
        HardDecision bd;
        for (int m = 0; m < spec.mf; ++m)
            for (int q = 0; q < spec.qam.order; ++q) {
                const Cplx hs = h[m] * (scale * spec.qam.points[static_cast<std::size_t>(q)]);
                const double obj = std::norm(om[m] - hs) - std::norm(om[m]);
                if (obj < best - 1e-15) {
                    best = obj;
                    bd = {m, q};
                }
            }
        out[g] = bd;
    }
    return out;
}

struct IciEstimate {
    FreqGrid z_hat;
    std::vector<HardDecision> decisions;
};

// Z_hat = omega - H s_hat delta_{m_hat, l}: only the decided active component
// of each group differs from omega.
inline IciEstimate estimate_residuals(const FreqGrid& omega, const FreqGrid& serving_h,
                                      const std::vector<HardDecision>& decisions,
                                      const FqamSpec& spec) {
    const std::size_t groups = omega.size() / static_cast<std::size_t>(spec.mf);
    if (decisions.size() != groups || serving_h.size() != omega.size())
        throw std::invalid_argument("estimate_residuals: dimension mismatch");
    IciEstimate est;
    est.z_hat = omega;
    est.decisions = decisions;
    const double scale = active_scale(spec);
    for (std::size_t g = 0; g < groups; ++g) {
        const auto idx = g * static_cast<std::size_t>(spec.mf) +
                         static_cast<std::size_t>(decisions[g].freq_index);
        est.z_hat[idx] -= serving_h[idx] *
                          (scale * spec.qam.points[static_cast<std::size_t>(decisions[g].qam_index)]);
    }
    return est;
}

namespace detail {

// Moment ratio r(alpha) = (E|Z|)^2 / E|Z|^2 = Gamma(3/a)^2 / (Gamma(2/a) Gamma(4/a))
// for a complex generalized Gaussian; strictly increasing in alpha.
inline double cgg_moment_ratio(double alpha) {
    return std::exp(2.0 * std::lgamma(3.0 / alpha) - std::lgamma(2.0 / alpha) -
                    std::lgamma(4.0 / alpha));
}

} // namespace detail

// Moment-method estimator: invert the ratio r = (sum|Z|)^2 / (N sum|Z|^2)
// numerically (bisection), then beta from the first absolute moment.
inline CggParams estimate_cgg(const FreqGrid& z_hat) {
    const std::size_t n = z_hat.size();
    double s1 = 0.0, s2 = 0.0;
    for (const Cplx& z : z_hat) {
        const double a = std::abs(z);
        s1 += a;
        s2 += a * a;
    }
    if (s2 <= 0.0) throw NoInterferenceError();

    CggParams p;
    if (n < kCggMinSamples) {
        // too few samples for a stable shape estimate: Gaussian default
        p.alpha = 2.0;
        p.beta = std::sqrt(s2 / static_cast<double>(n));
        return p;
    }
    const double r = (s1 * s1) / (static_cast<double>(n) * s2);
    double lo = kCggAlphaMin, hi = kCggAlphaMax;
    if (r <= detail::cgg_moment_ratio(lo)) {
        p.alpha = lo;
        p.clamped = true;
    } else if (r >= detail::cgg_moment_ratio(hi)) {
        p.alpha = hi;
        p.clamped = true;
    } else {
        while (hi - lo > 1e-4) {
            const double mid = 0.5 * (lo + hi);
            (detail::cgg_moment_ratio(mid) < r ? lo : hi) = mid;
        }
        p.alpha = 0.5 * (lo + hi);
    }
    p.beta = std::exp(std::lgamma(2.0 / p.alpha) - std::lgamma(3.0 / p.alpha)) * s1 /
             static_cast<double>(n);
    return p;
}

// log f_U(u) = M_F log(alpha / (2 pi beta^2 Gamma(2/alpha))) - sum_l (|u_l|/beta)^alpha
inline double cgg_pdf_log(const Cplx* u, int mf, const CggParams& p) {
    const double logpref =
        std::log(p.alpha) - std::log(2.0 * M_PI * p.beta * p.beta) - std::lgamma(2.0 / p.alpha);
    double acc = mf * logpref;
    for (int l = 0; l < mf; ++l) acc -= std::pow(std::abs(u[l]) / p.beta, p.alpha);
    return acc;
}

inline double cgg_pdf_log(const CplxVec& u, const CggParams& p) {
    return cgg_pdf_log(u.data(), static_cast<int>(u.size()), p);
}

struct LlrOptions {
    bool exact = false; // log-sum-exp over hypothesis sets instead of max-log
};

// Per-bit LLRs, positive meaning bit 0. Max-log form:
//   LLR = (1/beta^alpha) (min over bit=1 hypotheses of sum_l |Lambda(l)|^alpha
//                         - min over bit=0 hypotheses).
// The hypothesis label is [gray(m) | gray(q)] MSB-first, matching the mapper.
inline std::vector<double> compute_llrs(const FreqGrid& omega, const FreqGrid& serving_h,
                                        const FqamSpec& spec, const CggParams& p,
                                        const LlrOptions& opts = {}) {
    if (omega.size() != serving_h.size() || omega.size() % static_cast<std::size_t>(spec.mf) != 0)
        throw std::invalid_argument("compute_llrs: dimension mismatch");
    const std::size_t groups = omega.size() / static_cast<std::size_t>(spec.mf);
    const int nbits = spec.bits_per_symbol();
    const int nhyp = spec.mf * spec.qam.order;
    const double scale = active_scale(spec);
    const double inv_beta_a = std::pow(p.beta, -p.alpha);

    std::vector<double> llrs(groups * static_cast<std::size_t>(nbits));
    std::vector<double> d(static_cast<std::size_t>(nhyp));
    std::vector<unsigned> label(static_cast<std::size_t>(nhyp));
    for (int m = 0; m < spec.mf; ++m)
        for (int q = 0; q < spec.qam.order; ++q)
            label[static_cast<std::size_t>(m * spec.qam.order + q)] =
                (gray_encode(static_cast<unsigned>(m)) << spec.qam_bits()) |
                gray_encode(static_cast<unsigned>(q));

    for (std::size_t g = 0; g < groups; ++g) {
        const Cplx* om = omega.data() + g * static_cast<std::size_t>(spec.mf);
        const Cplx* h = serving_h.data() + g * static_cast<std::size_t>(spec.mf);
        double base = 0.0;
        for (int l = 0; l < spec.mf; ++l) base += std::pow(std::abs(om[l]), p.alpha);
        for (int m = 0; m < spec.mf; ++m) {
            const double off = std::pow(std::abs(om[m]), p.alpha);
            for (int q = 0; q < spec.qam.order; ++q) {
                const Cplx hs = h[m] * (scale * spec.qam.points[static_cast<std::size_t>(q)]);
                d[static_cast<std::size_t>(m * spec.qam.order + q)] =
                    base - off + std::pow(std::abs(om[m] - hs), p.alpha);
            }
        }
        double* out = llrs.data() + g * static_cast<std::size_t>(nbits);
        for (int v = 0; v < nbits; ++v) {
            const unsigned mask = 1u << (nbits - 1 - v);
            if (!opts.exact) {
                double min0 = std::numeric_limits<double>::infinity(), min1 = min0;
                for (int i = 0; i < nhyp; ++i) {
                    const double dv = d[static_cast<std::size_t>(i)];
                    if (label[static_cast<std::size_t>(i)] & mask) min1 = std::min(min1, dv);
                    else min0 = std::min(min0, dv);
                }
                out[v] = inv_beta_a * (min1 - min0);
            } else {
                // max-shifted log-sum-exp of exp(-d / beta^alpha) per set
                double m0 = std::numeric_limits<double>::infinity(), m1 = m0;
                for (int i = 0; i < nhyp; ++i) {
                    const double e = d[static_cast<std::size_t>(i)] * inv_beta_a;
                    if (label[static_cast<std::size_t>(i)] & mask) m1 = std::min(m1, e);
                    else m0 = std::min(m0, e);
                }
                double a0 = 0.0, a1 = 0.0;
                for (int i = 0; i < nhyp; ++i) {
                    const double e = d[static_cast<std::size_t>(i)] * inv_beta_a;
                    if (label[static_cast<std::size_t>(i)] & mask) a1 += std::exp(m1 - e);
                    else a0 += std::exp(m0 - e);
                }
                out[v] = (-m0 + std::log(a0)) - (-m1 + std::log(a1));
            }
        }
    }
    return llrs;
}

struct DetectionResult {
    std::vector<double> llrs;
    CggParams params;
    std::vector<HardDecision> decisions;
};

// The full detection chain: hard decisions, residual extraction, CGG
// parameter estimation over the whole frame, then per-bit LLRs.
inline DetectionResult detect_frame(const FreqGrid& omega, const FreqGrid& serving_h,
                                    const FqamSpec& spec, const LlrOptions& opts = {}) {
    DetectionResult res;
    res.decisions = hard_detect(omega, serving_h, spec);
    const IciEstimate est = estimate_residuals(omega, serving_h, res.decisions, spec);
    res.params = estimate_cgg(est.z_hat);
    res.llrs = compute_llrs(omega, serving_h, spec, res.params, opts);
    return res;
}

} // namespace fqam
