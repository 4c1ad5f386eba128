#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "fqam/rng.hpp"
#include "fqam/stats.hpp"

namespace fqam {

enum class Scheme { Fqam, Qam };

// Parameter set for the closed-form SINR CDFs under PPP interference.
struct SinrModel {
    double lambda = 1e-4;      // BS density per m^2
    int n_f = 4;               // frequency components per FQAM symbol
    double pathloss_exp = 3.0; // > 2
    double d = 50.0;           // serving distance, m
    double n0_dbm_hz = -173.0; // noise power density
    double w_sc_hz = 15000.0;  // component bandwidth
    double p_t_w = 20.0;       // BS transmit power

    double noise_power_per_component() const {
        return std::pow(10.0, n0_dbm_hz / 10.0) * w_sc_hz * 1e3;
    }

    void validate() const {
        if (pathloss_exp <= 2.0 + 1e-6)
            throw std::domain_error("SinrModel: pathloss exponent must exceed 2");
        if (lambda < 0.0 || n_f < 1 || d <= 0.0 || w_sc_hz <= 0.0 || p_t_w <= 0.0)
            throw std::domain_error("SinrModel: physical quantities must be positive");
    }
};

// CDF of SINR at threshold rho (linear):
//   G = 1 - exp(-d^a P_T^-1 rho sigma2_eff) * exp(-lam_eff d^2 rho^(2/a) * 2pi^2/(a sin(2pi/a)))
// FQAM: sigma2_eff = sigma2_N, lam_eff = lambda/N_F. QAM: N_F sigma2_N and lambda.
inline double sinr_cdf(const SinrModel& m, Scheme scheme, double rho_db) {
    m.validate();
    const double rho = db_to_linear(rho_db);
    const double a = m.pathloss_exp;
    const double sigma2 = m.noise_power_per_component() * (scheme == Scheme::Qam ? m.n_f : 1);
    const double lam_eff = scheme == Scheme::Qam ? m.lambda : m.lambda / m.n_f;
    const double noise_exp = std::pow(m.d, a) / m.p_t_w * rho * sigma2;
    const double intf_exp = lam_eff * m.d * m.d * std::pow(rho, 2.0 / a) * 2.0 * M_PI * M_PI /
                            (a * std::sin(2.0 * M_PI / a));
    return 1.0 - std::exp(-noise_exp) * std::exp(-intf_exp);
}

// Median SINR in dB from the closed form, by bisection.
inline double sinr_cdf_median_db(const SinrModel& m, Scheme scheme) {
    double lo = -80.0, hi = 80.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (sinr_cdf(m, scheme, mid) < 0.5 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Monte Carlo SINR draws. Interferers are Poisson with the scheme's effective
// density, uniform in a disc of window_radius around the UE (no exclusion
// zone); serving BS pinned at distance d; all links Rayleigh, |H|^2 ~ Exp(1).
inline std::vector<double> mc_sinr_samples(const SinrModel& m, Scheme scheme, std::size_t n_draws,
                                           double window_radius_m, Rng& rng) {
    m.validate();
    const double lam_eff = scheme == Scheme::Qam ? m.lambda : m.lambda / m.n_f;
    if (lam_eff > 0.0) {
        const double mean_nearest = 0.5 / std::sqrt(lam_eff);
        if (window_radius_m < 20.0 * mean_nearest)
            throw std::invalid_argument("mc_sinr_samples: window radius too small for density");
    }
    const double a = m.pathloss_exp;
    const double sigma2 = m.noise_power_per_component() * (scheme == Scheme::Qam ? m.n_f : 1);
    const double area = M_PI * window_radius_m * window_radius_m;
    std::poisson_distribution<int> npois(lam_eff * area);

    std::vector<double> out;
    out.reserve(n_draws);
    for (std::size_t i = 0; i < n_draws; ++i) {
        double interference = 0.0;
        const int n = lam_eff > 0.0 ? npois(rng.engine()) : 0;
        for (int j = 0; j < n; ++j) {
            const double r = window_radius_m * std::sqrt(rng.uniform());
            interference += rng.exponential() * std::pow(r, -a);
        }
        const double signal = rng.exponential() * std::pow(m.d, -a);
        out.push_back(m.p_t_w * signal / (sigma2 + m.p_t_w * interference));
    }
    return out;
}

struct CdfCurve {
    std::vector<double> sinr_db;
    std::vector<double> prob;
};

inline CdfCurve curve(const SinrModel& m, Scheme scheme, const std::vector<double>& rho_db_grid) {
    if (!std::is_sorted(rho_db_grid.begin(), rho_db_grid.end()))
        throw std::invalid_argument("curve: grid must be sorted");
    CdfCurve c;
    c.sinr_db = rho_db_grid;
    c.prob.reserve(rho_db_grid.size());
    for (double rho : rho_db_grid) c.prob.push_back(sinr_cdf(m, scheme, rho));
    return c;
}

inline std::vector<double> default_sinr_grid() {
    std::vector<double> g;
    for (double db = -20.0; db <= 40.0 + 1e-9; db += 0.25) g.push_back(db);
    return g;
}

// KS distance of SINR samples (linear) against the closed form.
inline double ks_vs_closed_form(std::vector<double> samples, const SinrModel& m, Scheme scheme) {
    std::sort(samples.begin(), samples.end());
    return ks_distance_sorted(samples,
                              [&](double x) { return sinr_cdf(m, scheme, linear_to_db(x)); });
}

} // namespace fqam
