#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fqam {

struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;
    double excess_kurtosis = 0.0;
};

inline MomentSummary moments(const std::vector<double>& x) {
    if (x.size() < 2) throw std::invalid_argument("moments: need at least 2 samples");
    const double n = static_cast<double>(x.size());
    double m = 0.0;
    for (double v : x) m += v;
    m /= n;
    double m2 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - m;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    MomentSummary s;
    s.mean = m;
    s.variance = m2;
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    return s;
}

inline double median_of_sorted(const std::vector<double>& sorted) {
    const std::size_t n = sorted.size();
    if (n == 0) throw std::invalid_argument("median: empty");
    return (n % 2) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

// One-sample Kolmogorov-Smirnov statistic against a CDF evaluated by `cdf`.
// `sorted` must be ascending.
template <class Cdf>
double ks_distance_sorted(const std::vector<double>& sorted, Cdf cdf) {
    const std::size_t n = sorted.size();
    if (n == 0) throw std::invalid_argument("ks_distance: empty");
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(sorted[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(std::abs(f - lo), std::abs(f - hi)));
    }
    return d;
}

struct Histogram {
    double lo = 0.0, hi = 0.0;
    std::vector<double> centers;
    std::vector<std::size_t> counts;
    std::size_t total = 0; // includes out-of-range samples
};

inline Histogram make_histogram(const std::vector<double>& x, double lo, double hi, int bins) {
    if (bins < 1 || !(hi > lo)) throw std::invalid_argument("make_histogram: bad bins/range");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    h.centers.resize(static_cast<std::size_t>(bins));
    const double w = (hi - lo) / bins;
    for (int i = 0; i < bins; ++i) h.centers[static_cast<std::size_t>(i)] = lo + (i + 0.5) * w;
    for (double v : x) {
        ++h.total;
        if (v < lo || v >= hi) continue;
        auto b = static_cast<std::size_t>((v - lo) / w);
        if (b >= h.counts.size()) b = h.counts.size() - 1;
        ++h.counts[b];
    }
    return h;
}

// Regularized lower incomplete gamma P(a, x), series + continued fraction.
inline double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad args");
    if (x == 0.0) return 0.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - gln);
    }
    // Lentz continued fraction for Q(a,x)
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    const double q = std::exp(-x + a * std::log(x) - gln) * h;
    return 1.0 - q;
}

// Survival function of a chi-squared variable with k degrees of freedom.
inline double chi2_sf(double stat, int dof) {
    return 1.0 - gamma_p(0.5 * dof, 0.5 * stat);
}

inline double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace fqam
