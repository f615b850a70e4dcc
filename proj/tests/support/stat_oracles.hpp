#pragma once

// Test-side statistical oracles, independent of the library implementation:
// regularized incomplete beta (Lentz continued fraction), Beta quantiles by
// bisection, Kolmogorov-Smirnov distance, and brute-force joint-outcome
// enumeration over (D, T1, T2).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracles {

inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Regularized incomplete beta I_x(a,b) via Lentz's continued fraction.
inline double beta_inc(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const bool flip = x > (a + 1.0) / (a + b + 2.0);
    if (flip) {
        std::swap(a, b);
        x = 1.0 - x;
    }
    constexpr double tiny = 1e-30;
    constexpr double eps = 1e-14;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b)) / a;
    const double result = front * h;
    return flip ? 1.0 - result : result;
}

inline double beta_cdf(double x, double a, double b) { return beta_inc(a, b, x); }

inline double beta_quantile(double q, double a, double b) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (beta_cdf(mid, a, b) < q) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// KS distance between a sample and a CDF.
template <typename Cdf>
inline double ks_distance(std::vector<double> sample, Cdf cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

// Brute-force distribution over the 8 joint outcomes (d, t1, t2) with
// t1 = reference, t2 = index, tests conditionally independent given d.
struct JointOutcomes {
    // p[d][t1][t2]
    double p[2][2][2] = {};

    JointOutcomes(double prev, double ref_se, double ref_sp, double index_se, double index_sp) {
        for (int d = 0; d <= 1; ++d) {
            const double pd = d ? prev : 1.0 - prev;
            for (int t1 = 0; t1 <= 1; ++t1) {
                const double p1 = d ? (t1 ? ref_se : 1.0 - ref_se)
                                    : (t1 ? 1.0 - ref_sp : ref_sp);
                for (int t2 = 0; t2 <= 1; ++t2) {
                    const double p2 = d ? (t2 ? index_se : 1.0 - index_se)
                                        : (t2 ? 1.0 - index_sp : index_sp);
                    p[d][t1][t2] = pd * p1 * p2;
                }
            }
        }
    }

    double prob(int t1, int t2) const { return p[0][t1][t2] + p[1][t1][t2]; }
    double p_ref_pos() const { return prob(1, 0) + prob(1, 1); }
    double p_index_pos() const { return prob(0, 1) + prob(1, 1); }
    // expected naive estimates, conditioning on the reference result
    double naive_se() const { return prob(1, 1) / p_ref_pos(); }
    double naive_sp() const { return prob(0, 0) / (1.0 - p_ref_pos()); }
};

}  // namespace oracles
