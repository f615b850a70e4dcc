#include "dtabias/mcmc_util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dtabias {

std::optional<double> gelman_rubin(std::span<const std::vector<double>> chains) {
    const std::size_t m = chains.size();
    if (m < 2) return std::nullopt;
    const std::size_t n = chains[0].size();
    if (n < 2) return std::nullopt;
    for (const auto& c : chains) {
        if (c.size() != n) return std::nullopt;
    }

    std::vector<double> means(m);
    std::vector<double> vars(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double mean =
            std::accumulate(chains[j].begin(), chains[j].end(), 0.0) / static_cast<double>(n);
        double ss = 0.0;
        for (double v : chains[j]) ss += (v - mean) * (v - mean);
        means[j] = mean;
        vars[j] = ss / static_cast<double>(n - 1);
    }
    const double grand =
        std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(m);
    double b = 0.0;
    for (double mu : means) b += (mu - grand) * (mu - grand);
    b *= static_cast<double>(n) / static_cast<double>(m - 1);
    const double w = std::accumulate(vars.begin(), vars.end(), 0.0) / static_cast<double>(m);
    if (w <= 0.0) return std::nullopt;

    const double nn = static_cast<double>(n);
    const double v_hat = (nn - 1.0) / nn * w + b / nn;
    return std::sqrt(v_hat / w);
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) return 0.0;
    if (sorted.size() == 1) return sorted[0];
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

QuantileSummary summarize_draws(std::vector<double> draws) {
    QuantileSummary s;
    if (draws.empty()) return s;
    s.mean = std::accumulate(draws.begin(), draws.end(), 0.0) / static_cast<double>(draws.size());
    std::sort(draws.begin(), draws.end());
    s.q025 = quantile_sorted(draws, 0.025);
    s.q50 = quantile_sorted(draws, 0.5);
    s.q975 = quantile_sorted(draws, 0.975);
    return s;
}

void StepAdapter::end_batch() {
    if (frozen_ || batch_count_ == 0) return;
    ++batch_index_;
    const double rate = static_cast<double>(batch_accepts_) / static_cast<double>(batch_count_);
    const double delta = std::min(0.1, 1.0 / std::sqrt(static_cast<double>(batch_index_)));
    step_ *= std::exp(rate > target_ ? delta : -delta);
    step_ = std::clamp(step_, 1e-4, 20.0);
    batch_count_ = 0;
    batch_accepts_ = 0;
}

}  // namespace dtabias
