#include "dtabias/association.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dtabias {

namespace {

// Average ranks (1-based); ties get the mean of the ranks they occupy.
std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::optional<double> spearman_rho(std::span<const std::optional<double>> x,
                                   std::span<const std::optional<double>> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("spearman_rho: input lengths differ");
    }
    std::vector<double> xs, ys;
    xs.reserve(x.size());
    ys.reserve(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] && y[i]) {
            xs.push_back(*x[i]);
            ys.push_back(*y[i]);
        }
    }
    if (xs.size() < 2) return std::nullopt;
    return pearson(average_ranks(xs), average_ranks(ys));
}

std::vector<CorrelationReport> correlation_report(std::span<const EstimateRecord> records) {
    std::vector<CorrelationReport> reports;
    std::vector<std::string> labels;
    for (const EstimateRecord& r : records) {
        if (std::find(labels.begin(), labels.end(), r.setup_label) == labels.end()) {
            labels.push_back(r.setup_label);
        }
    }
    for (const std::string& label : labels) {
        std::vector<std::optional<double>> prev, se, sp;
        for (const EstimateRecord& r : records) {
            if (r.setup_label != label) continue;
            prev.push_back(r.prev_hat);
            se.push_back(r.se_hat);
            sp.push_back(r.sp_hat);
        }
        CorrelationReport rep;
        rep.setup_label = label;
        rep.rho_se_prev = spearman_rho(se, prev);
        rep.rho_sp_prev = spearman_rho(sp, prev);
        for (std::size_t i = 0; i < prev.size(); ++i) {
            if (prev[i] && se[i]) ++rep.n_pairs_se;
            if (prev[i] && sp[i]) ++rep.n_pairs_sp;
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

NaiveAccuracy analytic_naive_accuracy(double prev, double ref_se, double ref_sp, double index_se,
                                      double index_sp) {
    for (double p : {prev, ref_se, ref_sp, index_se, index_sp}) {
        if (p < 0.0 || p > 1.0) {
            throw std::invalid_argument("analytic_naive_accuracy: arguments must lie in [0,1]");
        }
    }
    const double p_ref_pos = prev * ref_se + (1.0 - prev) * (1.0 - ref_sp);
    const double p_ref_neg = prev * (1.0 - ref_se) + (1.0 - prev) * ref_sp;
    if (p_ref_pos <= 0.0 || p_ref_neg <= 0.0) {
        throw std::domain_error(
            "analytic_naive_accuracy: degenerate input, P(ref+)=" + std::to_string(p_ref_pos) +
            " P(ref-)=" + std::to_string(p_ref_neg));
    }
    NaiveAccuracy out;
    out.se = (prev * ref_se * index_se + (1.0 - prev) * (1.0 - ref_sp) * (1.0 - index_sp)) /
             p_ref_pos;
    out.sp = (prev * (1.0 - ref_se) * (1.0 - index_se) + (1.0 - prev) * ref_sp * index_sp) /
             p_ref_neg;
    return out;
}

std::vector<ScatterRow> scatter_export(std::span<const EstimateRecord> records) {
    std::vector<ScatterRow> rows;
    rows.reserve(records.size());
    for (const EstimateRecord& r : records) {
        rows.push_back({r.study_id, r.setup_label, r.prev_hat, r.se_hat, r.sp_hat});
    }
    return rows;
}

}  // namespace dtabias
