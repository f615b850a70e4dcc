#pragma once

// Cross-study association between naive accuracy and prevalence estimates,
// and the closed-form expected naive accuracy under an imperfect reference.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dtabias/estimates.hpp"

namespace dtabias {

// Spearman rank correlation with average ranks for ties. Entries where
// either side is missing are deleted pairwise. Returns missing when fewer
// than 2 complete pairs remain or either rank vector is constant.
// Throws std::invalid_argument on length mismatch.
std::optional<double> spearman_rho(std::span<const std::optional<double>> x,
                                   std::span<const std::optional<double>> y);

struct CorrelationReport {
    std::string setup_label;
    std::optional<double> rho_se_prev;
    std::optional<double> rho_sp_prev;
    std::int64_t n_pairs_se = 0;
    std::int64_t n_pairs_sp = 0;
};

// One report per setup label, in order of first appearance.
std::vector<CorrelationReport> correlation_report(std::span<const EstimateRecord> records);

struct NaiveAccuracy {
    double se = 0.0;
    double sp = 0.0;
};

// Expected naive estimates when an imperfect reference is treated as truth:
//   se = P(index+ | ref+), sp = P(index- | ref-)
// under conditional independence given the condition.
// Throws std::domain_error when a conditioning event has probability zero.
NaiveAccuracy analytic_naive_accuracy(double prev, double ref_se, double ref_sp, double index_se,
                                      double index_sp);

struct ScatterRow {
    std::int64_t study_id = 0;
    std::string setup_label;
    std::optional<double> prev_hat;
    std::optional<double> se_hat;
    std::optional<double> sp_hat;
};

// Scatter-ready view of the estimates, one row per study in input order.
std::vector<ScatterRow> scatter_export(std::span<const EstimateRecord> records);

}  // namespace dtabias
