#pragma once

// Naive per-study estimates (reference standard treated as perfect) and
// whole-scenario runs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtabias/tables.hpp"

namespace dtabias {

struct EstimateRecord {
    std::int64_t study_id = 0;
    std::string setup_label;
    std::optional<double> prev_hat;  // reference-positive proportion among verified
    std::optional<double> se_hat;    // index-positive proportion among reference-positives
    std::optional<double> sp_hat;    // index-negative proportion among reference-negatives
    std::int64_t n_ref_pos = 0;
    std::int64_t n_ref_neg = 0;
};

// Ratios from the verified 2x2 table; zero denominators yield missing
// fields rather than errors.
EstimateRecord naive_estimates(const TwoByTwoTable& table, std::int64_t study_id,
                               std::string setup_label);

struct ScenarioResult {
    std::vector<EstimateRecord> estimates;  // ordered by study_id
    std::vector<StudyTables> tables;        // same order
};

// n_studies independent studies; study i uses the stream derived from
// (master_seed, i), so the output is identical for any thread count.
// n_threads <= 0 selects hardware concurrency.
ScenarioResult run_scenario(const ScenarioSetup& setup, int n_studies, int n_subjects,
                            std::uint64_t master_seed, int n_threads = 0);

}  // namespace dtabias
