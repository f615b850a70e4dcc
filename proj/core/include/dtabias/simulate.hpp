#pragma once

// Subject-level data generation and scenario runs.

#include <cstdint>
#include <optional>
#include <vector>

#include "dtabias/scenario.hpp"

namespace dtabias {

struct SubjectRecord {
    bool d = false;               // target condition
    bool t_index = false;         // index test result
    bool verified = true;         // received the reference standard
    std::optional<bool> r;        // covariate stratum, structures with R only
    std::optional<bool> t_ref;    // reference result, present iff verified
};

// One subject under the structure's conditional Bernoulli laws. Draw order
// is fixed (r, d, t_ref, t_index, verification) so streams replay exactly.
SubjectRecord simulate_subject(const StudyParams& params, const ScenarioSetup& setup,
                               RngStream& rng);

// Draws study parameters, then n_subjects independent subjects.
std::vector<SubjectRecord> simulate_study(const ScenarioSetup& setup, int n_subjects,
                                          RngStream& rng);

// Same, with externally supplied study parameters (used by calibration tests).
std::vector<SubjectRecord> simulate_study(const ScenarioSetup& setup, const StudyParams& params,
                                          int n_subjects, RngStream& rng);

}  // namespace dtabias
