#pragma once

// Run configuration: defaults follow the reference protocol (10,000 studies
// of 500 subjects; 3 chains x 50,000 iterations with 25,000 burn-in).
// parse_config reads a TOML-style file (sections [run], [overrides], [mcmc];
// scalar and small-array values). Unknown sections or keys are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dtabias/lcbm.hpp"
#include "dtabias/scenario.hpp"

namespace dtabias {

inline constexpr std::uint64_t kDefaultSeed = 20250810;

struct RunPlan {
    BiasStructure bias = BiasStructure::reference_standard_error;
    std::vector<int> setups;  // 1-based setup numbers; empty means all
    int n_studies = 10000;
    int n_subjects = 500;
    int fit_studies = 100;  // meta-analysis scale simulated by `all` for model fitting
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;  // 0 = hardware concurrency
    std::filesystem::path out_dir = "out";

    // Table-1 grid overrides (applied to every setup of the grid)
    std::optional<Interval> verif_override;
    std::optional<Interval> prev_override;
    std::optional<TestAccuracy> index_override;

    McmcConfig mcmc;          // seed mirrored from `seed`
    std::string model = "lcbm";  // lcbm | pvb
    bool subgroup = false;

    // Grid for this plan: make_scenario_grid + overrides + setup selection.
    std::vector<ScenarioSetup> scenario_grid() const;

    void validate() const;  // throws std::invalid_argument
};

// Throws std::runtime_error with a line number on parse errors and
// std::invalid_argument on semantic errors (unknown keys, bad bounds).
RunPlan parse_config(const std::filesystem::path& path);

}  // namespace dtabias
