#pragma once

// End-to-end command pipeline behind the CLI: simulate -> correlate -> fit
// -> report, all file-based and reproducible from (config, seed).

#include <filesystem>
#include <string>
#include <vector>

#include "dtabias/config.hpp"

namespace dtabias {

// Writes estimates.csv and meta.csv (and verif.csv under partial
// verification) for every selected setup, plus the manifest.
// Returns the written file paths.
std::vector<std::filesystem::path> cmd_simulate(const RunPlan& plan);

// estimates.csv -> correlations.csv.
std::vector<std::filesystem::path> cmd_correlate(const RunPlan& plan);

// meta.csv (or verif.csv for --model pvb) -> fit_setup_<k>.json per setup.
// Non-convergence is flagged inside the JSON, not an error.
std::vector<std::filesystem::path> cmd_fit(const RunPlan& plan);

// estimates.csv -> one SVG per (setup, sensitivity|specificity) plus
// report.md with the correlation table.
std::vector<std::filesystem::path> cmd_report(const RunPlan& plan);

// simulate + correlate + report at the configured scale, then a
// fit_studies-sized dataset under <out>/fit_data with the model matched to
// the structure (verification model for partial verification, subgroup
// latent class fits for covariate structures, pooled otherwise).
std::vector<std::filesystem::path> cmd_all(const RunPlan& plan);

// Set by the CLI to record the invocation in the manifest.
void set_manifest_command_line(std::string command_line);

}  // namespace dtabias
