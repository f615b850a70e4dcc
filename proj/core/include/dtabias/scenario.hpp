#pragma once

// Bias structures and their simulation parameterizations.
//
// Five classic sources of bias in diagnostic accuracy studies are modeled.
// Each ScenarioSetup fixes one reference/index accuracy configuration
// ("Setup 1" .. "Setup 4" of a structure); make_scenario_grid returns the
// default grid for a structure.
//
// Covariate realization differs by structure and mirrors the real-world
// archetypes of each bias:
//  - spectrum_effect:        the index-test stratum is a site-level property
//                            (e.g. clinic type), realized once per study as
//                            R ~ Bern(p_i), p_i ~ Beta(1,1).
//  - confounding:            R is subject-level (e.g. comorbidity) and drives
//                            both the subject's disease risk and the index
//                            test's accuracy.
//  - conditional_dependence: the reference standard's stratum is realized per
//                            study (site-level lab quality) while the index
//                            test's stratum is subject-level, sharing the
//                            same covariate rate p_i.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtabias/rng.hpp"

namespace dtabias {

enum class BiasStructure {
    reference_standard_error,
    spectrum_effect,
    confounding,
    partial_verification,
    conditional_dependence,
};

constexpr std::array<BiasStructure, 5> kAllBiasStructures = {
    BiasStructure::reference_standard_error, BiasStructure::spectrum_effect,
    BiasStructure::confounding,              BiasStructure::partial_verification,
    BiasStructure::conditional_dependence,
};

std::string_view bias_name(BiasStructure s);
std::optional<BiasStructure> parse_bias(std::string_view name);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct TestAccuracy {
    double se = 0.0;
    double sp = 0.0;
    double diagnostic_value() const { return se + sp; }
};

// Accuracy of one test by covariate stratum; index 0 = R-, 1 = R+.
// Structures without a covariate keep both entries equal.
struct StratifiedAccuracy {
    std::array<TestAccuracy, 2> by_stratum{};

    static StratifiedAccuracy uniform(TestAccuracy a) { return {{a, a}}; }
    TestAccuracy at(int r) const { return by_stratum[r == 0 ? 0 : 1]; }
    bool stratified() const {
        return by_stratum[0].se != by_stratum[1].se || by_stratum[0].sp != by_stratum[1].sp;
    }
};

struct ScenarioSetup {
    BiasStructure structure = BiasStructure::reference_standard_error;
    std::string label;          // "Setup 1" ...
    StratifiedAccuracy ref;     // reference standard (test 1)
    StratifiedAccuracy index;   // index test (test 2)
    Interval prev{0.1, 0.9};    // bounds of the study prevalence draw
    std::optional<Interval> prev_r1;  // confounding: prevalence bounds given R=1
    std::optional<Interval> prev_r0;  // confounding: prevalence bounds given R=0
    std::optional<Interval> verif;    // partial verification: rate bounds for index-negatives

    bool uses_covariate() const {
        return structure == BiasStructure::spectrum_effect ||
               structure == BiasStructure::confounding ||
               structure == BiasStructure::conditional_dependence;
    }

    // Throws std::invalid_argument on out-of-range probabilities, inverted
    // bounds, or an index test with diagnostic value <= 1 in any stratum.
    void validate() const;
};

// Default grid of one figure: 4 setups (3 for conditional dependence),
// reference accuracy varying, index accuracy fixed.
std::vector<ScenarioSetup> make_scenario_grid(BiasStructure structure);

// Study-level parameters drawn once per study from a ScenarioSetup.
struct StudyParams {
    double prevalence = 0.0;                  // pi_i (marginal for confounding)
    std::optional<double> prevalence_r1;      // confounding: pi_i | R=1
    std::optional<double> prevalence_r0;      // confounding: pi_i | R=0
    std::optional<double> covariate_rate;     // p_i, structures with R
    std::optional<double> verif_rate;         // p_v_i, partial verification
    std::optional<int> index_coin;            // spectrum: study-level index stratum
    std::optional<int> ref_coin;              // cond. dependence: study-level reference stratum
};

StudyParams draw_study_params(const ScenarioSetup& setup, RngStream& rng);

}  // namespace dtabias
