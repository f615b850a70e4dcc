#include "dtabias/scenario.hpp"

#include <stdexcept>

namespace dtabias {

std::string_view bias_name(BiasStructure s) {
    switch (s) {
        case BiasStructure::reference_standard_error: return "reference_standard_error";
        case BiasStructure::spectrum_effect: return "spectrum_effect";
        case BiasStructure::confounding: return "confounding";
        case BiasStructure::partial_verification: return "partial_verification";
        case BiasStructure::conditional_dependence: return "conditional_dependence";
    }
    return "unknown";
}

std::optional<BiasStructure> parse_bias(std::string_view name) {
    for (BiasStructure s : kAllBiasStructures) {
        if (name == bias_name(s)) return s;
    }
    return std::nullopt;
}

namespace {

bool is_prob(double p) { return p >= 0.0 && p <= 1.0; }

void check_interval(const Interval& iv, const char* what) {
    if (!is_prob(iv.lo) || !is_prob(iv.hi) || iv.lo > iv.hi) {
        throw std::invalid_argument(std::string("invalid probability bounds for ") + what);
    }
}

void check_accuracy(const StratifiedAccuracy& acc, const char* what) {
    for (const TestAccuracy& a : acc.by_stratum) {
        if (!is_prob(a.se) || !is_prob(a.sp)) {
            throw std::invalid_argument(std::string("accuracy out of [0,1] for ") + what);
        }
    }
}

}  // namespace

void ScenarioSetup::validate() const {
    check_accuracy(ref, "reference standard");
    check_accuracy(index, "index test");
    for (const TestAccuracy& a : index.by_stratum) {
        if (a.diagnostic_value() <= 1.0) {
            throw std::invalid_argument("index test diagnostic value must exceed 1 in every stratum");
        }
    }
    check_interval(prev, "prevalence");
    if (structure == BiasStructure::confounding) {
        if (!prev_r1 || !prev_r0) {
            throw std::invalid_argument("confounding requires stratum prevalence bounds");
        }
        check_interval(*prev_r1, "prevalence | R=1");
        check_interval(*prev_r0, "prevalence | R=0");
    }
    if (structure == BiasStructure::partial_verification) {
        if (!verif) throw std::invalid_argument("partial verification requires verification-rate bounds");
        check_interval(*verif, "verification rate");
    }
    if ((prev_r1 || prev_r0) && structure != BiasStructure::confounding) {
        throw std::invalid_argument("stratum prevalence bounds only apply to confounding");
    }
    if (verif && structure != BiasStructure::partial_verification) {
        throw std::invalid_argument("verification bounds only apply to partial verification");
    }
}

std::vector<ScenarioSetup> make_scenario_grid(BiasStructure structure) {
    // Reference standard grid shared by four of the five structures:
    // sensitivity 0.7/0.8/0.9 with specificity 0.95, plus a perfect setup.
    static constexpr TestAccuracy kRefGrid[4] = {
        {0.7, 0.95}, {0.8, 0.95}, {0.9, 0.95}, {1.0, 1.0}};

    std::vector<ScenarioSetup> grid;
    auto label = [](std::size_t i) { return "Setup " + std::to_string(i + 1); };

    switch (structure) {
        case BiasStructure::reference_standard_error:
            for (std::size_t i = 0; i < 4; ++i) {
                ScenarioSetup s;
                s.structure = structure;
                s.label = label(i);
                s.ref = StratifiedAccuracy::uniform(kRefGrid[i]);
                s.index = StratifiedAccuracy::uniform({0.9, 0.9});
                grid.push_back(std::move(s));
            }
            break;
        case BiasStructure::spectrum_effect:
        case BiasStructure::confounding:
            for (std::size_t i = 0; i < 4; ++i) {
                ScenarioSetup s;
                s.structure = structure;
                s.label = label(i);
                s.ref = StratifiedAccuracy::uniform(kRefGrid[i]);
                s.index.by_stratum = {TestAccuracy{0.9, 0.9},   // R-
                                      TestAccuracy{0.8, 0.8}};  // R+
                if (structure == BiasStructure::confounding) {
                    s.prev_r1 = Interval{0.7, 0.9};
                    s.prev_r0 = Interval{0.1, 0.3};
                }
                grid.push_back(std::move(s));
            }
            break;
        case BiasStructure::partial_verification:
            for (std::size_t i = 0; i < 4; ++i) {
                ScenarioSetup s;
                s.structure = structure;
                s.label = label(i);
                s.ref = StratifiedAccuracy::uniform(kRefGrid[i]);
                s.index = StratifiedAccuracy::uniform({0.9, 0.9});
                s.verif = Interval{0.5, 0.9};
                grid.push_back(std::move(s));
            }
            break;
        case BiasStructure::conditional_dependence: {
            // Reference accuracy by stratum: R+ sensitivity 0.6/0.7/0.8 at
            // specificity 0.85, R- one step higher at specificity 0.95.
            static constexpr double kRefSeR1[3] = {0.6, 0.7, 0.8};
            static constexpr double kRefSeR0[3] = {0.7, 0.8, 0.9};
            for (std::size_t i = 0; i < 3; ++i) {
                ScenarioSetup s;
                s.structure = structure;
                s.label = label(i);
                s.ref.by_stratum = {TestAccuracy{kRefSeR0[i], 0.95},
                                    TestAccuracy{kRefSeR1[i], 0.85}};
                s.index.by_stratum = {TestAccuracy{0.9, 0.9}, TestAccuracy{0.8, 0.8}};
                grid.push_back(std::move(s));
            }
            break;
        }
    }
    for (const ScenarioSetup& s : grid) s.validate();
    return grid;
}

StudyParams draw_study_params(const ScenarioSetup& setup, RngStream& rng) {
    StudyParams p;
    switch (setup.structure) {
        case BiasStructure::reference_standard_error:
            p.prevalence = rng.uniform(setup.prev.lo, setup.prev.hi);
            break;
        case BiasStructure::spectrum_effect: {
            p.prevalence = rng.uniform(setup.prev.lo, setup.prev.hi);
            const double rate = rng.uniform01();  // Beta(1,1)
            p.covariate_rate = rate;
            p.index_coin = rng.bernoulli(rate) ? 1 : 0;
            break;
        }
        case BiasStructure::confounding: {
            p.prevalence_r1 = rng.uniform(setup.prev_r1->lo, setup.prev_r1->hi);
            p.prevalence_r0 = rng.uniform(setup.prev_r0->lo, setup.prev_r0->hi);
            const double rate = rng.uniform01();
            p.covariate_rate = rate;
            p.prevalence = rate * *p.prevalence_r1 + (1.0 - rate) * *p.prevalence_r0;
            break;
        }
        case BiasStructure::partial_verification:
            p.prevalence = rng.uniform(setup.prev.lo, setup.prev.hi);
            p.verif_rate = rng.uniform(setup.verif->lo, setup.verif->hi);
            break;
        case BiasStructure::conditional_dependence: {
            p.prevalence = rng.uniform(setup.prev.lo, setup.prev.hi);
            const double rate = rng.uniform01();
            p.covariate_rate = rate;
            p.ref_coin = rng.bernoulli(rate) ? 1 : 0;
            break;
        }
    }
    return p;
}

}  // namespace dtabias
