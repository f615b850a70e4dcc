#include "dtabias/simulate.hpp"

#include <stdexcept>

namespace dtabias {

SubjectRecord simulate_subject(const StudyParams& params, const ScenarioSetup& setup,
                               RngStream& rng) {
    SubjectRecord rec;

    // Covariate stratum carried by the subject.
    switch (setup.structure) {
        case BiasStructure::spectrum_effect:
            rec.r = *params.index_coin == 1;  // site-level, shared by the whole study
            break;
        case BiasStructure::confounding:
        case BiasStructure::conditional_dependence:
            rec.r = rng.bernoulli(*params.covariate_rate);
            break;
        default:
            break;
    }

    // Target condition.
    double pi = params.prevalence;
    if (setup.structure == BiasStructure::confounding) {
        pi = *rec.r ? *params.prevalence_r1 : *params.prevalence_r0;
    }
    rec.d = rng.bernoulli(pi);

    // Reference standard. Its stratum is the study-level coin under
    // conditional dependence and the subject's R elsewhere (the grid keeps
    // both strata equal for structures that do not stratify the reference).
    int ref_stratum = 0;
    if (setup.structure == BiasStructure::conditional_dependence) {
        ref_stratum = *params.ref_coin;
    } else if (rec.r) {
        ref_stratum = *rec.r ? 1 : 0;
    }
    const TestAccuracy ref = setup.ref.at(ref_stratum);
    const bool t_ref = rng.bernoulli(rec.d ? ref.se : 1.0 - ref.sp);

    // Index test, stratified by the subject's R (spectrum carries the study
    // coin on every subject).
    const int idx_stratum = rec.r && *rec.r ? 1 : 0;
    const TestAccuracy idx = setup.index.at(idx_stratum);
    rec.t_index = rng.bernoulli(rec.d ? idx.se : 1.0 - idx.sp);

    // Verification: index-positives always verified, index-negatives with
    // the study's rate. The reference result is recorded only when verified.
    if (setup.structure == BiasStructure::partial_verification) {
        rec.verified = rec.t_index || rng.bernoulli(*params.verif_rate);
    } else {
        rec.verified = true;
    }
    if (rec.verified) rec.t_ref = t_ref;
    return rec;
}

std::vector<SubjectRecord> simulate_study(const ScenarioSetup& setup, const StudyParams& params,
                                          int n_subjects, RngStream& rng) {
    if (n_subjects < 1) throw std::invalid_argument("simulate_study requires n_subjects >= 1");
    std::vector<SubjectRecord> out;
    out.reserve(static_cast<std::size_t>(n_subjects));
    for (int j = 0; j < n_subjects; ++j) {
        out.push_back(simulate_subject(params, setup, rng));
    }
    return out;
}

std::vector<SubjectRecord> simulate_study(const ScenarioSetup& setup, int n_subjects,
                                          RngStream& rng) {
    const StudyParams params = draw_study_params(setup, rng);
    return simulate_study(setup, params, n_subjects, rng);
}

}  // namespace dtabias
