#pragma once

// Two-stage verification-design model: adjusts simultaneously for partial
// verification and reference standard error. Stage 1 is a binomial on the
// index-positive count; stage 2 are binomials on the reference-positive
// counts among the verified index-positive/negative groups. The verified
// counts enter only as denominators (verification depends on the index
// result alone, so the mechanism is ignorable).
//
// Shares the hierarchical sampler with the latent class model; differs in
// likelihood and priors: mu ~ N(0, var 100) with the specificity means
// truncated to positive logits, sigma ~ Uniform(0,2), rho fixed at 0.

#include "dtabias/lcbm.hpp"

namespace dtabias {

struct PvbMetaDataset {
    std::vector<VerificationTable> tables;
    std::vector<std::int64_t> study_ids;

    std::size_t size() const { return tables.size(); }
    std::int64_t study_id(std::size_t i) const {
        return study_ids.empty() ? static_cast<std::int64_t>(i) : study_ids[i];
    }
};

// Same parameter layout as the latent class model; rho stays 0 and the
// sigmas live in (0, 2).
using PvbState = LcbmState;

struct StageProbs {
    double p1 = 0.0;  // P(index+)
    double q1 = 0.0;  // P(ref+ | index+)
    double q0 = 0.0;  // P(ref+ | index-)
};

// Throws std::domain_error when P(index+) is 0 or 1 (degenerate design) and
// std::invalid_argument outside (0,1) inputs.
StageProbs stage_probs(double prev, double index_se, double index_sp, double ref_se,
                       double ref_sp);

// Binomial log likelihood (constants omitted); zero probability with a
// positive count yields -infinity.
double pvb_log_likelihood(const PvbMetaDataset& dataset, const PvbState& state);

// Sampler contract as fit_lcbm, with this model's likelihood and priors.
FitResult fit_pvb(const PvbMetaDataset& dataset, const McmcConfig& config);

}  // namespace dtabias
