#include "dtabias/pvb.hpp"

#include <stdexcept>

#include "fit_impl.hpp"

namespace dtabias {

namespace {

detail::PriorSpec pvb_prior() {
    detail::PriorSpec prior;
    prior.mu_prior_var = 100.0;  // N(0, precision 0.01)
    prior.truncate_mu_sp = true;
    prior.enforce_dv = false;
    prior.sample_rho = false;  // fixed at 0
    prior.sigma_uniform02 = true;
    return prior;
}

}  // namespace

StageProbs stage_probs(double prev, double index_se, double index_sp, double ref_se,
                       double ref_sp) {
    for (double p : {prev, index_se, index_sp, ref_se, ref_sp}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("stage_probs: arguments must lie in [0,1]");
        }
    }
    const double omp = 1.0 - prev;
    StageProbs out;
    out.p1 = prev * index_se + omp * (1.0 - index_sp);
    if (out.p1 <= 0.0 || out.p1 >= 1.0) {
        throw std::domain_error("stage_probs: degenerate design, P(index+)=" +
                                std::to_string(out.p1));
    }
    out.q1 = (prev * index_se * ref_se + omp * (1.0 - index_sp) * (1.0 - ref_sp)) / out.p1;
    out.q0 = (prev * (1.0 - index_se) * ref_se + omp * index_sp * (1.0 - ref_sp)) / (1.0 - out.p1);
    return out;
}

double pvb_log_likelihood(const PvbMetaDataset& dataset, const PvbState& state) {
    const std::size_t n = dataset.size();
    const bool dims_ok = state.prev.size() == n && state.logit_se[0].size() == n &&
                         state.logit_se[1].size() == n && state.logit_sp[0].size() == n &&
                         state.logit_sp[1].size() == n;
    if (!dims_ok) throw std::invalid_argument("pvb_log_likelihood: state does not match dataset");

    const detail::PvbModel model(dataset);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        detail::ProbPair pp{state.prev[i], 1.0 - state.prev[i]};
        const detail::Acc ref = detail::acc_from_logits(state.logit_se[0][i], state.logit_sp[0][i]);
        const detail::Acc idx = detail::acc_from_logits(state.logit_se[1][i], state.logit_sp[1][i]);
        total += model.study_loglik(i, pp, ref, idx);
    }
    return total;
}

FitResult fit_pvb(const PvbMetaDataset& dataset, const McmcConfig& config) {
    const detail::PvbModel model(dataset);
    return detail::fit_hierarchical(model, pvb_prior(), config,
                                    [&](std::size_t i) { return dataset.study_id(i); });
}

}  // namespace dtabias
