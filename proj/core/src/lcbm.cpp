#include "dtabias/lcbm.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "dtabias/association.hpp"
#include "fit_impl.hpp"

namespace dtabias {

namespace {

detail::PriorSpec lcbm_prior(const McmcConfig& config) {
    detail::PriorSpec prior;
    prior.mu_prior_var = 2.0;  // N(0, precision 0.5)
    prior.truncate_mu_sp = false;
    prior.enforce_dv = config.enforce_dv_gt_1;
    prior.sample_rho = true;
    prior.sigma_uniform02 = false;  // half-Cauchy(16)
    return prior;
}

}  // namespace

void McmcConfig::validate() const {
    if (n_chains < 1) throw std::invalid_argument("mcmc: n_chains must be >= 1");
    if (n_iters < 1) throw std::invalid_argument("mcmc: n_iters must be >= 1");
    if (n_burnin < 0 || n_burnin >= n_iters) {
        throw std::invalid_argument("mcmc: n_burnin must lie in [0, n_iters)");
    }
    if (thin < 1) throw std::invalid_argument("mcmc: thin must be >= 1");
    if (adapt_window < 1) throw std::invalid_argument("mcmc: adapt_window must be >= 1");
}

CellProbs cell_probabilities(double prev, double ref_se, double ref_sp, double index_se,
                             double index_sp) {
    for (double p : {prev, ref_se, ref_sp, index_se, index_sp}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("cell_probabilities: arguments must lie in [0,1]");
        }
    }
    CellProbs c;
    const double omp = 1.0 - prev;
    c.p11 = prev * ref_se * index_se + omp * (1.0 - ref_sp) * (1.0 - index_sp);
    c.p10 = prev * ref_se * (1.0 - index_se) + omp * (1.0 - ref_sp) * index_sp;
    c.p01 = prev * (1.0 - ref_se) * index_se + omp * ref_sp * (1.0 - index_sp);
    c.p00 = prev * (1.0 - ref_se) * (1.0 - index_se) + omp * ref_sp * index_sp;
    return c;
}

double log_likelihood(const MetaDataset& dataset, const LcbmState& state) {
    const std::size_t n = dataset.size();
    const bool dims_ok = state.prev.size() == n && state.logit_se[0].size() == n &&
                         state.logit_se[1].size() == n && state.logit_sp[0].size() == n &&
                         state.logit_sp[1].size() == n;
    if (!dims_ok) throw std::invalid_argument("log_likelihood: state does not match dataset");

    const detail::LcbmModel model(dataset);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        detail::ProbPair pp{state.prev[i], 1.0 - state.prev[i]};
        const detail::Acc ref = detail::acc_from_logits(state.logit_se[0][i], state.logit_sp[0][i]);
        const detail::Acc idx = detail::acc_from_logits(state.logit_se[1][i], state.logit_sp[1][i]);
        total += model.study_loglik(i, pp, ref, idx);
    }
    return total;
}

double log_prior(const LcbmState& state) {
    double total = 0.0;
    for (double p : state.prev) {
        if (!(p > 0.0 && p < 1.0)) return detail::kNegInf;
        // Beta(1,1): contributes 0
    }
    for (int k = 0; k < 2; ++k) {
        const TestHyper& h = state.hyper[k];
        if (!(h.sigma_se > 0.0) || !(h.sigma_sp > 0.0)) return detail::kNegInf;
        if (!(h.rho > -1.0 && h.rho < 1.0)) return detail::kNegInf;
        for (std::size_t i = 0; i < state.logit_se[k].size(); ++i) {
            total += detail::log_bvn(state.logit_se[k][i], state.logit_sp[k][i], h);
        }
        const double var = 2.0;  // precision 0.5
        for (double mu : {h.mu_se, h.mu_sp}) {
            total += -0.5 * std::log(2.0 * 3.14159265358979323846 * var) - mu * mu / (2.0 * var);
        }
        total += -std::log(2.0);  // rho ~ Uniform(-1,1)
        detail::PriorSpec half_cauchy;  // defaults: half-Cauchy(16)
        total += detail::log_sigma_prior(h.sigma_se, half_cauchy);
        total += detail::log_sigma_prior(h.sigma_sp, half_cauchy);
    }
    return total;
}

std::vector<LcbmState> run_chain(const MetaDataset& dataset, const McmcConfig& config,
                                 std::uint64_t chain_seed, const ChainOptions& options) {
    const detail::LcbmModel model(dataset);
    detail::HierarchicalSampler<detail::LcbmModel> sampler(model, lcbm_prior(config), config,
                                                           chain_seed, options);
    return sampler.run();
}

FitResult fit_lcbm(const MetaDataset& dataset, const McmcConfig& config) {
    const detail::LcbmModel model(dataset);
    return detail::fit_hierarchical(model, lcbm_prior(config), config,
                                    [&](std::size_t i) { return dataset.study_id(i); });
}

std::map<int, FitResult> fit_lcbm_subgroup(const StratifiedMetaDataset& dataset,
                                           const McmcConfig& config) {
    if (dataset.strata.empty()) {
        throw std::invalid_argument("fit_lcbm_subgroup: no stratum labels");
    }
    std::map<int, FitResult> out;
    for (const auto& [stratum, meta] : dataset.strata) {
        if (meta.size() < 2) {
            std::cerr << "fit_lcbm_subgroup: stratum " << stratum << " has " << meta.size()
                      << " studies, skipped\n";
            continue;
        }
        out.emplace(stratum, fit_lcbm(meta, config));
    }
    return out;
}

AdjustedAssociation adjusted_association(const FitResult& fit) {
    std::vector<std::optional<double>> prev, se, sp;
    prev.reserve(fit.per_study.size());
    for (const StudyPosterior& s : fit.per_study) {
        prev.push_back(s.prev_med);
        se.push_back(s.se2_med);
        sp.push_back(s.sp2_med);
    }
    AdjustedAssociation out;
    out.rho_se_prev = spearman_rho(se, prev);
    out.rho_sp_prev = spearman_rho(sp, prev);
    return out;
}

}  // namespace dtabias
