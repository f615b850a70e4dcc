#pragma once

// Latent class bivariate meta-analysis model.
//
// Two conditionally independent tests, neither treated as perfect. Study
// counts follow a multinomial over the 2x2 cross-table whose cell
// probabilities mix the diseased and non-diseased laws; each test's
// logit-(sensitivity, specificity) pair gets a bivariate-normal hierarchical
// prior across studies. Fitting is a from-scratch Metropolis-within-Gibbs
// sampler with adaptive random-walk proposals and an exact conjugate draw of
// the population means.
//
// Test index convention throughout: 0 = reference standard, 1 = index test.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtabias/scenario.hpp"
#include "dtabias/tables.hpp"

namespace dtabias {

struct MetaDataset {
    std::vector<TwoByTwoTable> tables;   // one per study
    std::vector<std::int64_t> study_ids; // parallel to tables; empty means 0..n-1

    std::size_t size() const { return tables.size(); }
    std::int64_t study_id(std::size_t i) const {
        return study_ids.empty() ? static_cast<std::int64_t>(i) : study_ids[i];
    }
};

// Multinomial cell probabilities of the (reference, index) cross-table.
// p11 = both positive, p10 = reference+/index-, p01 = reference-/index+,
// p00 = both negative.
struct CellProbs {
    double p11 = 0.0;
    double p10 = 0.0;
    double p01 = 0.0;
    double p00 = 0.0;
};

// Throws std::invalid_argument outside [0,1].
CellProbs cell_probabilities(double prev, double ref_se, double ref_sp, double index_se,
                             double index_sp);

// Population-level parameters of one test.
struct TestHyper {
    double mu_se = 0.0;     // mean logit sensitivity
    double mu_sp = 0.0;     // mean logit specificity
    double sigma_se = 1.0;  // between-study sd, logit scale
    double sigma_sp = 1.0;
    double rho = 0.0;       // correlation of the pair
};

struct LcbmState {
    std::vector<double> prev;                     // pi_i
    std::array<std::vector<double>, 2> logit_se;  // [test][study]
    std::array<std::vector<double>, 2> logit_sp;
    std::array<TestHyper, 2> hyper;
};

// Multinomial log likelihood over all studies, combinatorial constant
// omitted (constant in the parameters, so it affects no inference).
// A zero cell probability with a positive count yields -infinity.
double log_likelihood(const MetaDataset& dataset, const LcbmState& state);

// Log prior: flat Beta(1,1) on each prevalence, bivariate normal on each
// study's logit pair, N(0, var 2) on the mu components, flat on rho, and
// half-Cauchy(scale 16) on each sigma. -infinity outside the support.
double log_prior(const LcbmState& state);

struct McmcConfig {
    int n_chains = 3;
    int n_iters = 50000;
    int n_burnin = 25000;
    int thin = 1;
    int adapt_window = 50;
    std::uint64_t seed = 0;
    bool enforce_dv_gt_1 = true;  // reject population means with Se+Sp <= 1

    void validate() const;  // throws std::invalid_argument
};

// Testing/diagnostic knobs for a single chain.
struct ChainOptions {
    // Fix both tests' accuracies at the given (probability-scale) values for
    // every study and skip their updates; only the prevalences move. Turns
    // the model into its collapsed form with known accuracies.
    std::optional<std::array<TestAccuracy, 2>> freeze_accuracies;
};

// One chain: adaptive Metropolis-within-Gibbs sweeps, returns post-burn-in
// states (thinned). Deterministic in (dataset, config, chain_seed).
// Throws std::runtime_error if the posterior is non-finite at initialization.
std::vector<LcbmState> run_chain(const MetaDataset& dataset, const McmcConfig& config,
                                 std::uint64_t chain_seed, const ChainOptions& options = {});

struct ParamSummary {
    double q025 = 0.0;
    double q50 = 0.0;
    double q975 = 0.0;
    double mean = 0.0;
    std::optional<double> rhat;
};

struct StudyPosterior {
    std::int64_t study_id = 0;
    double prev_med = 0.0;
    double se1_med = 0.0;  // reference test, probability scale
    double sp1_med = 0.0;
    double se2_med = 0.0;  // index test
    double sp2_med = 0.0;
};

struct FitResult {
    std::vector<std::pair<std::string, ParamSummary>> summaries;
    std::vector<StudyPosterior> per_study;
    std::vector<std::pair<std::string, double>> acceptance;  // per update block
    bool converged = false;   // all gated parameters with Rhat < threshold
    double max_rhat = 0.0;    // over the gated population-level parameters
    double rhat_threshold = 1.1;
};

// Runs config.n_chains chains in parallel from jittered naive-estimate
// starting points, pools post-burn-in draws, and summarizes. Non-convergence
// is reported through `converged`, never thrown.
FitResult fit_lcbm(const MetaDataset& dataset, const McmcConfig& config);

struct StratifiedMetaDataset {
    std::map<int, MetaDataset> strata;
};

// Independent fit per covariate stratum. Strata with fewer than 2 studies
// are skipped (with a note on stderr). Throws std::invalid_argument when no
// stratum labels are present.
std::map<int, FitResult> fit_lcbm_subgroup(const StratifiedMetaDataset& dataset,
                                           const McmcConfig& config);

struct AdjustedAssociation {
    std::optional<double> rho_se_prev;
    std::optional<double> rho_sp_prev;
};

// Spearman correlation between per-study posterior-median index accuracy and
// posterior-median prevalence.
AdjustedAssociation adjusted_association(const FitResult& fit);

}  // namespace dtabias
