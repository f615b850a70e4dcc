#pragma once

// Internal Metropolis-within-Gibbs engine shared by the latent class and
// verification-design models. Not installed.
//
// Sweep structure, in fixed order (one RNG stream per chain):
//   1. logit(pi_i) random walk per study
//   2. (theta_se, theta_sp) pair random walk per (test, study)
//   3. per test: log(sigma_se), log(sigma_sp), atanh(rho) random walks,
//      then an exact conjugate bivariate-normal draw of mu (rejection-
//      sampled into the constraint region when one is active)
// Proposal scales adapt in batches during burn-in only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtabias/lcbm.hpp"
#include "dtabias/mcmc_util.hpp"
#include "dtabias/pvb.hpp"
#include "dtabias/rng.hpp"

namespace dtabias::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLog2Pi = 1.8378770664093454835606594728112;

// Complementary logistic pair computed without cancellation:
// p = 1/(1+e^-t), omp = 1/(1+e^t).
struct ProbPair {
    double p = 0.5;
    double omp = 0.5;
};

inline ProbPair prob_pair_from_logit(double t) {
    ProbPair out;
    if (t >= 0.0) {
        const double e = std::exp(-t);
        out.p = 1.0 / (1.0 + e);
        out.omp = e / (1.0 + e);
    } else {
        const double e = std::exp(t);
        out.p = e / (1.0 + e);
        out.omp = 1.0 / (1.0 + e);
    }
    return out;
}

inline double logit(double p) { return std::log(p / (1.0 - p)); }

// log(p) + log(1-p) for p given on the logit scale; the prevalence-update
// Jacobian.
inline double log_p_omp(double t) {
    auto softplus = [](double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); };
    return -softplus(t) - softplus(-t);
}

// Accuracy of one test with complements, probability scale.
struct Acc {
    double se = 0.0, omse = 1.0;
    double sp = 0.0, omsp = 1.0;
};

inline Acc acc_from_logits(double t_se, double t_sp) {
    const ProbPair s = prob_pair_from_logit(t_se);
    const ProbPair c = prob_pair_from_logit(t_sp);
    return {s.p, s.omp, c.p, c.omp};
}

inline Acc acc_from_probs(TestAccuracy a) {
    return {a.se, 1.0 - a.se, a.sp, 1.0 - a.sp};
}

// n * log(p) with the 0*log(0) = 0 convention; -inf for p <= 0 with n > 0.
inline double count_term(std::int64_t n, double p) {
    if (n == 0) return 0.0;
    if (p <= 0.0) return kNegInf;
    return static_cast<double>(n) * std::log(p);
}

inline double log_bvn(double x, double y, const TestHyper& h) {
    const double zx = (x - h.mu_se) / h.sigma_se;
    const double zy = (y - h.mu_sp) / h.sigma_sp;
    const double omr2 = 1.0 - h.rho * h.rho;
    return -kLog2Pi - std::log(h.sigma_se * h.sigma_sp) - 0.5 * std::log(omr2) -
           0.5 * (zx * zx - 2.0 * h.rho * zx * zy + zy * zy) / omr2;
}

// Prior family differences between the two models.
struct PriorSpec {
    double mu_prior_var = 2.0;      // variance of N(0, .) on each mu component
    bool truncate_mu_sp = false;    // specificity mean constrained to positive logit
    bool enforce_dv = false;        // population Se+Sp > 1 (mu_se + mu_sp > 0)
    bool sample_rho = true;         // otherwise fixed at 0
    bool sigma_uniform02 = false;   // Uniform(0,2) instead of half-Cauchy(16)
};

inline double log_sigma_prior(double s, const PriorSpec& ps) {
    if (s <= 0.0) return kNegInf;
    if (ps.sigma_uniform02) {
        return s < 2.0 ? -std::log(2.0) : kNegInf;
    }
    // half-Cauchy, scale 16
    const double z = s / 16.0;
    return std::log(2.0 / (3.14159265358979323846 * 16.0)) - std::log1p(z * z);
}

struct NaiveInit {
    double prev = 0.5;
    double logit_se[2] = {0.0, 0.0};  // [test]
    double logit_sp[2] = {0.0, 0.0};
};

inline double clamp_prob(double p) { return std::clamp(p, 0.02, 0.98); }

inline double safe_ratio(std::int64_t num, std::int64_t den, double fallback) {
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : fallback;
}

// ---------------------------------------------------------------------------
// Model policies

class LcbmModel {
public:
    explicit LcbmModel(const MetaDataset& data) : data_(&data) {
        for (const TwoByTwoTable& t : data.tables) {
            if (t.n <= 0) throw std::invalid_argument("latent class fit: empty study table");
            if (t.n_pp + t.n_pn + t.n_np + t.n_nn != t.n) {
                throw std::invalid_argument("latent class fit: table cells do not sum to n");
            }
        }
    }

    std::size_t n_studies() const { return data_->size(); }

    double study_loglik(std::size_t i, ProbPair prev, const Acc& ref, const Acc& idx) const {
        const TwoByTwoTable& t = data_->tables[i];
        const double p11 = prev.p * ref.se * idx.se + prev.omp * ref.omsp * idx.omsp;
        const double p10 = prev.p * ref.se * idx.omse + prev.omp * ref.omsp * idx.sp;
        const double p01 = prev.p * ref.omse * idx.se + prev.omp * ref.sp * idx.omsp;
        const double p00 = prev.p * ref.omse * idx.omse + prev.omp * ref.sp * idx.sp;
        return count_term(t.n_pp, p11) + count_term(t.n_np, p10) + count_term(t.n_pn, p01) +
               count_term(t.n_nn, p00);
    }

    NaiveInit naive_init(std::size_t i) const {
        const TwoByTwoTable& t = data_->tables[i];
        NaiveInit init;
        init.prev = clamp_prob(safe_ratio(t.ref_pos(), t.n, 0.5));
        // index test against the reference, reference against the index
        init.logit_se[1] = logit(clamp_prob(safe_ratio(t.n_pp, t.ref_pos(), 0.8)));
        init.logit_sp[1] = logit(clamp_prob(safe_ratio(t.n_nn, t.ref_neg(), 0.8)));
        init.logit_se[0] = logit(clamp_prob(safe_ratio(t.n_pp, t.n_pp + t.n_pn, 0.8)));
        init.logit_sp[0] = logit(clamp_prob(safe_ratio(t.n_nn, t.n_nn + t.n_np, 0.8)));
        return init;
    }

private:
    const MetaDataset* data_;
};

class PvbModel {
public:
    explicit PvbModel(const PvbMetaDataset& data) : data_(&data) {
        for (const VerificationTable& t : data.tables) {
            const bool ok = t.n_total > 0 && t.n1 <= t.n_total && t.v1 <= t.n1 &&
                            t.v0 <= t.n_total - t.n1 && t.x1 <= t.v1 && t.x0 <= t.v0;
            if (!ok) throw std::invalid_argument("verification fit: inconsistent table counts");
        }
    }

    std::size_t n_studies() const { return data_->size(); }

    double study_loglik(std::size_t i, ProbPair prev, const Acc& ref, const Acc& idx) const {
        const VerificationTable& t = data_->tables[i];
        // joint (index, reference) probabilities; stage probabilities are
        // their ratios, so the conditional terms telescope into joint terms
        const double p1 = prev.p * idx.se + prev.omp * idx.omsp;    // P(index+)
        const double p0 = prev.p * idx.omse + prev.omp * idx.sp;    // P(index-)
        const double a1 = prev.p * idx.se * ref.se + prev.omp * idx.omsp * ref.omsp;
        const double b1 = prev.p * idx.se * ref.omse + prev.omp * idx.omsp * ref.sp;
        const double a0 = prev.p * idx.omse * ref.se + prev.omp * idx.sp * ref.omsp;
        const double b0 = prev.p * idx.omse * ref.omse + prev.omp * idx.sp * ref.sp;
        return count_term(t.n1 - t.v1, p1) + count_term(t.n_total - t.n1 - t.v0, p0) +
               count_term(t.x1, a1) + count_term(t.v1 - t.x1, b1) + count_term(t.x0, a0) +
               count_term(t.v0 - t.x0, b0);
    }

    NaiveInit naive_init(std::size_t i) const {
        const VerificationTable& t = data_->tables[i];
        NaiveInit init;
        // complete-case table among the verified
        const std::int64_t refpos = t.x1 + t.x0;
        const std::int64_t refneg = (t.v1 - t.x1) + (t.v0 - t.x0);
        init.prev = clamp_prob(safe_ratio(refpos, t.v1 + t.v0, 0.5));
        init.logit_se[1] = logit(clamp_prob(safe_ratio(t.x1, refpos, 0.8)));
        init.logit_sp[1] = logit(clamp_prob(safe_ratio(t.v0 - t.x0, refneg, 0.8)));
        init.logit_se[0] = logit(clamp_prob(safe_ratio(t.x1, t.v1, 0.8)));
        init.logit_sp[0] = logit(clamp_prob(safe_ratio(t.v0 - t.x0, t.v0, 0.8)));
        return init;
    }

private:
    const PvbMetaDataset* data_;
};

// ---------------------------------------------------------------------------
// Sampler

struct ChainDiagnostics {
    // accepted/attempted per block kind
    long prev_acc = 0, prev_try = 0;
    long theta_acc[2] = {0, 0}, theta_try[2] = {0, 0};
    long hyper_acc[2] = {0, 0}, hyper_try[2] = {0, 0};
};

template <typename Model>
class HierarchicalSampler {
public:
    HierarchicalSampler(const Model& model, const PriorSpec& prior, const McmcConfig& config,
                        std::uint64_t chain_seed, const ChainOptions& options)
        : model_(model), prior_(prior), config_(config), rng_(chain_seed), options_(options) {
        config.validate();
        n_ = model_.n_studies();
        if (n_ < 1) throw std::invalid_argument("fit requires at least one study");
        frozen_ = options_.freeze_accuracies.has_value();
        initialize();
    }

    std::vector<LcbmState> run() {
        std::vector<LcbmState> kept;
        const int n_kept = (config_.n_iters - config_.n_burnin + config_.thin - 1) / config_.thin;
        kept.reserve(static_cast<std::size_t>(std::max(n_kept, 0)));
        for (int iter = 0; iter < config_.n_iters; ++iter) {
            sweep();
            const bool burnin = iter < config_.n_burnin;
            if (burnin && (iter + 1) % config_.adapt_window == 0) end_batches();
            if (iter + 1 == config_.n_burnin) freeze_adaptation();
            if (!burnin && (iter - config_.n_burnin) % config_.thin == 0) kept.push_back(snapshot());
        }
        return kept;
    }

    const ChainDiagnostics& diagnostics() const { return diag_; }

private:
    void initialize() {
        prev_logit_.resize(n_);
        prev_pair_.resize(n_);
        for (int k = 0; k < 2; ++k) {
            theta_se_[k].resize(n_);
            theta_sp_[k].resize(n_);
            acc_[k].resize(n_);
        }
        study_ll_.resize(n_);

        // jittered naive starting point
        std::vector<NaiveInit> inits(n_);
        for (std::size_t i = 0; i < n_; ++i) inits[i] = model_.naive_init(i);
        for (std::size_t i = 0; i < n_; ++i) {
            const double t = logit(inits[i].prev) + 0.1 * rng_.normal();
            prev_logit_[i] = t;
            prev_pair_[i] = prob_pair_from_logit(t);
        }
        for (int k = 0; k < 2; ++k) {
            for (std::size_t i = 0; i < n_; ++i) {
                theta_se_[k][i] = inits[i].logit_se[k] + (frozen_ ? 0.0 : 0.1 * rng_.normal());
                theta_sp_[k][i] = inits[i].logit_sp[k] + (frozen_ ? 0.0 : 0.1 * rng_.normal());
            }
        }
        if (frozen_) {
            for (int k = 0; k < 2; ++k) {
                const TestAccuracy fixed = (*options_.freeze_accuracies)[static_cast<std::size_t>(k)];
                const double t_se = logit(std::clamp(fixed.se, 1e-9, 1.0 - 1e-9));
                const double t_sp = logit(std::clamp(fixed.sp, 1e-9, 1.0 - 1e-9));
                for (std::size_t i = 0; i < n_; ++i) {
                    theta_se_[k][i] = t_se;
                    theta_sp_[k][i] = t_sp;
                    acc_[k][i] = acc_from_probs(fixed);
                }
                hyper_[k] = TestHyper{t_se, t_sp, 0.1, 0.1, 0.0};
            }
        } else {
            for (int k = 0; k < 2; ++k) {
                double m_se = 0.0, m_sp = 0.0;
                for (std::size_t i = 0; i < n_; ++i) {
                    m_se += theta_se_[k][i];
                    m_sp += theta_sp_[k][i];
                }
                m_se /= static_cast<double>(n_);
                m_sp /= static_cast<double>(n_);
                double v_se = 0.0, v_sp = 0.0;
                for (std::size_t i = 0; i < n_; ++i) {
                    v_se += (theta_se_[k][i] - m_se) * (theta_se_[k][i] - m_se);
                    v_sp += (theta_sp_[k][i] - m_sp) * (theta_sp_[k][i] - m_sp);
                }
                const double denom = static_cast<double>(std::max<std::size_t>(n_ - 1, 1));
                const double hi = prior_.sigma_uniform02 ? 1.9 : 1.5;
                hyper_[k].sigma_se = std::clamp(std::sqrt(v_se / denom), 0.05, hi);
                hyper_[k].sigma_sp = std::clamp(std::sqrt(v_sp / denom), 0.05, hi);
                hyper_[k].rho = 0.0;
                // keep the jittered means inside the constraint region
                for (int tries = 0;; ++tries) {
                    hyper_[k].mu_se = m_se + 0.05 * rng_.normal();
                    hyper_[k].mu_sp = m_sp + 0.05 * rng_.normal();
                    if (mu_constraint_ok(hyper_[k]) || tries > 100) break;
                }
                for (std::size_t i = 0; i < n_; ++i) {
                    acc_[k][i] = acc_from_logits(theta_se_[k][i], theta_sp_[k][i]);
                }
            }
        }

        double total = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            study_ll_[i] = model_.study_loglik(i, prev_pair_[i], acc_[0][i], acc_[1][i]);
            total += study_ll_[i];
        }
        if (!std::isfinite(total)) {
            throw std::runtime_error("non-finite posterior at initialization");
        }
        for (int k = 0; k < 2; ++k) refresh_bvn_sum(k);

        prev_step_.assign(n_, StepAdapter(0.5, 0.44));
        for (int k = 0; k < 2; ++k) theta_step_[k].assign(n_, StepAdapter(0.3, 0.35));
        for (int k = 0; k < 2; ++k) {
            sigma_se_step_[k] = StepAdapter(0.3, 0.44);
            sigma_sp_step_[k] = StepAdapter(0.3, 0.44);
            rho_step_[k] = StepAdapter(0.4, 0.44);
        }
    }

    bool mu_constraint_ok(const TestHyper& h) const {
        if (prior_.enforce_dv && h.mu_se + h.mu_sp <= 0.0) return false;
        if (prior_.truncate_mu_sp && h.mu_sp <= 0.0) return false;
        return true;
    }

    void refresh_bvn_sum(int k) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            s += log_bvn(theta_se_[k][i], theta_sp_[k][i], hyper_[k]);
        }
        bvn_sum_[k] = s;
    }

    void sweep() {
        update_prevalences();
        if (!frozen_) {
            for (int k = 0; k < 2; ++k) update_thetas(k);
            for (int k = 0; k < 2; ++k) update_hyper(k);
        }
    }

    void update_prevalences() {
        for (std::size_t i = 0; i < n_; ++i) {
            StepAdapter& ad = prev_step_[i];
            const double t_new = prev_logit_[i] + ad.step() * rng_.normal();
            const ProbPair pp_new = prob_pair_from_logit(t_new);
            const double ll_new = model_.study_loglik(i, pp_new, acc_[0][i], acc_[1][i]);
            // flat prior on the probability scale: Jacobian p(1-p)
            const double log_accept =
                ll_new - study_ll_[i] + log_p_omp(t_new) - log_p_omp(prev_logit_[i]);
            const bool accept = std::log(1.0 - rng_.uniform01()) < log_accept;
            if (accept) {
                prev_logit_[i] = t_new;
                prev_pair_[i] = pp_new;
                study_ll_[i] = ll_new;
            }
            ad.observe(accept);
            ++diag_.prev_try;
            if (accept) ++diag_.prev_acc;
        }
    }

    void update_thetas(int k) {
        for (std::size_t i = 0; i < n_; ++i) {
            StepAdapter& ad = theta_step_[k][i];
            const double se_new = theta_se_[k][i] + ad.step() * rng_.normal();
            const double sp_new = theta_sp_[k][i] + ad.step() * rng_.normal();
            const Acc acc_new = acc_from_logits(se_new, sp_new);
            const double ll_new = k == 0
                ? model_.study_loglik(i, prev_pair_[i], acc_new, acc_[1][i])
                : model_.study_loglik(i, prev_pair_[i], acc_[0][i], acc_new);
            const double prior_new = log_bvn(se_new, sp_new, hyper_[k]);
            const double prior_old = log_bvn(theta_se_[k][i], theta_sp_[k][i], hyper_[k]);
            const double log_accept = ll_new - study_ll_[i] + prior_new - prior_old;
            const bool accept = std::log(1.0 - rng_.uniform01()) < log_accept;
            if (accept) {
                theta_se_[k][i] = se_new;
                theta_sp_[k][i] = sp_new;
                acc_[k][i] = acc_new;
                study_ll_[i] = ll_new;
                bvn_sum_[k] += prior_new - prior_old;
            }
            ad.observe(accept);
            ++diag_.theta_try[k];
            if (accept) ++diag_.theta_acc[k];
        }
    }

    double bvn_sum_with(int k, const TestHyper& h) const {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            s += log_bvn(theta_se_[k][i], theta_sp_[k][i], h);
        }
        return s;
    }

    void try_hyper_move(int k, const TestHyper& cand, double extra_log_ratio, StepAdapter& ad) {
        const double sum_new = bvn_sum_with(k, cand);
        const double log_accept = sum_new - bvn_sum_[k] + extra_log_ratio;
        const bool accept = std::log(1.0 - rng_.uniform01()) < log_accept;
        if (accept) {
            hyper_[k] = cand;
            bvn_sum_[k] = sum_new;
        }
        ad.observe(accept);
        ++diag_.hyper_try[k];
        if (accept) ++diag_.hyper_acc[k];
    }

    void update_hyper(int k) {
        // sigma_se on the log scale
        {
            StepAdapter& ad = sigma_se_step_[k];
            const double u_old = std::log(hyper_[k].sigma_se);
            const double u_new = u_old + ad.step() * rng_.normal();
            TestHyper cand = hyper_[k];
            cand.sigma_se = std::exp(u_new);
            const double prior_new = log_sigma_prior(cand.sigma_se, prior_);
            if (prior_new == kNegInf) {
                ad.observe(false);
                ++diag_.hyper_try[k];
            } else {
                const double prior_old = log_sigma_prior(hyper_[k].sigma_se, prior_);
                try_hyper_move(k, cand, prior_new - prior_old + (u_new - u_old), ad);
            }
        }
        // sigma_sp on the log scale
        {
            StepAdapter& ad = sigma_sp_step_[k];
            const double u_old = std::log(hyper_[k].sigma_sp);
            const double u_new = u_old + ad.step() * rng_.normal();
            TestHyper cand = hyper_[k];
            cand.sigma_sp = std::exp(u_new);
            const double prior_new = log_sigma_prior(cand.sigma_sp, prior_);
            if (prior_new == kNegInf) {
                ad.observe(false);
                ++diag_.hyper_try[k];
            } else {
                const double prior_old = log_sigma_prior(hyper_[k].sigma_sp, prior_);
                try_hyper_move(k, cand, prior_new - prior_old + (u_new - u_old), ad);
            }
        }
        // rho through Fisher's z; flat prior on (-1,1)
        if (prior_.sample_rho) {
            StepAdapter& ad = rho_step_[k];
            const double w_old = std::atanh(hyper_[k].rho);
            const double w_new = w_old + ad.step() * rng_.normal();
            TestHyper cand = hyper_[k];
            cand.rho = std::tanh(w_new);
            const double jac = std::log1p(-cand.rho * cand.rho) -
                               std::log1p(-hyper_[k].rho * hyper_[k].rho);
            try_hyper_move(k, cand, jac, ad);
        }
        draw_mu(k);
        refresh_bvn_sum(k);
    }

    // Exact conjugate draw of mu_k | thetas, Sigma_k with prior N(0, v I);
    // rejection into the constraint region when active.
    void draw_mu(int k) {
        const TestHyper& h = hyper_[k];
        const double det = h.sigma_se * h.sigma_se * h.sigma_sp * h.sigma_sp *
                           (1.0 - h.rho * h.rho);
        // Sigma^-1
        const double ia = h.sigma_sp * h.sigma_sp / det;
        const double ib = -h.rho * h.sigma_se * h.sigma_sp / det;
        const double ic = h.sigma_se * h.sigma_se / det;
        double sum_se = 0.0, sum_sp = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            sum_se += theta_se_[k][i];
            sum_sp += theta_sp_[k][i];
        }
        const double nn = static_cast<double>(n_);
        const double prior_prec = 1.0 / prior_.mu_prior_var;
        // posterior precision P and its inverse C
        const double pa = nn * ia + prior_prec;
        const double pb = nn * ib;
        const double pc = nn * ic + prior_prec;
        const double pdet = pa * pc - pb * pb;
        const double ca = pc / pdet, cb = -pb / pdet, cc = pa / pdet;
        // posterior mean m = C * Sigma^-1 * sum(theta)
        const double rhs_se = ia * sum_se + ib * sum_sp;
        const double rhs_sp = ib * sum_se + ic * sum_sp;
        const double m_se = ca * rhs_se + cb * rhs_sp;
        const double m_sp = cb * rhs_se + cc * rhs_sp;
        // Cholesky of C
        const double l11 = std::sqrt(ca);
        const double l21 = cb / l11;
        const double l22 = std::sqrt(std::max(cc - l21 * l21, 1e-300));

        TestHyper cand = hyper_[k];
        for (int attempt = 0; attempt < 200; ++attempt) {
            const double z1 = rng_.normal();
            const double z2 = rng_.normal();
            cand.mu_se = m_se + l11 * z1;
            cand.mu_sp = m_sp + l21 * z1 + l22 * z2;
            if (mu_constraint_ok(cand)) {
                hyper_[k].mu_se = cand.mu_se;
                hyper_[k].mu_sp = cand.mu_sp;
                return;
            }
        }
        // constraint region missed repeatedly: keep the current value
    }

    void end_batches() {
        for (auto& ad : prev_step_) ad.end_batch();
        for (int k = 0; k < 2; ++k) {
            for (auto& ad : theta_step_[k]) ad.end_batch();
            sigma_se_step_[k].end_batch();
            sigma_sp_step_[k].end_batch();
            rho_step_[k].end_batch();
        }
    }

    void freeze_adaptation() {
        diag_ = ChainDiagnostics{};  // report post-burn-in acceptance only
        for (auto& ad : prev_step_) ad.freeze();
        for (int k = 0; k < 2; ++k) {
            for (auto& ad : theta_step_[k]) ad.freeze();
            sigma_se_step_[k].freeze();
            sigma_sp_step_[k].freeze();
            rho_step_[k].freeze();
        }
    }

    LcbmState snapshot() const {
        LcbmState s;
        s.prev.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) s.prev[i] = prev_pair_[i].p;
        for (int k = 0; k < 2; ++k) {
            s.logit_se[k] = theta_se_[k];
            s.logit_sp[k] = theta_sp_[k];
            s.hyper[k] = hyper_[k];
        }
        return s;
    }

    const Model& model_;
    PriorSpec prior_;
    McmcConfig config_;
    RngStream rng_;
    ChainOptions options_;
    bool frozen_ = false;
    std::size_t n_ = 0;

    std::vector<double> prev_logit_;
    std::vector<ProbPair> prev_pair_;
    std::vector<double> theta_se_[2];
    std::vector<double> theta_sp_[2];
    std::vector<Acc> acc_[2];
    TestHyper hyper_[2];
    std::vector<double> study_ll_;
    double bvn_sum_[2] = {0.0, 0.0};

    std::vector<StepAdapter> prev_step_;
    std::vector<StepAdapter> theta_step_[2];
    StepAdapter sigma_se_step_[2] = {StepAdapter(0.3, 0.44), StepAdapter(0.3, 0.44)};
    StepAdapter sigma_sp_step_[2] = {StepAdapter(0.3, 0.44), StepAdapter(0.3, 0.44)};
    StepAdapter rho_step_[2] = {StepAdapter(0.4, 0.44), StepAdapter(0.4, 0.44)};

    ChainDiagnostics diag_;
};

}  // namespace dtabias::detail
