#pragma once

// Shared MCMC machinery: convergence diagnostics, proposal-scale adaptation,
// posterior summaries.

#include <optional>
#include <span>
#include <vector>

namespace dtabias {

// Potential scale reduction factor over >= 2 equal-length chains:
//   Rhat = sqrt(((n-1)/n * W + B/n) / W)
// with B the between-chain and W the mean within-chain sample variance.
// Missing when W == 0 (non-assessable) or inputs are degenerate.
std::optional<double> gelman_rubin(std::span<const std::vector<double>> chains);

struct QuantileSummary {
    double q025 = 0.0;
    double q50 = 0.0;
    double q975 = 0.0;
    double mean = 0.0;
};

// Linear-interpolation quantiles; consumes the draws (sorts in place).
QuantileSummary summarize_draws(std::vector<double> draws);

double quantile_sorted(std::span<const double> sorted, double q);

// Batch-diminishing random-walk scale adaptation. During burn-in the
// log-step moves by min(0.1, batch^-1/2) toward the target acceptance rate
// at the end of every batch; freeze() pins the scale for the sampling phase.
class StepAdapter {
public:
    StepAdapter(double initial_step, double target_acceptance)
        : step_(initial_step), target_(target_acceptance) {}

    double step() const { return step_; }

    void observe(bool accepted) {
        ++batch_count_;
        if (accepted) ++batch_accepts_;
        ++total_count_;
        if (accepted) ++total_accepts_;
    }

    void end_batch();
    void freeze() { frozen_ = true; }

    // Lifetime acceptance fraction (callers reset via post_burnin_mark()).
    void post_burnin_mark() {
        total_count_ = 0;
        total_accepts_ = 0;
    }
    long total_count() const { return total_count_; }
    long total_accepts() const { return total_accepts_; }

private:
    double step_;
    double target_;
    bool frozen_ = false;
    int batch_index_ = 0;
    long batch_count_ = 0;
    long batch_accepts_ = 0;
    long total_count_ = 0;
    long total_accepts_ = 0;
};

}  // namespace dtabias
