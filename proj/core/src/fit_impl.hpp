#pragma once

// Internal multi-chain fit driver shared by the two hierarchical models.
// Not installed.

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include "sampler_impl.hpp"

namespace dtabias::detail {

struct MonitoredParam {
    std::string name;
    bool gated;  // participates in the convergence gate
    std::function<double(const LcbmState&)> extract;
};

template <typename Model>
inline std::vector<MonitoredParam> monitored_params(const PriorSpec& prior) {
    auto mean_prob = [](double t) { return prob_pair_from_logit(t).p; };
    std::vector<MonitoredParam> params = {
        {"mean_se_ref", true, [=](const LcbmState& s) { return mean_prob(s.hyper[0].mu_se); }},
        {"mean_sp_ref", true, [=](const LcbmState& s) { return mean_prob(s.hyper[0].mu_sp); }},
        {"mean_se_index", true, [=](const LcbmState& s) { return mean_prob(s.hyper[1].mu_se); }},
        {"mean_sp_index", true, [=](const LcbmState& s) { return mean_prob(s.hyper[1].mu_sp); }},
        {"sigma_se_ref", true, [](const LcbmState& s) { return s.hyper[0].sigma_se; }},
        {"sigma_sp_ref", true, [](const LcbmState& s) { return s.hyper[0].sigma_sp; }},
        {"sigma_se_index", true, [](const LcbmState& s) { return s.hyper[1].sigma_se; }},
        {"sigma_sp_index", true, [](const LcbmState& s) { return s.hyper[1].sigma_sp; }},
    };
    if (prior.sample_rho) {
        params.push_back({"rho_ref", false, [](const LcbmState& s) { return s.hyper[0].rho; }});
        params.push_back({"rho_index", false, [](const LcbmState& s) { return s.hyper[1].rho; }});
    }
    return params;
}

inline double pooled_median(std::vector<double>& buffer) {
    const std::size_t mid = buffer.size() / 2;
    std::nth_element(buffer.begin(), buffer.begin() + static_cast<std::ptrdiff_t>(mid),
                     buffer.end());
    double hi = buffer[mid];
    if (buffer.size() % 2 == 0) {
        const double lo = *std::max_element(buffer.begin(),
                                            buffer.begin() + static_cast<std::ptrdiff_t>(mid));
        return 0.5 * (lo + hi);
    }
    return hi;
}

template <typename Model, typename IdOf>
FitResult fit_hierarchical(const Model& model, const PriorSpec& prior, const McmcConfig& config,
                           IdOf study_id_of) {
    config.validate();

    struct ChainRun {
        std::vector<LcbmState> states;
        ChainDiagnostics diag;
    };
    auto run_one = [&](int c) {
        HierarchicalSampler<Model> sampler(model, prior, config,
                                           domain_seed(config.seed, SeedDomain::chain,
                                                       static_cast<std::uint64_t>(c)),
                                           ChainOptions{});
        ChainRun run;
        run.states = sampler.run();
        run.diag = sampler.diagnostics();
        return run;
    };

    std::vector<ChainRun> chains(static_cast<std::size_t>(config.n_chains));
    if (config.n_chains == 1) {
        chains[0] = run_one(0);
    } else {
        std::vector<std::future<ChainRun>> futures;
        futures.reserve(chains.size());
        for (int c = 0; c < config.n_chains; ++c) {
            futures.push_back(std::async(std::launch::async, run_one, c));
        }
        for (int c = 0; c < config.n_chains; ++c) chains[static_cast<std::size_t>(c)] = futures[static_cast<std::size_t>(c)].get();
    }

    FitResult fit;
    const std::vector<MonitoredParam> params = monitored_params<Model>(prior);
    for (const MonitoredParam& p : params) {
        std::vector<std::vector<double>> per_chain;
        std::vector<double> pooled;
        for (const ChainRun& run : chains) {
            std::vector<double> series;
            series.reserve(run.states.size());
            for (const LcbmState& s : run.states) series.push_back(p.extract(s));
            pooled.insert(pooled.end(), series.begin(), series.end());
            per_chain.push_back(std::move(series));
        }
        ParamSummary summary;
        const QuantileSummary q = summarize_draws(std::move(pooled));
        summary.q025 = q.q025;
        summary.q50 = q.q50;
        summary.q975 = q.q975;
        summary.mean = q.mean;
        summary.rhat = gelman_rubin(per_chain);
        fit.summaries.emplace_back(p.name, summary);
    }
    bool gate_ok = config.n_chains >= 2;
    for (std::size_t pi = 0; pi < params.size(); ++pi) {
        if (!params[pi].gated) continue;
        const auto& rhat = fit.summaries[pi].second.rhat;
        if (!rhat || *rhat >= fit.rhat_threshold) gate_ok = false;
        if (rhat) fit.max_rhat = std::max(fit.max_rhat, *rhat);
    }
    fit.converged = gate_ok;

    // per-study posterior medians; the probability-scale median is the
    // transformed logit median (monotone map)
    const std::size_t n_studies = model.n_studies();
    std::size_t total_draws = 0;
    for (const ChainRun& run : chains) total_draws += run.states.size();
    std::vector<double> buffer;
    buffer.reserve(total_draws);
    fit.per_study.resize(n_studies);
    auto median_of = [&](auto&& getter) {
        buffer.clear();
        for (const ChainRun& run : chains) {
            for (const LcbmState& s : run.states) buffer.push_back(getter(s));
        }
        return pooled_median(buffer);
    };
    for (std::size_t i = 0; i < n_studies; ++i) {
        StudyPosterior sp;
        sp.study_id = study_id_of(i);
        sp.prev_med = median_of([&](const LcbmState& s) { return s.prev[i]; });
        sp.se1_med =
            prob_pair_from_logit(median_of([&](const LcbmState& s) { return s.logit_se[0][i]; })).p;
        sp.sp1_med =
            prob_pair_from_logit(median_of([&](const LcbmState& s) { return s.logit_sp[0][i]; })).p;
        sp.se2_med =
            prob_pair_from_logit(median_of([&](const LcbmState& s) { return s.logit_se[1][i]; })).p;
        sp.sp2_med =
            prob_pair_from_logit(median_of([&](const LcbmState& s) { return s.logit_sp[1][i]; })).p;
        fit.per_study[i] = sp;
    }

    auto rate = [](long acc, long tries) {
        return tries > 0 ? static_cast<double>(acc) / static_cast<double>(tries) : 0.0;
    };
    long pa = 0, pt = 0, ta[2] = {0, 0}, tt[2] = {0, 0}, ha[2] = {0, 0}, ht[2] = {0, 0};
    for (const ChainRun& run : chains) {
        pa += run.diag.prev_acc;
        pt += run.diag.prev_try;
        for (int k = 0; k < 2; ++k) {
            ta[k] += run.diag.theta_acc[k];
            tt[k] += run.diag.theta_try[k];
            ha[k] += run.diag.hyper_acc[k];
            ht[k] += run.diag.hyper_try[k];
        }
    }
    fit.acceptance.emplace_back("prev", rate(pa, pt));
    fit.acceptance.emplace_back("theta_ref", rate(ta[0], tt[0]));
    fit.acceptance.emplace_back("theta_index", rate(ta[1], tt[1]));
    fit.acceptance.emplace_back("hyper_ref", rate(ha[0], ht[0]));
    fit.acceptance.emplace_back("hyper_index", rate(ha[1], ht[1]));
    return fit;
}

}  // namespace dtabias::detail
