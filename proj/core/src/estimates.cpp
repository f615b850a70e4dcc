#include "dtabias/estimates.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>
#include <thread>

namespace dtabias {

EstimateRecord naive_estimates(const TwoByTwoTable& table, std::int64_t study_id,
                               std::string setup_label) {
    EstimateRecord rec;
    rec.study_id = study_id;
    rec.setup_label = std::move(setup_label);
    rec.n_ref_pos = table.ref_pos();
    rec.n_ref_neg = table.ref_neg();
    if (table.n > 0) {
        rec.prev_hat = static_cast<double>(rec.n_ref_pos) / static_cast<double>(table.n);
    }
    if (rec.n_ref_pos > 0) {
        rec.se_hat = static_cast<double>(table.n_pp) / static_cast<double>(rec.n_ref_pos);
    }
    if (rec.n_ref_neg > 0) {
        rec.sp_hat = static_cast<double>(table.n_nn) / static_cast<double>(rec.n_ref_neg);
    }
    return rec;
}

ScenarioResult run_scenario(const ScenarioSetup& setup, int n_studies, int n_subjects,
                            std::uint64_t master_seed, int n_threads) {
    if (n_studies < 1) throw std::invalid_argument("run_scenario requires n_studies >= 1");
    setup.validate();

    ScenarioResult result;
    result.estimates.resize(static_cast<std::size_t>(n_studies));
    result.tables.resize(static_cast<std::size_t>(n_studies));

    auto worker = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            RngStream rng(domain_seed(master_seed, SeedDomain::simulation,
                                      static_cast<std::uint64_t>(i)));
            const std::vector<SubjectRecord> subjects = simulate_study(setup, n_subjects, rng);
            StudyTables tables = tabulate(subjects);
            result.estimates[static_cast<std::size_t>(i)] =
                naive_estimates(tables.pooled, i, setup.label);
            result.tables[static_cast<std::size_t>(i)] = std::move(tables);
        }
    };

    int threads = n_threads > 0 ? n_threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min(threads, n_studies);

    if (threads == 1) {
        worker(0, n_studies);
    } else {
        std::vector<std::future<void>> futures;
        const int chunk = (n_studies + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int begin = t * chunk;
            const int end = std::min(n_studies, begin + chunk);
            if (begin >= end) break;
            futures.push_back(std::async(std::launch::async, worker, begin, end));
        }
        for (auto& f : futures) f.get();
    }
    return result;
}

}  // namespace dtabias
