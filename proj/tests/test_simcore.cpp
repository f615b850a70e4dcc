#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "dtabias/association.hpp"
#include "dtabias/estimates.hpp"
#include "dtabias/simulate.hpp"
#include "dtabias/tables.hpp"

#include "support/stat_oracles.hpp"

using namespace dtabias;

namespace {

SubjectRecord subject(bool t_index, bool t_ref, bool verified = true) {
    SubjectRecord s;
    s.t_index = t_index;
    s.verified = verified;
    if (verified) s.t_ref = t_ref;
    return s;
}

}  // namespace

TEST_CASE("scenario grids match the published setups") {
    SUBCASE("reference standard error") {
        const auto grid = make_scenario_grid(BiasStructure::reference_standard_error);
        REQUIRE(grid.size() == 4);
        const double se[4] = {0.7, 0.8, 0.9, 1.0};
        const double sp[4] = {0.95, 0.95, 0.95, 1.0};
        for (int i = 0; i < 4; ++i) {
            CHECK(grid[i].label == "Setup " + std::to_string(i + 1));
            CHECK(grid[i].ref.at(0).se == se[i]);
            CHECK(grid[i].ref.at(1).se == se[i]);
            CHECK(grid[i].ref.at(0).sp == sp[i]);
            CHECK(grid[i].index.at(0).se == 0.9);
            CHECK(grid[i].index.at(0).sp == 0.9);
            CHECK(!grid[i].index.stratified());
            CHECK(grid[i].prev.lo == 0.1);
            CHECK(grid[i].prev.hi == 0.9);
            CHECK(!grid[i].verif);
        }
    }
    SUBCASE("spectrum effect stratifies the index test only") {
        const auto grid = make_scenario_grid(BiasStructure::spectrum_effect);
        REQUIRE(grid.size() == 4);
        for (const auto& s : grid) {
            CHECK(s.index.at(1).se == 0.8);
            CHECK(s.index.at(1).sp == 0.8);
            CHECK(s.index.at(0).se == 0.9);
            CHECK(s.index.at(0).sp == 0.9);
            CHECK(!s.ref.stratified());
        }
    }
    SUBCASE("confounding carries stratum prevalence bounds") {
        const auto grid = make_scenario_grid(BiasStructure::confounding);
        REQUIRE(grid.size() == 4);
        for (const auto& s : grid) {
            REQUIRE(s.prev_r1);
            REQUIRE(s.prev_r0);
            CHECK(s.prev_r1->lo == 0.7);
            CHECK(s.prev_r1->hi == 0.9);
            CHECK(s.prev_r0->lo == 0.1);
            CHECK(s.prev_r0->hi == 0.3);
            CHECK(s.index.stratified());
        }
    }
    SUBCASE("partial verification uses the 0.5-0.9 rate") {
        const auto grid = make_scenario_grid(BiasStructure::partial_verification);
        REQUIRE(grid.size() == 4);
        for (const auto& s : grid) {
            REQUIRE(s.verif);
            CHECK(s.verif->lo == 0.5);
            CHECK(s.verif->hi == 0.9);
        }
    }
    SUBCASE("conditional dependence stratifies both tests") {
        const auto grid = make_scenario_grid(BiasStructure::conditional_dependence);
        REQUIRE(grid.size() == 3);
        const double se_r1[3] = {0.6, 0.7, 0.8};
        const double se_r0[3] = {0.7, 0.8, 0.9};
        for (int i = 0; i < 3; ++i) {
            CHECK(grid[i].ref.at(1).se == se_r1[i]);
            CHECK(grid[i].ref.at(1).sp == 0.85);
            CHECK(grid[i].ref.at(0).se == se_r0[i]);
            CHECK(grid[i].ref.at(0).sp == 0.95);
            CHECK(grid[i].index.at(1).se == 0.8);
            CHECK(grid[i].index.at(0).se == 0.9);
        }
    }
}

TEST_CASE("setup validation rejects bad parameterizations") {
    ScenarioSetup s = make_scenario_grid(BiasStructure::reference_standard_error)[0];
    SUBCASE("inverted bounds") {
        s.prev = {0.9, 0.1};
        CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    }
    SUBCASE("uninformative index test") {
        s.index = StratifiedAccuracy::uniform({0.5, 0.5});
        CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    }
    SUBCASE("probability out of range") {
        s.ref.by_stratum[0].se = 1.2;
        CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    }
}

TEST_CASE("draw_study_params respects declared bounds and is deterministic") {
    SUBCASE("reference standard error prevalence bounds") {
        const auto setup = make_scenario_grid(BiasStructure::reference_standard_error)[0];
        RngStream rng(123);
        for (int i = 0; i < 200; ++i) {
            const StudyParams p = draw_study_params(setup, rng);
            CHECK(p.prevalence >= 0.1);
            CHECK(p.prevalence <= 0.9);
            CHECK(!p.covariate_rate);
            CHECK(!p.verif_rate);
        }
    }
    SUBCASE("same seed twice gives identical parameters") {
        const auto setup = make_scenario_grid(BiasStructure::confounding)[0];
        RngStream a(77), b(77);
        for (int i = 0; i < 50; ++i) {
            const StudyParams pa = draw_study_params(setup, a);
            const StudyParams pb = draw_study_params(setup, b);
            CHECK(pa.prevalence == pb.prevalence);
            CHECK(pa.prevalence_r1 == pb.prevalence_r1);
            CHECK(pa.covariate_rate == pb.covariate_rate);
        }
    }
    SUBCASE("confounding stratum prevalences") {
        const auto setup = make_scenario_grid(BiasStructure::confounding)[0];
        RngStream rng(5);
        for (int i = 0; i < 200; ++i) {
            const StudyParams p = draw_study_params(setup, rng);
            REQUIRE(p.prevalence_r1);
            REQUIRE(p.prevalence_r0);
            CHECK(*p.prevalence_r1 >= 0.7);
            CHECK(*p.prevalence_r1 <= 0.9);
            CHECK(*p.prevalence_r0 >= 0.1);
            CHECK(*p.prevalence_r0 <= 0.3);
        }
    }
    SUBCASE("partial verification rate bounds") {
        const auto setup = make_scenario_grid(BiasStructure::partial_verification)[0];
        RngStream rng(9);
        for (int i = 0; i < 200; ++i) {
            const StudyParams p = draw_study_params(setup, rng);
            REQUIRE(p.verif_rate);
            CHECK(*p.verif_rate >= 0.5);
            CHECK(*p.verif_rate <= 0.9);
        }
    }
    SUBCASE("study-level stratum realizations") {
        RngStream rng(11);
        const auto spectrum = make_scenario_grid(BiasStructure::spectrum_effect)[0];
        const auto conddep = make_scenario_grid(BiasStructure::conditional_dependence)[0];
        std::set<int> coins;
        for (int i = 0; i < 100; ++i) {
            const StudyParams p = draw_study_params(spectrum, rng);
            REQUIRE(p.index_coin);
            coins.insert(*p.index_coin);
            const StudyParams q = draw_study_params(conddep, rng);
            REQUIRE(q.ref_coin);
            CHECK(!q.index_coin);
        }
        CHECK(coins == std::set<int>{0, 1});
    }
}

TEST_CASE("simulate_subject follows the conditional laws") {
    SUBCASE("perfect reference always agrees with the condition") {
        const auto setup = make_scenario_grid(BiasStructure::reference_standard_error)[3];
        StudyParams params;
        params.prevalence = 0.5;
        RngStream rng(17);
        for (int i = 0; i < 2000; ++i) {
            const SubjectRecord s = simulate_subject(params, setup, rng);
            REQUIRE(s.t_ref);
            CHECK(*s.t_ref == s.d);
        }
    }
    SUBCASE("spectrum R+ index sensitivity is 0.80") {
        const auto setup = make_scenario_grid(BiasStructure::spectrum_effect)[0];
        StudyParams params;
        params.prevalence = 1.0;  // force D = 1
        params.covariate_rate = 0.5;
        params.index_coin = 1;
        RngStream rng(29);
        const int n = 40000;
        int hits = 0;
        for (int i = 0; i < n; ++i) {
            const SubjectRecord s = simulate_subject(params, setup, rng);
            REQUIRE(s.d);
            REQUIRE(s.r);
            CHECK(*s.r);
            hits += s.t_index;
        }
        const double se_hat = static_cast<double>(hits) / n;
        CHECK(std::abs(se_hat - 0.80) < 3.0 * std::sqrt(0.8 * 0.2 / n));
    }
    SUBCASE("partial verification forces index-positives to be verified") {
        const auto setup = make_scenario_grid(BiasStructure::partial_verification)[0];
        StudyParams params;
        params.prevalence = 0.4;
        params.verif_rate = 0.6;
        RngStream rng(31);
        int neg = 0, neg_verified = 0;
        for (int i = 0; i < 20000; ++i) {
            const SubjectRecord s = simulate_subject(params, setup, rng);
            if (s.t_index) {
                CHECK(s.verified);
                REQUIRE(s.t_ref);
            } else {
                ++neg;
                neg_verified += s.verified;
                if (!s.verified) CHECK(!s.t_ref);
            }
        }
        const double rate = static_cast<double>(neg_verified) / neg;
        CHECK(std::abs(rate - 0.6) < 3.0 * std::sqrt(0.6 * 0.4 / neg));
    }
}

TEST_CASE("simulate_study basics") {
    const auto setup = make_scenario_grid(BiasStructure::reference_standard_error)[0];
    SUBCASE("n subjects, all verified under non-verification structures") {
        RngStream rng(41);
        const auto subjects = simulate_study(setup, 500, rng);
        REQUIRE(subjects.size() == 500);
        for (const auto& s : subjects) {
            CHECK(s.verified);
            CHECK(s.t_ref);
            CHECK(!s.r);
        }
    }
    SUBCASE("zero subjects rejected") {
        RngStream rng(43);
        CHECK_THROWS_AS(simulate_study(setup, 0, rng), std::invalid_argument);
    }
    SUBCASE("identical seed reproduces the record sequence") {
        RngStream a(47), b(47);
        const auto sa = simulate_study(setup, 200, a);
        const auto sb = simulate_study(setup, 200, b);
        REQUIRE(sa.size() == sb.size());
        for (std::size_t i = 0; i < sa.size(); ++i) {
            CHECK(sa[i].d == sb[i].d);
            CHECK(sa[i].t_index == sb[i].t_index);
            CHECK(sa[i].t_ref == sb[i].t_ref);
            CHECK(sa[i].verified == sb[i].verified);
        }
    }
}

TEST_CASE("tabulate counts") {
    SUBCASE("three verified subjects") {
        std::vector<SubjectRecord> subjects = {subject(true, true), subject(true, false),
                                               subject(false, false)};
        const StudyTables t = tabulate(subjects);
        CHECK(t.pooled.n_pp == 1);
        CHECK(t.pooled.n_pn == 1);
        CHECK(t.pooled.n_np == 0);
        CHECK(t.pooled.n_nn == 1);
        CHECK(t.pooled.n == 3);
        CHECK(t.by_stratum.empty());
    }
    SUBCASE("two-stage verification counts") {
        // 4 index-positive (all verified, 3 reference-positive),
        // 6 index-negative (4 verified, 1 reference-positive)
        std::vector<SubjectRecord> subjects;
        for (int i = 0; i < 3; ++i) subjects.push_back(subject(true, true));
        subjects.push_back(subject(true, false));
        subjects.push_back(subject(false, true));
        for (int i = 0; i < 3; ++i) subjects.push_back(subject(false, false));
        for (int i = 0; i < 2; ++i) subjects.push_back(subject(false, false, false));
        const StudyTables t = tabulate(subjects);
        CHECK(t.verification.n_total == 10);
        CHECK(t.verification.n1 == 4);
        CHECK(t.verification.v1 == 4);
        CHECK(t.verification.v0 == 4);
        CHECK(t.verification.x1 == 3);
        CHECK(t.verification.x0 == 1);
        CHECK(t.pooled.n == 8);  // complete cases only
    }
    SUBCASE("empty input gives zero tables") {
        const StudyTables t = tabulate(std::vector<SubjectRecord>{});
        CHECK(t.pooled.n == 0);
        CHECK(t.pooled.n_pp == 0);
        CHECK(t.verification.n_total == 0);
        CHECK(t.by_stratum.empty());
    }
    SUBCASE("cells sum to verified count for every structure") {
        for (BiasStructure bias : kAllBiasStructures) {
            const auto setup = make_scenario_grid(bias)[0];
            RngStream rng(mix_seed(59, static_cast<std::uint64_t>(bias)));
            const auto subjects = simulate_study(setup, 400, rng);
            const StudyTables t = tabulate(subjects);
            std::int64_t verified = 0;
            for (const auto& s : subjects) verified += s.verified;
            CHECK(t.pooled.n_pp + t.pooled.n_pn + t.pooled.n_np + t.pooled.n_nn == t.pooled.n);
            CHECK(t.pooled.n == verified);
            if (setup.uses_covariate()) {
                std::int64_t stratum_sum = 0;
                for (const auto& st : t.by_stratum) stratum_sum += st.n;
                CHECK(stratum_sum == t.pooled.n);
            }
        }
    }
}

TEST_CASE("naive estimates") {
    SUBCASE("direct ratios") {
        TwoByTwoTable t;
        t.n_pp = 45;
        t.n_np = 5;
        t.n_pn = 10;
        t.n_nn = 40;
        t.n = 100;
        const EstimateRecord r = naive_estimates(t, 7, "Setup 1");
        CHECK(*r.se_hat == doctest::Approx(0.9).epsilon(1e-12));
        CHECK(*r.sp_hat == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(*r.prev_hat == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.n_ref_pos == 50);
        CHECK(r.n_ref_neg == 50);
    }
    SUBCASE("zero denominators yield missing") {
        TwoByTwoTable t;
        t.n_pn = 3;
        t.n_nn = 7;
        t.n = 10;
        const EstimateRecord r = naive_estimates(t, 0, "x");
        CHECK(!r.se_hat);
        CHECK(r.sp_hat);
        CHECK(r.prev_hat);
        const EstimateRecord empty = naive_estimates(TwoByTwoTable{}, 0, "x");
        CHECK(!empty.prev_hat);
        CHECK(!empty.se_hat);
        CHECK(!empty.sp_hat);
    }
    SUBCASE("expected naive accuracy under an imperfect reference") {
        // fixed prevalence 0.5, reference (0.7, 0.95), index (0.9, 0.9):
        // enumeration gives E[se_hat] = 0.84667, E[sp_hat] = 0.70800
        const oracles::JointOutcomes joint(0.5, 0.7, 0.95, 0.9, 0.9);
        CHECK(joint.naive_se() == doctest::Approx(0.3175 / 0.375).epsilon(1e-12));
        CHECK(joint.naive_sp() == doctest::Approx(0.4425 / 0.625).epsilon(1e-12));

        auto setup = make_scenario_grid(BiasStructure::reference_standard_error)[0];
        StudyParams params;
        params.prevalence = 0.5;
        RngStream rng(61);
        const int n_studies = 4000;
        double sum_se = 0.0, sum_sp = 0.0, ss_se = 0.0, ss_sp = 0.0;
        for (int i = 0; i < n_studies; ++i) {
            const auto subjects = simulate_study(setup, params, 500, rng);
            const EstimateRecord r = naive_estimates(tabulate(subjects).pooled, i, setup.label);
            sum_se += *r.se_hat;
            sum_sp += *r.sp_hat;
            ss_se += *r.se_hat * *r.se_hat;
            ss_sp += *r.sp_hat * *r.sp_hat;
        }
        const double mean_se = sum_se / n_studies;
        const double mean_sp = sum_sp / n_studies;
        const double sd_se = std::sqrt((ss_se / n_studies - mean_se * mean_se));
        const double sd_sp = std::sqrt((ss_sp / n_studies - mean_sp * mean_sp));
        CHECK(std::abs(mean_se - joint.naive_se()) < 3.0 * sd_se / std::sqrt(n_studies));
        CHECK(std::abs(mean_sp - joint.naive_sp()) < 3.0 * sd_sp / std::sqrt(n_studies));
    }
}

TEST_CASE("run_scenario ordering, determinism, and thread invariance") {
    const auto setup = make_scenario_grid(BiasStructure::partial_verification)[1];
    const ScenarioResult a = run_scenario(setup, 60, 120, 909, 1);
    const ScenarioResult b = run_scenario(setup, 60, 120, 909, 2);
    const ScenarioResult c = run_scenario(setup, 60, 120, 909, 3);
    REQUIRE(a.estimates.size() == 60);
    for (std::size_t i = 0; i < a.estimates.size(); ++i) {
        CHECK(a.estimates[i].study_id == static_cast<std::int64_t>(i));
        CHECK(a.estimates[i].prev_hat == b.estimates[i].prev_hat);
        CHECK(a.estimates[i].se_hat == c.estimates[i].se_hat);
        CHECK(a.tables[i].verification.x0 == b.tables[i].verification.x0);
        CHECK(a.tables[i].verification.v0 == c.tables[i].verification.v0);
    }
    CHECK_THROWS_AS(run_scenario(setup, 0, 10, 1, 1), std::invalid_argument);
}

TEST_CASE("perfect-reference estimates are unbiased for the index test" *
          doctest::timeout(120)) {
    const auto setup = make_scenario_grid(BiasStructure::reference_standard_error)[3];
    const ScenarioResult result = run_scenario(setup, 10000, 500, 71, 0);
    double sum_se = 0.0, sum_sp = 0.0, ss_se = 0.0, ss_sp = 0.0;
    for (const EstimateRecord& r : result.estimates) {
        sum_se += *r.se_hat;
        sum_sp += *r.sp_hat;
        ss_se += *r.se_hat * *r.se_hat;
        ss_sp += *r.sp_hat * *r.sp_hat;
    }
    const double n = static_cast<double>(result.estimates.size());
    const double mean_se = sum_se / n, mean_sp = sum_sp / n;
    const double se_mc = std::sqrt(ss_se / n - mean_se * mean_se) / std::sqrt(n);
    const double sp_mc = std::sqrt(ss_sp / n - mean_sp * mean_sp) / std::sqrt(n);
    CHECK(std::abs(mean_se - 0.9) < 3.0 * se_mc);
    CHECK(std::abs(mean_sp - 0.9) < 3.0 * sp_mc);
}

TEST_CASE("per-decile naive sensitivity follows the analytic curve" * doctest::timeout(120)) {
    const auto setup = make_scenario_grid(BiasStructure::reference_standard_error)[0];
    const std::uint64_t master = 73;
    const int n_studies = 10000;
    const ScenarioResult result = run_scenario(setup, n_studies, 500, master, 0);

    // replay each study's parameter draw from the documented stream
    std::vector<double> curve(static_cast<std::size_t>(n_studies));
    for (int i = 0; i < n_studies; ++i) {
        RngStream rng(domain_seed(master, SeedDomain::simulation, static_cast<std::uint64_t>(i)));
        const StudyParams p = draw_study_params(setup, rng);
        curve[static_cast<std::size_t>(i)] =
            analytic_naive_accuracy(p.prevalence, 0.7, 0.95, 0.9, 0.9).se;
    }

    // decile bins by estimated prevalence
    std::vector<std::size_t> order(static_cast<std::size_t>(n_studies));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return *result.estimates[a].prev_hat < *result.estimates[b].prev_hat;
    });
    const std::size_t bin_size = order.size() / 10;
    for (int bin = 0; bin < 10; ++bin) {
        double sum_diff = 0.0, ss_diff = 0.0;
        for (std::size_t j = 0; j < bin_size; ++j) {
            const std::size_t idx = order[static_cast<std::size_t>(bin) * bin_size + j];
            const double diff = *result.estimates[idx].se_hat - curve[idx];
            sum_diff += diff;
            ss_diff += diff * diff;
        }
        const double nb = static_cast<double>(bin_size);
        const double mean_diff = sum_diff / nb;
        const double se = std::sqrt((ss_diff / nb - mean_diff * mean_diff) / nb);
        CHECK(std::abs(mean_diff) < 3.0 * se);
    }
}
