#include "dtabias/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dtabias/csv_io.hpp"
#include "dtabias/manifest.hpp"
#include "dtabias/pvb.hpp"
#include "dtabias/svg.hpp"
#include "dtabias/version.hpp"

#include "json.hpp"

namespace dtabias {

namespace {

std::string g_command_line;

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write output file: " + path.string());
    os << content;
}

void record_outputs(const RunPlan& plan, const std::vector<std::filesystem::path>& files,
                    const std::vector<std::string>& scenarios) {
    RunManifest patch;
    patch.tool_version = kVersion;
    patch.command_line = g_command_line;
    patch.master_seed = plan.seed;
    patch.scenarios = scenarios;
    patch.timestamp = current_timestamp_utc();
    for (const std::filesystem::path& f : files) {
        patch.outputs.push_back({f.filename().string(), checksum_string(fnv1a64_file(f))});
    }
    update_manifest(plan.out_dir, patch);
}

std::string setup_slug(const std::string& label) {
    // "Setup 3" -> "setup_3"
    std::string slug;
    for (char c : label) {
        if (c == ' ') slug += '_';
        else slug += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return slug;
}

std::vector<std::string> scenario_names(const RunPlan& plan,
                                        const std::vector<ScenarioSetup>& grid) {
    std::vector<std::string> names;
    names.reserve(grid.size());
    for (const ScenarioSetup& s : grid) {
        names.push_back(std::string(bias_name(plan.bias)) + "/" + s.label);
    }
    return names;
}

struct SimulatedFiles {
    std::vector<std::filesystem::path> files;
    std::vector<std::string> scenarios;
};

SimulatedFiles simulate_to(const RunPlan& plan, const std::filesystem::path& dir, int n_studies,
                           std::uint64_t seed_salt) {
    const std::vector<ScenarioSetup> grid = plan.scenario_grid();
    std::filesystem::create_directories(dir);

    std::vector<EstimateRecord> estimates;
    std::vector<MetaRow> meta_rows;
    std::vector<VerifRow> verif_rows;

    for (std::size_t ordinal = 0; ordinal < grid.size(); ++ordinal) {
        const ScenarioSetup& setup = grid[ordinal];
        const std::uint64_t scenario_seed =
            domain_seed(plan.seed, SeedDomain::scenario, seed_salt + ordinal);
        const ScenarioResult result =
            run_scenario(setup, n_studies, plan.n_subjects, scenario_seed, plan.threads);
        estimates.insert(estimates.end(), result.estimates.begin(), result.estimates.end());
        for (std::size_t i = 0; i < result.tables.size(); ++i) {
            const StudyTables& t = result.tables[i];
            const std::int64_t id = result.estimates[i].study_id;
            if (setup.uses_covariate()) {
                for (const TwoByTwoTable& s : t.by_stratum) {
                    meta_rows.push_back({id, setup.label, s.stratum, s});
                }
            } else {
                meta_rows.push_back({id, setup.label, std::nullopt, t.pooled});
            }
            if (setup.structure == BiasStructure::partial_verification) {
                verif_rows.push_back({id, setup.label, t.verification});
            }
        }
    }

    SimulatedFiles out;
    out.scenarios = scenario_names(plan, grid);
    {
        std::ostringstream os;
        write_estimates_csv(os, estimates);
        write_text_file(dir / "estimates.csv", os.str());
        out.files.push_back(dir / "estimates.csv");
    }
    {
        std::ostringstream os;
        write_meta_csv(os, meta_rows);
        write_text_file(dir / "meta.csv", os.str());
        out.files.push_back(dir / "meta.csv");
    }
    if (!verif_rows.empty()) {
        std::ostringstream os;
        write_verif_csv(os, verif_rows);
        write_text_file(dir / "verif.csv", os.str());
        out.files.push_back(dir / "verif.csv");
    }
    return out;
}

std::vector<EstimateRecord> load_estimates(const std::filesystem::path& dir) {
    std::ifstream is(dir / "estimates.csv");
    if (!is) {
        throw std::runtime_error("estimates.csv not found in " + dir.string() +
                                 " (run `simulate` first)");
    }
    return read_estimates_csv(is);
}

nlohmann::ordered_json summaries_to_json(const FitResult& fit) {
    nlohmann::ordered_json j;
    for (const auto& [name, s] : fit.summaries) {
        nlohmann::ordered_json entry;
        entry["q025"] = s.q025;
        entry["q50"] = s.q50;
        entry["q975"] = s.q975;
        entry["mean"] = s.mean;
        if (s.rhat) entry["rhat"] = *s.rhat;
        else entry["rhat"] = nullptr;
        j[name] = entry;
    }
    return j;
}

nlohmann::ordered_json fit_block(const FitResult& fit) {
    nlohmann::ordered_json j;
    j["summaries"] = summaries_to_json(fit);
    nlohmann::ordered_json per_study = nlohmann::ordered_json::array();
    for (const StudyPosterior& s : fit.per_study) {
        nlohmann::ordered_json e;
        e["study_id"] = s.study_id;
        e["prev_med"] = s.prev_med;
        e["se1_med"] = s.se1_med;
        e["sp1_med"] = s.sp1_med;
        e["se2_med"] = s.se2_med;
        e["sp2_med"] = s.sp2_med;
        per_study.push_back(e);
    }
    j["per_study"] = per_study;
    nlohmann::ordered_json acc;
    for (const auto& [name, rate] : fit.acceptance) acc[name] = rate;
    j["acceptance"] = acc;
    const AdjustedAssociation adj = adjusted_association(fit);
    nlohmann::ordered_json rho;
    rho["rho_se_prev"] = adj.rho_se_prev ? nlohmann::ordered_json(*adj.rho_se_prev)
                                         : nlohmann::ordered_json(nullptr);
    rho["rho_sp_prev"] = adj.rho_sp_prev ? nlohmann::ordered_json(*adj.rho_sp_prev)
                                         : nlohmann::ordered_json(nullptr);
    j["adjusted_rho"] = rho;
    j["converged"] = fit.converged;
    j["max_rhat"] = fit.max_rhat;
    return j;
}

nlohmann::ordered_json config_to_json(const RunPlan& plan, const std::string& model,
                                      bool subgroup) {
    nlohmann::ordered_json j;
    j["model"] = model;
    j["subgroup"] = subgroup;
    j["chains"] = plan.mcmc.n_chains;
    j["iters"] = plan.mcmc.n_iters;
    j["burnin"] = plan.mcmc.n_burnin;
    j["thin"] = plan.mcmc.thin;
    j["seed"] = plan.mcmc.seed;
    j["enforce_dv_gt_1"] = plan.mcmc.enforce_dv_gt_1;
    return j;
}

// meta.csv rows of one setup -> per-study pooled tables (cells summed over
// stratum rows) or the per-stratum datasets for subgroup fitting.
MetaDataset pooled_dataset(const std::vector<MetaRow>& rows) {
    MetaDataset data;
    std::map<std::int64_t, std::size_t> index;
    for (const MetaRow& r : rows) {
        auto [it, inserted] = index.try_emplace(r.study_id, data.tables.size());
        if (inserted) {
            data.tables.push_back(r.table);
            data.tables.back().stratum.reset();
            data.study_ids.push_back(r.study_id);
        } else {
            TwoByTwoTable& t = data.tables[it->second];
            t.n_pp += r.table.n_pp;
            t.n_pn += r.table.n_pn;
            t.n_np += r.table.n_np;
            t.n_nn += r.table.n_nn;
            t.n += r.table.n;
        }
    }
    return data;
}

StratifiedMetaDataset stratified_dataset(const std::vector<MetaRow>& rows) {
    StratifiedMetaDataset out;
    bool any = false;
    for (const MetaRow& r : rows) {
        if (!r.stratum) continue;
        any = true;
        MetaDataset& d = out.strata[*r.stratum];
        d.tables.push_back(r.table);
        d.study_ids.push_back(r.study_id);
    }
    if (!any) throw std::invalid_argument("subgroup fit: no stratum labels in meta.csv");
    return out;
}

std::filesystem::path write_fit_json(const RunPlan& plan, const std::string& setup_label,
                                     const nlohmann::ordered_json& body) {
    const std::filesystem::path path =
        plan.out_dir / ("fit_" + setup_slug(setup_label) + ".json");
    write_text_file(path, body.dump(2) + "\n");
    return path;
}

std::vector<std::filesystem::path> fit_setups(const RunPlan& plan) {
    const std::vector<ScenarioSetup> grid = plan.scenario_grid();
    std::vector<std::filesystem::path> written;

    if (plan.model == "pvb") {
        std::ifstream is(plan.out_dir / "verif.csv");
        if (!is) {
            throw std::runtime_error("verif.csv not found in " + plan.out_dir.string() +
                                     " (the pvb model needs partial verification data)");
        }
        const std::vector<VerifRow> rows = read_verif_csv(is);
        for (const ScenarioSetup& setup : grid) {
            PvbMetaDataset data;
            for (const VerifRow& r : rows) {
                if (r.setup_label != setup.label) continue;
                data.tables.push_back(r.table);
                data.study_ids.push_back(r.study_id);
            }
            if (data.tables.empty()) {
                std::cerr << "fit: no rows for " << setup.label << " in verif.csv, skipped\n";
                continue;
            }
            const FitResult fit = fit_pvb(data, plan.mcmc);
            nlohmann::ordered_json j;
            j["model"] = "pvb";
            j["bias"] = std::string(bias_name(plan.bias));
            j["setup"] = setup.label;
            j["config"] = config_to_json(plan, "pvb", false);
            j.update(fit_block(fit));
            written.push_back(write_fit_json(plan, setup.label, j));
        }
        return written;
    }

    std::ifstream is(plan.out_dir / "meta.csv");
    if (!is) {
        throw std::runtime_error("meta.csv not found in " + plan.out_dir.string() +
                                 " (run `simulate` first)");
    }
    const std::vector<MetaRow> all_rows = read_meta_csv(is);
    for (const ScenarioSetup& setup : grid) {
        std::vector<MetaRow> rows;
        for (const MetaRow& r : all_rows) {
            if (r.setup_label == setup.label) rows.push_back(r);
        }
        if (rows.empty()) {
            std::cerr << "fit: no rows for " << setup.label << " in meta.csv, skipped\n";
            continue;
        }
        nlohmann::ordered_json j;
        j["model"] = plan.subgroup ? "lcbm_subgroup" : "lcbm";
        j["bias"] = std::string(bias_name(plan.bias));
        j["setup"] = setup.label;
        j["config"] = config_to_json(plan, "lcbm", plan.subgroup);
        if (plan.subgroup) {
            const std::map<int, FitResult> fits =
                fit_lcbm_subgroup(stratified_dataset(rows), plan.mcmc);
            nlohmann::ordered_json strata;
            for (const auto& [stratum, fit] : fits) {
                strata[std::to_string(stratum)] = fit_block(fit);
            }
            j["strata"] = strata;
        } else {
            j.update(fit_block(fit_lcbm(pooled_dataset(rows), plan.mcmc)));
        }
        written.push_back(write_fit_json(plan, setup.label, j));
    }
    return written;
}

}  // namespace

void set_manifest_command_line(std::string command_line) {
    g_command_line = std::move(command_line);
}

std::vector<std::filesystem::path> cmd_simulate(const RunPlan& plan) {
    plan.validate();
    SimulatedFiles sim = simulate_to(plan, plan.out_dir, plan.n_studies, /*seed_salt=*/0);
    record_outputs(plan, sim.files, sim.scenarios);
    return sim.files;
}

std::vector<std::filesystem::path> cmd_correlate(const RunPlan& plan) {
    const std::vector<EstimateRecord> estimates = load_estimates(plan.out_dir);
    const std::vector<CorrelationReport> reports = correlation_report(estimates);
    std::ostringstream os;
    write_correlations_csv(os, reports);
    const std::filesystem::path path = plan.out_dir / "correlations.csv";
    write_text_file(path, os.str());
    record_outputs(plan, {path}, {});
    return {path};
}

std::vector<std::filesystem::path> cmd_fit(const RunPlan& plan) {
    plan.validate();
    std::vector<std::filesystem::path> files = fit_setups(plan);
    record_outputs(plan, files, {});
    return files;
}

std::vector<std::filesystem::path> cmd_report(const RunPlan& plan) {
    const std::vector<EstimateRecord> estimates = load_estimates(plan.out_dir);
    std::vector<std::filesystem::path> files;

    const std::vector<CorrelationReport> reports = correlation_report(estimates);
    if (estimates.empty()) {
        std::cerr << "report: estimates.csv has no rows, writing empty report\n";
    }

    // group scatter points by setup, input order preserved
    std::vector<std::string> labels;
    for (const EstimateRecord& r : estimates) {
        if (std::find(labels.begin(), labels.end(), r.setup_label) == labels.end()) {
            labels.push_back(r.setup_label);
        }
    }
    for (std::size_t ordinal = 0; ordinal < labels.size(); ++ordinal) {
        const std::string& label = labels[ordinal];
        std::vector<ScatterPoint> se_points, sp_points;
        for (const EstimateRecord& r : estimates) {
            if (r.setup_label != label || !r.prev_hat) continue;
            if (r.se_hat) se_points.push_back({*r.prev_hat, *r.se_hat});
            if (r.sp_hat) sp_points.push_back({*r.prev_hat, *r.sp_hat});
        }
        const MarkerShape shape = marker_for_setup(ordinal);
        const std::string color = color_for_setup(ordinal);
        const std::string base =
            "scatter_" + std::string(bias_name(plan.bias)) + "_" + setup_slug(label);
        const std::filesystem::path se_path = plan.out_dir / (base + "_se.svg");
        write_text_file(se_path,
                        render_scatter_svg(label + ": estimated sensitivity", "estimated prevalence",
                                           "estimated sensitivity", se_points, shape, color));
        files.push_back(se_path);
        const std::filesystem::path sp_path = plan.out_dir / (base + "_sp.svg");
        write_text_file(sp_path,
                        render_scatter_svg(label + ": estimated specificity", "estimated prevalence",
                                           "estimated specificity", sp_points, shape, color));
        files.push_back(sp_path);
    }

    std::ostringstream md;
    md << "# Correlation report: " << bias_name(plan.bias) << "\n\n";
    if (reports.empty()) {
        md << "_No estimates available._\n";
    } else {
        md << "| setup | rho(se, prev) | pairs | rho(sp, prev) | pairs |\n";
        md << "|---|---|---|---|---|\n";
        for (const CorrelationReport& r : reports) {
            md << "| " << r.setup_label << " | "
               << (r.rho_se_prev ? format_fixed6(*r.rho_se_prev) : "-") << " | " << r.n_pairs_se
               << " | " << (r.rho_sp_prev ? format_fixed6(*r.rho_sp_prev) : "-") << " | "
               << r.n_pairs_sp << " |\n";
        }
    }
    const std::filesystem::path md_path = plan.out_dir / "report.md";
    write_text_file(md_path, md.str());
    files.push_back(md_path);

    record_outputs(plan, files, {});
    return files;
}

std::vector<std::filesystem::path> cmd_all(const RunPlan& plan) {
    plan.validate();
    std::vector<std::filesystem::path> files = cmd_simulate(plan);
    auto append = [&files](std::vector<std::filesystem::path> more) {
        files.insert(files.end(), more.begin(), more.end());
    };
    append(cmd_correlate(plan));
    append(cmd_report(plan));

    // model-fitting pass at meta-analysis scale
    RunPlan fit_plan = plan;
    fit_plan.out_dir = plan.out_dir / "fit_data";
    fit_plan.n_studies = plan.fit_studies;
    switch (plan.bias) {
        case BiasStructure::partial_verification:
            fit_plan.model = "pvb";
            fit_plan.subgroup = false;
            break;
        case BiasStructure::spectrum_effect:
        case BiasStructure::confounding:
        case BiasStructure::conditional_dependence:
            fit_plan.model = "lcbm";
            fit_plan.subgroup = true;
            break;
        default:
            fit_plan.model = "lcbm";
            fit_plan.subgroup = false;
            break;
    }
    SimulatedFiles sim =
        simulate_to(fit_plan, fit_plan.out_dir, fit_plan.n_studies, /*seed_salt=*/1000);
    record_outputs(fit_plan, sim.files, sim.scenarios);
    append(sim.files);
    append(cmd_fit(fit_plan));
    return files;
}

}  // namespace dtabias
