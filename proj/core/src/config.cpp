#include "dtabias/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace dtabias {

std::vector<ScenarioSetup> RunPlan::scenario_grid() const {
    std::vector<ScenarioSetup> grid = make_scenario_grid(bias);
    for (ScenarioSetup& s : grid) {
        if (prev_override) s.prev = *prev_override;
        if (verif_override && s.verif) s.verif = *verif_override;
        if (index_override) s.index = StratifiedAccuracy::uniform(*index_override);
        s.validate();
    }
    if (!setups.empty()) {
        std::vector<ScenarioSetup> chosen;
        for (int number : setups) {
            if (number < 1 || static_cast<std::size_t>(number) > grid.size()) {
                throw std::invalid_argument("setup number out of range: " +
                                            std::to_string(number));
            }
            chosen.push_back(grid[static_cast<std::size_t>(number - 1)]);
        }
        return chosen;
    }
    return grid;
}

void RunPlan::validate() const {
    if (n_studies < 1) throw std::invalid_argument("studies must be >= 1");
    if (n_subjects < 1) throw std::invalid_argument("subjects must be >= 1");
    if (fit_studies < 2) throw std::invalid_argument("fit_studies must be >= 2");
    if (model != "lcbm" && model != "pvb") {
        throw std::invalid_argument("model must be lcbm or pvb");
    }
    mcmc.validate();
    scenario_grid();  // bounds/override validation
}

namespace {

struct TomlValue {
    enum class Kind { string, number, boolean, array } kind = Kind::string;
    std::string str;
    double num = 0.0;
    bool boolean = false;
    std::vector<double> array;
    std::size_t line = 0;
};

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw std::runtime_error("config parse error at line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& s, std::size_t line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) fail(line, "bad number '" + s + "'");
        return v;
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "bad number '" + s + "'");
    }
}

TomlValue parse_value(std::string raw, std::size_t line) {
    TomlValue v;
    v.line = line;
    raw = trim(std::move(raw));
    if (raw.empty()) fail(line, "missing value");
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"') fail(line, "unterminated string");
        v.kind = TomlValue::Kind::string;
        v.str = raw.substr(1, raw.size() - 2);
    } else if (raw == "true" || raw == "false") {
        v.kind = TomlValue::Kind::boolean;
        v.boolean = raw == "true";
    } else if (raw.front() == '[') {
        if (raw.back() != ']') fail(line, "unterminated array");
        v.kind = TomlValue::Kind::array;
        std::string inner = raw.substr(1, raw.size() - 2);
        std::string item;
        auto flush = [&]() {
            item = trim(item);
            if (!item.empty()) v.array.push_back(parse_number(item, line));
            item.clear();
        };
        for (char c : inner) {
            if (c == ',') flush();
            else item += c;
        }
        flush();
    } else {
        v.kind = TomlValue::Kind::number;
        v.num = parse_number(raw, line);
    }
    return v;
}

int to_int(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Kind::number || v.num != static_cast<double>(static_cast<long long>(v.num))) {
        fail(v.line, "key '" + key + "' expects an integer");
    }
    return static_cast<int>(v.num);
}

double to_prob(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Kind::number) fail(v.line, "key '" + key + "' expects a number");
    return v.num;
}

}  // namespace

RunPlan parse_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path.string());

    RunPlan plan;
    bool saw_bias = false;
    std::optional<double> verif_low, verif_high, prev_low, prev_high, index_se, index_sp;

    std::string section = "run";
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "run" && section != "overrides" && section != "mcmc") {
                fail(line_no, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const TomlValue value = parse_value(line.substr(eq + 1), line_no);

        if (section == "run") {
            if (key == "bias") {
                if (value.kind != TomlValue::Kind::string) fail(line_no, "bias expects a string");
                const auto bias = parse_bias(value.str);
                if (!bias) fail(line_no, "unknown bias name '" + value.str + "'");
                plan.bias = *bias;
                saw_bias = true;
            } else if (key == "setups") {
                if (value.kind == TomlValue::Kind::string && value.str == "all") {
                    plan.setups.clear();
                } else if (value.kind == TomlValue::Kind::array) {
                    plan.setups.clear();
                    for (double d : value.array) plan.setups.push_back(static_cast<int>(d));
                } else {
                    fail(line_no, "setups expects \"all\" or an array");
                }
            } else if (key == "studies") {
                plan.n_studies = to_int(value, key);
            } else if (key == "subjects") {
                plan.n_subjects = to_int(value, key);
            } else if (key == "fit_studies") {
                plan.fit_studies = to_int(value, key);
            } else if (key == "seed") {
                if (value.kind != TomlValue::Kind::number) fail(line_no, "seed expects a number");
                plan.seed = static_cast<std::uint64_t>(value.num);
            } else if (key == "threads") {
                plan.threads = to_int(value, key);
            } else if (key == "out") {
                if (value.kind != TomlValue::Kind::string) fail(line_no, "out expects a string");
                plan.out_dir = value.str;
            } else {
                fail(line_no, "unknown key '" + key + "' in [run]");
            }
        } else if (section == "overrides") {
            if (key == "verif_low") verif_low = to_prob(value, key);
            else if (key == "verif_high") verif_high = to_prob(value, key);
            else if (key == "prev_low") prev_low = to_prob(value, key);
            else if (key == "prev_high") prev_high = to_prob(value, key);
            else if (key == "index_se") index_se = to_prob(value, key);
            else if (key == "index_sp") index_sp = to_prob(value, key);
            else fail(line_no, "unknown key '" + key + "' in [overrides]");
        } else {  // mcmc
            if (key == "chains") plan.mcmc.n_chains = to_int(value, key);
            else if (key == "iters") plan.mcmc.n_iters = to_int(value, key);
            else if (key == "burnin") plan.mcmc.n_burnin = to_int(value, key);
            else if (key == "thin") plan.mcmc.thin = to_int(value, key);
            else if (key == "adapt_window") plan.mcmc.adapt_window = to_int(value, key);
            else if (key == "enforce_dv_gt_1") {
                if (value.kind != TomlValue::Kind::boolean) fail(line_no, "expects a boolean");
                plan.mcmc.enforce_dv_gt_1 = value.boolean;
            } else if (key == "model") {
                if (value.kind != TomlValue::Kind::string) fail(line_no, "model expects a string");
                plan.model = value.str;
            } else if (key == "subgroup") {
                if (value.kind != TomlValue::Kind::boolean) fail(line_no, "expects a boolean");
                plan.subgroup = value.boolean;
            } else {
                fail(line_no, "unknown key '" + key + "' in [mcmc]");
            }
        }
    }
    if (!saw_bias) throw std::invalid_argument("config must name a bias structure");

    if (verif_low || verif_high) {
        if (!verif_low || !verif_high) {
            throw std::invalid_argument("verif_low and verif_high must be given together");
        }
        plan.verif_override = Interval{*verif_low, *verif_high};
    }
    if (prev_low || prev_high) {
        if (!prev_low || !prev_high) {
            throw std::invalid_argument("prev_low and prev_high must be given together");
        }
        plan.prev_override = Interval{*prev_low, *prev_high};
    }
    if (index_se || index_sp) {
        if (!index_se || !index_sp) {
            throw std::invalid_argument("index_se and index_sp must be given together");
        }
        plan.index_override = TestAccuracy{*index_se, *index_sp};
    }

    plan.mcmc.seed = plan.seed;
    plan.validate();
    return plan;
}

}  // namespace dtabias
