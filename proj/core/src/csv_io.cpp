#include "dtabias/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dtabias {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

void expect_header(std::istream& is, const std::string& expected, const char* what) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error(std::string(what) + ": missing header");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected) {
        throw std::runtime_error(std::string(what) + ": unexpected header '" + line + "'");
    }
}

std::int64_t parse_int(const std::string& s, const char* what) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::runtime_error(std::string(what) + ": bad integer '" + s + "'");
    }
    return v;
}

std::optional<double> parse_opt_double(const std::string& s, const char* what) {
    if (s.empty()) return std::nullopt;
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string(what) + ": bad number '" + s + "'");
    }
}

std::string opt_fixed6(const std::optional<double>& v) {
    return v ? format_fixed6(*v) : std::string();
}

void check_fields(const std::vector<std::string>& f, std::size_t n, const char* what,
                  std::size_t line_no) {
    if (f.size() != n) {
        throw std::runtime_error(std::string(what) + ": wrong field count at line " +
                                 std::to_string(line_no));
    }
}

}  // namespace

std::string format_fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void write_estimates_csv(std::ostream& os, std::span<const EstimateRecord> records) {
    os << "study_id,setup,prev_hat,se_hat,sp_hat,n_ref_pos,n_ref_neg\n";
    for (const EstimateRecord& r : records) {
        os << r.study_id << ',' << r.setup_label << ',' << opt_fixed6(r.prev_hat) << ','
           << opt_fixed6(r.se_hat) << ',' << opt_fixed6(r.sp_hat) << ',' << r.n_ref_pos << ','
           << r.n_ref_neg << '\n';
    }
}

std::vector<EstimateRecord> read_estimates_csv(std::istream& is) {
    expect_header(is, "study_id,setup,prev_hat,se_hat,sp_hat,n_ref_pos,n_ref_neg", "estimates.csv");
    std::vector<EstimateRecord> out;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_line(line);
        check_fields(f, 7, "estimates.csv", line_no);
        EstimateRecord r;
        r.study_id = parse_int(f[0], "estimates.csv");
        r.setup_label = f[1];
        r.prev_hat = parse_opt_double(f[2], "estimates.csv");
        r.se_hat = parse_opt_double(f[3], "estimates.csv");
        r.sp_hat = parse_opt_double(f[4], "estimates.csv");
        r.n_ref_pos = parse_int(f[5], "estimates.csv");
        r.n_ref_neg = parse_int(f[6], "estimates.csv");
        out.push_back(std::move(r));
    }
    return out;
}

void write_meta_csv(std::ostream& os, std::span<const MetaRow> rows) {
    os << "study_id,setup,stratum,n_pp,n_pn,n_np,n_nn\n";
    for (const MetaRow& r : rows) {
        os << r.study_id << ',' << r.setup_label << ','
           << (r.stratum ? std::to_string(*r.stratum) : std::string()) << ',' << r.table.n_pp
           << ',' << r.table.n_pn << ',' << r.table.n_np << ',' << r.table.n_nn << '\n';
    }
}

std::vector<MetaRow> read_meta_csv(std::istream& is) {
    expect_header(is, "study_id,setup,stratum,n_pp,n_pn,n_np,n_nn", "meta.csv");
    std::vector<MetaRow> out;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_line(line);
        check_fields(f, 7, "meta.csv", line_no);
        MetaRow r;
        r.study_id = parse_int(f[0], "meta.csv");
        r.setup_label = f[1];
        if (!f[2].empty()) r.stratum = static_cast<int>(parse_int(f[2], "meta.csv"));
        r.table.n_pp = parse_int(f[3], "meta.csv");
        r.table.n_pn = parse_int(f[4], "meta.csv");
        r.table.n_np = parse_int(f[5], "meta.csv");
        r.table.n_nn = parse_int(f[6], "meta.csv");
        r.table.n = r.table.n_pp + r.table.n_pn + r.table.n_np + r.table.n_nn;
        r.table.stratum = r.stratum;
        out.push_back(std::move(r));
    }
    return out;
}

void write_verif_csv(std::ostream& os, std::span<const VerifRow> rows) {
    os << "study_id,setup,n_total,n1,v1,v0,x1,x0\n";
    for (const VerifRow& r : rows) {
        os << r.study_id << ',' << r.setup_label << ',' << r.table.n_total << ',' << r.table.n1
           << ',' << r.table.v1 << ',' << r.table.v0 << ',' << r.table.x1 << ',' << r.table.x0
           << '\n';
    }
}

std::vector<VerifRow> read_verif_csv(std::istream& is) {
    expect_header(is, "study_id,setup,n_total,n1,v1,v0,x1,x0", "verif.csv");
    std::vector<VerifRow> out;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_line(line);
        check_fields(f, 8, "verif.csv", line_no);
        VerifRow r;
        r.study_id = parse_int(f[0], "verif.csv");
        r.setup_label = f[1];
        r.table.n_total = parse_int(f[2], "verif.csv");
        r.table.n1 = parse_int(f[3], "verif.csv");
        r.table.v1 = parse_int(f[4], "verif.csv");
        r.table.v0 = parse_int(f[5], "verif.csv");
        r.table.x1 = parse_int(f[6], "verif.csv");
        r.table.x0 = parse_int(f[7], "verif.csv");
        out.push_back(std::move(r));
    }
    return out;
}

void write_correlations_csv(std::ostream& os, std::span<const CorrelationReport> reports) {
    os << "setup,rho_se_prev,n_pairs_se,rho_sp_prev,n_pairs_sp\n";
    for (const CorrelationReport& r : reports) {
        os << r.setup_label << ',' << opt_fixed6(r.rho_se_prev) << ',' << r.n_pairs_se << ','
           << opt_fixed6(r.rho_sp_prev) << ',' << r.n_pairs_sp << '\n';
    }
}

std::vector<CorrelationReport> read_correlations_csv(std::istream& is) {
    expect_header(is, "setup,rho_se_prev,n_pairs_se,rho_sp_prev,n_pairs_sp", "correlations.csv");
    std::vector<CorrelationReport> out;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_line(line);
        check_fields(f, 5, "correlations.csv", line_no);
        CorrelationReport r;
        r.setup_label = f[0];
        r.rho_se_prev = parse_opt_double(f[1], "correlations.csv");
        r.n_pairs_se = parse_int(f[2], "correlations.csv");
        r.rho_sp_prev = parse_opt_double(f[3], "correlations.csv");
        r.n_pairs_sp = parse_int(f[4], "correlations.csv");
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace dtabias
