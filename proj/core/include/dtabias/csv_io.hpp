#pragma once

// Bit-stable CSV interchange formats. Floating point fields are written with
// six fixed decimals; missing values are empty fields.
//
//   estimates.csv     study_id,setup,prev_hat,se_hat,sp_hat,n_ref_pos,n_ref_neg
//   meta.csv          study_id,setup,stratum,n_pp,n_pn,n_np,n_nn
//   verif.csv         study_id,setup,n_total,n1,v1,v0,x1,x0
//   correlations.csv  setup,rho_se_prev,n_pairs_se,rho_sp_prev,n_pairs_sp
//
// meta.csv rows with an empty stratum are whole-study tables; rows tagged
// 0/1 are covariate-stratum tables. A study appears either as one untagged
// row or as its set of tagged rows (whose cells sum to the study table).

#include <iosfwd>
#include <string>
#include <vector>

#include "dtabias/association.hpp"
#include "dtabias/estimates.hpp"

namespace dtabias {

struct MetaRow {
    std::int64_t study_id = 0;
    std::string setup_label;
    std::optional<int> stratum;
    TwoByTwoTable table;  // table.stratum mirrors the row tag
};

struct VerifRow {
    std::int64_t study_id = 0;
    std::string setup_label;
    VerificationTable table;
};

std::string format_fixed6(double v);

void write_estimates_csv(std::ostream& os, std::span<const EstimateRecord> records);
std::vector<EstimateRecord> read_estimates_csv(std::istream& is);

void write_meta_csv(std::ostream& os, std::span<const MetaRow> rows);
std::vector<MetaRow> read_meta_csv(std::istream& is);

void write_verif_csv(std::ostream& os, std::span<const VerifRow> rows);
std::vector<VerifRow> read_verif_csv(std::istream& is);

void write_correlations_csv(std::ostream& os, std::span<const CorrelationReport> reports);
std::vector<CorrelationReport> read_correlations_csv(std::istream& is);

}  // namespace dtabias
