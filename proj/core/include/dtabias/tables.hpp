#pragma once

// Study-level aggregation: cross-tabulated test results among verified
// subjects, plus the two-stage verification counts used by the partial
// verification model.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dtabias/simulate.hpp"

namespace dtabias {

// Counts of verified subjects by (index result, reference result).
// First letter = index test, second = reference standard.
struct TwoByTwoTable {
    std::int64_t n_pp = 0;  // index+, reference+
    std::int64_t n_pn = 0;  // index+, reference-
    std::int64_t n_np = 0;  // index-, reference+
    std::int64_t n_nn = 0;  // index-, reference-
    std::int64_t n = 0;     // verified total, equals the cell sum
    std::optional<int> stratum;  // covariate tag when R is present

    std::int64_t ref_pos() const { return n_pp + n_np; }
    std::int64_t ref_neg() const { return n_pn + n_nn; }
};

TwoByTwoTable operator+(const TwoByTwoTable& a, const TwoByTwoTable& b);

// Two-stage design counts over all subjects (verified or not):
// n1 index-positives, v1/v0 verified among index-positives/negatives,
// x1/x0 reference-positives among those verified groups.
struct VerificationTable {
    std::int64_t n_total = 0;
    std::int64_t n1 = 0;
    std::int64_t v1 = 0;
    std::int64_t v0 = 0;
    std::int64_t x1 = 0;
    std::int64_t x0 = 0;
};

struct StudyTables {
    TwoByTwoTable pooled;
    std::vector<TwoByTwoTable> by_stratum;  // populated when subjects carry R
    VerificationTable verification;         // always well-defined; v1=n1, v0=n-n1 when fully verified
};

// Counts verified subjects into the 2x2 cells (overall and per stratum when
// the records carry a covariate) and all subjects into the verification
// table.
StudyTables tabulate(std::span<const SubjectRecord> subjects);

}  // namespace dtabias
