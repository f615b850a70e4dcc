#include "dtabias/tables.hpp"

namespace dtabias {

TwoByTwoTable operator+(const TwoByTwoTable& a, const TwoByTwoTable& b) {
    TwoByTwoTable out;
    out.n_pp = a.n_pp + b.n_pp;
    out.n_pn = a.n_pn + b.n_pn;
    out.n_np = a.n_np + b.n_np;
    out.n_nn = a.n_nn + b.n_nn;
    out.n = a.n + b.n;
    if (a.stratum == b.stratum) out.stratum = a.stratum;
    return out;
}

namespace {

void count_into(TwoByTwoTable& t, const SubjectRecord& s) {
    // verified subjects only; t_ref is present exactly then
    if (!s.verified) return;
    const bool ref = *s.t_ref;
    if (s.t_index && ref) ++t.n_pp;
    else if (s.t_index && !ref) ++t.n_pn;
    else if (!s.t_index && ref) ++t.n_np;
    else ++t.n_nn;
    ++t.n;
}

}  // namespace

StudyTables tabulate(std::span<const SubjectRecord> subjects) {
    StudyTables out;
    bool has_r = false;
    TwoByTwoTable strata[2];
    strata[0].stratum = 0;
    strata[1].stratum = 1;

    for (const SubjectRecord& s : subjects) {
        count_into(out.pooled, s);
        if (s.r) {
            has_r = true;
            count_into(strata[*s.r ? 1 : 0], s);
        }
        ++out.verification.n_total;
        if (s.t_index) {
            ++out.verification.n1;
            if (s.verified) {
                ++out.verification.v1;
                if (*s.t_ref) ++out.verification.x1;
            }
        } else if (s.verified) {
            ++out.verification.v0;
            if (*s.t_ref) ++out.verification.x0;
        }
    }
    if (has_r) {
        for (TwoByTwoTable& t : strata) {
            if (t.n > 0) out.by_stratum.push_back(t);
        }
    }
    return out;
}

}  // namespace dtabias
