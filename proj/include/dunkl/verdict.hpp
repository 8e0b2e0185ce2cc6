#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dunkl/balance.hpp"

namespace dunkl {

/// The residue endomorphisms A_i = a_i P_i in the balanced gauge, where the
/// projections collapse to A_i = a_i u_i u_i^* on the balanced unit frame.
struct ResidueSet {
    std::vector<Mat> matrices;
    std::vector<cdvec> frame;     // the balanced unit vectors u_i
    std::vector<double> weights;  // a_i
    double c = 0;
};

inline ResidueSet residues(const BalanceResult& bal) {
    if (!bal.converged()) fail(errc::not_converged, "residues need a converged balance result");
    ResidueSet rs;
    rs.frame = bal.balanced_frame;
    rs.weights = bal.weights;
    rs.c = bal.c;
    for (std::size_t i = 0; i < rs.frame.size(); ++i)
        rs.matrices.push_back(cd(rs.weights[i]) * outer(rs.frame[i], rs.frame[i]));
    return rs;
}

inline constexpr double tol_F_default = 1e-8;

struct CommutatorRow {
    int flat_index = -1;
    int hyperplane = -1;  // 0-based
    double commutator_norm = 0;
};

struct OrthogonalityRow {
    int i = -1, j = -1;  // reducible pair, 0-based
    double inner_abs = 0;
};

struct SubframeRow {
    int flat_index = -1;
    double gap = 0;  // Welch gap of (v_i)_{i in I(L)} inside the 2-dim span
    double rhs = 0;
    bool tight = false;
};

/// Condition (F) evaluated literally: for every rank-2 flat L and every
/// i in I(L), the Frobenius norm of [A_i, sum_{j in I(L)} A_j]. The verdict
/// comes from the commutators alone; the equivalent characterization —
/// (i) orthogonality across reducible pairs, (ii) subframe tightness on each
/// G2 span — is evaluated alongside as a cross-check.
struct ConditionFReport {
    std::vector<CommutatorRow> rows;
    double max_commutator = 0;
    std::vector<OrthogonalityRow> orthogonality_rows;
    std::vector<SubframeRow> subframe_rows;
    bool passed = false;
    bool characterization_passed = false;
    double tol = tol_F_default;
};

inline ConditionFReport condition_f_check(const ResidueSet& rs, const IntersectionPoset& poset,
                                          double tol_F = tol_F_default) {
    if (rs.matrices.empty()) fail(errc::not_converged, "empty residue set");
    ConditionFReport rep;
    rep.tol = tol_F;

    for (int fi = 0; fi < static_cast<int>(poset.flats.size()); ++fi) {
        const Flat& f = poset.flats[fi];
        if (f.rank != 2) continue;
        Mat local_sum(rs.matrices[0].n);
        for (int j : f.members) local_sum = local_sum + rs.matrices[j];
        for (int i : f.members) {
            Mat comm = rs.matrices[i] * local_sum - local_sum * rs.matrices[i];
            CommutatorRow row{fi, i, frobenius(comm)};
            rep.max_commutator = std::max(rep.max_commutator, row.commutator_norm);
            rep.rows.push_back(row);
        }
    }
    rep.passed = rep.max_commutator <= tol_F;

    bool chr = true;
    for (auto [i, j] : poset.rank2_reducible_pairs) {
        OrthogonalityRow row{i, j, std::abs(hdot(rs.frame[i], rs.frame[j]))};
        if (row.inner_abs > tol_F) chr = false;
        rep.orthogonality_rows.push_back(row);
    }
    for (int fi : poset.rank2_irreducible) {
        const Flat& f = poset.flats[fi];
        // orthonormal basis of the 2-dim span of {u_i}: pair b0 with the
        // member leaving the largest Gram-Schmidt residual
        cdvec b0 = rs.frame[f.members[0]];
        cdvec b1;
        double best = 0;
        for (std::size_t k = 1; k < f.members.size(); ++k) {
            cdvec w = rs.frame[f.members[k]];
            cd c0 = hdot(w, b0);
            for (std::size_t t = 0; t < w.size(); ++t) w[t] -= c0 * b0[t];
            double nm = vnorm(w);
            if (nm > best) {
                best = nm;
                b1 = std::move(w);
            }
        }
        if (best <= 1e-12) fail(errc::bad_input, "rank-2 flat span degenerated");
        for (cd& z : b1) z /= best;

        FrameConfig sub;
        for (int i : f.members) {
            const cdvec& u = rs.frame[i];
            double len = std::sqrt(rs.weights[i]);  // |v_i|^2 = a_i
            sub.vectors.push_back({cd(len) * hdot(u, b0), cd(len) * hdot(u, b1)});
        }
        WelchGap wg = welch_gap(sub);
        SubframeRow row{fi, wg.gap, wg.rhs, wg.gap <= tol_F * wg.rhs};
        if (!row.tight) chr = false;
        rep.subframe_rows.push_back(row);
    }
    rep.characterization_passed = chr;
    return rep;
}

enum class Decision { dunkl, not_dunkl, not_applicable };

inline const char* decision_name(Decision d) {
    switch (d) {
        case Decision::dunkl: return "dunkl";
        case Decision::not_dunkl: return "not_dunkl";
        case Decision::not_applicable: return "not_applicable";
    }
    return "?";
}

struct DecisionOptions {
    double tol_balance = 1e-12;
    int max_iter = 10000;
    bool precheck = true;
    double tol_F = tol_F_default;     // Frobenius, after normalizing sum a_i = d
    double tol_Q = 1e-10;             // relative to (sum a)^2
    double tol_crit = 1e-10;          // relative to sum a
};

/// Everything the decision rests on, with nothing reconciled silently: the
/// three equivalent predicates are evaluated independently and a disagreement
/// beyond tolerance surfaces in `inconsistencies`.
template <class K>
struct DunklVerdict {
    Decision decision = Decision::not_applicable;
    bool essential = false;
    bool irreducible = false;
    std::optional<StabilityReport<K>> stability;
    std::optional<QEvaluation<K>> q_eval;
    std::optional<BalanceResult> balance_result;
    std::optional<ConditionFReport> condition_f;
    bool stable_and_q_zero = false;      // predicate (2)
    bool stable_and_critq_zero = false;  // predicate (3)
    std::vector<std::string> certificates;
    std::vector<std::string> inconsistencies;

    bool consistent() const { return inconsistencies.empty(); }
};

/// Theorem-3.2 decision pipeline: gate on essential+irreducible, evaluate
/// stability and Q (exact when the scalars are exact), then — only when the
/// metric can exist — balance and check condition (F). Weights are normalized
/// to sum a_i = d for the numeric stages; every predicate is scale-invariant.
template <class K>
DunklVerdict<K> dunkl_decision(const Arrangement<K>& arr, const IntersectionPoset& poset,
                               const WeightVector<K>& weights, const DecisionOptions& opts = {}) {
    DunklVerdict<K> v;
    v.essential = poset.essential;
    v.irreducible = poset.irreducible;
    validate_weights(weights, arr.n());
    if (!poset.essential || !poset.irreducible) {
        v.decision = Decision::not_applicable;
        v.certificates.push_back(std::string("arrangement ") +
                                 (poset.essential ? "is reducible" : "is not essential"));
        return v;
    }

    v.stability = stability_report(poset, weights);
    v.q_eval = q_evaluate(poset, weights);
    const K& total = v.q_eval->total;

    bool q_zero, crit_zero;
    if constexpr (is_exact_v<K>) {
        q_zero = (v.q_eval->Q == K(0));
        crit_zero = true;
        for (const K& r : v.q_eval->critq_residual)
            if (r != K(0)) crit_zero = false;
    } else {
        q_zero = std::fabs(to_double(v.q_eval->Q)) <= opts.tol_Q * to_double(total * total);
        crit_zero = true;
        for (const K& r : v.q_eval->critq_residual)
            if (std::fabs(to_double(r)) > opts.tol_crit * to_double(total)) crit_zero = false;
    }
    v.stable_and_q_zero = v.stability->stable && q_zero;
    v.stable_and_critq_zero = v.stability->stable && crit_zero;

    if (v.stable_and_q_zero != v.stable_and_critq_zero)
        v.inconsistencies.push_back(
            "predicates (2) and (3) disagree: stable & Q==0 is " +
            std::string(v.stable_and_q_zero ? "true" : "false") + " but stable & critQ==0 is " +
            std::string(v.stable_and_critq_zero ? "true" : "false"));

    if (!v.stability->stable) {
        const auto& row = v.stability->rows[v.stability->worst_row];
        const Flat& f = poset.flats[row.flat_index];
        std::string members;
        for (int i : f.members) members += (members.empty() ? "" : ",") + std::to_string(i + 1);
        v.certificates.push_back("unstable: flat {" + members + "} has a_L = " +
                                 format_scalar(row.a_L) + " >= global mean " +
                                 format_scalar(v.stability->global_mean));
    } else if (!q_zero) {
        v.certificates.push_back("Q(a) = " + format_scalar(v.q_eval->Q) + " != 0");
    }

    if (v.stable_and_q_zero) {
        // normalize to sum a_i = d before the numeric stages
        WeightVector<K> norm = v.stability->normalized_weights;
        BalanceOptions bopts;
        bopts.tol = opts.tol_balance;
        bopts.max_iter = opts.max_iter;
        bopts.precheck = opts.precheck;
        v.balance_result = balance(arr, poset, norm, bopts);
        if (v.balance_result->converged()) {
            ResidueSet rs = residues(*v.balance_result);
            v.condition_f = condition_f_check(rs, poset, opts.tol_F);
            if (v.condition_f->passed != v.condition_f->characterization_passed)
                v.inconsistencies.push_back(
                    "commutator verdict disagrees with the (i)/(ii) characterization");
            if (!v.condition_f->passed) {
                v.inconsistencies.push_back(
                    "stable with Q == 0 but condition (F) failed (max commutator " +
                    format_scalar(v.condition_f->max_commutator) + ")");
                v.certificates.push_back("max condition-(F) commutator " +
                                         format_scalar(v.condition_f->max_commutator));
            }
        } else {
            v.inconsistencies.push_back(
                "stable with Q == 0 but the balance iteration did not converge");
            v.certificates.push_back("balance status: " +
                                     std::string(balance_status_name(v.balance_result->status)));
        }
    }

    bool f_ok = v.condition_f && v.condition_f->passed;
    v.decision = (v.stable_and_q_zero && f_ok) ? Decision::dunkl : Decision::not_dunkl;
    if (v.decision == Decision::dunkl)
        v.certificates.push_back("stable, Q(a) = 0, condition (F) holds (max commutator " +
                                 format_scalar(v.condition_f->max_commutator) + ")");
    return v;
}

template <class K>
DunklVerdict<K> dunkl_decision(const Arrangement<K>& arr, const WeightVector<K>& weights,
                               const DecisionOptions& opts = {}) {
    return dunkl_decision(arr, enumerate_flats(arr), weights, opts);
}

}  // namespace dunkl
