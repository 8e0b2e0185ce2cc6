#pragma once

#include <string>
#include <vector>

#include "dunkl/arrangement.hpp"

namespace dunkl {

/// Positive weight vector a_1..a_n, indexed like the hyperplanes.
template <class K>
using WeightVector = std::vector<K>;

template <class K>
void validate_weights(const WeightVector<K>& w, int n) {
    if (static_cast<int>(w.size()) != n)
        fail(errc::length_mismatch,
             "expected " + std::to_string(n) + " weights, got " + std::to_string(w.size()));
    for (int i = 0; i < n; ++i)
        if (!(w[i] > K(0)))
            fail(errc::non_positive_weight, "weight " + std::to_string(i + 1) + " is not positive");
}

template <class K>
K weight_total(const WeightVector<K>& w) {
    K s(0);
    for (const K& x : w) s += x;
    return s;
}

/// a_L(a) = (1/r(L)) * sum_{i in I(L)} a_i.
template <class K>
K local_weight(const WeightVector<K>& weights, const Flat& flat) {
    if (flat.rank < 1) fail(errc::bad_params, "local_weight needs a flat of rank >= 1");
    K s(0);
    for (int i : flat.members) s += weights[i];
    return s / K(flat.rank);
}

template <class K>
struct StabilityRow {
    int flat_index = -1;  // index into poset.flats
    K a_L{};
    K margin{};  // a_{0} - a_L; stable rows are strictly positive
};

/// Full evaluation of the stability inequalities over the irreducible proper
/// nonzero flats (checking only those is sufficient). Rows are materialized
/// even when stable so certificates are always available.
template <class K>
struct StabilityReport {
    bool stable = false;
    K global_mean{};  // a_{0} = (1/d) sum a_i
    K total{};
    std::vector<StabilityRow<K>> rows;
    int worst_row = -1;  // index into rows, minimizing margin
    WeightVector<K> normalized_weights;  // a'_i = d a_i / sum a_j
};

/// Float mode treats a margin within eps_margin = 1e-12 * sum(a) of the
/// boundary as unstable; strict stability is what the downstream theorems
/// need, so false negatives beat false positives here.
inline constexpr double eps_margin_rel = 1e-12;

template <class K>
StabilityReport<K> stability_report(const IntersectionPoset& poset, const WeightVector<K>& weights) {
    require_essential_irreducible(poset);
    validate_weights(weights, poset.n);

    StabilityReport<K> rep;
    rep.total = weight_total(weights);
    rep.global_mean = rep.total / K(poset.dim);
    for (const K& a : weights) rep.normalized_weights.push_back(K(poset.dim) * a / rep.total);

    K threshold(0);
    if constexpr (!is_exact_v<K>) threshold = eps_margin_rel * rep.total;

    rep.stable = true;
    for (int fi = 0; fi < static_cast<int>(poset.flats.size()); ++fi) {
        const Flat& f = poset.flats[fi];
        if (!f.irreducible || f.rank < 1 || f.rank >= poset.dim) continue;
        StabilityRow<K> row;
        row.flat_index = fi;
        row.a_L = local_weight(weights, f);
        row.margin = rep.global_mean - row.a_L;
        if (rep.worst_row < 0 || row.margin < rep.rows[rep.worst_row].margin)
            rep.worst_row = static_cast<int>(rep.rows.size());
        if (!(row.margin > threshold)) rep.stable = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

/// One linear form g(a) = coeffs . a; the cone is {g > 0 for all forms}.
template <class K>
struct ConeForm {
    std::vector<K> coeffs;
    int flat_index = -1;  // -1 for positivity forms
    std::string name;
};

/// The open stability cone (interior of the cone over the matroid polytope):
/// one strict inequality (1/d) sum a_j - a_L(a) > 0 per irreducible proper
/// nonzero flat, plus the n positivity forms a_i > 0.
template <class K>
struct StabilityCone {
    int n = 0;
    std::vector<ConeForm<K>> inequalities;  // flat forms first, then positivity
    int flat_form_count = 0;
};

template <class K>
StabilityCone<K> stability_cone(const IntersectionPoset& poset) {
    require_essential_irreducible(poset);
    StabilityCone<K> cone;
    cone.n = poset.n;
    K inv_d = K(1) / K(poset.dim);
    for (int fi = 0; fi < static_cast<int>(poset.flats.size()); ++fi) {
        const Flat& f = poset.flats[fi];
        if (!f.irreducible || f.rank < 1 || f.rank >= poset.dim) continue;
        ConeForm<K> form;
        form.flat_index = fi;
        form.coeffs.assign(poset.n, inv_d);
        K inv_r = K(1) / K(f.rank);
        for (int i : f.members) form.coeffs[i] -= inv_r;
        form.name = "flat#" + std::to_string(fi);
        cone.inequalities.push_back(std::move(form));
    }
    cone.flat_form_count = static_cast<int>(cone.inequalities.size());
    for (int i = 0; i < poset.n; ++i) {
        ConeForm<K> form;
        form.coeffs.assign(poset.n, K(0));
        form.coeffs[i] = K(1);
        form.name = "a" + std::to_string(i + 1) + ">0";
        cone.inequalities.push_back(std::move(form));
    }
    return cone;
}

/// Strict membership test used by the property suites.
template <class K>
bool cone_contains(const StabilityCone<K>& cone, const WeightVector<K>& a) {
    for (const auto& form : cone.inequalities) {
        K v(0);
        for (int i = 0; i < cone.n; ++i) v += form.coeffs[i] * a[i];
        if (!(v > K(0))) return false;
    }
    return true;
}

}  // namespace dunkl
