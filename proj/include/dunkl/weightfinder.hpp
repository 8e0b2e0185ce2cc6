#pragma once

#include <string>
#include <vector>

#include "dunkl/rng.hpp"
#include "dunkl/simplex.hpp"
#include "dunkl/stability.hpp"
#include "dunkl/hirzebruch.hpp"

namespace dunkl {

/// The critQ linear system: row i encodes s_i(a) - (d-1)/d * sum_j a_j, so
/// Dunkl weight vectors are exactly (null space) ∩ (open stability cone).
template <class K>
struct CritQSystem {
    std::vector<std::vector<K>> matrix;           // n x n
    std::vector<std::vector<K>> nullspace_basis;  // basis vectors, length n
    int nullity = 0;
};

inline constexpr double eps_svd_null = 1e-10;

template <class K>
CritQSystem<K> critq_system(const IntersectionPoset& poset) {
    require_essential_irreducible(poset);
    const int n = poset.n, d = poset.dim;
    CritQSystem<K> sys;
    sys.matrix.assign(n, std::vector<K>(n, K(0)));

    K half = K(1) / K(2);
    for (int fi : poset.rank2_irreducible) {
        const Flat& f = poset.flats[fi];
        for (int i : f.members)
            for (int j : f.members) sys.matrix[i][j] += half;
    }
    for (auto [i, j] : poset.rank2_reducible_pairs) {
        sys.matrix[i][j] += K(1);
        sys.matrix[j][i] += K(1);
    }
    K shift = K(d - 1) / K(d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sys.matrix[i][j] -= shift;

    if constexpr (is_exact_v<K>) {
        sys.nullspace_basis = nullspace_basis(sys.matrix, n);
    } else {
        // float mode: SVD kernel at a relative threshold
        RealSvd svd = one_sided_jacobi_svd(sys.matrix);
        double top = 0;
        for (double s : svd.singular_values) top = std::max(top, s);
        for (int j = 0; j < n; ++j)
            if (svd.singular_values[j] <= eps_svd_null * (top > 0 ? top : 1.0))
                sys.nullspace_basis.push_back(svd.right[j]);
    }
    sys.nullity = static_cast<int>(sys.nullspace_basis.size());
    return sys;
}

enum class FeasibilityStatus {
    feasible,
    empty_nullspace,             // the critQ system has trivial kernel
    normalization_unreachable,   // kernel nonzero but contained in {sum a = 0}
    nonpositive_slack,           // LP optimum exists with sigma <= 0
};

inline const char* feasibility_status_name(FeasibilityStatus s) {
    switch (s) {
        case FeasibilityStatus::feasible: return "feasible";
        case FeasibilityStatus::empty_nullspace: return "empty_nullspace";
        case FeasibilityStatus::normalization_unreachable: return "normalization_unreachable";
        case FeasibilityStatus::nonpositive_slack: return "nonpositive_slack";
    }
    return "?";
}

template <class K>
struct FeasibilityResult {
    bool feasible = false;
    FeasibilityStatus status = FeasibilityStatus::empty_nullspace;
    WeightVector<K> sample;          // normalized to sum a_i = d when feasible
    K slack{};                       // optimal margin of the strict system
    int dimension = 0;               // nullity of the critQ system
    std::vector<std::string> active_constraints;  // forms achieving the margin
    std::vector<K> center_coords;    // null-space coordinates of the sample
};

inline constexpr double eps_slack_float = 1e-9;

/// Theorem-3.2(3) feasibility: maximize the minimum slack of the stability
/// cone over the critQ null space, on the normalized slice sum a_i = d.
/// Strict feasibility of the open cone is equivalent to a positive optimum
/// there (exact mode tests sigma > 0 literally).
template <class K>
FeasibilityResult<K> find_dunkl_weights(const IntersectionPoset& poset) {
    require_essential_irreducible(poset);
    const int n = poset.n, d = poset.dim;

    CritQSystem<K> sys = critq_system<K>(poset);
    FeasibilityResult<K> out;
    out.dimension = sys.nullity;
    if (sys.nullity == 0) return out;

    StabilityCone<K> cone = stability_cone<K>(poset);
    const int m = sys.nullity;
    const int nforms = static_cast<int>(cone.inequalities.size());

    // variables: t+ (m), t- (m), sigma+, sigma-, one surplus per form
    const int nv = 2 * m + 2 + nforms;
    std::vector<std::vector<K>> a;
    std::vector<K> b, c(nv, K(0));
    c[2 * m] = K(1);
    c[2 * m + 1] = K(-1);

    for (int g = 0; g < nforms; ++g) {
        std::vector<K> row(nv, K(0));
        for (int k = 0; k < m; ++k) {
            K coef(0);
            for (int i = 0; i < n; ++i) coef += cone.inequalities[g].coeffs[i] * sys.nullspace_basis[k][i];
            row[k] = coef;
            row[m + k] = -coef;
        }
        row[2 * m] = K(-1);
        row[2 * m + 1] = K(1);
        row[2 * m + 2 + g] = K(-1);  // g(a) - sigma - surplus = 0
        a.push_back(std::move(row));
        b.push_back(K(0));
    }
    {
        std::vector<K> row(nv, K(0));
        for (int k = 0; k < m; ++k) {
            K coef(0);
            for (int i = 0; i < n; ++i) coef += sys.nullspace_basis[k][i];
            row[k] = coef;
            row[m + k] = -coef;
        }
        a.push_back(std::move(row));
        b.push_back(K(d));
    }

    LpSolution<K> sol = Simplex<K>(std::move(a), std::move(b), std::move(c)).solve();
    if (sol.status == LpStatus::stalled || sol.status == LpStatus::unbounded)
        fail(errc::lp_numerical_failure, "simplex did not terminate cleanly");
    if (sol.status == LpStatus::infeasible) {
        out.status = FeasibilityStatus::normalization_unreachable;
        return out;
    }

    out.slack = sol.objective;
    bool strict;
    if constexpr (is_exact_v<K>)
        strict = out.slack > K(0);
    else
        strict = to_double(out.slack) > eps_slack_float;

    std::vector<K> t(m);
    for (int k = 0; k < m; ++k) t[k] = sol.x[k] - sol.x[m + k];
    WeightVector<K> sample(n, K(0));
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < n; ++i) sample[i] += t[k] * sys.nullspace_basis[k][i];

    for (int g = 0; g < nforms; ++g) {
        K val(0);
        for (int i = 0; i < n; ++i) val += cone.inequalities[g].coeffs[i] * sample[i];
        bool active;
        if constexpr (is_exact_v<K>)
            active = (val == out.slack);
        else
            active = std::fabs(to_double(val - out.slack)) <= 1e-9;
        if (active) out.active_constraints.push_back(cone.inequalities[g].name);
    }

    if (!strict) {
        out.status = FeasibilityStatus::nonpositive_slack;
        return out;  // infeasible: the cone is open
    }

    out.feasible = true;
    out.status = FeasibilityStatus::feasible;
    out.sample = std::move(sample);
    out.center_coords = std::move(t);

    // a-posteriori verification, never skipped
    StabilityReport<K> rep = stability_report(poset, out.sample);
    if (!rep.stable) fail(errc::lp_numerical_failure, "LP sample failed the stability re-check");
    QEvaluation<K> qe = q_evaluate(poset, out.sample);
    if constexpr (is_exact_v<K>) {
        for (const K& r : qe.critq_residual)
            if (r != K(0)) fail(errc::lp_numerical_failure, "LP sample has nonzero critQ residual");
        if (qe.Q != K(0)) fail(errc::lp_numerical_failure, "LP sample has Q != 0");
    } else {
        K scale = qe.total;
        for (const K& r : qe.critq_residual)
            if (std::fabs(to_double(r)) > 1e-8 * to_double(scale))
                fail(errc::lp_numerical_failure, "LP sample has nonzero critQ residual");
    }
    return out;
}

/// Random strictly feasible weight vectors: convex perturbations of the
/// max-slack center inside the null space, shrunk until they re-verify.
template <class K>
std::vector<WeightVector<K>> sample_feasible(const IntersectionPoset& poset,
                                             const FeasibilityResult<K>& result, int count,
                                             std::uint64_t seed) {
    if (!result.feasible) fail(errc::not_feasible, "sampling needs a feasible result");
    CritQSystem<K> sys = critq_system<K>(poset);
    const int n = poset.n, m = sys.nullity;
    Rng rng(seed);

    std::vector<WeightVector<K>> out;
    long attempts = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > 100L * count + 1000)
            fail(errc::lp_numerical_failure, "feasible sampling stalled");
        std::vector<K> delta(m);
        for (int k = 0; k < m; ++k) {
            long long num = rng.range(-64, 64);
            if constexpr (is_exact_v<K>)
                delta[k] = Rational(num, 128);
            else
                delta[k] = static_cast<double>(num) / 128.0;
        }
        WeightVector<K> dir(n, K(0));
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < n; ++i) dir[i] += delta[k] * sys.nullspace_basis[k][i];

        K lambda = result.slack;  // step at the scale of the certified margin
        for (int shrink = 0; shrink < 60; ++shrink, lambda = lambda / K(2)) {
            WeightVector<K> cand(n);
            for (int i = 0; i < n; ++i) cand[i] = result.sample[i] + lambda * dir[i];
            K total = weight_total(cand);
            if (!(total > K(0))) continue;
            bool positive = true;
            for (const K& x : cand)
                if (!(x > K(0))) positive = false;
            if (!positive) continue;
            for (int i = 0; i < n; ++i) cand[i] = K(poset.dim) * cand[i] / total;

            StabilityReport<K> rep = stability_report(poset, cand);
            if (!rep.stable) continue;
            QEvaluation<K> qe = q_evaluate(poset, cand);
            bool crit_ok = true;
            if constexpr (is_exact_v<K>) {
                for (const K& r : qe.critq_residual)
                    if (r != K(0)) crit_ok = false;
                if (qe.Q != K(0)) crit_ok = false;
            } else {
                for (const K& r : qe.critq_residual)
                    if (std::fabs(to_double(r)) > 1e-8 * to_double(qe.total)) crit_ok = false;
            }
            if (!crit_ok) fail(errc::lp_numerical_failure, "null-space sample left the critQ system");
            out.push_back(std::move(cand));
            break;
        }
    }
    return out;
}

}  // namespace dunkl
