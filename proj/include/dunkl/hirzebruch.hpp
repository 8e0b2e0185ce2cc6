#pragma once

#include <vector>

#include "dunkl/stability.hpp"

namespace dunkl {

/// Joint evaluation of the Hirzebruch quadratic form
///   Q(a) = sum_{L in G2} a_L^2 - (1/2) sum_i B_i a_i^2 - (1/2d) (sum_i a_i)^2,
/// its analytic gradient, the linear functions s_i, and the critical-point
/// residuals s_i(a) - (d-1)/d * sum_j a_j. Everything is computed in one pass
/// over the G2 flats and the reducible pairs, so exact-mode cost stays linear
/// in the poset size. Inputs may be arbitrary real vectors; positivity is a
/// caller concern.
template <class K>
struct QEvaluation {
    K Q{};
    std::vector<K> grad;            // dQ/da_i
    std::vector<K> s;               // s_i(a)
    std::vector<K> critq_residual;  // s_i(a) - (d-1)/d * total
    std::vector<long> B;            // B_i + 1 = #{L in G2 : i in I(L)}; B_i = -1 happens
    std::vector<std::pair<int, K>> local_weights;  // (flat index, a_L) over G2
    K total{};
};

template <class K>
QEvaluation<K> q_evaluate(const IntersectionPoset& poset, const std::vector<K>& weights) {
    require_essential_irreducible(poset);
    if (static_cast<int>(weights.size()) != poset.n)
        fail(errc::length_mismatch, "weight vector length does not match arrangement");

    const int n = poset.n, d = poset.dim;
    QEvaluation<K> ev;
    ev.grad.assign(n, K(0));
    ev.s.assign(n, K(0));
    ev.critq_residual.assign(n, K(0));
    ev.B.assign(n, -1);
    for (const K& a : weights) ev.total += a;

    K sum_aL2(0);
    std::vector<K> sum_aL(n, K(0));  // sum of a_L over G2 flats through i
    for (int fi : poset.rank2_irreducible) {
        const Flat& f = poset.flats[fi];
        K aL = local_weight(weights, f);
        sum_aL2 += aL * aL;
        for (int i : f.members) {
            ev.B[i] += 1;
            sum_aL[i] += aL;
        }
        ev.local_weights.emplace_back(fi, aL);
    }
    for (auto [i, j] : poset.rank2_reducible_pairs) {
        ev.s[i] += weights[j];
        ev.s[j] += weights[i];
    }

    K half(K(1) / K(2));
    K sumB(0);
    for (int i = 0; i < n; ++i) sumB += K(ev.B[i]) * weights[i] * weights[i];
    ev.Q = sum_aL2 - half * sumB - ev.total * ev.total / K(2 * d);

    K mean = ev.total / K(d);
    K crit_level = K(d - 1) * ev.total / K(d);
    for (int i = 0; i < n; ++i) {
        ev.grad[i] = sum_aL[i] - K(ev.B[i]) * weights[i] - mean;
        ev.s[i] += sum_aL[i];
        ev.critq_residual[i] = ev.s[i] - crit_level;
    }
    return ev;
}

/// Line-arrangement multiplicity statistic behind the Langer-type bound
///   sum_{p : mult_p >= 2} mult_p >= n^2/3 + n,
/// valid for n >= 3 lines in CP^2 with every point of multiplicity < 2n/3.
/// `holds` is asserted only under that hypothesis (max_mult_ok).
struct LangerStatistic {
    long sum_mult = 0;
    Rational bound;  // n^2/3 + n, exact
    bool max_mult_ok = false;
    bool holds = false;
};

inline LangerStatistic langer_statistic(const IntersectionPoset& poset) {
    if (poset.dim != 3)
        fail(errc::wrong_dimension, "langer statistic needs lines in CP^2 (d = 3)");
    if (poset.n < 3) fail(errc::wrong_dimension, "langer statistic needs n >= 3 lines");
    LangerStatistic st;
    long n = poset.n;
    st.bound = Rational(n * n, 3) + n;
    st.max_mult_ok = true;
    for (const Flat& f : poset.flats) {
        if (f.rank != 2) continue;
        st.sum_mult += f.multiplicity();
        if (Rational(3 * f.multiplicity()) >= Rational(2 * n)) st.max_mult_ok = false;
    }
    st.holds = st.max_mult_ok && Rational(st.sum_mult) >= st.bound;
    return st;
}

}  // namespace dunkl
