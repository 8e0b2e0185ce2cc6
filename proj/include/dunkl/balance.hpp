#pragma once

#include <optional>
#include <vector>

#include "dunkl/hirzebruch.hpp"
#include "dunkl/linalg.hpp"

namespace dunkl {

/// A finite frame in C^d; weights, when present conceptually, are absorbed
/// into the vector lengths (|v_i|^2 = a_i).
struct FrameConfig {
    std::vector<cdvec> vectors;
    int dim() const { return vectors.empty() ? 0 : static_cast<int>(vectors[0].size()); }
};

/// S = sum_i v_i v_i^*.
inline Mat frame_operator(const FrameConfig& frame) {
    if (frame.vectors.empty()) fail(errc::bad_params, "frame_operator needs a nonempty frame");
    Mat s(frame.dim());
    for (const cdvec& v : frame.vectors) s = s + outer(v, v);
    return s;
}

inline constexpr double tol_tight_default = 1e-10;

/// Welch-type inequality data: lhs = sum_{ij} |<v_i, v_j>|^2 always dominates
/// rhs = (sum |v_i|^2)^2 / d, with equality exactly at tight frames.
struct WelchGap {
    double lhs = 0;
    double rhs = 0;
    double gap = 0;  // lhs - rhs >= 0 up to roundoff
    bool is_tight = false;
};

inline WelchGap welch_gap(const FrameConfig& frame, double tol_tight = tol_tight_default) {
    if (frame.vectors.empty()) fail(errc::bad_params, "welch_gap needs a nonempty frame");
    WelchGap w;
    double total = 0;
    for (const cdvec& v : frame.vectors) total += std::real(hdot(v, v));
    for (const cdvec& x : frame.vectors)
        for (const cdvec& y : frame.vectors) w.lhs += std::norm(hdot(x, y));
    w.rhs = total * total / frame.dim();
    w.gap = w.lhs - w.rhs;
    w.is_tight = w.gap <= tol_tight * w.rhs;
    return w;
}

struct BalanceOptions {
    double tol = 1e-12;
    int max_iter = 10000;
    bool precheck = true;
    double cond_limit = 1e9;
    std::optional<Mat> initial_gauge;  // defaults to the identity
};

enum class BalanceStatus { converged, diverged, max_iter };

inline const char* balance_status_name(BalanceStatus s) {
    switch (s) {
        case BalanceStatus::converged: return "converged";
        case BalanceStatus::diverged: return "diverged";
        case BalanceStatus::max_iter: return "max_iter";
    }
    return "?";
}

/// Divergence certificate: the worst violated stability inequality.
struct ViolatedFlat {
    std::vector<int> members;  // 0-based hyperplane indices
    double a_L = 0;
    double global_mean = 0;
    double margin = 0;  // <= 0
};

/// Output of the balanced-metric solver. On convergence the metric
/// M = (G^* G)^{-1} satisfies sum_i a_i P_i^M = c * Id in the original
/// coordinates, where P_i^M is the M-orthogonal projection onto the
/// M-orthogonal complement of H_i (spanned by M^{-1} v_i).
struct BalanceResult {
    BalanceStatus status = BalanceStatus::diverged;
    Mat gauge;                         // G
    Mat metric;                        // M = (G^* G)^{-1}
    std::vector<cdvec> balanced_frame; // u_i = G v_i / |G v_i|
    std::vector<double> weights;       // the a_i actually used (as doubles)
    double c = 0;                      // sum a_i / d
    double residual = 0;               // ||sum a_i u_i u_i^* - c Id||_F / c
    double projector_residual = 0;     // ||sum a_i P_i^M - c Id||_F / c, original coords
    int iterations = 0;
    std::vector<double> residual_history;
    double gauge_cond = 1;
    std::optional<ViolatedFlat> certificate;

    bool converged() const { return status == BalanceStatus::converged; }
};

namespace detail {

inline double balance_residual(const std::vector<cdvec>& u, const std::vector<double>& a, double c,
                               Mat* s_out = nullptr) {
    int d = static_cast<int>(u[0].size());
    Mat s(d);
    for (std::size_t i = 0; i < u.size(); ++i) s = s + cd(a[i]) * outer(u[i], u[i]);
    Mat dev = s - cd(c) * Mat::identity(d);
    if (s_out) *s_out = s;
    return frobenius(dev) / c;
}

/// sum_i a_i P_i^M with P_i^M = M^{-1} v_i v_i^* / (v_i^* M^{-1} v_i).
inline double projector_identity_residual(const std::vector<cdvec>& normals,
                                          const std::vector<double>& a, const Mat& metric, double c) {
    int d = metric.n;
    Mat minv = hpd_inverse(metric);
    Mat sum(d);
    for (std::size_t i = 0; i < normals.size(); ++i) {
        cdvec w = matvec(minv, normals[i]);
        cd denom = hdot(normals[i], w);  // v^* M^{-1} v  (= <w, v>_0 conj...) real > 0
        Mat p = outer(w, normals[i]);
        sum = sum + (cd(a[i]) / std::conj(denom)) * p;
    }
    return frobenius(sum - cd(c) * Mat::identity(d)) / c;
}

}  // namespace detail

/// Balanced-metric solver (Prop.-2 style fixed point): iterate
///   u_i = G v_i / |G v_i|,  S = sum a_i u_i u_i^*,  G <- (S/c)^{-1/2} G
/// until S is a multiple of the identity. The normals are the dual points
/// being balanced; the metric on C^d is recovered as M = (G^* G)^{-1}.
/// Always runs in floating point; combinatorial certificates stay exact on
/// the caller's side.
template <class K>
BalanceResult balance(const Arrangement<K>& arr, const IntersectionPoset& poset,
                      const WeightVector<K>& weights, const BalanceOptions& opts = {}) {
    require_essential_irreducible(poset);
    validate_weights(weights, arr.n());

    const int d = arr.dim, n = arr.n();
    BalanceResult res;
    res.weights.reserve(n);
    for (const K& a : weights) res.weights.push_back(to_double(a));
    double total = 0;
    for (double a : res.weights) total += a;
    res.c = total / d;

    std::vector<cdvec> normals(n);
    for (int i = 0; i < n; ++i) {
        normals[i].resize(d);
        for (int k = 0; k < d; ++k) normals[i][k] = to_complexd(arr.normals[i][k]);
    }

    if (opts.precheck) {
        StabilityReport<K> rep = stability_report(poset, weights);
        if (!rep.stable) {
            const auto& row = rep.rows[rep.worst_row];
            const Flat& f = poset.flats[row.flat_index];
            res.status = BalanceStatus::diverged;
            res.certificate = ViolatedFlat{f.members, to_double(row.a_L),
                                           to_double(rep.global_mean), to_double(row.margin)};
            res.gauge = Mat::identity(d);
            res.metric = Mat::identity(d);
            return res;
        }
    }

    Mat g = opts.initial_gauge ? *opts.initial_gauge : Mat::identity(d);
    std::vector<cdvec> u(n);
    auto gauge_frame = [&] {
        for (int i = 0; i < n; ++i) {
            cdvec w = matvec(g, normals[i]);
            double nm = vnorm(w);
            for (cd& z : w) z /= nm;
            u[i] = std::move(w);
        }
    };

    Mat s;
    for (int it = 0; it <= opts.max_iter; ++it) {
        gauge_frame();
        double r = detail::balance_residual(u, res.weights, res.c, &s);
        res.residual_history.push_back(r);
        res.iterations = it;
        res.residual = r;
        if (r < opts.tol) {
            res.status = BalanceStatus::converged;
            break;
        }
        if (it == opts.max_iter) {
            res.status = BalanceStatus::max_iter;
            break;
        }
        try {
            g = hpd_inv_sqrt((cd(1.0 / res.c)) * s) * g;
        } catch (const error&) {
            // frame operator collapsed toward singular: unstable direction
            res.status = BalanceStatus::diverged;
            res.iterations = it + 1;
            break;
        }
        res.gauge_cond = cond_spectral(g);
        if (res.gauge_cond > opts.cond_limit) {
            res.status = BalanceStatus::diverged;
            res.iterations = it + 1;
            break;
        }
    }

    res.gauge = g;
    if (res.status == BalanceStatus::converged) {
        res.metric = hpd_inverse(adjoint(g) * g);
        res.balanced_frame = u;
        res.projector_residual =
            detail::projector_identity_residual(normals, res.weights, res.metric, res.c);
    } else {
        res.metric = Mat::identity(d);
        // a divergence without precheck still deserves the stability certificate
        StabilityReport<K> rep = stability_report(poset, weights);
        if (!rep.stable) {
            const auto& row = rep.rows[rep.worst_row];
            const Flat& f = poset.flats[row.flat_index];
            res.certificate = ViolatedFlat{f.members, to_double(row.a_L), to_double(rep.global_mean),
                                           to_double(row.margin)};
        }
    }
    return res;
}

/// Convenience overload computing the poset on the fly.
template <class K>
BalanceResult balance(const Arrangement<K>& arr, const WeightVector<K>& weights,
                      const BalanceOptions& opts = {}) {
    return balance(arr, enumerate_flats(arr), weights, opts);
}

}  // namespace dunkl
