#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "dunkl/cplx.hpp"

namespace dunkl {

/// Relative pivot threshold for floating-point row reduction: an entry counts
/// as zero when |entry| <= eps_rank * (max absolute entry of the working
/// matrix). Exact mode ignores it.
inline constexpr double eps_rank = 1e-9;

/// Incremental reduced-echelon span of complex row vectors over K.
///
/// Maintains full RREF (every stored row has zeros in all other pivot
/// columns), so membership and coordinate extraction are a single reduction
/// pass. Inserted independent vectors are remembered as "generators";
/// express() returns coordinates with respect to them, which is what the
/// fundamental-circuit irreducibility test needs.
template <class K>
class SpanBasis {
  public:
    explicit SpanBasis(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    /// Adds v to the span. Returns true if v was independent of the current
    /// span (v becomes a generator), false if it was already contained.
    bool insert(const CVec<K>& v) {
        note_scale(v);
        CVec<K> r = v;
        std::vector<Cx<K>> coords(gens_, Cx<K>{});
        reduce(r, &coords);
        int p = pick_pivot(r);
        if (p < 0) return false;

        Cx<K> pv = r[p];
        for (auto& z : r) z = z / pv;
        // combo of the new row over generators: (e_new - coords) / pivot
        std::vector<Cx<K>> combo(gens_ + 1, Cx<K>{});
        for (int g = 0; g < gens_; ++g) combo[g] = (Cx<K>{} - coords[g]) / pv;
        combo[gens_] = Cx<K>{K(1)} / pv;
        for (auto& c : combos_) c.resize(gens_ + 1, Cx<K>{});

        // keep RREF: clear the new pivot column from existing rows
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Cx<K> f = rows_[i][p];
            if (is_zero(f)) continue;
            for (int k = 0; k < dim_; ++k) rows_[i][k] -= f * r[k];
            rows_[i][p] = Cx<K>{};  // exact zero by construction
            for (int g = 0; g <= gens_; ++g) combos_[i][g] -= f * combo[g];
        }
        rows_.push_back(std::move(r));
        pivots_.push_back(p);
        combos_.push_back(std::move(combo));
        ++gens_;
        return true;
    }

    bool contains(const CVec<K>& v) const {
        CVec<K> r = v;
        double s = scale_with(v);
        reduce_const(r, nullptr, s);
        return pick_pivot_const(r, s) < 0;
    }

    /// Coordinates of v over the generators, or nullopt if v is outside the
    /// span.
    std::optional<std::vector<Cx<K>>> express(const CVec<K>& v) const {
        CVec<K> r = v;
        std::vector<Cx<K>> coords(gens_, Cx<K>{});
        double s = scale_with(v);
        reduce_const(r, &coords, s);
        if (pick_pivot_const(r, s) >= 0) return std::nullopt;
        return coords;
    }

    double scale() const { return scale_; }

  private:
    static double abs2(const Cx<K>& z) { return to_double(z.norm2()); }

    bool is_zero(const Cx<K>& z) const { return is_zero_at(z, scale_); }

    static bool is_zero_at(const Cx<K>& z, double scale) {
        if constexpr (is_exact_v<K>) {
            return z.is_exact_zero();
        } else {
            double t = eps_rank * (scale > 0 ? scale : 1.0);
            return abs2(z) <= t * t;
        }
    }

    void note_scale(const CVec<K>& v) {
        for (const auto& z : v) scale_ = std::max(scale_, std::sqrt(abs2(z)));
    }

    double scale_with(const CVec<K>& v) const {
        double s = scale_;
        for (const auto& z : v) s = std::max(s, std::sqrt(abs2(z)));
        return s;
    }

    void reduce(CVec<K>& r, std::vector<Cx<K>>* coords) const { reduce_const(r, coords, scale_); }

    void reduce_const(CVec<K>& r, std::vector<Cx<K>>* coords, double scale) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Cx<K> f = r[pivots_[i]];
            if (is_zero_at(f, scale)) {
                r[pivots_[i]] = Cx<K>{};
                continue;
            }
            for (int k = 0; k < dim_; ++k) r[k] -= f * rows_[i][k];
            r[pivots_[i]] = Cx<K>{};
            if (coords)
                for (int g = 0; g < gens_ && g < static_cast<int>(combos_[i].size()); ++g)
                    (*coords)[g] += f * combos_[i][g];
        }
    }

    int pick_pivot(const CVec<K>& r) const { return pick_pivot_const(r, scale_); }

    int pick_pivot_const(const CVec<K>& r, double scale) const {
        if constexpr (is_exact_v<K>) {
            for (int k = 0; k < dim_; ++k)
                if (!r[k].is_exact_zero()) return k;
            return -1;
        } else {
            int best = -1;
            double best_a = 0;
            for (int k = 0; k < dim_; ++k) {
                double a = abs2(r[k]);
                if (a > best_a) {
                    best_a = a;
                    best = k;
                }
            }
            if (best < 0) return -1;
            return is_zero_at(r[best], scale) ? -1 : best;
        }
    }

    int dim_;
    int gens_ = 0;
    std::vector<CVec<K>> rows_;
    std::vector<int> pivots_;
    std::vector<std::vector<Cx<K>>> combos_;
    double scale_ = 0.0;
};

/// Matroid rank of a set of complex vectors.
template <class K>
int rank_of(const std::vector<CVec<K>>& vectors, int dim) {
    SpanBasis<K> span(dim);
    for (const auto& v : vectors) span.insert(v);
    return span.rank();
}

// ---------------------------------------------------------------------------
// Real-matrix kernels (used by the critQ linear system).

/// Exact (or thresholded) reduced row echelon form of a dense real matrix.
template <class K>
struct Rref {
    std::vector<std::vector<K>> rows;
    std::vector<int> pivot_cols;
    int rank = 0;
};

template <class K>
Rref<K> rref(std::vector<std::vector<K>> m, double eps = eps_rank) {
    Rref<K> out;
    if (m.empty()) return out;
    int nr = static_cast<int>(m.size()), nc = static_cast<int>(m[0].size());
    double scale = 1.0;
    if constexpr (!is_exact_v<K>) {
        scale = 0.0;
        for (const auto& row : m)
            for (K x : row) scale = std::max(scale, std::fabs(x));
        if (scale == 0) scale = 1.0;
    }
    auto nonzero = [&](const K& x) {
        if constexpr (is_exact_v<K>)
            return x != K(0);
        else
            return std::fabs(x) > eps * scale;
    };
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int piv = -1;
        if constexpr (is_exact_v<K>) {
            for (int i = r; i < nr; ++i)
                if (nonzero(m[i][c])) {
                    piv = i;
                    break;
                }
        } else {
            double best = 0;
            for (int i = r; i < nr; ++i)
                if (std::fabs(to_double(m[i][c])) > best) {
                    best = std::fabs(to_double(m[i][c]));
                    piv = i;
                }
            if (piv >= 0 && !nonzero(m[piv][c])) piv = -1;
        }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        K pv = m[r][c];
        for (int k = 0; k < nc; ++k) m[r][k] = m[r][k] / pv;
        for (int i = 0; i < nr; ++i) {
            if (i == r) continue;
            K f = m[i][c];
            if (f == K(0)) continue;
            for (int k = 0; k < nc; ++k) m[i][k] -= f * m[r][k];
            m[i][c] = K(0);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    out.rank = r;
    return out;
}

/// One-sided Jacobi SVD of a dense real matrix A (rows x cols), returning
/// singular values and the right singular vectors V (cols x cols, columns
/// orthonormal). Plenty for the small systems handled here.
struct RealSvd {
    std::vector<double> singular_values;      // one per column, unsorted
    std::vector<std::vector<double>> right;   // right[j] = j-th right singular vector
};

inline RealSvd one_sided_jacobi_svd(const std::vector<std::vector<double>>& a_in) {
    int rows = static_cast<int>(a_in.size());
    int cols = rows ? static_cast<int>(a_in[0].size()) : 0;
    // column-major working copy
    std::vector<std::vector<double>> col(cols, std::vector<double>(rows, 0.0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) col[j][i] = a_in[i][j];
    std::vector<std::vector<double>> v(cols, std::vector<double>(cols, 0.0));
    for (int j = 0; j < cols; ++j) v[j][j] = 1.0;

    auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0;
        for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
        return s;
    };
    const double tol = 1e-15;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < cols; ++p) {
            for (int q = p + 1; q < cols; ++q) {
                double app = dot(col[p], col[p]);
                double aqq = dot(col[q], col[q]);
                double apq = dot(col[p], col[q]);
                if (std::fabs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                double zeta = (aqq - app) / (2.0 * apq);
                double t = (zeta >= 0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
                for (int k = 0; k < rows; ++k) {
                    double xp = col[p][k], xq = col[q][k];
                    col[p][k] = c * xp - s * xq;
                    col[q][k] = s * xp + c * xq;
                }
                for (int k = 0; k < cols; ++k) {
                    double xp = v[p][k], xq = v[q][k];
                    v[p][k] = c * xp - s * xq;
                    v[q][k] = s * xp + c * xq;
                }
            }
        }
        if (!rotated) break;
    }
    RealSvd out;
    out.singular_values.resize(cols);
    out.right = std::move(v);
    for (int j = 0; j < cols; ++j) out.singular_values[j] = std::sqrt(dot(col[j], col[j]));
    return out;
}

/// Kernel basis of a dense real matrix (columns = variables). Exact in exact
/// mode; floating mode uses the same elimination with relative threshold.
template <class K>
std::vector<std::vector<K>> nullspace_basis(const std::vector<std::vector<K>>& m, int ncols,
                                            double eps = eps_rank) {
    Rref<K> rr = rref(m, eps);
    std::vector<bool> is_pivot(ncols, false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (int free_c = 0; free_c < ncols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<K> v(ncols, K(0));
        v[free_c] = K(1);
        for (int r = 0; r < rr.rank; ++r) v[rr.pivot_cols[r]] = -rr.rows[r][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace dunkl
