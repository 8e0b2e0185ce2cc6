#pragma once

#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/scalar.hpp"

namespace dunkl {

enum class LpStatus { optimal, infeasible, unbounded, stalled };

template <class K>
struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    K objective{};
    std::vector<K> x;
};

/// Dense two-phase primal simplex with Bland's rule, templated on the scalar
/// field: exact termination over the rationals, partial-pivot thresholds in
/// float mode. Solves  max c.x  s.t.  A x = b, x >= 0.  Small and dense by
/// design — the stability cones handled here have tens of rows.
template <class K>
class Simplex {
  public:
    Simplex(std::vector<std::vector<K>> a, std::vector<K> b, std::vector<K> c)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

    LpSolution<K> solve() {
        m_ = static_cast<int>(a_.size());
        nv_ = m_ ? static_cast<int>(a_[0].size()) : 0;
        // rows with negative rhs are flipped so that b >= 0
        for (int r = 0; r < m_; ++r)
            if (b_[r] < K(0)) {
                for (auto& v : a_[r]) v = -v;
                b_[r] = -b_[r];
            }

        // tableau: nv structural + m artificial columns + rhs
        int ncols = nv_ + m_ + 1;
        t_.assign(m_ + 1, std::vector<K>(ncols, K(0)));
        basis_.assign(m_, 0);
        for (int r = 0; r < m_; ++r) {
            for (int j = 0; j < nv_; ++j) t_[r][j] = a_[r][j];
            t_[r][nv_ + r] = K(1);
            t_[r][ncols - 1] = b_[r];
            basis_[r] = nv_ + r;
        }

        // phase 1: maximize -(sum of artificials)
        for (int j = nv_; j < nv_ + m_; ++j) t_[m_][j] = K(-1);
        for (int r = 0; r < m_; ++r) add_row(m_, r, K(1));  // price out the basis
        if (!iterate(nv_ + m_)) return {LpStatus::stalled, K(0), {}};
        K art = -t_[m_].back();
        if (!is_zero(art)) return {LpStatus::infeasible, K(0), {}};
        purge_artificials();

        // phase 2
        for (auto& v : t_[m_]) v = K(0);
        for (int j = 0; j < nv_; ++j) t_[m_][j] = c_[j];
        for (int r = 0; r < m_; ++r)
            if (basis_[r] < nv_) add_row(m_, r, -t_[m_][basis_[r]]);
        if (!iterate(nv_)) {
            // either unbounded or stalled; iterate() distinguished via flag
            return {unbounded_ ? LpStatus::unbounded : LpStatus::stalled, K(0), {}};
        }

        LpSolution<K> sol;
        sol.status = LpStatus::optimal;
        sol.objective = -t_[m_].back();
        sol.x.assign(nv_, K(0));
        for (int r = 0; r < m_; ++r)
            if (basis_[r] < nv_) sol.x[basis_[r]] = t_[r].back();
        return sol;
    }

  private:
    static bool is_zero(const K& x) {
        if constexpr (is_exact_v<K>)
            return x == K(0);
        else
            return std::fabs(to_double(x)) <= 1e-9;
    }
    static bool is_positive(const K& x) {
        if constexpr (is_exact_v<K>)
            return x > K(0);
        else
            return to_double(x) > 1e-11;
    }

    void add_row(int dst, int src, K factor) {
        if (factor == K(0)) return;
        for (std::size_t j = 0; j < t_[dst].size(); ++j) t_[dst][j] += factor * t_[src][j];
    }

    void pivot(int row, int col) {
        K pv = t_[row][col];
        for (auto& v : t_[row]) v = v / pv;
        for (int r = 0; r <= m_; ++r) {
            if (r == row) continue;
            K f = t_[r][col];
            if (f == K(0)) continue;
            for (std::size_t j = 0; j < t_[r].size(); ++j) t_[r][j] -= f * t_[row][j];
            t_[r][col] = K(0);
        }
        basis_[row] = col;
    }

    /// Bland iterations over columns [0, col_limit). Returns false on
    /// unboundedness or a (float-mode) stall.
    bool iterate(int col_limit) {
        unbounded_ = false;
        const long max_pivots = 200000;
        for (long step = 0; step < max_pivots; ++step) {
            int enter = -1;
            for (int j = 0; j < col_limit; ++j)
                if (is_positive(t_[m_][j])) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;  // optimal
            int leave = -1;
            K best_ratio{};
            for (int r = 0; r < m_; ++r) {
                if (!is_positive(t_[r][enter])) continue;
                K ratio = t_[r].back() / t_[r][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[leave]))
                    leave = r, best_ratio = ratio;
            }
            if (leave < 0) {
                unbounded_ = true;
                return false;
            }
            pivot(leave, enter);
        }
        return false;  // stalled
    }

    /// After phase 1, pivot remaining zero-level artificials out of the basis
    /// (or note the row as redundant by leaving it; its rhs is zero).
    void purge_artificials() {
        for (int r = 0; r < m_; ++r) {
            if (basis_[r] < nv_) continue;
            int col = -1;
            for (int j = 0; j < nv_; ++j)
                if (!is_zero(t_[r][j])) {
                    col = j;
                    break;
                }
            if (col >= 0) pivot(r, col);
        }
    }

    std::vector<std::vector<K>> a_;
    std::vector<K> b_, c_;
    std::vector<std::vector<K>> t_;
    std::vector<int> basis_;
    int m_ = 0, nv_ = 0;
    bool unbounded_ = false;
};

}  // namespace dunkl
