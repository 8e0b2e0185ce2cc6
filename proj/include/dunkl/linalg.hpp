#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "dunkl/errors.hpp"

namespace dunkl {

using cd = std::complex<double>;
using cdvec = std::vector<cd>;

/// Dense square complex matrix, row-major. Sized for the d x d gauge/metric
/// work of the balancing solver, not for anything large.
struct Mat {
    int n = 0;
    std::vector<cd> a;

    Mat() = default;
    explicit Mat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, cd{}) {}

    cd& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const cd& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline Mat operator*(const Mat& x, const Mat& y) {
    Mat z(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            cd f = x(i, k);
            if (f == cd{}) continue;
            for (int j = 0; j < x.n; ++j) z(i, j) += f * y(k, j);
        }
    return z;
}

inline Mat operator+(const Mat& x, const Mat& y) {
    Mat z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
    return z;
}

inline Mat operator-(const Mat& x, const Mat& y) {
    Mat z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
}

inline Mat operator*(cd s, const Mat& x) {
    Mat z = x;
    for (auto& v : z.a) v *= s;
    return z;
}

inline Mat adjoint(const Mat& x) {
    Mat z(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) z(j, i) = std::conj(x(i, j));
    return z;
}

inline cd trace(const Mat& x) {
    cd t{};
    for (int i = 0; i < x.n; ++i) t += x(i, i);
    return t;
}

inline double frobenius(const Mat& x) {
    double s = 0;
    for (const cd& v : x.a) s += std::norm(v);
    return std::sqrt(s);
}

inline cdvec matvec(const Mat& m, const cdvec& v) {
    cdvec out(m.n, cd{});
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) out[i] += m(i, j) * v[j];
    return out;
}

/// u v^*
inline Mat outer(const cdvec& u, const cdvec& v) {
    Mat z(static_cast<int>(u.size()));
    for (int i = 0; i < z.n; ++i)
        for (int j = 0; j < z.n; ++j) z(i, j) = u[i] * std::conj(v[j]);
    return z;
}

inline cd hdot(const cdvec& x, const cdvec& y) {
    cd s{};
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * std::conj(y[k]);
    return s;
}

inline double vnorm(const cdvec& x) { return std::sqrt(std::real(hdot(x, x))); }

struct HermEig {
    std::vector<double> values;  // ascending
    Mat vectors;                 // unitary; column j is the eigenvector of values[j]
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix. The
/// off-diagonal entry h = |h| e^{i psi} at (p, q) is phased real, then killed
/// with the classic 2x2 rotation; both are folded into one unitary column
/// operation. Quadratic convergence, entirely adequate at gauge sizes.
inline HermEig hermitian_eig(Mat h) {
    const int n = h.n;
    Mat v = Mat::identity(n);
    double scale = frobenius(h);
    if (scale == 0) scale = 1;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(h(p, q));
        if (std::sqrt(2 * off) <= 1e-15 * scale) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                cd hpq = h(p, q);
                double m = std::abs(hpq);
                if (m <= 1e-18 * scale) continue;
                cd w = std::conj(hpq) / m;  // e^{-i psi}
                double alpha = std::real(h(p, p)), beta = std::real(h(q, q));
                double zeta = (beta - alpha) / (2 * m);
                double t = (zeta >= 0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1 + zeta * zeta));
                double c = 1.0 / std::sqrt(1 + t * t), s = c * t;

                // columns: (p, q) <- (c*p - s*w*q, s*p + c*w*q)
                for (int k = 0; k < n; ++k) {
                    cd xp = h(k, p), xq = h(k, q);
                    h(k, p) = c * xp - s * w * xq;
                    h(k, q) = s * xp + c * w * xq;
                }
                // rows: (p, q) <- (c*p - s*conj(w)*q, s*p + c*conj(w)*q)
                for (int k = 0; k < n; ++k) {
                    cd xp = h(p, k), xq = h(q, k);
                    h(p, k) = c * xp - s * std::conj(w) * xq;
                    h(q, k) = s * xp + c * std::conj(w) * xq;
                }
                h(p, q) = 0;
                h(q, p) = 0;
                h(p, p) = std::real(h(p, p));
                h(q, q) = std::real(h(q, q));
                for (int k = 0; k < n; ++k) {
                    cd xp = v(k, p), xq = v(k, q);
                    v(k, p) = c * xp - s * w * xq;
                    v(k, q) = s * xp + c * w * xq;
                }
            }
        }
    }

    HermEig out;
    out.values.resize(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = std::real(h(i, i));
    std::sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });
    out.vectors = Mat(n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = diag[order[j]];
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

/// f applied to a Hermitian matrix through its eigendecomposition.
template <class F>
Mat hermitian_apply(const Mat& h, F&& f) {
    HermEig e = hermitian_eig(h);
    Mat d(h.n);
    for (int i = 0; i < h.n; ++i) d(i, i) = f(e.values[i]);
    return e.vectors * d * adjoint(e.vectors);
}

inline constexpr double hpd_eig_floor = 1e-14;  // relative to the top eigenvalue

/// X with X H X = Id, X Hermitian positive-definite (H^{-1/2}).
inline Mat hpd_inv_sqrt(const Mat& h) {
    HermEig e = hermitian_eig(h);
    double top = e.values.empty() ? 0 : e.values.back();
    if (top <= 0 || e.values.front() <= hpd_eig_floor * top)
        fail(errc::not_positive_definite, "matrix is not positive-definite enough to invert-sqrt");
    Mat d(h.n);
    for (int i = 0; i < h.n; ++i) d(i, i) = 1.0 / std::sqrt(e.values[i]);
    return e.vectors * d * adjoint(e.vectors);
}

inline Mat hpd_inverse(const Mat& h) {
    HermEig e = hermitian_eig(h);
    double top = e.values.empty() ? 0 : e.values.back();
    if (top <= 0 || e.values.front() <= hpd_eig_floor * top)
        fail(errc::not_positive_definite, "matrix is not positive-definite enough to invert");
    Mat d(h.n);
    for (int i = 0; i < h.n; ++i) d(i, i) = 1.0 / e.values[i];
    return e.vectors * d * adjoint(e.vectors);
}

/// Spectral condition number of an arbitrary square matrix via G^* G.
inline double cond_spectral(const Mat& g) {
    HermEig e = hermitian_eig(adjoint(g) * g);
    double lo = e.values.front(), hi = e.values.back();
    if (lo <= 0) return std::numeric_limits<double>::infinity();
    return std::sqrt(hi / lo);
}

}  // namespace dunkl
