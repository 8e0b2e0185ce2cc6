#pragma once

#include <complex>
#include <vector>

#include "dunkl/scalar.hpp"

namespace dunkl {

/// Complex number over an arbitrary scalar field K (Gaussian rationals when
/// K = Rational). std::complex is only specified for the builtin floating
/// types, hence this small stand-in that works for both modes.
template <class K>
struct Cx {
    K re{};
    K im{};

    Cx() = default;
    Cx(K r) : re(std::move(r)) {}
    Cx(K r, K i) : re(std::move(r)), im(std::move(i)) {}

    bool operator==(const Cx&) const = default;

    Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
    Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
    Cx operator-() const { return {-re, -im}; }
    Cx operator*(const Cx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }

    Cx& operator+=(const Cx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cx& operator-=(const Cx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Cx& operator*=(const Cx& o) { return *this = *this * o; }

    Cx conj() const { return {re, -im}; }

    /// |z|^2, exact in exact mode.
    K norm2() const { return re * re + im * im; }

    Cx operator/(const Cx& o) const {
        K n = o.norm2();
        Cx t = *this * o.conj();
        return {t.re / n, t.im / n};
    }

    bool is_exact_zero() const { return re == K(0) && im == K(0); }
};

template <class K>
Cx<K> operator*(const K& s, const Cx<K>& z) {
    return {s * z.re, s * z.im};
}

template <class K>
std::complex<double> to_complexd(const Cx<K>& z) {
    return {to_double(z.re), to_double(z.im)};
}

template <class K>
using CVec = std::vector<Cx<K>>;

/// Hermitian pairing <x, y> = sum x_k conj(y_k): linear in the first slot,
/// conjugate-linear in the second.
template <class K>
Cx<K> hermitian_dot(const CVec<K>& x, const CVec<K>& y) {
    Cx<K> acc;
    for (std::size_t k = 0; k < x.size(); ++k) acc += x[k] * y[k].conj();
    return acc;
}

template <class K>
K norm2_of(const CVec<K>& v) {
    K acc(0);
    for (const auto& z : v) acc += z.norm2();
    return acc;
}

}  // namespace dunkl
