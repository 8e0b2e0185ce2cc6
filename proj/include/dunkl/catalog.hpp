#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dunkl/arrangement.hpp"
#include "dunkl/rng.hpp"

namespace dunkl {
namespace catalog {

/// Braid arrangement of S_m: covectors x_i - x_j (i < j), essentialized to the
/// sum-zero subspace via the fixed rational basis (e_k - e_m), k = 1..m-1.
/// In those coordinates x_i - x_j (j < m) stays e_i - e_j and x_i - x_m
/// becomes e_i + (1,...,1). d = m - 1, n = m(m-1)/2.
inline Arrangement<Rational> braid(int m) {
    if (m < 3) fail(errc::bad_params, "braid(m) needs m >= 3");
    int d = m - 1;
    std::vector<CVec<Rational>> normals;
    std::vector<std::string> labels;
    for (int i = 1; i <= m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
            CVec<Rational> w(d, Cx<Rational>{});
            for (int k = 1; k <= d; ++k) {
                long long c = (k == i ? 1 : 0) - (k == j ? 1 : 0) + (j == m ? 1 : 0);
                w[k - 1] = Cx<Rational>{Rational(c)};
            }
            normals.push_back(std::move(w));
            labels.push_back("x" + std::to_string(i) + "-x" + std::to_string(j));
        }
    }
    return validate_arrangement(d, std::move(normals), std::move(labels));
}

/// Full monomial arrangement of type B_d: x_i - x_j, x_i + x_j (i < j) and the
/// coordinate hyperplanes x_i. n = d^2.
inline Arrangement<Rational> full_monomial_B(int d) {
    if (d < 2) fail(errc::bad_params, "full_monomial_B(d) needs d >= 2");
    std::vector<CVec<Rational>> normals;
    std::vector<std::string> labels;
    auto unit = [&](int i, long long s, int j) {
        CVec<Rational> w(d, Cx<Rational>{});
        w[i] = Cx<Rational>{Rational(1)};
        if (j >= 0) w[j] = Cx<Rational>{Rational(s)};
        return w;
    };
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            normals.push_back(unit(i, -1, j));
            labels.push_back("x" + std::to_string(i + 1) + "-x" + std::to_string(j + 1));
        }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            normals.push_back(unit(i, +1, j));
            labels.push_back("x" + std::to_string(i + 1) + "+x" + std::to_string(j + 1));
        }
    for (int i = 0; i < d; ++i) {
        normals.push_back(unit(i, 0, -1));
        labels.push_back("x" + std::to_string(i + 1));
    }
    return validate_arrangement(d, std::move(normals), std::move(labels));
}

/// k equally spaced lines through the origin of C^2 (the reflection lines of
/// the dihedral group I2(k)); irrational angles make this a float family.
inline Arrangement<double> dihedral_lines(int k) {
    if (k < 2) fail(errc::bad_params, "dihedral_lines(k) needs k >= 2");
    std::vector<CVec<double>> normals;
    std::vector<std::string> labels;
    const double pi = 3.14159265358979323846;
    for (int j = 0; j < k; ++j) {
        double th = pi * static_cast<double>(j) / static_cast<double>(k);
        normals.push_back({Cx<double>{std::cos(th)}, Cx<double>{std::sin(th)}});
        labels.push_back("L" + std::to_string(j + 1));
    }
    return validate_arrangement(2, std::move(normals), std::move(labels));
}

/// Random essential irreducible arrangement with only double points: small
/// Gaussian-integer normals, redrawn until every rank-2 flat has multiplicity
/// 2. Deterministic per seed.
inline Arrangement<Rational> generic(int n, int d, std::uint64_t seed) {
    if (d < 3) fail(errc::bad_params, "generic(n, d, seed) needs d >= 3");
    if (n < d) fail(errc::bad_params, "generic(n, d, seed) needs n >= d");
    Rng rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<CVec<Rational>> normals;
        for (int i = 0; i < n; ++i) {
            CVec<Rational> v(d);
            bool zero = true;
            for (int k = 0; k < d; ++k) {
                v[k] = Cx<Rational>{rng.rational(-9, 9, 1), rng.rational(-9, 9, 1)};
                if (!v[k].is_exact_zero()) zero = false;
            }
            if (zero) {
                --i;
                continue;
            }
            normals.push_back(std::move(v));
        }
        Arrangement<Rational> arr;
        try {
            std::vector<std::string> labels;
            for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i + 1));
            arr = validate_arrangement(d, std::move(normals), std::move(labels));
        } catch (const error&) {
            continue;  // duplicate draw, try again
        }
        IntersectionPoset poset = enumerate_flats(arr);
        if (!poset.essential || !poset.irreducible) continue;
        bool all_double = true;
        for (const Flat& f : poset.flats)
            if (f.rank == 2 && f.multiplicity() != 2) all_double = false;
        if (all_double) return arr;
    }
    fail(errc::bad_params, "generic(): no generic draw found (parameters too tight?)");
}

/// Library-level alias for building an arrangement from explicit normals.
template <class K>
Arrangement<K> from_normals(int dim, std::vector<CVec<K>> normals,
                            std::vector<std::string> labels = {}) {
    return validate_arrangement(dim, std::move(normals), std::move(labels));
}

}  // namespace catalog
}  // namespace dunkl
