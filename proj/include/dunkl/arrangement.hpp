#pragma once

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/linear.hpp"

namespace dunkl {

/// A central arrangement of n pairwise distinct hyperplanes in C^d, each given
/// by a nonzero normal covector v_i (H_i is the kernel of <., v_i>). Normals
/// are stored exactly as given; nothing is rescaled. Immutable after
/// validation.
template <class K>
struct Arrangement {
    int dim = 0;
    std::vector<CVec<K>> normals;
    std::vector<std::string> labels;

    int n() const { return static_cast<int>(normals.size()); }
    static constexpr scalar_mode mode = mode_of<K>();
};

/// A flat of the intersection poset, encoded as the (closure-closed) sorted
/// set of hyperplane indices containing it. rank = codimension of the
/// subspace; multiplicity = |I(L)|.
struct Flat {
    std::vector<int> members;  // 0-based hyperplane indices, sorted
    int rank = 0;
    bool irreducible = false;

    int multiplicity() const { return static_cast<int>(members.size()); }
    bool operator==(const Flat&) const = default;
};

/// Intersection poset: all flats of rank 1..d (the ambient space itself is
/// excluded; the zero flat appears, as the rank-d flat, iff the arrangement is
/// essential). Rank-2 flats are split into the irreducible family G2 and the
/// reducible pairs R of the Hirzebruch setup.
struct IntersectionPoset {
    int dim = 0;
    int n = 0;
    bool essential = false;
    bool irreducible = false;
    std::vector<Flat> flats;                                // sorted by (rank, members)
    std::vector<int> rank2_irreducible;                     // flat indices (G^2)
    std::vector<std::pair<int, int>> rank2_reducible_pairs; // hyperplane pairs (R^2)

    std::vector<int> flats_of_rank(int r) const {
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(flats.size()); ++i)
            if (flats[i].rank == r) out.push_back(i);
        return out;
    }
};

namespace detail {

/// Duplicate test v_j = lambda * v_i: vanishing 2x2 minors in exact mode,
/// Cauchy-Schwarz saturation in float mode.
template <class K>
bool proportional(const CVec<K>& a, const CVec<K>& b) {
    if constexpr (is_exact_v<K>) {
        int d = static_cast<int>(a.size());
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q)
                if (!(a[p] * b[q] - a[q] * b[p]).is_exact_zero()) return false;
        return true;
    } else {
        double ip = to_double(hermitian_dot(a, b).norm2());
        double na = to_double(norm2_of(a)), nb = to_double(norm2_of(b));
        return ip >= (1.0 - 1e-12) * na * nb;
    }
}

}  // namespace detail

template <class K>
Arrangement<K> validate_arrangement(int dim, std::vector<CVec<K>> normals,
                                    std::vector<std::string> labels = {}) {
    if (dim < 2) fail(errc::dimension_mismatch, "need d >= 2, got d = " + std::to_string(dim));
    if (normals.size() < 2)
        fail(errc::dimension_mismatch, "need n >= 2 hyperplanes, got " + std::to_string(normals.size()));
    for (std::size_t i = 0; i < normals.size(); ++i) {
        if (static_cast<int>(normals[i].size()) != dim)
            fail(errc::dimension_mismatch,
                 "normal " + std::to_string(i + 1) + " has " + std::to_string(normals[i].size()) +
                     " entries, expected " + std::to_string(dim));
        bool zero = true;
        for (const auto& z : normals[i])
            if (!z.is_exact_zero()) zero = false;
        if constexpr (!is_exact_v<K>) {
            double m = 0;
            for (const auto& z : normals[i]) m = std::max(m, to_double(z.norm2()));
            zero = (m == 0.0);
        }
        if (zero) fail(errc::zero_normal, "normal " + std::to_string(i + 1) + " is zero");
    }
    for (std::size_t i = 0; i < normals.size(); ++i)
        for (std::size_t j = i + 1; j < normals.size(); ++j)
            if (detail::proportional(normals[i], normals[j]))
                fail(errc::duplicate_hyperplane, "normals " + std::to_string(i + 1) + " and " +
                                                     std::to_string(j + 1) +
                                                     " define the same hyperplane");
    if (!labels.empty() && labels.size() != normals.size())
        fail(errc::length_mismatch, "labels/normals size mismatch");
    if (labels.empty())
        for (std::size_t i = 0; i < normals.size(); ++i) labels.push_back("H" + std::to_string(i + 1));
    return Arrangement<K>{dim, std::move(normals), std::move(labels)};
}

/// Matroid rank of a subset of hyperplane indices (dimension of the span of
/// the selected normals).
template <class K>
int rank(const Arrangement<K>& arr, const std::vector<int>& index_set) {
    SpanBasis<K> span(arr.dim);
    for (int i : index_set) span.insert(arr.normals[i]);
    return span.rank();
}

/// Matroid connectivity of the localized configuration {v_i : i in members}
/// via the fundamental-circuit graph of an arbitrary basis: each non-basis
/// element is joined to the basis elements appearing with nonzero coefficient
/// in its expansion; the configuration is irreducible iff the graph is
/// connected. (Single elements are irreducible.)
template <class K>
bool classify_members_irreducible(const Arrangement<K>& arr, const std::vector<int>& members) {
    int m = static_cast<int>(members.size());
    if (m <= 1) return true;

    SpanBasis<K> span(arr.dim);
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

    std::vector<int> basis_pos;  // positions (in members) of the greedy basis
    for (int pos = 0; pos < m; ++pos) {
        const CVec<K>& v = arr.normals[members[pos]];
        if (span.insert(v)) {
            basis_pos.push_back(pos);
            continue;
        }
        auto coords = span.express(v);
        if (!coords) fail(errc::bad_input, "span bookkeeping failure");  // cannot happen
        double scale = 0;
        for (const auto& c : *coords) scale = std::max(scale, std::sqrt(to_double(c.norm2())));
        for (std::size_t g = 0; g < coords->size(); ++g) {
            const Cx<K>& c = (*coords)[g];
            bool nz;
            if constexpr (is_exact_v<K>)
                nz = !c.is_exact_zero();
            else
                nz = std::sqrt(to_double(c.norm2())) > eps_rank * (scale > 0 ? scale : 1.0);
            if (nz) unite(pos, basis_pos[g]);
        }
    }
    int root = find(0);
    for (int pos = 1; pos < m; ++pos)
        if (find(pos) != root) return false;
    return true;
}

/// Closure of a nonempty index set: all hyperplanes whose normal lies in the
/// span of the selected normals. Returns a fully classified Flat.
template <class K>
Flat closure(const Arrangement<K>& arr, const std::vector<int>& index_set) {
    SpanBasis<K> span(arr.dim);
    for (int i : index_set) span.insert(arr.normals[i]);
    Flat f;
    f.rank = span.rank();
    for (int i = 0; i < arr.n(); ++i)
        if (span.contains(arr.normals[i])) f.members.push_back(i);
    f.irreducible = classify_members_irreducible(arr, f.members);
    return f;
}

/// Reducible/irreducible classification of an existing flat.
template <class K>
bool classify_flat(const Arrangement<K>& arr, const Flat& flat) {
    return classify_members_irreducible(arr, flat.members);
}

/// essential <=> the normals span C^d; irreducible <=> the full configuration
/// is matroid-connected.
template <class K>
std::pair<bool, bool> global_properties(const Arrangement<K>& arr) {
    std::vector<int> all(arr.n());
    std::iota(all.begin(), all.end(), 0);
    bool essential = rank(arr, all) == arr.dim;
    bool irr = classify_members_irreducible(arr, all);
    return {essential, irr};
}

/// Enumerates every flat of rank 1..d by closing rank-k flats against one new
/// hyperplane at a time.
template <class K>
IntersectionPoset enumerate_flats(const Arrangement<K>& arr) {
    IntersectionPoset poset;
    poset.dim = arr.dim;
    poset.n = arr.n();

    std::map<std::vector<int>, Flat> seen;
    std::vector<std::vector<int>> frontier;  // member sets at the current rank
    for (int i = 0; i < arr.n(); ++i) {
        Flat f = closure(arr, {i});
        if (!seen.count(f.members)) {
            frontier.push_back(f.members);
            seen.emplace(f.members, std::move(f));
        }
    }
    int max_rank = 1;
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& base : frontier) {
            for (int j = 0; j < arr.n(); ++j) {
                if (std::binary_search(base.begin(), base.end(), j)) continue;
                std::vector<int> gen = base;
                gen.push_back(j);
                Flat f = closure(arr, gen);
                if (seen.count(f.members)) continue;
                max_rank = std::max(max_rank, f.rank);
                next.push_back(f.members);
                seen.emplace(f.members, std::move(f));
            }
        }
        frontier = std::move(next);
    }

    for (auto& [members, flat] : seen) poset.flats.push_back(std::move(flat));
    std::sort(poset.flats.begin(), poset.flats.end(), [](const Flat& a, const Flat& b) {
        return a.rank != b.rank ? a.rank < b.rank : a.members < b.members;
    });

    poset.essential = (max_rank == arr.dim);
    poset.irreducible = classify_members_irreducible(
        arr, [&] {
            std::vector<int> all(arr.n());
            std::iota(all.begin(), all.end(), 0);
            return all;
        }());
    for (int i = 0; i < static_cast<int>(poset.flats.size()); ++i) {
        const Flat& f = poset.flats[i];
        if (f.rank != 2) continue;
        if (f.irreducible)
            poset.rank2_irreducible.push_back(i);
        else
            poset.rank2_reducible_pairs.emplace_back(f.members[0], f.members[1]);
    }
    return poset;
}

/// Gate shared by everything downstream of the paper's standing assumption.
inline void require_essential_irreducible(const IntersectionPoset& poset) {
    if (!poset.essential || !poset.irreducible)
        fail(errc::not_essential_or_reducible,
             std::string("arrangement is ") + (poset.essential ? "" : "not essential") +
                 (!poset.essential && !poset.irreducible ? " and " : "") +
                 (poset.irreducible ? "" : "reducible"));
}

}  // namespace dunkl
