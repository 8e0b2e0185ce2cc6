// Acceptance suite: desk-scale reproduction of the library's contract, one
// criterion per line. Exit code = number of failed criteria.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "test_support.hpp"

using namespace dunkl;
using namespace testsup;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

Arrangement<Rational> coordinate_planes() {
    return validate_arrangement<Rational>(3, {{Cx<Rational>{Rational(1)}, {}, {}},
                                              {{}, Cx<Rational>{Rational(1)}, {}},
                                              {{}, {}, Cx<Rational>{Rational(1)}}});
}

// 1. braid(4), a = 1: the full pipeline end to end, exact where possible.
void criterion_1(Check& c) {
    auto arr = catalog::braid(4);
    IntersectionPoset poset = enumerate_flats(arr);
    WeightVector<Rational> ones(6, Rational(1));

    auto stab = stability_report(poset, ones);
    c.require(stab.stable, "stable");
    c.require(stab.rows[stab.worst_row].margin == Rational(1, 2), "worst margin = 1/2");

    auto qe = q_evaluate(poset, ones);
    c.require(qe.Q == Rational(0), "Q = 0 exactly");
    for (int i = 0; i < 6; ++i) c.require(qe.s[i] == Rational(4), "s_i = 4");

    auto verdict = dunkl_decision(arr, poset, ones);
    c.require(verdict.balance_result.has_value() && verdict.balance_result->converged(),
              "balance converged");
    if (verdict.balance_result) {
        c.require(verdict.balance_result->residual < 1e-12, "balance residual < 1e-12");
        c.require(verdict.balance_result->iterations <= 10000, "iterations <= 10000");
    }
    c.require(verdict.condition_f.has_value() && verdict.condition_f->max_commutator < 1e-8,
              "max commutator < 1e-8");
    c.require(verdict.decision == Decision::dunkl, "decision = dunkl");
    c.require(verdict.consistent(), "internally consistent");
}

// 2. d = 2 vanishing: Q == 0 exactly for random line arrangements.
void criterion_2(Check& c) {
    Rng rng(10002);
    for (int n = 3; n <= 8; ++n) {
        auto arr = random_exact_arrangement(n, 2, rng);
        IntersectionPoset poset = enumerate_flats(arr);
        for (int t = 0; t < 100; ++t) {
            auto w = random_rational_weights(n, rng, 1, 192, 32);
            if (q_evaluate(poset, w).Q != Rational(0)) {
                c.require(false, "nonzero Q at n = " + std::to_string(n));
                return;
            }
        }
    }
}

// 3. Theorem 3.1 inequality across the catalog, 1000 stable draws each.
void criterion_3(Check& c) {
    Rng rng(10003);
    struct Named {
        std::string name;
        IntersectionPoset poset;
    };
    std::vector<Named> exact_posets{{"braid(4)", enumerate_flats(catalog::braid(4))},
                                    {"braid(5)", enumerate_flats(catalog::braid(5))},
                                    {"full_monomial_B(3)", enumerate_flats(catalog::full_monomial_B(3))},
                                    {"generic(5,3)", enumerate_flats(catalog::generic(5, 3, 1))}};
    for (auto& [name, poset] : exact_posets) {
        for (int t = 0; t < 1000; ++t) {
            auto w = random_stable_weights<Rational>(poset, rng);
            auto qe = q_evaluate(poset, w);
            if (!(qe.Q <= Rational(0))) {
                c.require(false, name + ": Q > 0 on a stable weight");
                return;
            }
            Rational mx(0);
            for (const auto& r : qe.critq_residual) mx = std::max(mx, abs_scalar(r));
            if (mx > qe.total / Rational(1000000) && !(qe.Q < Rational(0))) {
                c.require(false, name + ": large critQ residual but Q = 0");
                return;
            }
        }
    }
    for (int k = 3; k <= 6; ++k) {
        IntersectionPoset poset = enumerate_flats(catalog::dihedral_lines(k));
        for (int t = 0; t < 1000; ++t) {
            auto w = random_stable_weights<double>(poset, rng);
            auto qe = q_evaluate(poset, w);
            double total = to_double(qe.total);
            if (!(to_double(qe.Q) <= 1e-10 * total * total)) {
                c.require(false, "dihedral(" + std::to_string(k) + "): Q above float tolerance");
                return;
            }
        }
    }
}

// 4. Theorem 3.2 equivalence battery, 200 random weights per arrangement.
void criterion_4(Check& c) {
    Rng rng(10004);
    long checked = 0, dunkl_cases = 0;

    auto battery = [&](const auto& arr, const std::string& name) {
        IntersectionPoset poset = enumerate_flats(arr);
        using K = typename std::decay_t<decltype(arr.normals[0][0].re)>;
        for (int t = 0; t < 200; ++t) {
            WeightVector<K> w;
            if constexpr (is_exact_v<K>)
                w = random_rational_weights(arr.n(), rng, 1, 128, 32);
            else
                w = random_double_weights(arr.n(), rng, 0.25, 2.0);
            auto v = dunkl_decision(arr, poset, w);
            ++checked;
            if (!v.consistent()) {
                c.require(false, name + ": internal inconsistency");
                return false;
            }
            if (v.stable_and_q_zero != v.stable_and_critq_zero) {
                c.require(false, name + ": predicates (2) and (3) disagree");
                return false;
            }
            if (v.stable_and_q_zero) {
                ++dunkl_cases;
                bool ok = v.balance_result && v.balance_result->converged() && v.condition_f &&
                          v.condition_f->passed && v.decision == Decision::dunkl;
                if (!ok) {
                    c.require(false, name + ": stable & Q = 0 but pipeline failed");
                    return false;
                }
            }
        }
        return true;
    };

    if (!battery(catalog::braid(4), "braid(4)")) return;
    if (!battery(catalog::braid(5), "braid(5)")) return;
    if (!battery(catalog::full_monomial_B(3), "full_monomial_B(3)")) return;
    if (!battery(catalog::generic(5, 3, 1), "generic(5,3)")) return;
    for (int k = 3; k <= 6; ++k)
        if (!battery(catalog::dihedral_lines(k), "dihedral_lines(" + std::to_string(k) + ")")) return;
    c.require(checked == 200 * 8, "battery size");
    c.require(dunkl_cases > 0, "battery exercised the positive branch");
    c.detail << "positive cases: " << dunkl_cases;
}

// 5. Gradient against finite differences; exact linear and Euler identities.
void criterion_5(Check& c) {
    Rng rng(10005);
    std::vector<Arrangement<Rational>> pool{catalog::braid(4), catalog::braid(5),
                                            catalog::full_monomial_B(3), catalog::generic(5, 3, 1)};
    for (const auto& arr : pool) {
        auto farr = to_float(arr);
        IntersectionPoset poset = enumerate_flats(farr);
        for (int t = 0; t < 100; ++t) {
            auto w = random_double_weights(farr.n(), rng, 0.25, 2.0);
            auto ev = q_evaluate(poset, w);
            auto fd = fd_gradient(poset, w);
            double scale = 1.0;
            for (double g : fd) scale = std::max(scale, std::fabs(g));
            for (int i = 0; i < farr.n(); ++i)
                if (std::fabs(to_double(ev.grad[i]) - fd[i]) > 1e-6 * scale) {
                    c.require(false, "finite-difference mismatch");
                    return;
                }
        }
        IntersectionPoset eposet = enumerate_flats(arr);
        for (int t = 0; t < 100; ++t) {
            auto w = random_rational_weights(arr.n(), rng, -96, 96, 32);
            auto ev = q_evaluate(eposet, w);
            Rational level = Rational(arr.dim - 1) * ev.total / Rational(arr.dim);
            Rational dot(0);
            for (int i = 0; i < arr.n(); ++i) {
                if (ev.s[i] + ev.grad[i] != level) {
                    c.require(false, "linear identity failed");
                    return;
                }
                dot += w[i] * ev.grad[i];
            }
            if (Rational(2) * ev.Q != dot) {
                c.require(false, "Euler identity failed");
                return;
            }
        }
    }
}

// 6. Welch bound and equality-case agreement on 1000 random frames.
void criterion_6(Check& c) {
    Rng rng(10006);
    for (int t = 0; t < 1000; ++t) {
        int d = static_cast<int>(rng.range(2, 6));
        int n = static_cast<int>(rng.range(d, 5 * d));
        FrameConfig f;
        for (int i = 0; i < n; ++i) {
            cdvec v(d);
            for (cd& z : v) z = cd{rng.uniform(-1, 1), rng.uniform(-1, 1)};
            f.vectors.push_back(std::move(v));
        }
        auto w = welch_gap(f);
        if (w.lhs < w.rhs - 1e-12 * w.rhs) {
            c.require(false, "Welch inequality violated");
            return;
        }
        Mat s = frame_operator(f);
        double tr = std::real(trace(s));
        bool op_tight = frobenius(s - cd(tr / d) * Mat::identity(d)) <= 1e-10 * tr;
        if (w.is_tight != op_tight) {
            c.require(false, "tightness detectors disagree");
            return;
        }
    }
    // constructed tight frames must pass both detectors
    IntersectionPoset poset = enumerate_flats(catalog::dihedral_lines(5));
    auto bal = balance(catalog::dihedral_lines(5), poset, WeightVector<double>(5, 1.0));
    FrameConfig f;
    f.vectors = bal.balanced_frame;
    auto w = welch_gap(f);
    Mat s = frame_operator(f);
    double tr = std::real(trace(s));
    c.require(w.is_tight && frobenius(s - cd(tr / 2) * Mat::identity(2)) <= 1e-10 * tr,
              "balanced unit frame not detected as tight");
}

// 7. Weight finder: feasibility, infeasibility with grid-search confirmation,
//    and verified sampling.
void criterion_7(Check& c) {
    {
        IntersectionPoset poset = enumerate_flats(catalog::braid(4));
        auto res = find_dunkl_weights<Rational>(poset);
        c.require(res.feasible && res.slack > Rational(0), "braid(4) feasible");
        WeightVector<Rational> ones(6, Rational(1, 2));  // all-ones direction, sum = d
        auto cone = stability_cone<Rational>(poset);
        c.require(cone_contains(cone, ones), "all-ones direction interior");
        auto qe = q_evaluate(poset, ones);
        for (const auto& r : qe.critq_residual)
            c.require(r == Rational(0), "all-ones direction solves critQ");
    }
    {
        IntersectionPoset poset = enumerate_flats(catalog::generic(5, 3, 1));
        auto res = find_dunkl_weights<Rational>(poset);
        c.require(!res.feasible && res.dimension == 0, "generic(5,3) infeasible, nullity 0");
        // simplex grid at resolution 1/20: no stable point with critQ residual < 1e-9
        const int n = 5, steps = 20;
        long visited = 0;
        std::vector<int> k(n);
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (!c.ok) return;
            if (pos == n - 1) {
                if (left < 1) return;
                k[pos] = left;
                ++visited;
                WeightVector<Rational> w(n);
                for (int i = 0; i < n; ++i) w[i] = Rational(3L * k[i], steps);
                if (!stability_report(poset, w).stable) return;
                auto qe = q_evaluate(poset, w);
                Rational mx(0);
                for (const auto& r : qe.critq_residual) mx = std::max(mx, abs_scalar(r));
                if (mx < Rational(1, 1000000000))
                    c.require(false, "grid point defeats infeasibility certificate");
                return;
            }
            for (int v = 1; v <= left - (n - 1 - pos); ++v) {
                k[pos] = v;
                rec(pos + 1, left - v);
            }
        };
        rec(0, steps);
        c.require(visited == 3876, "grid size C(19,4)");
    }
    {
        auto arr = catalog::full_monomial_B(3);
        IntersectionPoset poset = enumerate_flats(arr);
        auto res = find_dunkl_weights<Rational>(poset);
        c.require(res.feasible, "full_monomial_B(3) feasible");
        c.require(res.dimension >= 2, "null-space dimension >= 2");
        auto samples = sample_feasible(poset, res, 10, 10007);
        c.require(samples.size() == 10, "10 samples drawn");
        for (const auto& w : samples) {
            auto v = dunkl_decision(arr, poset, w);
            if (v.decision != Decision::dunkl || !v.consistent()) {
                c.require(false, "a sampled weight vector failed dunkl_decision");
                return;
            }
        }
    }
}

// 8. Balance uniqueness up to scale; divergence certificate on unstable input.
void criterion_8(Check& c) {
    auto arr = catalog::braid(4);
    IntersectionPoset poset = enumerate_flats(arr);
    WeightVector<Rational> ones(6, Rational(1));
    Rng rng(10008);
    BalanceOptions o1, o2;
    o1.initial_gauge = random_invertible(3, rng);
    o2.initial_gauge = random_invertible(3, rng);
    auto r1 = balance(arr, poset, ones, o1);
    auto r2 = balance(arr, poset, ones, o2);
    c.require(r1.converged() && r2.converged(), "both random-start runs converged");
    if (r1.converged() && r2.converged()) {
        Mat m1 = cd(1.0 / std::real(trace(r1.metric))) * r1.metric;
        Mat m2 = cd(1.0 / std::real(trace(r2.metric))) * r2.metric;
        c.require(frobenius(m1 - m2) < 1e-8, "trace-normalized metrics differ < 1e-8");
    }

    auto dih = catalog::dihedral_lines(3);
    auto bad = balance(dih, enumerate_flats(dih), WeightVector<double>{3, 1, 1});
    c.require(bad.status == BalanceStatus::diverged, "unstable input diverges");
    c.require(bad.certificate.has_value() && bad.certificate->members == std::vector<int>{0},
              "certificate names the violating flat {H1}");
}

// 9. Langer statistic: braid(4) equality; generic line arrangements n = 3..10.
void criterion_9(Check& c) {
    auto st = langer_statistic(enumerate_flats(catalog::braid(4)));
    c.require(st.sum_mult == 18 && st.bound == Rational(18) && st.holds,
              "braid(4): sum = bound = 18");
    for (int n = 3; n <= 10; ++n) {
        IntersectionPoset poset = n == 3 ? enumerate_flats(coordinate_planes())
                                         : enumerate_flats(catalog::generic(n, 3, 900 + n));
        auto g = langer_statistic(poset);
        bool equality = Rational(g.sum_mult) == g.bound;
        if (!(Rational(g.sum_mult) >= g.bound)) {
            c.require(false, "bound fails at n = " + std::to_string(n));
            return;
        }
        if ((n == 3) != equality) {
            c.require(false, "equality pattern wrong at n = " + std::to_string(n));
            return;
        }
        if (n > 3 && !(g.max_mult_ok && g.holds)) {
            c.require(false, "hypothesis gate wrong at n = " + std::to_string(n));
            return;
        }
    }
}

// 10. Combinatorics oracles: brute-force closures, bipartition search, pair
//     partition identity.
void criterion_10(Check& c) {
    Rng rng(10010);
    struct Entry {
        std::string name;
        std::function<IntersectionPoset()> poset;
        std::function<std::map<std::vector<int>, int>()> brute;
        std::function<bool(const std::vector<int>&)> brute_irr;
        int n;
    };

    auto run_exact = [&](const Arrangement<Rational>& arr, const std::string& name) {
        IntersectionPoset poset = enumerate_flats(arr);
        auto brute = brute_force_flats(arr);
        std::map<std::vector<int>, int> fast;
        for (const Flat& f : poset.flats) fast[f.members] = f.rank;
        if (fast != brute) {
            c.require(false, name + ": flats differ from brute force");
            return;
        }
        long pairs = 0;
        for (const Flat& f : poset.flats) {
            if (f.irreducible != brute_force_irreducible(arr, f.members)) {
                c.require(false, name + ": irreducibility mismatch");
                return;
            }
            if (f.rank == 2) pairs += static_cast<long>(f.multiplicity()) * (f.multiplicity() - 1) / 2;
        }
        long n = arr.n();
        if (pairs != n * (n - 1) / 2) c.require(false, name + ": pair partition identity");
    };

    run_exact(catalog::braid(4), "braid(4)");
    run_exact(catalog::full_monomial_B(3), "full_monomial_B(3)");
    run_exact(catalog::generic(5, 3, 1), "generic(5,3)");
    for (int rep = 0; rep < 3; ++rep)
        run_exact(random_exact_arrangement(6 + rep, 3, rng), "random#" + std::to_string(rep));

    auto dih = catalog::dihedral_lines(5);
    IntersectionPoset poset = enumerate_flats(dih);
    auto brute = brute_force_flats(dih);
    std::map<std::vector<int>, int> fast;
    for (const Flat& f : poset.flats) fast[f.members] = f.rank;
    c.require(fast == brute, "dihedral(5): float-mode flats match brute force");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* text;
        std::function<void(Check&)> fn;
    };
    const Criterion criteria[] = {
        {1, "braid(4) a=1 end-to-end: margin 1/2, Q=0, s=4, balance<1e-12, (F)<1e-8, dunkl",
         criterion_1},
        {2, "d=2 vanishing: Q==0 exactly, n=3..8 x 100 random weights", criterion_2},
        {3, "theorem 3.1: Q<=0 on 1000 stable draws per arrangement (exact/float)", criterion_3},
        {4, "theorem 3.2 battery: predicates agree, positive cases pass balance+(F)", criterion_4},
        {5, "gradient vs finite differences; exact linear + Euler identities", criterion_5},
        {6, "Welch bound on 1000 random frames; equality detectors agree", criterion_6},
        {7, "weight finder: braid(4) feasible, generic(5,3) infeasible + grid, B3 sampled",
         criterion_7},
        {8, "balance uniqueness up to scale; divergence certificate", criterion_8},
        {9, "langer statistic: braid(4) equality, generic n=3..10", criterion_9},
        {10, "combinatorics oracles: brute-force flats, bipartitions, pair partition",
         criterion_10},
    };

    int failures = 0;
    for (const auto& cr : criteria) {
        Check check;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.fn(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (check.ok ? "[PASS]" : "[FAIL]") << " criterion " << std::setw(2) << cr.id
                  << ": " << cr.text << " (" << std::fixed << std::setprecision(2) << secs << "s"
                  << (check.detail.str().empty() ? "" : "; " + check.detail.str()) << ")\n";
        if (!check.ok) ++failures;
    }
    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criteria FAILED")
              << "\n";
    return failures;
}
