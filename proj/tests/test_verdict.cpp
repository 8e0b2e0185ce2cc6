#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace dunkl;
using namespace testsup;

TEST_CASE("residues: rank-1 projections scaled by the weights") {
    auto arr = catalog::dihedral_lines(3);
    auto bal = balance(arr, WeightVector<double>(3, 1.0));
    REQUIRE(bal.converged());
    ResidueSet rs = residues(bal);
    REQUIRE(rs.matrices.size() == 3);
    Mat sum(2);
    for (int i = 0; i < 3; ++i) {
        const Mat& a = rs.matrices[i];
        CHECK(std::abs(trace(a) - cd(1.0)) < 1e-12);           // tr A_i = a_i
        CHECK(frobenius(a * a - a) < 1e-12);                    // A_i^2 = a_i A_i (a_i = 1)
        CHECK(frobenius(a - adjoint(a)) < 1e-12);
        sum = sum + a;
    }
    CHECK(frobenius(sum - cd(1.5) * Mat::identity(2)) < 1e-10);  // c = 3/2

    auto braid = catalog::braid(4);
    auto bb = balance(braid, WeightVector<Rational>(6, Rational(1)));
    REQUIRE(bb.converged());
    ResidueSet brs = residues(bb);
    Mat bsum(3);
    for (const Mat& a : brs.matrices) bsum = bsum + a;
    CHECK(frobenius(bsum - cd(2.0) * Mat::identity(3)) < 1e-10);

    BalanceResult failed;
    failed.status = BalanceStatus::diverged;
    CHECK_THROWS_MATCHES(residues(failed), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::not_converged;
                         }));
}

TEST_CASE("condition F: braid(4) at a = 1 passes") {
    auto arr = catalog::braid(4);
    IntersectionPoset poset = enumerate_flats(arr);
    auto bal = balance(arr, poset, WeightVector<Rational>(6, Rational(1)));
    REQUIRE(bal.converged());
    auto rep = condition_f_check(residues(bal), poset);
    CHECK(rep.passed);
    CHECK(rep.max_commutator < 1e-8);
    CHECK(rep.characterization_passed);
    // rows cover every (flat, member) incidence at rank 2: 4*3 + 3*2
    CHECK(rep.rows.size() == 18);
    CHECK(rep.orthogonality_rows.size() == 3);
    CHECK(rep.subframe_rows.size() == 4);
    for (const auto& r : rep.orthogonality_rows) CHECK(r.inner_abs < 1e-8);
    for (const auto& r : rep.subframe_rows) CHECK(r.tight);
}

TEST_CASE("condition F: dihedral lines pass for any stable weights") {
    auto arr = catalog::dihedral_lines(5);
    IntersectionPoset poset = enumerate_flats(arr);
    Rng rng(71);
    for (int t = 0; t < 10; ++t) {
        auto w = random_stable_weights<double>(poset, rng);
        auto bal = balance(arr, poset, w);
        REQUIRE(bal.converged());
        auto rep = condition_f_check(residues(bal), poset);
        CHECK(rep.passed);
        CHECK(rep.characterization_passed);
    }
}

TEST_CASE("condition F: stable non-critical weights fail decisively") {
    auto arr = catalog::braid(4);
    IntersectionPoset poset = enumerate_flats(arr);
    WeightVector<Rational> w{Rational(2), Rational(1), Rational(1), Rational(1), Rational(1), Rational(1)};
    // stable, but s_1 = 1 + 2 + 2 = 5 != (2/3) * 7
    auto srep = stability_report(poset, w);
    CHECK(srep.stable);
    auto qe = q_evaluate(poset, w);
    CHECK(qe.s[0] == Rational(5));
    CHECK(qe.critq_residual[0] == Rational(5) - Rational(14, 3));
    CHECK(qe.Q < Rational(0));

    auto bal = balance(arr, poset, w);
    REQUIRE(bal.converged());
    auto rep = condition_f_check(residues(bal), poset);
    CHECK_FALSE(rep.passed);
    CHECK(rep.max_commutator > 1e-4);
    CHECK_FALSE(rep.characterization_passed);  // verdicts agree on failure too
}

TEST_CASE("dunkl_decision: braid(4) at a = 1 is dunkl, all predicates true") {
    auto arr = catalog::braid(4);
    auto v = dunkl_decision(arr, WeightVector<Rational>(6, Rational(1)));
    CHECK(v.decision == Decision::dunkl);
    CHECK(v.stable_and_q_zero);
    CHECK(v.stable_and_critq_zero);
    REQUIRE(v.condition_f.has_value());
    CHECK(v.condition_f->passed);
    CHECK(v.consistent());
    REQUIRE(v.balance_result.has_value());
    CHECK(v.balance_result->converged());
}

TEST_CASE("dunkl_decision: generic(5,3) at a = 1 fails on Q") {
    auto arr = catalog::generic(5, 3, 1);
    auto v = dunkl_decision(arr, WeightVector<Rational>(5, Rational(1)));
    CHECK(v.decision == Decision::not_dunkl);
    CHECK_FALSE(v.stable_and_q_zero);
    CHECK(v.consistent());
    REQUIRE(v.q_eval.has_value());
    CHECK(v.q_eval->Q == Rational(-5, 3));
    CHECK_FALSE(v.balance_result.has_value());  // balance skipped when Q != 0
    REQUIRE_FALSE(v.certificates.empty());
}

TEST_CASE("dunkl_decision: unstable dihedral(4) weights") {
    auto arr = catalog::dihedral_lines(4);
    WeightVector<double> w{3, 1, 1, 1};  // a_1 = sum/2 exactly: strictness fails
    auto v = dunkl_decision(arr, w);
    CHECK(v.decision == Decision::not_dunkl);
    REQUIRE(v.stability.has_value());
    CHECK_FALSE(v.stability->stable);
    CHECK(v.consistent());
}

TEST_CASE("dunkl_decision: not_applicable gate") {
    auto two = validate_arrangement<Rational>(
        2, {{Cx<Rational>{Rational(1)}, {}}, {{}, Cx<Rational>{Rational(1)}}});
    auto v = dunkl_decision(two, WeightVector<Rational>(2, Rational(1)));
    CHECK(v.decision == Decision::not_applicable);
    CHECK_FALSE(v.stability.has_value());
}

TEST_CASE("property: theorem 3.2 predicate equivalence on random weights") {
    Rng rng(83);
    std::vector<Arrangement<Rational>> pool{catalog::braid(4), catalog::full_monomial_B(3),
                                            catalog::generic(5, 3, 7)};
    for (const auto& arr : pool) {
        IntersectionPoset poset = enumerate_flats(arr);
        for (int t = 0; t < 120; ++t) {
            auto w = random_rational_weights(arr.n(), rng, 1, 96, 32);
            auto v = dunkl_decision(arr, poset, w);
            CHECK(v.consistent());
            CHECK(v.stable_and_q_zero == v.stable_and_critq_zero);
            if (v.stable_and_q_zero) {
                REQUIRE(v.balance_result.has_value());
                CHECK(v.balance_result->converged());
                REQUIRE(v.condition_f.has_value());
                CHECK(v.condition_f->passed);
                CHECK(v.decision == Decision::dunkl);
            }
        }
    }
}

TEST_CASE("property: theorem 3.1 inequality on random stable weights") {
    Rng rng(89);
    std::vector<Arrangement<Rational>> pool{catalog::braid(4), catalog::braid(5),
                                            catalog::full_monomial_B(3), catalog::generic(5, 3, 8)};
    for (const auto& arr : pool) {
        IntersectionPoset poset = enumerate_flats(arr);
        for (int t = 0; t < 150; ++t) {
            auto w = random_stable_weights<Rational>(poset, rng);
            auto qe = q_evaluate(poset, w);
            CHECK(qe.Q <= Rational(0));  // exact nonpositivity on the stable cone
            Rational max_res(0);
            for (const auto& r : qe.critq_residual) max_res = std::max(max_res, abs_scalar(r));
            if (max_res > Rational(1, 1000000) * qe.total) CHECK(qe.Q < Rational(0));
        }
    }
}

TEST_CASE("d = 2: every stable weight vector is dunkl (the paper's line case)") {
    Rng rng(97);
    for (int k = 3; k <= 6; ++k) {
        auto arr = catalog::dihedral_lines(k);
        IntersectionPoset poset = enumerate_flats(arr);
        for (int t = 0; t < 5; ++t) {
            auto w = random_stable_weights<double>(poset, rng);
            auto v = dunkl_decision(arr, poset, w);
            CHECK(v.decision == Decision::dunkl);
            CHECK(v.consistent());
        }
    }
}
