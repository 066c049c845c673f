#include <doctest.h>

#include <cmath>

#include "soflab/pingpong.hpp"
#include "soflab/rng.hpp"

using namespace soflab;

namespace {

ProjectivePoint pt(std::vector<double> v) { return make_projective_point(std::move(v)); }

// Random SL_2(Z) element as a bounded product of the standard unipotents.
IntMatrix random_sl2(Rng& rng, std::int64_t entryBound = 50) {
    const IntMatrix up = imat_from_rows({{1, 1}, {0, 1}});
    const IntMatrix upInv = imat_from_rows({{1, -1}, {0, 1}});
    const IntMatrix low = imat_from_rows({{1, 0}, {1, 1}});
    const IntMatrix lowInv = imat_from_rows({{1, 0}, {-1, 1}});
    const IntMatrix* gens[] = {&up, &upInv, &low, &lowInv};
    IntMatrix m = imat_identity(2);
    for (int step = 0; step < 12; ++step) {
        IntMatrix next = imat_mul(m, *gens[rng.below(4)]);
        bool inBounds = true;
        for (const auto& row : next)
            for (const auto& x : row)
                if (x > entryBound || x < -entryBound) inBounds = false;
        if (!inBounds) break;
        m = std::move(next);
    }
    return m;
}

}  // namespace

TEST_CASE("projective metric") {
    CHECK(proj_metric(pt({1, 0}), pt({1, 0})) == doctest::Approx(0.0));
    CHECK(proj_metric(pt({1, 0}), pt({0, 1})) == doctest::Approx(1.0));
    CHECK(proj_metric(pt({1, 0}), pt({1, 1})) == doctest::Approx(1.0 / std::sqrt(2.0)));
    // antipodal representatives name the same line
    CHECK(proj_metric(pt({1, 2, 3}), pt({-1, -2, -3})) == doctest::Approx(0.0));

    SUBCASE("pseudometric properties on random triples") {
        Rng rng(0x909);
        for (int trial = 0; trial < 1000; ++trial) {
            auto rnd = [&] {
                std::vector<double> v(3);
                for (auto& x : v) x = static_cast<double>(rng.below(2001)) - 1000.0;
                v[0] += 0.5;  // keep away from zero vector
                return pt(v);
            };
            ProjectivePoint a = rnd(), b = rnd(), c = rnd();
            double ab = proj_metric(a, b), ba = proj_metric(b, a);
            CHECK(ab == doctest::Approx(ba));
            CHECK(proj_metric(a, c) <= proj_metric(a, b) + proj_metric(b, c) + 1e-12);
            CHECK(proj_metric(a, a) <= 1e-12);
        }
    }
}

TEST_CASE("hyperbolic classification") {
    SUBCASE("[[2,1],[1,1]] is hyperbolic with eigenvalues (3±sqrt 5)/2") {
        auto cls = classify_hyperbolic(imat_from_rows({{2, 1}, {1, 1}}));
        REQUIRE(std::holds_alternative<HyperbolicProfile>(cls));
        const auto& prof = std::get<HyperbolicProfile>(cls);
        double golden = (3.0 + std::sqrt(5.0)) / 2.0;
        CHECK(prof.moduli[0] == doctest::Approx(golden));
        CHECK(prof.moduli[1] == doctest::Approx(1.0 / golden));
        // alpha is fixed by the projective action
        ProjectivePoint image = apply_matrix(imat_from_rows({{2, 1}, {1, 1}}), prof.alpha);
        CHECK(proj_metric(image, prof.alpha) < 1e-9);
    }
    SUBCASE("identity and parabolic elements are rejected") {
        auto id = classify_hyperbolic(imat_identity(2));
        REQUIRE(std::holds_alternative<NotHyperbolic>(id));
        CHECK(std::get<NotHyperbolic>(id).reason == NotHyperbolicReason::degenerateTop);
        auto para = classify_hyperbolic(imat_from_rows({{1, 1}, {0, 1}}));
        CHECK(std::holds_alternative<NotHyperbolic>(para));
    }
    SUBCASE("matches the |trace| > 2 oracle on random SL_2 matrices") {
        Rng rng(0x7ACE);
        int hyperbolicSeen = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            IntMatrix m = random_sl2(rng);
            BigInt trace = m[0][0] + m[1][1];
            bool oracle = trace > 2 || trace < -2;
            bool classified = std::holds_alternative<HyperbolicProfile>(classify_hyperbolic(m));
            CHECK(classified == oracle);
            if (classified) ++hyperbolicSeen;
        }
        CHECK(hyperbolicSeen > 100);  // the sample genuinely exercises both branches
    }
    SUBCASE("iteration from random starts converges to alpha") {
        IntMatrix g = imat_from_rows({{2, 1}, {1, 1}});
        auto prof = std::get<HyperbolicProfile>(classify_hyperbolic(g));
        Rng rng(0xF1BB);
        IntMatrix g16 = imat_pow(g, 16);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> v{static_cast<double>(rng.below(2001)) - 1000.0,
                                  static_cast<double>(rng.below(2001)) - 1000.0};
            if (std::abs(v[0]) + std::abs(v[1]) < 1) v[0] = 1;
            ProjectivePoint x = pt(v);
            if (point_hyperplane_distance(x, prof.rho) < 1e-3) continue;  // off the repeller
            ProjectivePoint limit = apply_matrix(g16, x);
            CHECK(proj_metric(limit, prof.alpha) < 1e-5);
        }
    }
}

TEST_CASE("projection to the head plane") {
    CHECK(proj_metric(projection_pi(pt({1, 0, 0})), pt({1, 0, 0})) == doctest::Approx(0.0));
    CHECK(proj_metric(projection_pi(pt({1, 0, 1})), pt({1, 0, 0})) == doctest::Approx(0.0));
    CHECK_THROWS_AS(projection_pi(pt({0, 0, 1})), UndefinedProjection);
}

TEST_CASE("rooted system checking") {
    const IntMatrix g0 = imat_from_rows({{3, 1}, {2, 1}});
    const IntMatrix g1 = imat_from_rows({{1, 2}, {1, 3}});
    auto prof0 = std::get<HyperbolicProfile>(classify_hyperbolic(g0));
    auto prof1 = std::get<HyperbolicProfile>(classify_hyperbolic(g1));

    SUBCASE("trivial one-element system verifies vacuously") {
        RootedSystem sys;
        sys.elements = {imat_pow(g0, 4)};
        sys.sets = {BallSet{{Ball{prof0.alpha, 0.1}, Ball{prof0.alphaInv, 0.1}}}};
        auto res = check_rooted_system(sys, 200, 1e-3);
        CHECK(std::holds_alternative<SystemVerified>(res));
    }
    SUBCASE("overlapping sets are refuted with an exact witness") {
        RootedSystem sys;
        sys.elements = {imat_pow(g0, 8), imat_pow(g1, 8)};
        sys.sets = {BallSet{{Ball{prof0.alpha, 0.3}, Ball{prof0.alphaInv, 0.3}}},
                    BallSet{{Ball{prof1.alpha, 0.3}, Ball{prof1.alphaInv, 0.3}}}};
        auto res = check_rooted_system(sys, 100, 1e-3);
        REQUIRE(std::holds_alternative<SystemRefuted>(res));
        const auto& ref = std::get<SystemRefuted>(res);
        CHECK(ref.clause == 1);
        CHECK(ref.exactCertified);
        // the witness really sits inside two balls
        ProjectivePoint w = pt(ref.witness);
        int hits = 0;
        for (const auto& set : sys.sets)
            for (const auto& ball : set.balls)
                if (proj_metric(w, ball.center) < ball.radius) ++hits;
        CHECK(hits >= 2);
    }
    SUBCASE("tuned d=2 pair verifies with margin") {
        RootedSystem sys;
        sys.elements = {imat_pow(g0, 8), imat_pow(g1, 8)};
        sys.sets = {BallSet{{Ball{prof0.alpha, 0.12}, Ball{prof0.alphaInv, 0.12}}},
                    BallSet{{Ball{prof1.alpha, 0.12}, Ball{prof1.alphaInv, 0.12}}}};
        auto res = check_rooted_system(sys, 400, 1e-3);
        REQUIRE(std::holds_alternative<SystemVerified>(res));
        CHECK(std::get<SystemVerified>(res).minMargin >= 1e-3);

        // cross-oracle consistency: a verified system has no short relation
        auto freeRes = free_witness({imat_pow(g1, 8)}, 8);
        CHECK(std::holds_alternative<NoRelationUpTo>(freeRes));
        auto freePair = free_witness({imat_pow(g0, 8), imat_pow(g1, 8)}, 6);
        CHECK(std::holds_alternative<NoRelationUpTo>(freePair));
    }
    SUBCASE("non-hyperbolic inputs are rejected") {
        RootedSystem sys;
        sys.elements = {imat_identity(2)};
        sys.sets = {BallSet{{Ball{pt({1, 0}), 0.1}}}};
        CHECK_THROWS_AS(check_rooted_system(sys, 10, 1e-3), InvalidInput);
    }
    SUBCASE("an oversized margin demand is inconclusive, not refuted") {
        RootedSystem sys;
        sys.elements = {imat_pow(g0, 8), imat_pow(g1, 8)};
        sys.sets = {BallSet{{Ball{prof0.alpha, 0.12}, Ball{prof0.alphaInv, 0.12}}},
                    BallSet{{Ball{prof1.alpha, 0.12}, Ball{prof1.alphaInv, 0.12}}}};
        auto res = check_rooted_system(sys, 200, 0.5);
        REQUIRE(std::holds_alternative<SystemInconclusive>(res));
        CHECK(std::get<SystemInconclusive>(res).worstSlack < 0.5);
        CHECK(std::get<SystemInconclusive>(res).worstSlack > 0.0);
    }
}

TEST_CASE("free witness search") {
    SUBCASE("the standard rank-2 unipotent pair has no short relation") {
        auto res = free_witness({imat_from_rows({{1, 2}, {0, 1}}),
                                 imat_from_rows({{1, 0}, {2, 1}})},
                                8);
        REQUIRE(std::holds_alternative<NoRelationUpTo>(res));
        CHECK(std::get<NoRelationUpTo>(res).maxLen == 8);
    }
    SUBCASE("commuting powers of a common matrix yield the length-4 commutator") {
        IntMatrix m = imat_from_rows({{2, 1}, {1, 1}});
        auto res = free_witness({imat_pow(m, 2), imat_pow(m, 3)}, 8);
        REQUIRE(std::holds_alternative<RelationFound>(res));
        CHECK(word_to_string(std::get<RelationFound>(res).word) == "g0 g1 g0^-1 g1^-1");
    }
    SUBCASE("a single infinite-order matrix is free of rank one") {
        auto res = free_witness({imat_from_rows({{2, 1}, {1, 1}})}, 8);
        CHECK(std::holds_alternative<NoRelationUpTo>(res));
    }
    SUBCASE("budget is enforced") {
        std::vector<IntMatrix> many(6, imat_from_rows({{1, 2}, {0, 1}}));
        CHECK_THROWS_AS(free_witness(many, 12, 1000), ScaleExceeded);
    }
}

TEST_CASE("exact integer matrix helpers") {
    IntMatrix m = imat_from_rows({{2, 1}, {1, 1}});
    CHECK(imat_det(m) == 1);
    CHECK(imat_is_projective_identity(imat_mul(m, imat_inverse(m))));
    IntMatrix minusId = imat_from_rows({{-1, 0}, {0, -1}});
    CHECK(imat_is_projective_identity(minusId));
    CHECK_FALSE(imat_is_projective_identity(m));
    CHECK_THROWS_AS(imat_inverse(imat_from_rows({{2, 0}, {0, 2}})), InvalidInput);
}
