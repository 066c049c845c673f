#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "soflab/rng.hpp"
#include "soflab/schreier.hpp"

using namespace soflab;

namespace {

MultiGraph complete_graph(std::size_t n) {
    MultiGraph g(n);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v, "k");
    g.finalize();
    return g;
}

MultiGraph cycle_graph(std::size_t n) {
    LabeledAction action(n);
    Perm shift(n);
    for (std::size_t i = 0; i < n; ++i) shift[i] = static_cast<std::uint32_t>((i + 1) % n);
    action.add_generator("s", shift, "S");
    return build_schreier(action, "S");
}

// Two random permutations give a 4-regular Schreier multigraph.
MultiGraph random_4regular(std::size_t n, Rng& rng) {
    LabeledAction action(n);
    for (int g = 0; g < 2; ++g) {
        std::vector<std::uint32_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
        rng.shuffle(perm);
        action.add_generator("g" + std::to_string(g), perm, "S");
    }
    return build_schreier(action, "S");
}

}  // namespace

TEST_CASE("build_schreier basics") {
    SUBCASE("identity generator gives self-loops") {
        LabeledAction action(3);
        action.add_generator("e", identity_perm(3), "S");
        MultiGraph g = build_schreier(action, "S");
        CHECK(g.edges().size() == 3);
        for (const auto& e : g.edges()) CHECK(e.u == e.v);
        CHECK(g.regular_degree() == 2);
    }
    SUBCASE("cyclic shift gives C_6") {
        MultiGraph g = cycle_graph(6);
        CHECK(g.vertices() == 6);
        CHECK(g.edges().size() == 6);
        CHECK(g.regular_degree() == 2);
        CHECK(g.component_count() == 1);
    }
}

TEST_CASE("schreier components coincide with orbit blocks") {
    LabeledAction action = projective_action(5, 2);
    MultiGraph g = build_schreier(action, "psl2block");
    OrbitPartition part = orbit_partition(action, "psl2block");
    auto ids = g.component_ids();
    std::set<std::set<std::uint32_t>> fromGraph, fromOrbits;
    std::map<std::uint32_t, std::set<std::uint32_t>> byId;
    for (std::uint32_t v = 0; v < g.vertices(); ++v) byId[ids[v]].insert(v);
    for (const auto& [_, s] : byId) fromGraph.insert(s);
    for (const auto& blk : part.blocks) fromOrbits.insert({blk.begin(), blk.end()});
    CHECK(fromGraph == fromOrbits);
}

TEST_CASE("edge boundary") {
    MultiGraph c6 = cycle_graph(6);
    CHECK(edge_boundary(c6, {0, 1, 2, 3, 4, 5}) == 0);
    CHECK(edge_boundary(c6, {0, 1, 2}) == 2);
    MultiGraph k4 = complete_graph(4);
    CHECK(edge_boundary(k4, {0, 1}) == 4);
    CHECK_THROWS_AS(edge_boundary(c6, {7}), OutOfRange);

    SUBCASE("boundary of W equals boundary of the complement") {
        Rng rng(0x0B0B);
        for (int trial = 0; trial < 50; ++trial) {
            MultiGraph g = random_4regular(10, rng);
            std::vector<bool> mask(10, false);
            for (int i = 0; i < 10; ++i) mask[i] = rng.coin();
            std::vector<bool> conj(10);
            for (int i = 0; i < 10; ++i) conj[i] = !mask[i];
            CHECK(edge_boundary_mask(g, mask) == edge_boundary_mask(g, conj));
        }
    }
}

TEST_CASE("exact expansion") {
    CHECK(expansion_exact(complete_graph(4)).value == Rational(2));
    ExactExpansion c6 = expansion_exact(cycle_graph(6));
    CHECK(c6.value == Rational(2, 3));
    CHECK(c6.witness == std::vector<std::uint32_t>{0, 1, 2});

    MultiGraph single(1);
    single.add_edge(0, 0, "loop");
    single.finalize();
    CHECK_THROWS_AS(expansion_exact(single), InvalidInput);

    MultiGraph big(25);
    CHECK_THROWS_AS(expansion_exact(big), ScaleExceeded);
}

TEST_CASE("spectral expansion") {
    SUBCASE("C_6 interval contains 2/3 and lambda2 matches the closed form") {
        SpectralExpansion s = expansion_spectral(cycle_graph(6));
        CHECK(s.connected);
        CHECK(s.lambda2 == doctest::Approx(0.5).epsilon(1e-7));  // 1 - cos(pi/3)
        CHECK(s.lo <= doctest::Approx(2.0 / 3.0));
        CHECK(s.hi >= doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("disconnected graphs short-circuit to [0, 0]") {
        LabeledAction action(6);
        Perm p{1, 0, 3, 2, 5, 4};  // three components
        action.add_generator("g", p, "S");
        SpectralExpansion s = expansion_spectral(build_schreier(action, "S"));
        CHECK_FALSE(s.connected);
        CHECK(s.lambda2 == 0.0);
        CHECK(s.lo == 0.0);
        CHECK(s.hi == 0.0);
    }
    SUBCASE("interval contains the exact value on random 4-regular multigraphs") {
        Rng rng(0x5151);
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t n = 8 + rng.below(9);  // 8..16
            MultiGraph g = random_4regular(n, rng);
            ExactExpansion exact = expansion_exact(g);
            SpectralExpansion spectral = expansion_spectral(g);
            double e = to_double(exact.value);
            CHECK(spectral.lo <= e + 1e-6);
            CHECK(spectral.hi >= e - 1e-6);
        }
    }
    SUBCASE("non-regular graphs are rejected") {
        MultiGraph g(3);
        g.add_edge(0, 1, "x");
        g.finalize();
        CHECK_THROWS_AS(expansion_spectral(g), NotRegular);
    }
    SUBCASE("power iteration agrees with a dense symmetric eigensolver") {
        Rng rng(0xE16E);
        std::vector<MultiGraph> graphs;
        for (int trial = 0; trial < 10; ++trial) graphs.push_back(random_4regular(12, rng));
        graphs.push_back(build_schreier(projective_action(5, 2), "full"));
        for (const auto& g : graphs) {
            if (g.component_count() != 1) continue;
            SpectralExpansion s = expansion_spectral(g);
            std::int64_t k = *g.regular_degree();
            Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(g.vertices(), g.vertices());
            for (const auto& e : g.edges()) {
                if (e.u == e.v) {
                    lap(e.u, e.u) -= 2.0 / static_cast<double>(k);
                } else {
                    lap(e.u, e.v) -= 1.0 / static_cast<double>(k);
                    lap(e.v, e.u) -= 1.0 / static_cast<double>(k);
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
            CHECK(s.lambda2 == doctest::Approx(es.eigenvalues()[1]).epsilon(1e-6));
        }
    }
}

TEST_CASE("covering ratio invariance: PSL_2(F_5) Cayley over P^1(F_5)") {
    auto gens = psl2_block_generators(2, 5);
    CayleyData cayley = cayley_action({{"a", gens[0]}, {"b", gens[1]}}, true);
    MultiGraph cover = build_schreier(cayley.action, "S");

    ProjectiveSpace space(2, 5);
    LabeledAction baseAction(space.size());
    baseAction.add_generator("a", space.permutation_of(gens[0]), "S");
    baseAction.add_generator("b", space.permutation_of(gens[1]), "S");
    MultiGraph base = build_schreier(baseAction, "S");

    std::vector<std::uint32_t> fiberMap;
    for (const auto& g : cayley.elements)
        fiberMap.push_back(static_cast<std::uint32_t>(space.index_of({g.at(0, 0), g.at(1, 0)})));

    CHECK(cover.vertices() == 60);
    CHECK(base.vertices() == 6);
    CoveringCheckReport rep = covering_ratio_check(cover, base, fiberMap, 100, 0xC0FFEE);
    CHECK(rep.fiberSize == 10);
    CHECK(rep.allEqual);

    SUBCASE("identity covering is trivially ratio-preserving") {
        std::vector<std::uint32_t> idMap(base.vertices());
        for (std::uint32_t v = 0; v < base.vertices(); ++v) idMap[v] = v;
        CHECK(covering_ratio_check(base, base, idMap, 20, 1).allEqual);
    }

    SUBCASE("corrupting one image breaks the local bijection") {
        auto bad = fiberMap;
        bad[0] = (bad[0] + 1) % 6;
        CHECK_THROWS_AS(covering_ratio_check(cover, base, bad, 10, 1), NotACovering);
    }
}

TEST_CASE("edge list and DOT formats") {
    MultiGraph c6 = cycle_graph(6);
    std::istringstream in(to_edge_list(c6));
    MultiGraph back = graph_from_edge_list(in);
    CHECK(back.vertices() == 6);
    CHECK(back.edges().size() == 6);
    CHECK(back.edges() == c6.edges());

    std::string dot = to_dot(c6);
    std::size_t edgeLines = 0, pos = 0;
    while ((pos = dot.find("--", pos)) != std::string::npos) {
        ++edgeLines;
        pos += 2;
    }
    CHECK(edgeLines == 6);
}
