// Acceptance suite: one check per release criterion, each printed as a
// single pass/fail line with its runtime. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "soflab/actions.hpp"
#include "soflab/modmat.hpp"
#include "soflab/obstruction.hpp"
#include "soflab/pingpong.hpp"
#include "soflab/presentations.hpp"
#include "soflab/quotient.hpp"
#include "soflab/rng.hpp"
#include "soflab/scenario.hpp"
#include "soflab/schreier.hpp"
#include "soflab/sofic.hpp"

using namespace soflab;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<bool(std::string&)> run;
};

bool expect(bool cond, const std::string& what, std::string& notes) {
    if (!cond && notes.empty()) notes = "failed: " + what;
    return cond;
}

// --- shared helpers ---------------------------------------------------------

std::size_t brute_psl2(std::int64_t p) {
    std::size_t sl = 0;
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b)
            for (std::int64_t c = 0; c < p; ++c)
                for (std::int64_t d = 0; d < p; ++d)
                    if (((a * d - b * c) % p + p) % p == 1) ++sl;
    std::size_t scalars = 0;
    for (std::int64_t lam = 1; lam < p; ++lam)
        if (lam * lam % p == 1) ++scalars;
    return sl / scalars;
}

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

MultiGraph random_4regular(std::size_t n, Rng& rng) {
    LabeledAction action(n);
    for (int g = 0; g < 2; ++g) {
        Perm perm = identity_perm(n);
        rng.shuffle(perm);
        action.add_generator("g" + std::to_string(g), perm, "S");
    }
    return build_schreier(action, "S");
}

// --- criteria ---------------------------------------------------------------

bool criterion1_order_formula(std::string& notes) {
    bool ok = true;
    ok &= expect(psl_order(2, 3).order == BigInt(brute_psl2(3)), "psl(2,3) vs brute force", notes);
    ok &= expect(psl_order(2, 5).order == BigInt(brute_psl2(5)), "psl(2,5) vs brute force", notes);
    auto closure = bfs_closure(elementary_generators(3, 2), true, 100'000);
    ok &= expect(psl_order(3, 2).order == BigInt(closure.size()), "psl(3,2) vs closure", notes);
    BigInt independent = BigInt(31) * 30 * 28 * 24 * 16;
    ok &= expect(psl_order(5, 2).order == independent, "psl(5,2) vs independent product", notes);
    ok &= expect(psl_order(5, 2).order == 9999360, "psl(5,2) = 9999360", notes);
    return ok;
}

bool criterion2_density_instance(std::string& notes) {
    DensityReport rep = density_report(projective_action(5, 2), "full", "psl2block");
    bool ok = true;
    ok &= expect(rep.totalPoints == 31, "31 points", notes);
    ok &= expect(rep.maxBOrbit == 3, "max psl2block orbit 3", notes);
    ok &= expect(rep.minAOrbit == 31, "min full orbit 31", notes);
    ok &= expect(rep.lambda == Rational(31, 3), "lambda = 31/3", notes);
    // the literal 16-constant fails here (48 > 31); the report records the
    // exact comparison rather than asserting either reading
    ok &= expect(!rep.sixteenBoundHolds, "16*3 > 31 recorded", notes);
    return ok;
}

bool criterion3_orbit_containment(std::string& notes) {
    bool ok = true;
    for (auto [d, p] : {std::pair<int, std::int64_t>{5, 2}, {5, 3}, {3, 2}}) {
        LabeledAction action = projective_action(d, p);
        ok &= expect(orbit_containment_check(action, "full", "psl2block").contained,
                     "containment on d=" + std::to_string(d) + ",p=" + std::to_string(p), notes);
        ok &= expect(orbit_partition(action, "full").blocks.size() == 1,
                     "full family transitive", notes);
    }
    return ok;
}

bool criterion4_expansion(std::string& notes) {
    bool ok = true;
    ok &= expect(expansion_exact(complete_graph(4)).value == Rational(2), "e(K_4) = 2", notes);
    ok &= expect(expansion_exact(cycle_graph(6)).value == Rational(2, 3), "e(C_6) = 2/3", notes);

    Rng rng(0xACC4);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 8 + rng.below(9);
        MultiGraph g = random_4regular(n, rng);
        double e = to_double(expansion_exact(g).value);
        SpectralExpansion s = expansion_spectral(g);
        ok &= expect(s.lo <= e + 1e-6 && e <= s.hi + 1e-6,
                     "interval contains exact value (trial " + std::to_string(trial) + ")", notes);
        if (!g.component_ids().empty() && g.component_count() > 1)
            ok &= expect(s.lambda2 == 0.0, "disconnected lambda2 = 0", notes);
    }
    // deliberately disconnected graph
    LabeledAction action(8);
    Perm p{1, 0, 3, 2, 5, 4, 7, 6};
    action.add_generator("g", p, "S");
    SpectralExpansion s = expansion_spectral(build_schreier(action, "S"));
    ok &= expect(!s.connected && s.lambda2 == 0.0 && s.lo == 0.0 && s.hi == 0.0,
                 "disconnected graph yields lambda2 = 0", notes);
    return ok;
}

bool criterion5_covering(std::string& notes) {
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

    bool ok = expect(cover.vertices() == 60 && base.vertices() == 6, "60 over 6 covering", notes);
    CoveringCheckReport rep = covering_ratio_check(cover, base, fiberMap, 100, 0xC0E4);
    ok &= expect(rep.allEqual, "exact ratio equality on 100 random subsets", notes);
    ok &= expect(rep.fiberSize == 10, "fiber size 10", notes);
    return ok;
}

bool criterion6_sofic_model(std::string& notes) {
    bool ok = true;
    // genuine action scores zero defects
    SoficApprox model(12);
    Perm rot = identity_perm(12);
    for (int i = 0; i < 12; ++i) rot[i] = static_cast<std::uint32_t>((i + 4) % 12);
    model.assign("r", rot);
    model.add_relator(word_from_string("r r r"));
    ok &= expect(defect_report(model).maxRelatorDefect == Rational(0),
                 "genuine action has zero defects", notes);

    // pseudometric on 1000 random triples
    Rng rng(0xACC6);
    for (int trial = 0; trial < 1000; ++trial) {
        SoficApprox x(50), y(50), z(50);
        for (auto* m : {&x, &y, &z}) {
            Perm p = identity_perm(50);
            rng.shuffle(p);
            m->assign("g", p);
        }
        Rational xz = edit_distance(x, z).perLabel.at("g");
        Rational xy = edit_distance(x, y).perLabel.at("g");
        Rational yz = edit_distance(y, z).perLabel.at("g");
        Rational yx = edit_distance(y, x).perLabel.at("g");
        if (!(xz <= xy + yz) || xy != yx) {
            ok = expect(false, "pseudometric trial " + std::to_string(trial), notes);
            break;
        }
    }

    // conjugacy padding rescales defects by exactly N/|U|
    SoficApprox noisy(10);
    Perm tau = identity_perm(10);
    for (std::size_t i = 0; i + 1 < 10; i += 2) std::swap(tau[i], tau[i + 1]);
    Perm edit = identity_perm(10);
    std::swap(edit[0], edit[2]);
    noisy.assign("t", compose(tau, edit));
    noisy.add_relator(word_from_string("t t"));
    EmbeddingSpec spec{14, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}};
    Rational before = defect_report(noisy).maxRelatorDefect;
    Rational after = defect_report(conjugacy_embed(noisy, spec)).maxRelatorDefect;
    ok &= expect(before > Rational(0), "perturbed model has positive defect", notes);
    ok &= expect(after == before * Rational(10, 14), "padding rescales by N/|U|", notes);
    return ok;
}

bool criterion7_obstruction(std::string& notes) {
    bool ok = true;
    Rng rng(0xACC7);

    // badEdgeCount equals an independent brute-force recount
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 8 + rng.below(25);
        LabeledAction action(n);
        for (int g = 0; g < 2; ++g) {
            Perm p = identity_perm(n);
            rng.shuffle(p);
            action.add_generator("g" + std::to_string(g), p, "gamma");
        }
        Perm lp = identity_perm(n);
        rng.shuffle(lp);
        action.add_generator("l0", lp, "lambda");
        Perm tau = identity_perm(n);
        rng.shuffle(tau);
        ObstructionInstance inst{std::move(action)};
        inst.tau = tau;
        inst.measuredC = Rational(1, 2);
        inst.measuredLambda = Rational(3, 2);
        ObstructionEngine engine(std::move(inst));
        ObstructionReport rep = engine.bad_edge_count();

        std::size_t brute = 0;
        const auto& lambdaEdges = engine.lambda_graph().edges();
        for (const auto& e : engine.gamma_graph().edges()) {
            std::uint32_t a = tau[e.u], b = tau[e.v];
            if (a > b) std::swap(a, b);
            bool found = false;
            for (const auto& le : lambdaEdges)
                if (le.u == a && le.v == b) found = true;
            if (!found) ++brute;
        }
        ok &= expect(rep.badEdgeCount == brute,
                     "brute-force recount (trial " + std::to_string(trial) + ")", notes);
    }

    // the two arithmetic implications on 200 randomized instances
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 10 + rng.below(50);
        LabeledAction action(n);
        Perm p = identity_perm(n);
        rng.shuffle(p);
        action.add_generator("g0", p, "gamma");
        Perm lp = identity_perm(n);
        rng.shuffle(lp);
        action.add_generator("l0", lp, "lambda");
        Perm tau = random_involution(n, rng.next());
        std::size_t corrupt = rng.below(n / 4 + 1);
        for (std::size_t i = 0; i < corrupt; ++i) {
            std::size_t a = rng.below(n), b = rng.below(n);
            std::swap(tau[a], tau[b]);
        }
        ObstructionInstance inst{std::move(action)};
        inst.tau = std::move(tau);
        inst.measuredC = Rational(1, 2);
        inst.measuredLambda = Rational(3, 2);
        ObstructionReport rep = ObstructionEngine(std::move(inst)).bad_edge_count();
        ok &= expect(rep.dLowerBoundImplicationHolds,
                     "t² defect implies |D| >= 9N/20 (trial " + std::to_string(trial) + ")",
                     notes);
        ok &= expect(rep.heavyMassImplicationHolds,
                     "|D| >= 9N/20 implies heavy mass >= N/10 (trial " + std::to_string(trial) +
                         ")",
                     notes);
    }

    // P^4(F_2) with 50 random involutions: all flags hold and the bad-edge
    // bound holds in every trial. measuredC comes from the spectral lower
    // bound of the (connected, 40-regular) full-family graph.
    LabeledAction action = projective_action(5, 2);
    SpectralExpansion spec = expansion_spectral(build_schreier(action, "full"));
    Rational measuredC(static_cast<std::int64_t>(std::floor(spec.lo * 1e6)), 1'000'000);
    ok &= expect(measuredC > Rational(0), "spectral lower bound positive", notes);
    for (int trial = 0; trial < 50; ++trial) {
        Perm tau = random_involution(31, 0xACC700 + trial);
        ObstructionEngine engine(
            make_projective_instance(5, 2, std::move(tau), measuredC, Rational(31, 3)));
        ObstructionReport rep = engine.bad_edge_count();
        ok &= expect(rep.flags.all(), "all precondition flags (trial " + std::to_string(trial) +
                                          ")",
                     notes);
        ok &= expect(rep.boundHolds,
                     "bad-edge bound (trial " + std::to_string(trial) + ")", notes);
    }
    return ok;
}

bool criterion8_pingpong(std::string& notes) {
    bool ok = true;

    // |trace| > 2 oracle on 1000 random SL_2 matrices
    Rng rng(0xACC8);
    const IntMatrix up = imat_from_rows({{1, 1}, {0, 1}});
    const IntMatrix upInv = imat_from_rows({{1, -1}, {0, 1}});
    const IntMatrix low = imat_from_rows({{1, 0}, {1, 1}});
    const IntMatrix lowInv = imat_from_rows({{1, 0}, {-1, 1}});
    const IntMatrix* gens[] = {&up, &upInv, &low, &lowInv};
    for (int trial = 0; trial < 1000; ++trial) {
        IntMatrix m = imat_identity(2);
        for (int step = 0; step < 12; ++step) {
            IntMatrix next = imat_mul(m, *gens[rng.below(4)]);
            bool inBounds = true;
            for (const auto& row : next)
                for (const auto& x : row)
                    if (x > 50 || x < -50) inBounds = false;
            if (!inBounds) break;
            m = std::move(next);
        }
        BigInt trace = m[0][0] + m[1][1];
        bool oracle = trace > 2 || trace < -2;
        bool classified = std::holds_alternative<HyperbolicProfile>(classify_hyperbolic(m));
        if (classified != oracle) {
            ok = expect(false, "trace oracle mismatch (trial " + std::to_string(trial) + ")",
                        notes);
            break;
        }
    }

    const IntMatrix g0 = imat_from_rows({{3, 1}, {2, 1}});
    const IntMatrix g1 = imat_from_rows({{1, 2}, {1, 3}});
    auto prof0 = std::get<HyperbolicProfile>(classify_hyperbolic(g0));
    auto prof1 = std::get<HyperbolicProfile>(classify_hyperbolic(g1));

    // constructed overlapping system is refuted with an exact witness
    RootedSystem overlapping;
    overlapping.elements = {imat_pow(g0, 8), imat_pow(g1, 8)};
    overlapping.sets = {BallSet{{Ball{prof0.alpha, 0.3}, Ball{prof0.alphaInv, 0.3}}},
                        BallSet{{Ball{prof1.alpha, 0.3}, Ball{prof1.alphaInv, 0.3}}}};
    auto refuted = check_rooted_system(overlapping, 100, 1e-3);
    ok &= expect(std::holds_alternative<SystemRefuted>(refuted), "overlap refuted", notes);
    if (std::holds_alternative<SystemRefuted>(refuted)) {
        ok &= expect(std::get<SystemRefuted>(refuted).exactCertified,
                     "refutation witness exactly certified", notes);
        ok &= expect(std::get<SystemRefuted>(refuted).clause == 1, "clause 1 violated", notes);
    }

    // tuned pair verifies
    RootedSystem tuned;
    tuned.elements = {imat_pow(g0, 8), imat_pow(g1, 8)};
    tuned.sets = {BallSet{{Ball{prof0.alpha, 0.12}, Ball{prof0.alphaInv, 0.12}}},
                  BallSet{{Ball{prof1.alpha, 0.12}, Ball{prof1.alphaInv, 0.12}}}};
    ok &= expect(std::holds_alternative<SystemVerified>(check_rooted_system(tuned, 400, 1e-3)),
                 "tuned d=2 system verified", notes);

    // free-witness oracle
    auto noRel = free_witness({imat_from_rows({{1, 2}, {0, 1}}),
                               imat_from_rows({{1, 0}, {2, 1}})},
                              8);
    ok &= expect(std::holds_alternative<NoRelationUpTo>(noRel),
                 "unipotent pair free up to length 8", notes);
    IntMatrix m = imat_from_rows({{2, 1}, {1, 1}});
    auto rel = free_witness({imat_pow(m, 2), imat_pow(m, 3)}, 8);
    ok &= expect(std::holds_alternative<RelationFound>(rel) &&
                     word_to_string(std::get<RelationFound>(rel).word) == "g0 g1 g0^-1 g1^-1",
                 "commuting pair yields the length-4 commutator", notes);
    return ok;
}

bool criterion9_frattini(std::string& notes) {
    bool ok = true;
    for (std::int64_t p : {3, 5}) {
        FrattiniProbeReport rep = frattini_probe(2, p, 2, 50, 0xACC9);
        BigInt expectedKernel = 1;
        for (int i = 0; i < 3; ++i) expectedKernel *= p;  // p^{(n-1)(d²-1)}
        ok &= expect(rep.kernelOrder == expectedKernel,
                     "kernel order p³ for p = " + std::to_string(p), notes);
        if (rep.failures != 0) {
            ok = false;
            if (!notes.empty()) notes += "; ";
            notes += "p=" + std::to_string(p) + ": " + std::to_string(rep.failures) + "/" +
                     std::to_string(rep.trials) +
                     " lifted generating sets stayed proper. This is a true property of the "
                     "instance, not a probe error: PSL_2(F_3) is A_4 (not simple) and "
                     "PSL_2(Z/9) splits over its reduction kernel, so order-12 complements "
                     "exist and the kernel is not Frattini. The zero-failure expectation "
                     "holds only where PSL_d(F_p) is simple (see d=3 and p=5 probes).";
        }
    }
    return ok;
}

bool criterion10_determinism(std::string& notes) {
    Scenario s;
    s.name = "determinism";
    s.seed = 2026;
    s.steps.push_back({"ord", "modmat.order", nlohmann::json{{"d", 5}, {"p", 2}}});
    s.steps.push_back({"dens", "actions.density", nlohmann::json{{"d", 5}, {"p", 2}}});
    s.steps.push_back({"exp", "schreier.expansion",
                       nlohmann::json{{"d", 5}, {"p", 2}, {"family", "full"},
                                      {"mode", "spectral"}}});
    s.steps.push_back({"obs", "obstruct.projective",
                       nlohmann::json{{"d", 5},
                                      {"p", 2},
                                      {"measuredC", "$exp/loRational"},
                                      {"measuredLambda", "$dens/lambda"}}});
    s.steps.push_back({"cov", "schreier.cover", nlohmann::json{{"p", 5}, {"trials", 50}}});
    std::string first = payloads_to_json(run_scenario(s)).dump();
    std::string second = payloads_to_json(run_scenario(s)).dump();
    bool ok = expect(!first.empty() && first == second,
                     "byte-identical payloads across reruns", notes);
    return ok;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "order formula vs brute force and independent product", criterion1_order_formula},
        {2, "P^4(F_2) density instance, exact rationals", criterion2_density_instance},
        {3, "orbit containment on (5,2), (5,3), (3,2)", criterion3_orbit_containment},
        {4, "exact and spectral expansion", criterion4_expansion},
        {5, "covering isoperimetric invariance 60 -> 6", criterion5_covering},
        {6, "sofic model: defects, pseudometric, padding", criterion6_sofic_model},
        {7, "obstruction engine counting argument", criterion7_obstruction},
        {8, "ping-pong classification, certification, free witness", criterion8_pingpong},
        {9, "frattini probe (d=2, p in {3,5}, n=2)", criterion9_frattini},
        {10, "scenario determinism", criterion10_determinism},
    };

    int failures = 0;
    for (auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string notes;
        bool ok = false;
        try {
            ok = c.run(notes);
        } catch (const std::exception& e) {
            notes = std::string("exception: ") + e.what();
        }
        auto end = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(end - start).count();
        std::printf("%s criterion %2d  [%6.2fs]  %s%s%s\n", ok ? "PASS" : "FAIL", c.number, secs,
                    c.title.c_str(), notes.empty() ? "" : " -- ", notes.c_str());
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
