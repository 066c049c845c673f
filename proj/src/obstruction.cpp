#include "soflab/obstruction.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include <json.hpp>

#include "soflab/parallel.hpp"
#include "soflab/rng.hpp"

namespace soflab {

ObstructionEngine::ObstructionEngine(ObstructionInstance inst)
    : inst_(std::move(inst)),
      gamma_(orbit_partition(inst_.action, inst_.gammaFamily)),
      lambda_(orbit_partition(inst_.action, inst_.lambdaFamily)),
      gammaGraph_(build_schreier(inst_.action, inst_.gammaFamily)),
      lambdaGraph_(build_schreier(inst_.action, inst_.lambdaFamily)) {
    if (inst_.tau.size() != inst_.action.points() || !is_permutation(inst_.tau))
        throw InvalidInput("tau must be a permutation of the action's points");
}

std::vector<std::uint32_t> ObstructionEngine::compute_D() const {
    std::vector<std::uint32_t> d;
    for (std::uint32_t w = 0; w < inst_.action.points(); ++w)
        if (gamma_.pointToBlock[w] <= gamma_.pointToBlock[inst_.tau[w]]) d.push_back(w);
    return d;
}

std::pair<std::vector<std::size_t>, std::size_t> ObstructionEngine::heavy_indices() const {
    auto d = compute_D();
    std::vector<std::size_t> counts(gamma_.blocks.size(), 0);
    for (auto w : d) ++counts[gamma_.pointToBlock[w]];
    std::vector<std::size_t> heavy;
    std::size_t mass = 0;
    for (std::size_t j = 0; j < gamma_.blocks.size(); ++j) {
        if (10 * counts[j] >= gamma_.blocks[j].size()) {
            heavy.push_back(j + 1);
            mass += gamma_.blocks[j].size();
        }
    }
    return {heavy, mass};
}

ThetaStats ObstructionEngine::theta_partition(std::size_t j) const {
    if (j < 1 || j > gamma_.blocks.size())
        throw OutOfRange("component index " + std::to_string(j) + " out of range");
    auto [heavy, mass] = heavy_indices();
    (void)mass;

    ThetaStats stats;
    stats.j = j;
    stats.preconditionMet = std::find(heavy.begin(), heavy.end(), j) != heavy.end();

    auto d = compute_D();
    std::vector<bool> inD(inst_.action.points(), false);
    for (auto w : d) inD[w] = true;

    const auto& omega = gamma_.blocks[j - 1];
    // Group D ∩ Ω_j by the Λ-component of the tau-image; block order follows
    // ascending Λ-component id.
    std::map<std::uint32_t, std::vector<std::uint32_t>> byComponent;
    for (auto w : omega)
        if (inD[w]) byComponent[lambda_.pointToBlock[inst_.tau[w]]].push_back(w);

    const Rational& lam = inst_.measuredLambda;
    for (auto& [comp, pts] : byComponent) {
        ThetaBlock block;
        block.lambdaComponent = comp;
        block.sizeComparisonHolds =
            lam.numerator() * static_cast<std::int64_t>(pts.size()) <=
            lam.denominator() * static_cast<std::int64_t>(omega.size());
        block.points = std::move(pts);
        stats.blocks.push_back(std::move(block));
    }
    return stats;
}

ObstructionReport ObstructionEngine::bad_edge_count() const {
    const std::size_t n = inst_.action.points();
    ObstructionReport rep;
    rep.points = n;
    for (const auto& blk : gamma_.blocks) rep.componentSizes.push_back(blk.size());

    auto d = compute_D();
    rep.dSize = d.size();
    auto [heavy, mass] = heavy_indices();
    rep.heavyIndices = heavy;
    rep.heavyMass = mass;
    for (auto j : heavy) rep.thetaStats.push_back(theta_partition(j));

    // Λ adjacency with labels forgotten; the argument only uses adjacency.
    std::unordered_set<std::uint64_t> lambdaAdj;
    for (const auto& e : lambdaGraph_.edges())
        lambdaAdj.insert((static_cast<std::uint64_t>(e.u) << 32) | e.v);
    auto isLambdaEdge = [&](std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        return lambdaAdj.count((static_cast<std::uint64_t>(a) << 32) | b) > 0;
    };

    const auto& edges = gammaGraph_.edges();
    auto partials = chunked_map<std::size_t>(edges.size(), [&](std::size_t lo, std::size_t hi) {
        std::size_t bad = 0;
        for (std::size_t i = lo; i < hi; ++i)
            if (!isLambdaEdge(inst_.tau[edges[i].u], inst_.tau[edges[i].v])) ++bad;
        return bad;
    });
    rep.badEdgeCount = 0;
    for (auto b : partials) rep.badEdgeCount += b;

    rep.cPrime = inst_.measuredC * std::min(Rational(1), inst_.measuredLambda - Rational(1));
    rep.bound = rep.cPrime * Rational(static_cast<std::int64_t>(n), 200);
    rep.boundHolds = Rational(static_cast<std::int64_t>(rep.badEdgeCount)) >= rep.bound;

    // Precondition flags.
    PreconditionFlags flags;
    flags.perfectVacuous = inst_.gammaRelators.empty();
    flags.perfectOnH = true;
    for (const auto& w : inst_.gammaRelators) {
        Perm evald = identity_perm(n);
        for (const auto& letter : w) {
            const auto& gen = inst_.action.generator(letter.symbol);
            evald = letter.exp == 1 ? compose(evald, gen.perm)
                                    : compose(evald, inverse(gen.perm));
        }
        if (!is_identity(evald)) flags.perfectOnH = false;
    }
    {
        // Containment: every Λ-component inside a single Γ-component.
        flags.containment = true;
        for (const auto& lblk : lambda_.blocks) {
            auto g0 = gamma_.pointToBlock[lblk.front()];
            for (auto v : lblk)
                if (gamma_.pointToBlock[v] != g0) flags.containment = false;
        }
    }
    flags.lambdaGT1 = inst_.measuredLambda > Rational(1);
    std::size_t tauSqMoved = 0;
    for (std::uint32_t w = 0; w < n; ++w)
        if (inst_.tau[inst_.tau[w]] != w) ++tauSqMoved;
    flags.tSquareDefectOK = 10 * tauSqMoved <= n;
    rep.flags = flags;

    // Checked arithmetic consequences (material implications).
    bool dLarge = 20 * rep.dSize >= 9 * n;
    rep.dLowerBoundImplicationHolds = !flags.tSquareDefectOK || dLarge;
    rep.heavyMassImplicationHolds = !dLarge || 10 * rep.heavyMass >= n;
    return rep;
}

namespace {

using nlohmann::json;

Perm perm_from_json(const json& arr, std::size_t n) {
    Perm p;
    p.reserve(arr.size());
    for (const auto& v : arr) p.push_back(v.get<std::uint32_t>());
    if (p.size() != n) throw InvalidInput("permutation has wrong length");
    return p;
}

}  // namespace

ObstructionInstance instance_from_json_text(const std::string& text) {
    json j = json::parse(text);
    std::size_t n = j.at("points").get<std::size_t>();
    LabeledAction action(n);
    for (const auto& familyName : {"gamma", "lambda"}) {
        const auto& fam = j.at("families").at(familyName);
        for (auto it = fam.begin(); it != fam.end(); ++it)
            action.add_generator(it.key(), perm_from_json(it.value(), n), familyName);
    }
    ObstructionInstance inst{std::move(action)};
    inst.tau = perm_from_json(j.at("tau"), n);
    inst.measuredC = rational_from_string(j.at("measuredC").get<std::string>());
    inst.measuredLambda = rational_from_string(j.at("measuredLambda").get<std::string>());
    if (j.contains("gammaRelators"))
        for (const auto& rel : j.at("gammaRelators")) {
            Word w;
            for (const auto& letter : rel) {
                Word parsed = word_from_string(letter.get<std::string>());
                w.insert(w.end(), parsed.begin(), parsed.end());
            }
            inst.gammaRelators.push_back(std::move(w));
        }
    return inst;
}

Perm random_involution(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    rng.shuffle(order);
    Perm tau = identity_perm(n);
    for (std::size_t i = 0; i + 1 < n; i += 2) {
        tau[order[i]] = order[i + 1];
        tau[order[i + 1]] = order[i];
    }
    return tau;
}

ObstructionInstance make_projective_instance(int d, std::int64_t p, Perm tau,
                                             const Rational& measuredC,
                                             const Rational& measuredLambda) {
    ObstructionInstance inst{projective_action(d, p)};
    inst.gammaFamily = "full";
    inst.lambdaFamily = "psl2block";
    inst.tau = std::move(tau);
    inst.measuredC = measuredC;
    inst.measuredLambda = measuredLambda;
    for (auto gi : inst.action.family("full")) {
        const auto& label = inst.action.generators()[gi].label;
        Word rel(static_cast<std::size_t>(p), Letter{label, 1});  // transvections have order p
        inst.gammaRelators.push_back(std::move(rel));
    }
    return inst;
}

std::string report_to_json_text(const ObstructionReport& rep) {
    json j;
    j["points"] = rep.points;
    j["componentSizes"] = rep.componentSizes;
    j["dSize"] = rep.dSize;
    j["heavyIndices"] = rep.heavyIndices;
    j["heavyMass"] = rep.heavyMass;
    json thetas = json::array();
    for (const auto& ts : rep.thetaStats) {
        json t;
        t["j"] = ts.j;
        t["preconditionMet"] = ts.preconditionMet;
        json blocks = json::array();
        for (const auto& b : ts.blocks) {
            blocks.push_back({{"lambdaComponent", b.lambdaComponent},
                              {"size", b.points.size()},
                              {"sizeComparisonHolds", b.sizeComparisonHolds}});
        }
        t["blocks"] = std::move(blocks);
        thetas.push_back(std::move(t));
    }
    j["thetaStats"] = std::move(thetas);
    j["badEdgeCount"] = rep.badEdgeCount;
    j["cPrime"] = to_string(rep.cPrime);
    j["bound"] = to_string(rep.bound);
    j["boundHolds"] = rep.boundHolds;
    j["flags"] = {{"perfectOnH", rep.flags.perfectOnH},
                  {"perfectVacuous", rep.flags.perfectVacuous},
                  {"containment", rep.flags.containment},
                  {"lambdaGT1", rep.flags.lambdaGT1},
                  {"tSquareDefectOK", rep.flags.tSquareDefectOK}};
    j["dLowerBoundImplicationHolds"] = rep.dLowerBoundImplicationHolds;
    j["heavyMassImplicationHolds"] = rep.heavyMassImplicationHolds;
    return j.dump(2);
}

}
