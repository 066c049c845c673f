#include "soflab/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "soflab/actions.hpp"
#include "soflab/modmat.hpp"
#include "soflab/obstruction.hpp"
#include "soflab/pingpong.hpp"
#include "soflab/presentations.hpp"
#include "soflab/quotient.hpp"
#include "soflab/schreier.hpp"
#include "soflab/sofic.hpp"
#include "soflab/version.hpp"

namespace soflab {

using nlohmann::json;

std::string slurp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << content;
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    s.name = j.at("name").get<std::string>();
    s.seed = j.value("seed", 0ull);
    s.outputPath = j.value("output", "");
    for (const auto& stepJson : j.at("steps")) {
        ScenarioStep step;
        step.id = stepJson.at("id").get<std::string>();
        step.op = stepJson.at("op").get<std::string>();
        step.params = stepJson.value("params", json::object());
        s.steps.push_back(std::move(step));
    }
    return s;
}

Scenario scenario_from_file(const std::string& path) {
    return scenario_from_json(json::parse(slurp_file(path)));
}

namespace {

Word word_from_json(const json& j) {
    if (j.is_string()) return word_from_string(j.get<std::string>());
    std::string joined;
    for (const auto& letter : j) {
        if (!joined.empty()) joined += ' ';
        joined += letter.get<std::string>();
    }
    return word_from_string(joined);
}

json density_to_json(const DensityReport& rep) {
    return {{"totalPoints", rep.totalPoints},
            {"maxBOrbit", rep.maxBOrbit},
            {"minAOrbit", rep.minAOrbit},
            {"lambda", to_string(rep.lambda)},
            {"sixteenBoundHolds", rep.sixteenBoundHolds}};
}

// Largest rational with denominator 10^6 that stays at or below x; a safe
// exact stand-in for a floating lower bound.
Rational floor_rational(double x) {
    double scaled = std::floor(x * 1e6);
    if (scaled < 0) scaled = 0;
    return Rational(static_cast<std::int64_t>(scaled), 1'000'000);
}

json defects_to_json(const DefectReport& rep) {
    json rel = json::object(), freeness = json::object();
    for (const auto& [w, f] : rep.relatorDefects) rel[w] = to_string(f);
    for (const auto& [w, f] : rep.freenessFixedFractions) freeness[w] = to_string(f);
    return {{"relatorDefects", std::move(rel)},
            {"freenessFixedFractions", std::move(freeness)},
            {"maxRelatorDefect", to_string(rep.maxRelatorDefect)}};
}

RootedSystem system_from_param(const json& param) {
    if (param.is_string()) return system_from_json_text(slurp_file(param.get<std::string>()));
    return system_from_json_text(param.dump());
}

MultiGraph graph_from_params(const json& params, std::string* familyOut) {
    if (params.contains("input")) {
        std::istringstream in(slurp_file(params.at("input").get<std::string>()));
        if (familyOut) *familyOut = "(file)";
        return graph_from_edge_list(in);
    }
    int d = params.at("d").get<int>();
    std::int64_t p = params.at("p").get<std::int64_t>();
    std::string family = params.value("family", "full");
    if (familyOut) *familyOut = family;
    return build_schreier(projective_action(d, p), family);
}

json cover_report_to_json(const CoveringCheckReport& rep, std::size_t coverV, std::size_t baseV) {
    json j{{"trials", rep.trials},
           {"fiberSize", rep.fiberSize},
           {"allEqual", rep.allEqual},
           {"coverVertices", coverV},
           {"baseVertices", baseV}};
    if (rep.firstMismatch) {
        j["firstMismatch"] = {{"baseSubset", rep.firstMismatch->baseSubset},
                              {"baseRatio", to_string(rep.firstMismatch->baseRatio)},
                              {"coverRatio", to_string(rep.firstMismatch->coverRatio)}};
    }
    return j;
}

}  // namespace

json run_op(const std::string& op, const json& params, std::uint64_t defaultSeed,
            std::string* dotOut, std::string* csvOut) {
    if (op == "modmat.order") {
        GroupCard card = psl_order(params.at("d").get<int>(), params.at("p").get<std::int64_t>());
        return {{"d", card.d},
                {"p", card.p},
                {"order", card.order.str()},
                {"minProperIndex", card.minProperIndex.str()}};
    }

    if (op == "quotient.frattini") {
        auto rep = frattini_probe(params.at("d").get<int>(), params.at("p").get<std::int64_t>(),
                                  params.at("n").get<int>(), params.at("trials").get<std::size_t>(),
                                  params.value("seed", defaultSeed));
        return {{"d", rep.d},
                {"p", rep.p},
                {"n", rep.n},
                {"trials", rep.trials},
                {"failures", rep.failures},
                {"kernelOrder", rep.kernelOrder.str()},
                {"seed", rep.seed},
                {"setSize", rep.setSize},
                {"resamples", rep.resamples},
                {"groupOrderModPn", rep.groupOrderModPn},
                {"groupOrderModP", rep.groupOrderModP}};
    }

    if (op == "actions.density") {
        LabeledAction action =
            projective_action(params.at("d").get<int>(), params.at("p").get<std::int64_t>());
        return density_to_json(density_report(action, "full", "psl2block"));
    }

    if (op == "actions.orbits") {
        int d = params.at("d").get<int>();
        std::int64_t p = params.at("p").get<std::int64_t>();
        std::string family = params.value("family", "psl2block");
        OrbitPartition part = orbit_partition(projective_action(d, p), family);
        json sizes = json::array();
        std::map<std::size_t, std::size_t> counts;
        for (const auto& blk : part.blocks) {
            sizes.push_back(blk.size());
            ++counts[blk.size()];
        }
        json countsJson = json::object();
        for (const auto& [size, count] : counts) countsJson[std::to_string(size)] = count;
        if (csvOut) {
            std::ostringstream csv;
            std::size_t idx = 0, fixed = 0;
            for (const auto& blk : part.blocks) {
                if (blk.size() > 1)
                    csv << ++idx << ',' << blk.size() << '\n';
                else
                    ++fixed;
            }
            if (fixed > 0) csv << "fixed_points," << fixed << '\n';
            *csvOut = csv.str();
        }
        return {{"family", family}, {"blockSizes", std::move(sizes)},
                {"sizeCounts", std::move(countsJson)}};
    }

    if (op == "schreier.expansion") {
        std::string family;
        MultiGraph g = graph_from_params(params, &family);
        if (dotOut) *dotOut = to_dot(g);
        std::string mode = params.value("mode", "exact");
        if (mode == "exact") {
            ExactExpansion res = expansion_exact(g);
            return {{"mode", "exact"},
                    {"family", family},
                    {"vertices", g.vertices()},
                    {"edges", g.edges().size()},
                    {"value", to_string(res.value)},
                    {"witness", res.witness}};
        }
        SpectralExpansion res = expansion_spectral(g, params.value("tol", 1e-10));
        return {{"mode", "spectral"},
                {"family", family},
                {"vertices", g.vertices()},
                {"edges", g.edges().size()},
                {"lo", res.lo},
                {"hi", res.hi},
                {"loRational", to_string(floor_rational(res.lo))},
                {"lambda2", res.lambda2},
                {"connected", res.connected},
                {"degree", res.degree},
                {"iterations", res.iterations}};
    }

    if (op == "schreier.cover") {
        std::size_t trials = params.value("trials", 100u);
        std::uint64_t seed = params.value("seed", defaultSeed);
        if (params.contains("cover")) {
            std::istringstream coverIn(slurp_file(params.at("cover").get<std::string>()));
            std::istringstream baseIn(slurp_file(params.at("base").get<std::string>()));
            MultiGraph cover = graph_from_edge_list(coverIn);
            MultiGraph base = graph_from_edge_list(baseIn);
            std::istringstream mapIn(slurp_file(params.at("map").get<std::string>()));
            std::vector<std::uint32_t> fiberMap(cover.vertices(), 0);
            std::uint32_t cv, bv;
            while (mapIn >> cv >> bv) {
                if (cv >= cover.vertices()) throw IoError("map line out of range");
                fiberMap[cv] = bv;
            }
            auto rep = covering_ratio_check(cover, base, fiberMap, trials, seed);
            return cover_report_to_json(rep, cover.vertices(), base.vertices());
        }
        // Built-in covering: Cayley graph of PSL_2(F_p) over the Schreier
        // graph on P^1(F_p), same two generators.
        std::int64_t p = params.at("p").get<std::int64_t>();
        auto blockGens = psl2_block_generators(2, p);
        CayleyData cayley = cayley_action({{"a", blockGens[0]}, {"b", blockGens[1]}}, true);
        MultiGraph cover = build_schreier(cayley.action, "S");

        ProjectiveSpace space(2, p);
        LabeledAction baseAction(space.size());
        baseAction.add_generator("a", space.permutation_of(blockGens[0]), "S");
        baseAction.add_generator("b", space.permutation_of(blockGens[1]), "S");
        MultiGraph base = build_schreier(baseAction, "S");

        std::vector<std::uint32_t> fiberMap;
        fiberMap.reserve(cayley.elements.size());
        for (const auto& g : cayley.elements) {
            std::vector<std::int64_t> col(2);
            for (int r = 0; r < 2; ++r) col[r] = g.at(r, 0);
            fiberMap.push_back(static_cast<std::uint32_t>(space.index_of(col)));
        }
        auto rep = covering_ratio_check(cover, base, fiberMap, trials, seed);
        return cover_report_to_json(rep, cover.vertices(), base.vertices());
    }

    if (op == "sofic.score") {
        std::string text = params.contains("input")
                               ? slurp_file(params.at("input").get<std::string>())
                               : params.at("text").get<std::string>();
        std::istringstream in(text);
        SoficFile file = sofic_from_stream(in);
        json j = defects_to_json(defect_report(file.model, file.freenessWords));
        auto perfect = perfectness_check(file.model);
        j["perfect"] = perfect.perfect;
        j["perfectVacuous"] = perfect.vacuous;
        j["points"] = file.model.points();
        return j;
    }

    if (op == "obstruct.run") {
        std::string text = params.at("instance").is_string()
                               ? slurp_file(params.at("instance").get<std::string>())
                               : params.at("instance").dump();
        ObstructionEngine engine(instance_from_json_text(text));
        return json::parse(report_to_json_text(engine.bad_edge_count()));
    }

    if (op == "obstruct.projective") {
        int d = params.at("d").get<int>();
        std::int64_t p = params.at("p").get<std::int64_t>();
        std::uint64_t seed = params.value("seed", defaultSeed);
        Rational c = rational_from_string(params.at("measuredC").get<std::string>());
        Rational lam = rational_from_string(params.at("measuredLambda").get<std::string>());
        Perm tau = random_involution(
            static_cast<std::size_t>(projective_point_count(d, p)), seed);
        ObstructionEngine engine(make_projective_instance(d, p, std::move(tau), c, lam));
        json j = json::parse(report_to_json_text(engine.bad_edge_count()));
        j["seed"] = seed;
        return j;
    }

    if (op == "pingpong.check") {
        RootedSystem sys = system_from_param(params.at("system"));
        auto result = check_rooted_system(sys, params.value("grid", 2000),
                                          params.value("margin", 1e-3));
        if (std::holds_alternative<SystemVerified>(result))
            return {{"result", "verified"},
                    {"minMargin", std::get<SystemVerified>(result).minMargin}};
        if (std::holds_alternative<SystemRefuted>(result)) {
            const auto& r = std::get<SystemRefuted>(result);
            return {{"result", "refuted"},
                    {"clause", r.clause},
                    {"detail", r.detail},
                    {"witness", r.witness},
                    {"exactCertified", r.exactCertified}};
        }
        const auto& r = std::get<SystemInconclusive>(result);
        return {{"result", "inconclusive"}, {"detail", r.detail}, {"worstSlack", r.worstSlack}};
    }

    if (op == "pingpong.profile") {
        RootedSystem sys = system_from_param(params.at("system"));
        ProfileDistances pd = pairwise_profile_distances(sys.elements);
        return {{"pointNames", pd.pointNames},
                {"hyperplaneNames", pd.hyperplaneNames},
                {"pointToPoint", pd.pointToPoint},
                {"pointToHyperplane", pd.pointToHyperplane}};
    }

    if (op == "pingpong.free") {
        RootedSystem sys = system_from_param(params.at("system"));
        auto result = free_witness(sys.elements, params.value("maxLen", 8),
                                   params.value("budget", 4'000'000u));
        if (std::holds_alternative<NoRelationUpTo>(result)) {
            const auto& r = std::get<NoRelationUpTo>(result);
            return {{"result", "noRelation"},
                    {"maxLen", r.maxLen},
                    {"wordsChecked", r.wordsChecked}};
        }
        return {{"result", "relation"},
                {"word", word_to_string(std::get<RelationFound>(result).word)}};
    }

    if (op == "present.hnn2") {
        json input = params.contains("input") && params.at("input").is_string()
                         ? json::parse(slurp_file(params.at("input").get<std::string>()))
                         : params.at("input");
        HNN2Presentation pres;
        pres.hGenerators = input.at("hGenerators").get<std::vector<std::string>>();
        for (const auto& w : input.at("aWords")) pres.aWords.push_back(word_from_json(w));
        for (const auto& w : input.at("bWords")) pres.bWords.push_back(word_from_json(w));
        pres.includeTSquare = input.value("includeTSquare", true);
        pres.stableLetter = input.value("stableLetter", "t");
        json rels = json::array();
        for (const auto& rel : hnn_mod2_relators(pres)) rels.push_back(word_to_string(rel));
        return {{"relators", std::move(rels)}};
    }

    throw ConfigError("unknown operation: " + op);
}

namespace {

// Substitutes "$stepId/json/pointer" strings with earlier payloads.
json resolve_params(const json& params, const std::map<std::string, json>& payloads) {
    if (params.is_string()) {
        const std::string& s = params.get_ref<const std::string&>();
        if (!s.empty() && s[0] == '$') {
            auto slash = s.find('/');
            std::string stepId = s.substr(1, slash == std::string::npos ? s.npos : slash - 1);
            auto it = payloads.find(stepId);
            if (it == payloads.end())
                throw ConfigError("wiring reference to unknown step: " + s);
            if (slash == std::string::npos) return it->second;
            return it->second.at(json::json_pointer(s.substr(slash)));
        }
        return params;
    }
    if (params.is_object()) {
        json out = json::object();
        for (auto it = params.begin(); it != params.end(); ++it)
            out[it.key()] = resolve_params(it.value(), payloads);
        return out;
    }
    if (params.is_array()) {
        json out = json::array();
        for (const auto& v : params) out.push_back(resolve_params(v, payloads));
        return out;
    }
    return params;
}

}  // namespace

RunReport run_scenario(const Scenario& s) {
    RunReport rep;
    rep.scenario = s.name;
    rep.toolVersion = kToolVersion;
    rep.seed = s.seed;

    std::map<std::string, json> payloads;
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        const auto& step = s.steps[i];
        StepResult result;
        result.id = step.id;
        result.op = step.op;
        std::uint64_t stepSeed = s.seed * 1000003ull + i;
        auto start = std::chrono::steady_clock::now();
        try {
            result.params = resolve_params(step.params, payloads);
            result.payload = run_op(step.op, result.params, stepSeed, &result.dot, &result.csv);
        } catch (const std::exception& e) {
            throw ConfigError("step '" + step.id + "' (" + step.op + "): " + e.what());
        }
        auto end = std::chrono::steady_clock::now();
        result.wallMs = std::chrono::duration<double, std::milli>(end - start).count();
        payloads[step.id] = result.payload;
        rep.steps.push_back(std::move(result));
    }
    return rep;
}

json report_to_json(const RunReport& rep) {
    json steps = json::array();
    for (const auto& s : rep.steps) {
        steps.push_back({{"id", s.id},
                         {"op", s.op},
                         {"params", s.params},
                         {"payload", s.payload},
                         {"wallMs", s.wallMs}});
    }
    return {{"scenario", rep.scenario},
            {"toolVersion", rep.toolVersion},
            {"seed", rep.seed},
            {"steps", std::move(steps)}};
}

json payloads_to_json(const RunReport& rep) {
    json steps = json::array();
    for (const auto& s : rep.steps)
        steps.push_back({{"id", s.id}, {"op", s.op}, {"payload", s.payload}});
    return {{"scenario", rep.scenario},
            {"toolVersion", rep.toolVersion},
            {"seed", rep.seed},
            {"steps", std::move(steps)}};
}

std::vector<std::string> emit_formats(const RunReport& rep, const EmitFlags& flags) {
    std::vector<std::string> written;
    std::string base = flags.directory + "/" + rep.scenario;
    spill_file(base + ".report.json", report_to_json(rep).dump(2) + "\n");
    written.push_back(base + ".report.json");
    for (const auto& s : rep.steps) {
        if (flags.dot && !s.dot.empty()) {
            spill_file(base + "." + s.id + ".dot", s.dot);
            written.push_back(base + "." + s.id + ".dot");
        }
        if (flags.csv && !s.csv.empty()) {
            spill_file(base + "." + s.id + ".csv", s.csv);
            written.push_back(base + "." + s.id + ".csv");
        }
    }
    return written;
}

}
