// Command-line front end: every operation prints a JSON payload to stdout
// (or --out), and `scenario run` executes a step list from a config file.

#include <cstdint>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "soflab/errors.hpp"
#include "soflab/scenario.hpp"
#include "soflab/version.hpp"

namespace {

using nlohmann::json;

struct Common {
    std::string out;
    std::uint64_t seed = 0;
};

void deliver(const json& payload, const Common& common) {
    std::string text = payload.dump(2) + "\n";
    if (common.out.empty())
        std::cout << text;
    else
        soflab::spill_file(common.out, text);
}

void run_and_deliver(const std::string& op, const json& params, const Common& common) {
    deliver(soflab::run_op(op, params, common.seed), common);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"soflab: finite computations around sofic approximations, Schreier-graph "
                 "expansion, orbit densities and projective ping-pong"};
    app.set_version_flag("--version", soflab::kToolVersion);
    app.require_subcommand(1);

    Common common;
    app.add_option("--out", common.out, "write the JSON payload to this file instead of stdout");
    app.add_option("--seed", common.seed, "seed for randomized operations")->default_val(0);

    int d = 2, n = 1, grid = 2000, maxLen = 8;
    std::int64_t p = 2;
    std::size_t trials = 50;
    std::string family = "psl2block", mode = "exact", input, system, instance;
    std::string coverPath, basePath, mapPath;
    double tol = 1e-10, margin = 1e-3;
    std::string measuredC = "0", measuredLambda = "1";

    // modmat order
    auto* modmat = app.add_subcommand("modmat", "matrix-group cardinalities");
    auto* order = modmat->add_subcommand("order", "order and minimal proper index of PSL_d(F_p)");
    order->add_option("--d", d)->required();
    order->add_option("--p", p)->required();
    order->callback([&] { run_and_deliver("modmat.order", {{"d", d}, {"p", p}}, common); });

    // quotient frattini
    auto* quotient = app.add_subcommand("quotient", "prime-quotient structure probes");
    auto* frattini = quotient->add_subcommand("frattini", "lifted generating-set probe mod p^n");
    frattini->add_option("--d", d)->required();
    frattini->add_option("--p", p)->required();
    frattini->add_option("--n", n)->required();
    frattini->add_option("--trials", trials)->default_val(50);
    frattini->callback([&] {
        run_and_deliver("quotient.frattini",
                        {{"d", d}, {"p", p}, {"n", n}, {"trials", trials}, {"seed", common.seed}},
                        common);
    });

    // actions density | orbits
    auto* actions = app.add_subcommand("actions", "orbit partitions and density quantities");
    auto* density = actions->add_subcommand("density", "orbit-size extremes on P^{d-1}(F_p)");
    density->add_option("--d", d)->required();
    density->add_option("--p", p)->required();
    density->callback([&] { run_and_deliver("actions.density", {{"d", d}, {"p", p}}, common); });
    auto* orbits = actions->add_subcommand("orbits", "orbit block sizes of a generator family");
    orbits->add_option("--d", d)->required();
    orbits->add_option("--p", p)->required();
    orbits->add_option("--family", family);
    std::string csvPath;
    orbits->add_option("--csv", csvPath, "also write the orbit-size table as CSV");
    orbits->callback([&] {
        std::string csv;
        json payload = soflab::run_op("actions.orbits", {{"d", d}, {"p", p}, {"family", family}},
                                      common.seed, nullptr, &csv);
        if (!csvPath.empty()) soflab::spill_file(csvPath, csv);
        deliver(payload, common);
    });

    // schreier expansion | cover
    auto* schreier = app.add_subcommand("schreier", "coset multigraphs and expansion");
    auto* expansion = schreier->add_subcommand("expansion", "edge-expansion constant");
    expansion->add_option("--d", d);
    expansion->add_option("--p", p);
    expansion->add_option("--family", family);
    expansion->add_option("--input", input, "edge-list file (u v label per line)");
    expansion->add_option("--tol", tol);
    auto* exactFlag = expansion->add_flag("--exact", "exact subset scan (N <= 24)");
    expansion->add_flag("--spectral", "Cheeger interval via power iteration");
    std::string dotPath;
    expansion->add_option("--dot", dotPath, "also write the graph in DOT format");
    expansion->callback([&] {
        json params{{"mode", exactFlag->count() ? "exact" : "spectral"}, {"tol", tol}};
        if (!input.empty())
            params["input"] = input;
        else {
            params["d"] = d;
            params["p"] = p;
            params["family"] = family;
        }
        std::string dot;
        json payload = soflab::run_op("schreier.expansion", params, common.seed, &dot, nullptr);
        if (!dotPath.empty()) soflab::spill_file(dotPath, dot);
        deliver(payload, common);
    });
    auto* cover = schreier->add_subcommand("cover", "covering isoperimetric-ratio invariance");
    cover->add_option("--p", p, "built-in PSL_2(F_p) Cayley-over-projective covering");
    cover->add_option("--trials", trials)->default_val(100);
    cover->add_option("--cover", coverPath, "edge-list file of the covering graph");
    cover->add_option("--base", basePath, "edge-list file of the base graph");
    cover->add_option("--map", mapPath, "fiber map file: 'coverVertex baseVertex' per line");
    cover->callback([&] {
        json params{{"trials", trials}, {"seed", common.seed}};
        if (!coverPath.empty()) {
            params["cover"] = coverPath;
            params["base"] = basePath;
            params["map"] = mapPath;
        } else {
            params["p"] = p;
        }
        run_and_deliver("schreier.cover", params, common);
    });

    // sofic score
    auto* sofic = app.add_subcommand("sofic", "finite sofic-approximation scoring");
    auto* score = sofic->add_subcommand("score", "relator defects and freeness fractions");
    score->add_option("--input", input, ".sofic model file")->required();
    score->callback([&] { run_and_deliver("sofic.score", {{"input", input}}, common); });

    // obstruct run
    auto* obstruct = app.add_subcommand("obstruct", "counting-argument engine");
    auto* obsRun = obstruct->add_subcommand("run", "full report for an instance file");
    obsRun->add_option("--instance", instance, "instance JSON file")->required();
    obsRun->callback([&] { run_and_deliver("obstruct.run", {{"instance", instance}}, common); });
    auto* obsProj = obstruct->add_subcommand("projective", "built-in P^{d-1}(F_p) instance with a "
                                                           "random involution");
    obsProj->add_option("--d", d)->required();
    obsProj->add_option("--p", p)->required();
    obsProj->add_option("--measured-c", measuredC, "expansion constant as p/q")->required();
    obsProj->add_option("--measured-lambda", measuredLambda, "orbit ratio as p/q")->required();
    obsProj->callback([&] {
        run_and_deliver("obstruct.projective",
                        {{"d", d},
                         {"p", p},
                         {"seed", common.seed},
                         {"measuredC", measuredC},
                         {"measuredLambda", measuredLambda}},
                        common);
    });

    // pingpong check | free
    auto* pingpong = app.add_subcommand("pingpong", "projective ping-pong certification");
    auto* check = pingpong->add_subcommand("check", "verify or refute a rooted system");
    check->add_option("--system", system, "system JSON file")->required();
    check->add_option("--grid", grid)->default_val(2000);
    check->add_option("--margin", margin)->default_val(1e-3);
    check->callback([&] {
        run_and_deliver("pingpong.check",
                        {{"system", system}, {"grid", grid}, {"margin", margin}}, common);
    });
    auto* freeCmd = pingpong->add_subcommand("free", "exhaustive short-relation search");
    freeCmd->add_option("--system", system, "system JSON file (matrices used)")->required();
    freeCmd->add_option("--max-len", maxLen)->default_val(8);
    freeCmd->callback([&] {
        run_and_deliver("pingpong.free", {{"system", system}, {"maxLen", maxLen}}, common);
    });
    auto* profile = pingpong->add_subcommand("profile", "pairwise attracting/repelling distances");
    profile->add_option("--system", system, "system JSON file (matrices used)")->required();
    profile->callback([&] { run_and_deliver("pingpong.profile", {{"system", system}}, common); });

    // present hnn2
    auto* present = app.add_subcommand("present", "relator generation");
    auto* hnn2 = present->add_subcommand("hnn2", "mod-2 HNN relator list");
    hnn2->add_option("--input", input, "presentation JSON file")->required();
    hnn2->callback([&] { run_and_deliver("present.hnn2", {{"input", input}}, common); });

    // scenario run
    auto* scenario = app.add_subcommand("scenario", "reproducible multi-step experiments");
    auto* scenRun = scenario->add_subcommand("run", "execute a scenario config");
    std::string configPath, payloadsPath, emitDir = ".";
    bool emitDot = false, emitCsv = false;
    scenRun->add_option("--config", configPath, "scenario JSON config")->required();
    scenRun->add_option("--payloads", payloadsPath, "also write the deterministic payloads JSON");
    scenRun->add_option("--dir", emitDir, "output directory for report artifacts");
    scenRun->add_flag("--dot", emitDot, "emit DOT files for graph steps");
    scenRun->add_flag("--csv", emitCsv, "emit CSV files for orbit-table steps");
    scenRun->callback([&] {
        soflab::Scenario s = soflab::scenario_from_file(configPath);
        soflab::RunReport rep = soflab::run_scenario(s);
        soflab::EmitFlags flags{emitDot, emitCsv, emitDir};
        auto written = soflab::emit_formats(rep, flags);
        if (!payloadsPath.empty())
            soflab::spill_file(payloadsPath, soflab::payloads_to_json(rep).dump(2) + "\n");
        json summary{{"scenario", rep.scenario}, {"written", written}};
        deliver(summary, common);
    });

    // Let --out/--seed appear after the subcommand as well.
    std::function<void(CLI::App*)> enableFallthrough = [&](CLI::App* cmd) {
        cmd->fallthrough();
        for (auto* sub : cmd->get_subcommands([](CLI::App*) { return true; }))
            enableFallthrough(sub);
    };
    enableFallthrough(&app);

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const soflab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
