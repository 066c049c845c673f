#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace soflab {

struct ScenarioStep {
    std::string id;
    std::string op;
    nlohmann::json params;
};

struct Scenario {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<ScenarioStep> steps;
    std::string outputPath;
};

Scenario scenario_from_json(const nlohmann::json& j);
Scenario scenario_from_file(const std::string& path);

struct StepResult {
    std::string id;
    std::string op;
    nlohmann::json params;   // resolved (wiring references substituted)
    nlohmann::json payload;  // deterministic result
    double wallMs = 0.0;
    std::string dot;  // optional side artifacts for emit_formats
    std::string csv;
};

struct RunReport {
    std::string scenario;
    std::string toolVersion;
    std::uint64_t seed = 0;
    std::vector<StepResult> steps;
};

/// Executes the steps in order. A string parameter "$stepId/json/pointer"
/// resolves against an earlier step's payload, which is how measured
/// quantities feed later steps. Steps that sample randomness default to
/// seed·1000003 + stepIndex unless they carry an explicit "seed".
RunReport run_scenario(const Scenario& s);

/// Single operation dispatch, shared by scenarios and the CLI.
nlohmann::json run_op(const std::string& op, const nlohmann::json& params,
                      std::uint64_t defaultSeed, std::string* dotOut = nullptr,
                      std::string* csvOut = nullptr);

nlohmann::json report_to_json(const RunReport& rep);

/// The reproducible part: scenario identity and per-step payloads, no
/// timings. Byte-identical across reruns with the same seed.
nlohmann::json payloads_to_json(const RunReport& rep);

struct EmitFlags {
    bool dot = false;
    bool csv = false;
    std::string directory = ".";
};

/// Writes report JSON (always) plus optional DOT/CSV artifacts; returns
/// the written paths.
std::vector<std::string> emit_formats(const RunReport& rep, const EmitFlags& flags);

std::string slurp_file(const std::string& path);
void spill_file(const std::string& path, const std::string& content);

}
