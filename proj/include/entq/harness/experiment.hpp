#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entq/entropy/entropy.hpp"
#include "entq/expansions/map.hpp"
#include "entq/lochs/series.hpp"

namespace entq {

// Everything that identifies an experiment. Two runs with equal configs
// produce byte-identical reports; jobs, out and format are execution details
// and are not echoed into the report.
struct ExperimentConfig {
    std::string experiment = "custom";
    std::string map_s = "radix:10";
    std::string map_t = "rcf";
    long n = 1000;           // seed word length
    long trials = 100;
    std::uint64_t seed = 1;  // master seed; per-trial streams derive from it
    long precision_bits = 0; // 0: sized from n and the source map
    bool full_series = false; // per-round m values and jump statistics
    int jobs = 1;
    std::string out;          // file path; empty writes to stdout
    std::string format = "json";
};

// Map spec strings: rcf, radix:G, lueroth, alternating-lueroth, bolyai,
// golden:K, beta-cf. decimal and binary are radix:10 and radix:2.
MapPtr parse_map(const std::string& spec);

// Preset ids: lochs-rcf, radix-matrix, hang-law, golden, bolyai-forward,
// bolyai-reverse, beta-cf. custom is the default-constructed config.
ExperimentConfig preset_config(const std::string& id);

struct TrialRecord {
    long index = 0;
    std::uint64_t derived_seed = 0;
    bool ok = false;
    std::string error;            // what() of the failure when not ok
    long m = 0;
    double ratio = 0.0;           // m / n
    long ell = -1;                // digit budget, radix pairs only
    bool sandwich_ok = true;      // m <= ell wherever ell is defined
    long jumps = -1;              // full-series runs only
    long hangs = -1;              // rows with m(n+1) = m(n), full-series only
    long bound_violations = -1;   // jump rows failing the exact jump bound
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string map_s_name;
    std::string map_t_name;
    long precision_bits = 0;  // bits actually used before escalation
    std::vector<TrialRecord> trials;
    std::vector<MSeries> series;  // full-series runs; index-aligned, failed trials empty
    std::size_t failures = 0;
    double mean_m = 0.0;
    double std_m = 0.0;       // sample std over trials
    double mean_ratio = 0.0;
    double std_ratio = 0.0;
    double mean_standard_error = 0.0;  // std_ratio / sqrt(ok trials)
    std::optional<double> predicted_ratio;      // set when both entropies are known
    std::optional<bool> approaches_from_below;  // radix pairs: every m <= ell and mean below predicted
    std::vector<EstimateReport> estimates;      // when exactly one entropy is known
    std::vector<std::string> notes;
};

// N independent trials: random seed word for mapS, then the number of mapT
// digits its rank-n cylinder determines. Per-trial failures are recorded in
// the report; only all trials failing throws. jobs > 1 runs trials in
// parallel, results are assembled in trial order either way.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// The JSON report is the source of truth; csv and text are projections.
nlohmann::ordered_json to_json(const ExperimentReport& report);
std::string to_csv(const ExperimentReport& report);
std::string to_text(const ExperimentReport& report);

}  // namespace entq
