#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entq/harness/experiment.hpp"
#include "entq/harness/tables.hpp"

namespace {

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << content;
}

std::string render(const entq::ExperimentReport& rep, const std::string& format) {
    if (format == "json") return entq::to_json(rep).dump(2) + "\n";
    if (format == "csv") return entq::to_csv(rep);
    if (format == "text") return entq::to_text(rep);
    throw std::domain_error("unknown format: " + format);
}

void apply_json(entq::ExperimentConfig& cfg, const nlohmann::json& j) {
    if (j.contains("map_s")) cfg.map_s = j["map_s"].get<std::string>();
    if (j.contains("map_t")) cfg.map_t = j["map_t"].get<std::string>();
    if (j.contains("n")) cfg.n = j["n"].get<long>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<long>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("precision_bits")) cfg.precision_bits = j["precision_bits"].get<long>();
    if (j.contains("full_series")) cfg.full_series = j["full_series"].get<bool>();
    if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy quotients and numbers of correct digits, experimentally"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run one experiment and write its report");
    std::string experiment, map_s, map_t, config_path, run_out, run_format;
    long run_n = 0, run_trials = 0, precision_bits = 0;
    std::uint64_t run_seed = 0;
    int run_jobs = 0;
    bool full_series = false;
    run->add_option("-e,--experiment", experiment,
                    "preset: lochs-rcf, radix-matrix, hang-law, golden, "
                    "bolyai-forward, bolyai-reverse, beta-cf, custom");
    run->add_option("--map-s", map_s, "source map spec, e.g. radix:10");
    run->add_option("--map-t", map_t, "target map spec, e.g. rcf");
    run->add_option("-n,--n", run_n, "seed word length");
    run->add_option("-N,--trials", run_trials, "independent trials");
    run->add_option("--seed", run_seed, "master seed");
    run->add_option("--precision-bits", precision_bits, "override starting precision");
    run->add_flag("--full-series", full_series, "per-round m values and jump checks");
    run->add_option("-j,--jobs", run_jobs, "parallel trial workers");
    run->add_option("-c,--config", config_path, "JSON config file; flags still win");
    run->add_option("-o,--out", run_out, "output path, default stdout");
    run->add_option("-f,--format", run_format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    auto* table = app.add_subcommand("table", "predicted vs observed matrix over radix pairs");
    std::vector<long> bases{2, 7, 10};
    long table_n = 1000, table_trials = 100;
    std::uint64_t table_seed = 1;
    int table_jobs = 1;
    std::string table_out, table_format = "text";
    table->add_option("--bases", bases, "radix bases, ordered pairs of them");
    table->add_option("-n,--n", table_n, "seed word length");
    table->add_option("-N,--trials", table_trials, "trials per cell");
    table->add_option("--seed", table_seed, "master seed");
    table->add_option("-j,--jobs", table_jobs, "parallel trial workers");
    table->add_option("-o,--out", table_out, "output path, default stdout");
    table->add_option("-f,--format", table_format, "text, csv or json")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    auto* pi = app.add_subcommand("pi-demo", "digits of pi determined by its decimals");
    std::string digits_file = "data/pi-digits.txt", pi_out, pi_format = "text";
    long pi_count = 1000;
    pi->add_option("--digits-file", digits_file, "decimal digits of pi, plain text");
    pi->add_option("--count", pi_count, "decimals to use");
    pi->add_option("-o,--out", pi_out, "output path, default stdout");
    pi->add_option("-f,--format", pi_format, "text or json")
        ->check(CLI::IsMember({"json", "text"}));

    auto* constants = app.add_subcommand("constants", "known entropy constants and ratios");
    long const_bits = 192;
    std::string const_out;
    constants->add_option("--bits", const_bits, "working precision");
    constants->add_option("-o,--out", const_out, "output path, default stdout");

    auto* hang = app.add_subcommand("hangstats", "pooled hang statistics for a radix pair");
    long hang_g = 10, hang_h = 2, hang_n = 1000, hang_trials = 100;
    std::uint64_t hang_seed = 1;
    int hang_jobs = 1;
    std::string hang_out, hang_format = "text";
    hang->add_option("--base-s", hang_g, "source base");
    hang->add_option("--base-t", hang_h, "target base");
    hang->add_option("-n,--n", hang_n, "seed word length");
    hang->add_option("-N,--trials", hang_trials, "independent trials");
    hang->add_option("--seed", hang_seed, "master seed");
    hang->add_option("-j,--jobs", hang_jobs, "parallel trial workers");
    hang->add_option("-o,--out", hang_out, "output path, default stdout");
    hang->add_option("-f,--format", hang_format, "text or json")
        ->check(CLI::IsMember({"json", "text"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            entq::ExperimentConfig cfg;
            if (run->count("--experiment")) cfg = entq::preset_config(experiment);
            if (run->count("--config")) {
                std::ifstream f(config_path);
                if (!f) throw std::runtime_error("cannot read config " + config_path);
                nlohmann::json j = nlohmann::json::parse(f);
                if (!run->count("--experiment") && j.contains("experiment"))
                    cfg = entq::preset_config(j["experiment"].get<std::string>());
                apply_json(cfg, j);
            }
            if (run->count("--map-s")) cfg.map_s = map_s;
            if (run->count("--map-t")) cfg.map_t = map_t;
            if (run->count("--n")) cfg.n = run_n;
            if (run->count("--trials")) cfg.trials = run_trials;
            if (run->count("--seed")) cfg.seed = run_seed;
            if (run->count("--precision-bits")) cfg.precision_bits = precision_bits;
            if (run->count("--full-series")) cfg.full_series = full_series;
            if (run->count("--jobs")) cfg.jobs = run_jobs;
            if (run->count("--out")) cfg.out = run_out;
            if (run->count("--format")) cfg.format = run_format;
            entq::ExperimentReport rep = entq::run_experiment(cfg);
            emit(render(rep, cfg.format), cfg.out);
            if (rep.failures * 10 > rep.trials.size()) return 2;
            return 0;
        }
        if (table->parsed()) {
            entq::RadixTable tbl =
                entq::radix_table(bases, table_n, table_trials, table_seed, table_jobs);
            std::string content = table_format == "json" ? to_json(tbl).dump(2) + "\n"
                                  : table_format == "csv" ? to_csv(tbl)
                                                          : to_text(tbl);
            emit(content, table_out);
            return 0;
        }
        if (pi->parsed()) {
            entq::PiDemo demo = entq::pi_demo(digits_file, pi_count);
            emit(pi_format == "json" ? to_json(demo).dump(2) + "\n" : to_text(demo), pi_out);
            return 0;
        }
        if (constants->parsed()) {
            emit(entq::constants_json(const_bits).dump(2) + "\n", const_out);
            return 0;
        }
        if (hang->parsed()) {
            entq::HangReport rep =
                entq::hang_stats(hang_g, hang_h, hang_n, hang_trials, hang_seed, hang_jobs);
            emit(hang_format == "json" ? to_json(rep).dump(2) + "\n" : to_text(rep), hang_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
