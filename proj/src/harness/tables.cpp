#include "entq/harness/tables.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "entq/entropy/entropy.hpp"
#include "entq/harness/experiment.hpp"
#include "entq/harness/rng.hpp"
#include "entq/lochs/agree.hpp"
#include "entq/numeric/types.hpp"

namespace entq {

RadixTable radix_table(const std::vector<long>& bases, long n, long trials,
                       std::uint64_t seed, int jobs) {
    if (bases.size() < 2) throw std::domain_error("radix_table needs at least two bases");
    for (long b : bases)
        if (b < 2) throw std::domain_error("radix bases must be at least 2");
    RadixTable tbl;
    tbl.bases = bases;
    tbl.n = n;
    tbl.trials = trials;
    tbl.seed = seed;
    std::uint64_t cell_index = 0;
    for (long g : bases) {
        for (long h : bases) {
            std::uint64_t cell_seed = derive_seed(seed, cell_index++);
            if (g == h) continue;
            ExperimentConfig cfg;
            cfg.experiment = "radix-matrix";
            cfg.map_s = "radix:" + std::to_string(g);
            cfg.map_t = "radix:" + std::to_string(h);
            cfg.n = n;
            cfg.trials = trials;
            cfg.seed = cell_seed;
            cfg.jobs = jobs;
            ExperimentReport rep = run_experiment(cfg);
            RadixCell cell;
            cell.g = g;
            cell.h = h;
            cell.predicted = rep.predicted_ratio.value();
            cell.observed = rep.mean_ratio;
            cell.abs_error = std::fabs(cell.observed - cell.predicted);
            cell.trials = static_cast<long>(rep.trials.size() - rep.failures);
            for (const TrialRecord& rec : rep.trials)
                if (rec.ok && !rec.sandwich_ok) cell.sandwich_ok = false;
            tbl.cells.push_back(cell);
        }
    }
    return tbl;
}

namespace {

std::string cell_label(const RadixTable& table, long g, long h) {
    if (g == h) return "-";
    for (const RadixCell& cell : table.cells) {
        if (cell.g != g || cell.h != h) continue;
        std::ostringstream out;
        out << std::fixed << std::setprecision(4) << cell.predicted << '|'
            << cell.observed;
        return out.str();
    }
    return "?";
}

}  // namespace

std::string to_text(const RadixTable& table) {
    const int width = 16;
    std::ostringstream out;
    out << "mean m/n for g-adic into h-adic, predicted|observed (n = " << table.n
        << ", trials = " << table.trials << " per cell, seed = " << table.seed << ")\n";
    out << std::left << std::setw(6) << "g\\h" << std::right;
    for (long h : table.bases) out << std::setw(width) << h;
    out << '\n';
    for (long g : table.bases) {
        out << std::left << std::setw(6) << g << std::right;
        for (long h : table.bases) out << std::setw(width) << cell_label(table, g, h);
        out << '\n';
    }
    return out.str();
}

std::string to_csv(const RadixTable& table) {
    std::ostringstream out;
    out << "g,h,predicted,observed,abs_error,trials,sandwich\n" << std::setprecision(17);
    for (const RadixCell& cell : table.cells)
        out << cell.g << ',' << cell.h << ',' << cell.predicted << ',' << cell.observed
            << ',' << cell.abs_error << ',' << cell.trials << ','
            << (cell.sandwich_ok ? 1 : 0) << '\n';
    return out.str();
}

nlohmann::ordered_json to_json(const RadixTable& table) {
    nlohmann::ordered_json j;
    j["bases"] = table.bases;
    j["n"] = table.n;
    j["trials"] = table.trials;
    j["seed"] = table.seed;
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const RadixCell& cell : table.cells)
        cells.push_back({{"g", cell.g},
                         {"h", cell.h},
                         {"predicted", cell.predicted},
                         {"observed", cell.observed},
                         {"abs_error", cell.abs_error},
                         {"trials", cell.trials},
                         {"sandwich_ok", cell.sandwich_ok}});
    j["cells"] = std::move(cells);
    return j;
}

HangReport hang_stats(long g, long h, long n, long trials, std::uint64_t seed,
                      int jobs) {
    ExperimentConfig cfg;
    cfg.experiment = "hang-law";
    cfg.map_s = "radix:" + std::to_string(g);
    cfg.map_t = "radix:" + std::to_string(h);
    cfg.n = n;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.jobs = jobs;
    cfg.full_series = true;
    ExperimentReport rep = run_experiment(cfg);

    HangReport report;
    report.g = g;
    report.h = h;
    report.n = n;
    report.trials = trials;
    report.seed = seed;
    report.expected = 1.0 / static_cast<double>(g);
    std::vector<MSeries> kept;
    for (std::size_t i = 0; i < rep.trials.size(); ++i) {
        if (!rep.trials[i].ok) continue;
        report.jump_count += rep.trials[i].jumps;
        report.bound_violations += rep.trials[i].bound_violations;
        JumpStats stats = jump_times(rep.series[i]);
        for (long v : stats.hangs) ++report.hang_histogram[v];
        kept.push_back(std::move(rep.series[i]));
    }
    report.pooled = hang_frequency(kept, g);
    return report;
}

std::string to_text(const HangReport& report) {
    std::ostringstream out;
    out << "hang statistics: radix-" << report.g << " -> radix-" << report.h
        << ", n = " << report.n << ", trials = " << report.trials << ", seed = "
        << report.seed << '\n';
    out << std::fixed << std::setprecision(6);
    out << "steps = " << report.pooled.steps << ", hangs = " << report.pooled.hangs
        << ", frequency = " << report.pooled.frequency << " (se "
        << report.pooled.standard_error << "), expected 1/g = " << report.expected
        << '\n';
    out << "jumps = " << report.jump_count << ", bound violations = "
        << report.bound_violations << '\n';
    out << "gap histogram (length: count):\n";
    for (const auto& [v, count] : report.hang_histogram)
        out << "  " << v << ": " << count << '\n';
    return out.str();
}

nlohmann::ordered_json to_json(const HangReport& report) {
    nlohmann::ordered_json j;
    j["g"] = report.g;
    j["h"] = report.h;
    j["n"] = report.n;
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    j["steps"] = report.pooled.steps;
    j["hangs"] = report.pooled.hangs;
    j["frequency"] = report.pooled.frequency;
    j["standard_error"] = report.pooled.standard_error;
    j["expected"] = report.expected;
    j["jumps"] = report.jump_count;
    j["bound_violations"] = report.bound_violations;
    nlohmann::ordered_json hist = nlohmann::ordered_json::array();
    for (const auto& [v, count] : report.hang_histogram)
        hist.push_back({{"gap", v}, {"count", count}});
    j["gap_histogram"] = std::move(hist);
    return j;
}

std::vector<int> load_decimal_digits(const std::string& path, std::size_t count) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pi digits file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos + 1 < text.size() && text[pos] == '3' && text[pos + 1] == '.') pos += 2;
    std::vector<int> digits;
    for (; pos < text.size(); ++pos) {
        unsigned char c = static_cast<unsigned char>(text[pos]);
        if (std::isdigit(c)) digits.push_back(c - '0');
    }
    static const char kPrefix[] = "141592653589793238462643383279";
    if (digits.size() < 30)
        throw std::runtime_error(path + " holds fewer than 30 digits");
    for (std::size_t i = 0; i < 30; ++i)
        if (digits[i] != kPrefix[i] - '0')
            throw std::runtime_error(path + " does not start with the fractional digits of pi");
    if (digits.size() < count)
        throw std::runtime_error(path + " holds only " + std::to_string(digits.size()) +
                                 " digits, " + std::to_string(count) + " requested");
    digits.resize(count);
    return digits;
}

PiDemo pi_demo(const std::string& digits_file, long count) {
    if (count < 1) throw std::domain_error("pi_demo: count must be at least 1");
    std::vector<int> digits =
        load_decimal_digits(digits_file, static_cast<std::size_t>(count));
    BigInt P = 0;
    for (int d : digits) {
        BigInt shifted = P * 10;
        shifted += d;
        P = shifted;
    }
    BigInt D = pow_ui(10ul, static_cast<unsigned long>(count));
    BigInt P1 = P + 1;
    MapPtr dec = make_radix(10);
    MapPtr rcf = make_rcf();
    PrecisionPolicy policy = policy_for_seed(count, 10.0);
    long cap = default_cap(dec, count, rcf);
    AgreementResult ar =
        determined_digits(make_rational(P, D), make_rational(P1, D), rcf, cap, policy);
    if (ar.status != AgreementStatus::Separated)
        throw std::runtime_error("pi demo stopped before the endpoints separated");
    PiDemo demo;
    demo.count = count;
    demo.m = ar.m;
    demo.digits = std::move(ar.digits);
    return demo;
}

std::string to_text(const PiDemo& demo) {
    std::ostringstream out;
    out << "first " << demo.count << " decimals of pi determine " << demo.m
        << " continued fraction digits\n";
    if (!demo.digits.empty()) out << to_string(demo.digits) << '\n';
    return out.str();
}

nlohmann::ordered_json to_json(const PiDemo& demo) {
    nlohmann::ordered_json j;
    j["count"] = demo.count;
    j["m"] = demo.m;
    std::vector<long> values;
    values.reserve(demo.digits.size());
    for (const Digit& d : demo.digits) values.push_back(d.as_long());
    j["digits"] = values;
    return j;
}

nlohmann::ordered_json constants_json(long bits) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json known = nlohmann::ordered_json::array();
    for (const char* spec : {"rcf", "radix:2", "radix:10", "lueroth",
                             "alternating-lueroth", "golden:2", "golden:3"}) {
        MapPtr map = parse_map(spec);
        EntropyValue v = entropy_constant(map, bits);
        known.push_back({{"map", map->name()},
                        {"entropy", v.value()},
                        {"error_bound", v.error_bound()},
                        {"provenance", std::string(to_string(v.provenance))},
                        {"decimal", v.decimal(24)}});
    }
    j["known"] = std::move(known);
    j["unknown"] = {{{"map", "bolyai"},
                     {"benchmark", kBolyaiEntropyBenchmark},
                     {"note", "benchmark reported by later numerical work, not computed here"}},
                    {{"map", "beta-cf"},
                     {"note", "no closed form for the invariant density is known"}}};
    nlohmann::ordered_json ratios = nlohmann::ordered_json::array();
    const std::pair<const char*, const char*> pairs[] = {
        {"radix:10", "rcf"}, {"radix:10", "radix:2"}, {"radix:10", "golden:2"},
        {"radix:7", "radix:10"}};
    for (const auto& [s, t] : pairs) {
        MapPtr S = parse_map(s);
        MapPtr T = parse_map(t);
        EntropyValue r = lochs_ratio(S, T, bits);
        ratios.push_back({{"s", S->name()},
                          {"t", T->name()},
                          {"ratio", r.value()},
                          {"error_bound", r.error_bound()}});
    }
    j["predicted_ratios"] = std::move(ratios);
    return j;
}

}  // namespace entq
