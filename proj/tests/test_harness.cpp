#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "entq/harness/experiment.hpp"
#include "entq/harness/rng.hpp"
#include "entq/harness/tables.hpp"
#include "entq/lochs/series.hpp"

using namespace entq;

namespace {

const std::string kPiFile = std::string(ENTQ_SOURCE_DIR) + "/data/pi-digits.txt";

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.experiment = "custom";
    cfg.map_s = "radix:10";
    cfg.map_t = "rcf";
    cfg.n = 60;
    cfg.trials = 8;
    cfg.seed = 42;
    return cfg;
}

// a scratch file next to the test binary
struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream f(path);
        f << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("derived trial streams are stable and disjoint") {
    // frozen: these exact seeds identify master seed 1's first three trials
    CHECK(derive_seed(1, 0) == 10451216379200822465ull);
    CHECK(derive_seed(1, 1) == 13757245211066428519ull);
    CHECK(derive_seed(1, 2) == 17911839290282890590ull);

    std::set<std::uint64_t> seen;
    for (std::uint64_t master : {0ull, 1ull, 99991ull})
        for (std::uint64_t idx = 0; idx < 50; ++idx) seen.insert(derive_seed(master, idx));
    CHECK(seen.size() == 150);

    std::mt19937_64 a = trial_stream(derive_seed(7, 3));
    std::mt19937_64 b = trial_stream(derive_seed(7, 3));
    for (int i = 0; i < 20; ++i) CHECK(a() == b());

    std::mt19937_64 gen = trial_stream(123);
    long counts[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 20000; ++i) {
        long d = uniform_below(gen, 5);
        REQUIRE(d >= 0);
        REQUIRE(d < 5);
        ++counts[d];
    }
    for (long c : counts) CHECK(std::abs(c - 4000) < 300);  // ~5 sigma
    CHECK_THROWS_AS(uniform_below(gen, 0), std::domain_error);
}

TEST_CASE("random seed digits are admissible and deterministic") {
    PrecisionPolicy policy;
    policy.initial_bits = 256;

    SUBCASE("radix words are uniform digit strings") {
        MapPtr dec = make_radix(10);
        std::mt19937_64 gen = trial_stream(5);
        DigitSeq w = random_seed_digits(dec, 4000, gen, policy);
        REQUIRE(w.size() == 4000);
        double sum = 0;
        for (const Digit& d : w) {
            long v = d.as_long();
            REQUIRE(v >= 0);
            REQUIRE(v <= 9);
            sum += static_cast<double>(v);
        }
        CHECK(sum / 4000.0 == doctest::Approx(4.5).epsilon(0.05));
        std::mt19937_64 again = trial_stream(5);
        CHECK(random_seed_digits(dec, 4000, again, policy) == w);
    }

    SUBCASE("non-radix words come from genuine expansions") {
        for (const char* spec : {"bolyai", "golden:2", "beta-cf"}) {
            MapPtr map = parse_map(spec);
            PrecisionPolicy pol = policy_for_seed(40, map->branch_proxy());
            std::mt19937_64 gen = trial_stream(11);
            DigitSeq w = random_seed_digits(map, 40, gen, pol);
            REQUIRE(w.size() == 40);
            CHECK(map->admissible(w));
            std::mt19937_64 again = trial_stream(11);
            CHECK(random_seed_digits(map, 40, again, pol) == w);
        }
    }

    SUBCASE("pseudo-golden words never carry the forbidden run") {
        MapPtr g2 = make_pseudo_golden(2);
        PrecisionPolicy pol = policy_for_seed(60, g2->branch_proxy());
        std::mt19937_64 gen = trial_stream(17);
        DigitSeq w = random_seed_digits(g2, 60, gen, pol);
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            CHECK_FALSE((w[i].as_long() == 1 && w[i + 1].as_long() == 1));
    }
}

TEST_CASE("experiment reports are reproducible byte for byte") {
    ExperimentConfig cfg = small_config();
    ExperimentReport a = run_experiment(cfg);
    ExperimentReport b = run_experiment(cfg);
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(to_csv(a) == to_csv(b));

    cfg.jobs = 3;  // scheduling detail, must not leak into the report
    ExperimentReport c = run_experiment(cfg);
    CHECK(to_json(a).dump() == to_json(c).dump());

    cfg.jobs = 1;
    cfg.seed = 43;
    ExperimentReport d = run_experiment(cfg);
    CHECK(to_json(a).dump() != to_json(d).dump());
}

TEST_CASE("aggregates recompute exactly from the trial rows") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 12;
    ExperimentReport rep = run_experiment(cfg);
    REQUIRE(rep.failures == 0);
    REQUIRE(rep.trials.size() == 12);
    double sum_m = 0, sum_r = 0;
    for (const TrialRecord& rec : rep.trials) {
        CHECK(rec.ok);
        CHECK(rec.ratio == static_cast<double>(rec.m) / 60.0);
        sum_m += static_cast<double>(rec.m);
        sum_r += rec.ratio;
    }
    double mean_m = sum_m / 12.0, mean_r = sum_r / 12.0;
    CHECK(rep.mean_m == mean_m);
    CHECK(rep.mean_ratio == mean_r);
    double sq = 0;
    for (const TrialRecord& rec : rep.trials)
        sq += (rec.ratio - mean_r) * (rec.ratio - mean_r);
    CHECK(rep.std_ratio == std::sqrt(sq / 11.0));
    CHECK(rep.mean_standard_error == rep.std_ratio / std::sqrt(12.0));
}

TEST_CASE("radix pairs carry digit budgets and the below flag") {
    ExperimentConfig cfg;
    cfg.map_s = "radix:10";
    cfg.map_t = "radix:2";
    cfg.n = 50;
    cfg.trials = 6;
    cfg.seed = 3;
    ExperimentReport rep = run_experiment(cfg);
    const long budget = ell(50, 10, 2);
    CHECK(budget == 166);
    for (const TrialRecord& rec : rep.trials) {
        REQUIRE(rec.ok);
        CHECK(rec.ell == budget);
        CHECK(rec.m <= budget);
        CHECK(rec.sandwich_ok);
    }
    REQUIRE(rep.predicted_ratio.has_value());
    CHECK(*rep.predicted_ratio == doctest::Approx(3.321928).epsilon(1e-5));
    CHECK(rep.mean_ratio <= *rep.predicted_ratio);
    REQUIRE(rep.approaches_from_below.has_value());
    CHECK(*rep.approaches_from_below);

    cfg.full_series = true;
    ExperimentReport series_rep = run_experiment(cfg);
    REQUIRE(series_rep.series.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        const TrialRecord& rec = series_rep.trials[i];
        const MSeries& ms = series_rep.series[i];
        REQUIRE(rec.ok);
        REQUIRE(ms.rows.size() == 50);
        CHECK(rec.m == ms.rows.back().m);
        CHECK(rec.bound_violations == 0);
        long jumps = 0, hangs = 0;
        for (std::size_t r = 0; r < ms.rows.size(); ++r) {
            if (ms.rows[r].jump) ++jumps;
            if (r + 1 < ms.rows.size() && ms.rows[r + 1].m == ms.rows[r].m) ++hangs;
        }
        CHECK(rec.jumps == jumps);
        CHECK(rec.hangs == hangs);
    }
    // the same trial seeds, so the final counts agree with the plain run
    for (std::size_t i = 0; i < 6; ++i) CHECK(series_rep.trials[i].m == rep.trials[i].m);
}

TEST_CASE("one sided estimates appear exactly when one entropy is known") {
    ExperimentConfig cfg;
    cfg.map_s = "radix:10";
    cfg.map_t = "bolyai";
    cfg.n = 60;
    cfg.trials = 5;
    cfg.seed = 9;
    ExperimentReport fwd = run_experiment(cfg);
    CHECK_FALSE(fwd.predicted_ratio.has_value());
    REQUIRE(fwd.estimates.size() == 1);
    CHECK(fwd.estimates[0].known_side == KnownSide::S);
    CHECK(fwd.estimates[0].known_entropy == doctest::Approx(2.302585).epsilon(1e-5));
    CHECK(fwd.estimates[0].estimated_entropy > 0.8);
    CHECK(fwd.estimates[0].estimated_entropy < 1.4);

    ExperimentConfig rev;
    rev.map_s = "bolyai";
    rev.map_t = "radix:10";
    rev.n = 40;
    rev.trials = 4;
    rev.seed = 9;
    ExperimentReport back = run_experiment(rev);
    REQUIRE(back.estimates.size() == 1);
    CHECK(back.estimates[0].known_side == KnownSide::T);

    ExperimentConfig beta;
    beta.map_s = "radix:10";
    beta.map_t = "beta-cf";
    beta.n = 40;
    beta.trials = 4;
    beta.seed = 9;
    ExperimentReport both = run_experiment(beta);
    REQUIRE(both.estimates.size() == 2);
    CHECK(both.estimates[0].known_side == KnownSide::S);
    CHECK(both.estimates[1].known_side == KnownSide::T);
    bool caveat = false;
    for (const std::string& note : both.notes)
        if (note.find("two entropy readings") != std::string::npos) caveat = true;
    CHECK(caveat);
}

TEST_CASE("starved precision fails the whole run loudly") {
    ExperimentConfig cfg;
    cfg.map_s = "radix:10";
    cfg.map_t = "bolyai";
    cfg.n = 1000;
    cfg.trials = 2;
    cfg.precision_bits = 64;  // tops out at 1024 bits, far short of 10^-1000
    CHECK_THROWS_AS(run_experiment(cfg), std::runtime_error);
}

TEST_CASE("config validation and presets") {
    CHECK_THROWS_AS(preset_config("no-such-preset"), std::domain_error);
    ExperimentConfig lochs = preset_config("lochs-rcf");
    CHECK(lochs.map_s == "radix:10");
    CHECK(lochs.map_t == "rcf");
    CHECK(lochs.n == 1000);
    CHECK(lochs.trials == 100);
    CHECK_FALSE(lochs.full_series);
    CHECK(preset_config("hang-law").full_series);
    CHECK(preset_config("golden").map_t == "golden:2");
    CHECK(preset_config("bolyai-forward").trials == 50);
    CHECK(preset_config("bolyai-reverse").map_s == "bolyai");
    CHECK(preset_config("beta-cf").map_t == "beta-cf");
    CHECK(preset_config("custom").map_t == "rcf");

    CHECK(parse_map("decimal")->radix() == 10);
    CHECK(parse_map("binary")->radix() == 2);
    CHECK(parse_map("radix:7")->radix() == 7);
    CHECK(parse_map("golden:3")->golden_k() == 3);
    CHECK(parse_map("golden")->golden_k() == 2);
    CHECK(parse_map("cf")->kind() == MapKind::Rcf);
    CHECK(parse_map("alt-lueroth")->kind() == MapKind::AlternatingLueroth);
    CHECK_THROWS_AS(parse_map("nonsense"), std::domain_error);
    CHECK_THROWS_AS(parse_map("radix:x"), std::domain_error);

    ExperimentConfig bad;
    bad.n = 0;
    CHECK_THROWS_AS(run_experiment(bad), std::domain_error);
    bad.n = 10;
    bad.trials = 0;
    CHECK_THROWS_AS(run_experiment(bad), std::domain_error);
}

TEST_CASE("the pi file loader is picky about its input") {
    std::vector<int> digits = load_decimal_digits(kPiFile, 40);
    REQUIRE(digits.size() == 40);
    CHECK(digits[0] == 1);
    CHECK(digits[1] == 4);
    CHECK(digits[30] == 5);
    CHECK(digits[39] == 1);

    const std::string thirty = "141592653589793238462643383279";
    TempFile bare("pi_bare.txt", thirty + "50288");
    CHECK(load_decimal_digits(bare.path, 32).size() == 32);
    TempFile dotted("pi_dotted.txt", "  3." + thirty + "50288\n");
    CHECK(load_decimal_digits(dotted.path, 35) == load_decimal_digits(bare.path, 35));
    TempFile spaced("pi_spaced.txt", "3.14159 26535 89793\n23846 26433 83279 502");
    CHECK(load_decimal_digits(spaced.path, 33) == load_decimal_digits(bare.path, 33));

    TempFile wrong("pi_wrong.txt", "241592653589793238462643383279");
    CHECK_THROWS_AS(load_decimal_digits(wrong.path, 30), std::runtime_error);
    TempFile shorty("pi_short.txt", "1415926535");
    CHECK_THROWS_AS(load_decimal_digits(shorty.path, 10), std::runtime_error);
    CHECK_THROWS_AS(load_decimal_digits(bare.path, 2000), std::runtime_error);
    CHECK_THROWS_AS(load_decimal_digits("no_such_file.txt", 30), std::runtime_error);
}

TEST_CASE("the pi demo reproduces the frozen prefix counts") {
    PiDemo one = pi_demo(kPiFile, 1);
    CHECK(one.m == 0);
    CHECK(one.digits.empty());

    PiDemo three = pi_demo(kPiFile, 3);
    CHECK(three.m == 1);
    REQUIRE(three.digits.size() == 1);
    CHECK(three.digits[0].as_long() == 7);

    PiDemo ten = pi_demo(kPiFile, 10);
    CHECK(ten.m == 6);
    CHECK(to_string(ten.digits) == "7,15,1,292,1,1");

    PiDemo full = pi_demo(kPiFile, 1000);
    CHECK(full.m == 968);
    REQUIRE(full.digits.size() == 968);
    CHECK(full.digits[0].as_long() == 7);
    CHECK(full.digits[1].as_long() == 15);
    CHECK(full.digits[2].as_long() == 1);
    CHECK(full.digits[3].as_long() == 292);

    CHECK_THROWS_AS(pi_demo(kPiFile, 0), std::domain_error);
    CHECK(to_text(three).find("determine 1 continued fraction") != std::string::npos);
    nlohmann::ordered_json j = to_json(ten);
    CHECK(j["count"] == 10);
    CHECK(j["m"] == 6);
    CHECK(j["digits"][3] == 292);
}

TEST_CASE("the radix table lines up predictions and observations") {
    RadixTable tbl = radix_table({2, 3}, 40, 4, 1, 1);
    REQUIRE(tbl.cells.size() == 2);
    CHECK(tbl.cells[0].g == 2);
    CHECK(tbl.cells[0].h == 3);
    CHECK(tbl.cells[0].predicted == doctest::Approx(0.63093).epsilon(1e-4));
    CHECK(tbl.cells[1].predicted == doctest::Approx(1.58496).epsilon(1e-4));
    for (const RadixCell& cell : tbl.cells) {
        CHECK(cell.trials == 4);
        CHECK(cell.sandwich_ok);
        CHECK(cell.abs_error < 0.25);
        CHECK(cell.observed <= cell.predicted);
    }

    std::string text = to_text(tbl);
    CHECK(text.find("g\\h") != std::string::npos);
    CHECK(text.find("-") != std::string::npos);
    CHECK(text.find("?") == std::string::npos);
    RadixTable again = radix_table({2, 3}, 40, 4, 1, 2);
    CHECK(to_text(again) == text);
    CHECK(to_json(again).dump() == to_json(tbl).dump());

    std::string csv = to_csv(tbl);
    CHECK(csv.find("g,h,predicted") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 cells

    CHECK_THROWS_AS(radix_table({2}, 40, 4, 1, 1), std::domain_error);
    CHECK_THROWS_AS(radix_table({1, 2}, 40, 4, 1, 1), std::domain_error);
}

TEST_CASE("hang statistics pool across trials") {
    HangReport rep = hang_stats(10, 2, 120, 6, 2, 2);
    CHECK(rep.expected == 0.1);
    CHECK(rep.pooled.steps == 6 * 119);
    CHECK(rep.pooled.frequency > 0.03);
    CHECK(rep.pooled.frequency < 0.2);
    CHECK(rep.bound_violations == 0);
    long hist_total = 0;
    for (const auto& [v, count] : rep.hang_histogram) {
        CHECK(v >= 1);
        hist_total += count;
    }
    CHECK(hist_total == rep.jump_count);

    std::string text = to_text(rep);
    CHECK(text.find("expected 1/g = 0.100000") != std::string::npos);
    CHECK(text.find("bound violations = 0") != std::string::npos);
    nlohmann::ordered_json j = to_json(rep);
    CHECK(j["steps"] == 6 * 119);
    CHECK(j["jumps"] == rep.jump_count);
    long json_hist = 0;
    for (const auto& entry : j["gap_histogram"]) json_hist += entry["count"].get<long>();
    CHECK(json_hist == rep.jump_count);
}

TEST_CASE("report serializations stay in step") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 3;
    ExperimentReport rep = run_experiment(cfg);
    nlohmann::ordered_json j = to_json(rep);
    CHECK(j["config"]["experiment"] == "custom");
    CHECK(j["config"].contains("seed"));
    CHECK_FALSE(j["config"].contains("jobs"));  // execution detail, not identity
    CHECK_FALSE(j["config"].contains("out"));
    CHECK(j["maps"]["s"] == "radix-10");
    CHECK(j["maps"]["t"] == "rcf");
    CHECK(j["trials"].size() == 3);
    CHECK(j["trials"][0]["ell"].is_null());  // not a radix pair
    CHECK(j["trials"][0]["error"].is_null());
    CHECK(j["aggregates"]["failures"] == 0);
    CHECK(j["prediction"]["ratio"].get<double>() == doctest::Approx(0.970270).epsilon(1e-5));
    CHECK(j["estimates"].empty());
    REQUIRE(j["notes"].size() == 1);

    std::string csv = to_csv(rep);
    CHECK(csv.find("trial,derived_seed,ok,m,ratio,ell,") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    std::string text = to_text(rep);
    CHECK(text.find("radix-10 -> rcf") != std::string::npos);
    CHECK(text.find("predicted ratio = 0.970270") != std::string::npos);
}
