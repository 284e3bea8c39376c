#include "entq/harness/experiment.hpp"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "entq/expansions/cylinder.hpp"
#include "entq/harness/rng.hpp"
#include "entq/lochs/agree.hpp"
#include "entq/numeric/types.hpp"

namespace entq {

MapPtr parse_map(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto numeric_arg = [&](long fallback) {
        if (arg.empty()) return fallback;
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(arg, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != arg.size()) throw std::domain_error("bad map parameter: " + spec);
        return v;
    };
    if (head == "rcf" || head == "cf") return make_rcf();
    if (head == "radix") return make_radix(numeric_arg(10));
    if (head == "decimal") return make_radix(10);
    if (head == "binary") return make_radix(2);
    if (head == "lueroth") return make_lueroth();
    if (head == "alternating-lueroth" || head == "alt-lueroth")
        return make_alternating_lueroth();
    if (head == "golden") return make_pseudo_golden(static_cast<int>(numeric_arg(2)));
    if (head == "bolyai") return make_bolyai();
    if (head == "beta-cf") return make_beta_cf();
    throw std::domain_error("unknown map spec: " + spec);
}

ExperimentConfig preset_config(const std::string& id) {
    ExperimentConfig cfg;
    cfg.experiment = id;
    if (id == "custom") return cfg;
    if (id == "lochs-rcf") {
        cfg.map_s = "radix:10";
        cfg.map_t = "rcf";
        return cfg;
    }
    if (id == "radix-matrix") {  // one representative cell; the table covers the rest
        cfg.map_s = "radix:10";
        cfg.map_t = "radix:2";
        return cfg;
    }
    if (id == "hang-law") {
        cfg.map_s = "radix:10";
        cfg.map_t = "radix:2";
        cfg.full_series = true;
        return cfg;
    }
    if (id == "golden") {
        cfg.map_s = "radix:10";
        cfg.map_t = "golden:2";
        cfg.full_series = true;
        return cfg;
    }
    if (id == "bolyai-forward") {
        cfg.map_s = "radix:10";
        cfg.map_t = "bolyai";
        cfg.trials = 50;
        return cfg;
    }
    if (id == "bolyai-reverse") {
        cfg.map_s = "bolyai";
        cfg.map_t = "radix:10";
        cfg.trials = 50;
        return cfg;
    }
    if (id == "beta-cf") {
        cfg.map_s = "radix:10";
        cfg.map_t = "beta-cf";
        return cfg;
    }
    throw std::domain_error("unknown experiment preset: " + id);
}

namespace {

struct TrialOutcome {
    TrialRecord rec;
    MSeries series;
};

void run_one_trial(const ExperimentConfig& cfg, const MapPtr& S, const MapPtr& T,
                   const PrecisionPolicy& policy, long cap, TrialOutcome& out) {
    TrialRecord& rec = out.rec;
    std::mt19937_64 gen = trial_stream(rec.derived_seed);
    DigitSeq seed = random_seed_digits(S, static_cast<std::size_t>(cfg.n), gen, policy);

    if (cfg.full_series) {
        MSeries ms = m_series(S, seed, T, policy);
        if (ms.capped) throw std::runtime_error("agreement cap hit before separation");
        const bool golden_pair = S->kind() == MapKind::Radix &&
                                 T->kind() == MapKind::PseudoGolden && T->golden_k() == 2;
        const MSeriesRow& last = ms.rows.back();
        rec.m = last.m;
        rec.ell = last.ell;
        rec.jumps = 0;
        rec.hangs = 0;
        for (std::size_t i = 0; i + 1 < ms.rows.size(); ++i)
            if (ms.rows[i + 1].m == ms.rows[i].m) ++rec.hangs;
        long violations = 0;
        for (const MSeriesRow& row : ms.rows) {
            if (ms.radix_pair && row.m > row.ell) rec.sandwich_ok = false;
            if (!row.jump) continue;
            ++rec.jumps;
            if (ms.radix_pair && !jump_bound_holds(row.m, row.ell, ms.g, ms.h)) ++violations;
            if (golden_pair && !golden_jump_bound_holds(row.m, row.n, S->radix())) ++violations;
        }
        rec.bound_violations = (ms.radix_pair || golden_pair) ? violations : -1;
        out.series = std::move(ms);
    } else {
        RealScalar left, right;
        if (S->kind() == MapKind::Radix) {
            const long g = S->radix();
            BigInt P = 0;
            for (const Digit& d : seed) {
                BigInt shifted = P * g;
                shifted += d.payload;
                P = shifted;
            }
            BigInt D = pow_ui(BigInt(g), static_cast<unsigned long>(cfg.n));
            BigInt P1 = P + 1;
            left = make_rational(P, D);
            right = make_rational(P1, D);
        } else {
            Cylinder cyl = cylinder(*S, seed, policy);
            left = cyl.left;
            right = cyl.right;
        }
        AgreementResult ar = determined_digits(left, right, T, cap, policy);
        if (ar.status == AgreementStatus::PrecisionExhausted)
            throw PrecisionExhausted("agreement ran out of precision");
        if (ar.status == AgreementStatus::CapReached)
            throw std::runtime_error("agreement cap hit before separation");
        rec.m = ar.m;
        if (S->kind() == MapKind::Radix && T->kind() == MapKind::Radix) {
            rec.ell = ell(cfg.n, S->radix(), T->radix());
            rec.sandwich_ok = rec.m <= rec.ell;
        }
    }
    rec.ratio = static_cast<double>(rec.m) / static_cast<double>(cfg.n);
    rec.ok = true;
}

double sample_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.n < 1) throw std::domain_error("n must be at least 1");
    if (cfg.trials < 1) throw std::domain_error("trials must be at least 1");
    MapPtr S = parse_map(cfg.map_s);
    MapPtr T = parse_map(cfg.map_t);

    PrecisionPolicy policy = policy_for_seed(cfg.n, S->branch_proxy());
    if (cfg.precision_bits > 0) policy.initial_bits = cfg.precision_bits;
    const long cap = default_cap(S, cfg.n, T);

    ExperimentReport report;
    report.config = cfg;
    report.map_s_name = S->name();
    report.map_t_name = T->name();
    report.precision_bits = policy.initial_bits;

    const long N = cfg.trials;
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(N));
    auto execute = [&](long idx) {
        TrialOutcome& out = outcomes[static_cast<std::size_t>(idx)];
        out.rec.index = idx;
        out.rec.derived_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(idx));
        try {
            run_one_trial(cfg, S, T, policy, cap, out);
        } catch (const std::exception& e) {
            out.rec.ok = false;
            out.rec.error = e.what();
        }
    };
    const int jobs = cfg.jobs > 1 ? cfg.jobs : 1;
    if (jobs == 1 || N == 1) {
        for (long i = 0; i < N; ++i) execute(i);
    } else {
        std::atomic<long> next{0};
        auto worker = [&]() {
            for (;;) {
                long i = next.fetch_add(1);
                if (i >= N) return;
                execute(i);
            }
        };
        std::vector<std::thread> pool;
        const int threads = static_cast<int>(std::min<long>(jobs, N));
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::vector<double> ms, ratios;
    for (TrialOutcome& out : outcomes) {
        report.trials.push_back(out.rec);
        if (cfg.full_series) report.series.push_back(std::move(out.series));
        if (out.rec.ok) {
            ms.push_back(static_cast<double>(out.rec.m));
            ratios.push_back(out.rec.ratio);
        } else {
            ++report.failures;
        }
    }
    if (ratios.empty())
        throw std::runtime_error("all trials failed: " + report.trials.front().error);

    report.mean_m = sample_mean(ms);
    report.std_m = sample_std(ms, report.mean_m);
    report.mean_ratio = sample_mean(ratios);
    report.std_ratio = sample_std(ratios, report.mean_ratio);
    report.mean_standard_error =
        report.std_ratio / std::sqrt(static_cast<double>(ratios.size()));

    bool hs_known = true, ht_known = true;
    double hs = 0.0, ht = 0.0;
    try {
        hs = entropy_constant(S).value();
    } catch (const UnknownEntropy&) {
        hs_known = false;
    }
    try {
        ht = entropy_constant(T).value();
    } catch (const UnknownEntropy&) {
        ht_known = false;
    }
    if (hs_known && ht_known) {
        report.predicted_ratio = lochs_ratio(S, T).value();
    } else if (hs_known || ht_known) {
        try {
            if (hs_known) {
                report.estimates.push_back(estimate_entropy(ratios, KnownSide::S, hs));
                if (T->kind() == MapKind::BetaCf) {
                    // the literature states this pair's ratio limit both ways
                    // round, so both conversions of the observed mean are
                    // reported; neither is endorsed here
                    report.estimates.push_back(estimate_entropy(ratios, KnownSide::T, hs));
                    report.notes.push_back(
                        "two entropy readings for " + report.map_t_name +
                        ": h(S)/mean(m/n) treats the limit as h(S)/h(T), "
                        "h(S)*mean(m/n) treats it as h(T)/h(S); the correct "
                        "conversion for this target is unsettled");
                }
            } else {
                report.estimates.push_back(estimate_entropy(ratios, KnownSide::T, ht));
            }
        } catch (const DegenerateSample& e) {
            report.notes.push_back(std::string("entropy estimate skipped: ") + e.what());
        }
    } else {
        report.notes.push_back("neither side has a known entropy; no prediction or estimate");
    }
    if (S->kind() == MapKind::Radix && T->kind() == MapKind::Radix) {
        bool below = report.predicted_ratio && report.mean_ratio <= *report.predicted_ratio;
        for (const TrialRecord& rec : report.trials)
            if (rec.ok && !rec.sandwich_ok) below = false;
        report.approaches_from_below = below;
    }
    report.notes.push_back(
        "seed digits are i.i.d. uniform per trial; observed ratios assume that "
        "sampling model");
    return report;
}

namespace {

nlohmann::ordered_json estimate_json(const EstimateReport& est) {
    nlohmann::ordered_json j;
    j["known_side"] = est.known_side == KnownSide::S ? "S" : "T";
    j["known_entropy"] = est.known_entropy;
    j["mean_ratio"] = est.mean_ratio;
    j["sample_std"] = est.sample_std;
    j["mean_standard_error"] = est.mean_standard_error;
    j["trials"] = est.trials;
    j["estimated_entropy"] = est.estimated_entropy;
    j["entropy_standard_error"] = est.entropy_standard_error;
    if (est.predicted_ratio)
        j["predicted_ratio"] = *est.predicted_ratio;
    else
        j["predicted_ratio"] = nullptr;
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

nlohmann::ordered_json to_json(const ExperimentReport& report) {
    nlohmann::ordered_json j;
    j["config"] = {{"experiment", report.config.experiment},
                   {"map_s", report.config.map_s},
                   {"map_t", report.config.map_t},
                   {"n", report.config.n},
                   {"trials", report.config.trials},
                   {"seed", report.config.seed},
                   {"precision_bits", report.config.precision_bits},
                   {"full_series", report.config.full_series}};
    j["maps"] = {{"s", report.map_s_name}, {"t", report.map_t_name}};
    j["precision_bits"] = report.precision_bits;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const TrialRecord& rec : report.trials) {
        nlohmann::ordered_json r;
        r["trial"] = rec.index;
        r["derived_seed"] = rec.derived_seed;
        r["ok"] = rec.ok;
        r["m"] = rec.m;
        r["ratio"] = rec.ratio;
        r["ell"] = rec.ell >= 0 ? nlohmann::ordered_json(rec.ell) : nlohmann::ordered_json(nullptr);
        r["sandwich_ok"] = rec.ell >= 0 ? nlohmann::ordered_json(rec.sandwich_ok)
                                        : nlohmann::ordered_json(nullptr);
        r["jumps"] = rec.jumps >= 0 ? nlohmann::ordered_json(rec.jumps) : nlohmann::ordered_json(nullptr);
        r["hangs"] = rec.hangs >= 0 ? nlohmann::ordered_json(rec.hangs) : nlohmann::ordered_json(nullptr);
        r["bound_violations"] = rec.bound_violations >= 0
                                    ? nlohmann::ordered_json(rec.bound_violations)
                                    : nlohmann::ordered_json(nullptr);
        r["error"] = rec.ok ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(rec.error);
        rows.push_back(std::move(r));
    }
    j["trials"] = std::move(rows);
    j["aggregates"] = {{"trials_ok", report.trials.size() - report.failures},
                       {"failures", report.failures},
                       {"mean_m", report.mean_m},
                       {"std_m", report.std_m},
                       {"mean_ratio", report.mean_ratio},
                       {"std_ratio", report.std_ratio},
                       {"mean_standard_error", report.mean_standard_error}};
    if (report.predicted_ratio)
        j["prediction"] = {{"ratio", *report.predicted_ratio}};
    else
        j["prediction"] = nullptr;
    if (report.approaches_from_below)
        j["approaches_from_below"] = *report.approaches_from_below;
    else
        j["approaches_from_below"] = nullptr;
    nlohmann::ordered_json ests = nlohmann::ordered_json::array();
    for (const EstimateReport& est : report.estimates) ests.push_back(estimate_json(est));
    j["estimates"] = std::move(ests);
    j["notes"] = report.notes;
    return j;
}

std::string to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "trial,derived_seed,ok,m,ratio,ell,sandwich,jumps,hangs,bound_violations,error\n";
    out << std::setprecision(17);
    for (const TrialRecord& rec : report.trials) {
        out << rec.index << ',' << rec.derived_seed << ',' << (rec.ok ? 1 : 0) << ','
            << rec.m << ',' << rec.ratio << ',';
        if (rec.ell >= 0) out << rec.ell;
        out << ',';
        if (rec.ell >= 0) out << (rec.sandwich_ok ? 1 : 0);
        out << ',';
        if (rec.jumps >= 0) out << rec.jumps;
        out << ',';
        if (rec.hangs >= 0) out << rec.hangs;
        out << ',';
        if (rec.bound_violations >= 0) out << rec.bound_violations;
        out << ',' << csv_field(rec.error) << '\n';
    }
    return out.str();
}

std::string to_text(const ExperimentReport& report) {
    std::ostringstream out;
    out << "experiment " << report.config.experiment << ": " << report.map_s_name
        << " -> " << report.map_t_name << '\n';
    out << "n = " << report.config.n << ", trials = " << report.config.trials << " ("
        << report.failures << " failed), master seed = " << report.config.seed << ", "
        << report.precision_bits << " bits\n";
    out << std::fixed << std::setprecision(6);
    out << "mean m = " << report.mean_m << "  (std " << report.std_m << ")\n";
    out << "mean m/n = " << report.mean_ratio << "  (std " << report.std_ratio
        << ", se " << report.mean_standard_error << ")\n";
    if (report.predicted_ratio)
        out << "predicted ratio = " << *report.predicted_ratio << "\n";
    if (report.approaches_from_below)
        out << "approaches from below: " << (*report.approaches_from_below ? "yes" : "no")
            << "\n";
    for (const EstimateReport& est : report.estimates) {
        out << "entropy estimate (" << (est.known_side == KnownSide::S ? "S" : "T")
            << " known, h = " << est.known_entropy << "): " << est.estimated_entropy
            << " +- " << est.entropy_standard_error << "\n";
    }
    for (const std::string& note : report.notes) out << "note: " << note << "\n";
    return out.str();
}

}  // namespace entq
