#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "entq/expansions/digit.hpp"
#include "entq/lochs/series.hpp"

namespace entq {

struct RadixCell {
    long g = 0;
    long h = 0;
    double predicted = 0.0;  // log g / log h
    double observed = 0.0;   // mean m/n over the trials
    double abs_error = 0.0;
    long trials = 0;
    bool sandwich_ok = true;  // every trial kept m <= ell
};

struct RadixTable {
    std::vector<long> bases;
    long n = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    std::vector<RadixCell> cells;  // ordered pairs g != h, row-major
};

// One experiment per ordered base pair; each cell gets its own derived
// master seed so the table is reproducible cell by cell.
RadixTable radix_table(const std::vector<long>& bases, long n, long trials,
                       std::uint64_t seed, int jobs);

std::string to_text(const RadixTable& table);
std::string to_csv(const RadixTable& table);
nlohmann::ordered_json to_json(const RadixTable& table);

struct HangReport {
    long g = 0;
    long h = 0;
    long n = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    HangEstimate pooled;     // fraction of rounds where m stood still
    double expected = 0.0;   // 1/g
    long jump_count = 0;
    long bound_violations = 0;          // jumps failing the exact lower bound
    std::map<long, long> hang_histogram;  // gap length -> count, over all jumps
};

// Full-series run of a g-adic into h-adic pair with the hang statistics
// pooled across trials.
HangReport hang_stats(long g, long h, long n, long trials, std::uint64_t seed,
                      int jobs);

std::string to_text(const HangReport& report);
nlohmann::ordered_json to_json(const HangReport& report);

struct PiDemo {
    long count = 0;   // decimal digits consumed
    long m = 0;       // continued-fraction digits they determine
    DigitSeq digits;
};

// Decimal digits of pi from a text file: optional leading "3.", every other
// non-digit character ignored. The first 30 fractional digits are checked
// against a built-in constant before anything else trusts the file.
std::vector<int> load_decimal_digits(const std::string& path, std::size_t count);

// How many continued-fraction digits the first `count` decimals of pi pin
// down, i.e. the digits shared by every number that starts with those
// decimals.
PiDemo pi_demo(const std::string& digits_file, long count);

std::string to_text(const PiDemo& demo);
nlohmann::ordered_json to_json(const PiDemo& demo);

// The known entropy constants with enclosure error bounds and provenance,
// the maps without one, and the handful of predicted ratios the experiments
// compare against.
nlohmann::ordered_json constants_json(long bits = 192);

}  // namespace entq
