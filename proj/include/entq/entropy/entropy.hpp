#pragma once
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entq/expansions/map.hpp"
#include "entq/numeric/ball.hpp"

namespace entq {

struct UnknownEntropy : std::runtime_error {
    explicit UnknownEntropy(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateSample : std::runtime_error {
    explicit DegenerateSample(const std::string& what) : std::runtime_error(what) {}
};

enum class Provenance { ClosedForm, SeriesWithTailBound, Estimated };
const char* to_string(Provenance p);

// A constant carried as a rigorous enclosure; the truth lies inside.
struct EntropyValue {
    Ball enclosure;
    Provenance provenance = Provenance::ClosedForm;

    double value() const { return enclosure.to_double(); }
    double error_bound() const;  // >= enclosure half-width
    std::string decimal(int digits) const { return enclosure.decimal(digits); }
};

// Entropy in nats per digit for the maps whose invariant density is known.
// The square-radical and beta-continued-fraction maps throw UnknownEntropy.
// The piecewise-linear series constant is summed to a fixed depth with a
// two-sided integral tail, so its accuracy tops out near 1e-9 whatever `bits`.
EntropyValue entropy_constant(const MapPtr& map, long bits = 192);

// h(S)/h(T), the almost-sure limit of m(x, n)/n.
EntropyValue lochs_ratio(const MapPtr& mapS, const MapPtr& mapT, long bits = 192);

enum class KnownSide { S, T };

struct EstimateReport {
    double mean_ratio = 0.0;
    double sample_std = 0.0;
    double mean_standard_error = 0.0;  // sample_std / sqrt(trials)
    std::size_t trials = 0;
    KnownSide known_side = KnownSide::S;
    double known_entropy = 0.0;
    double estimated_entropy = 0.0;
    double entropy_standard_error = 0.0;    // delta method through the mean
    std::optional<double> predicted_ratio;  // set by callers when both sides are known
};

// Inverts the ratio limit around the side whose entropy is known. With S
// known the estimate is h / mean(m/n), matching how the experiments aggregate
// (one ratio from the averaged counts, not averaged per-trial inverses).
EstimateReport estimate_entropy(const std::vector<double>& ratios, KnownSide known,
                                double h);

// Square-radical map entropy reported by later numerical work; a truth anchor
// for estimates, not something computed here.
inline constexpr double kBolyaiEntropyBenchmark = 1.056313074;

}  // namespace entq
