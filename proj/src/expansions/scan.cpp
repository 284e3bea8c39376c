#include "entq/expansions/scan.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

#include "entq/expansions/cylinder.hpp"
#include "entq/numeric/beta_integer.hpp"

namespace entq {

namespace {

// children of a prefix in cell order, so consecutive entries share a boundary.
// Integer digit sets are capped by value, the beta-integer set by count.
std::vector<Digit> child_digits(const FibredMap& map, const DigitSeq& prefix, long digit_bound) {
    std::vector<Digit> out;
    auto admissible_with = [&](const Digit& d) {
        DigitSeq word = prefix;
        word.push_back(d);
        return map.admissible(word);
    };
    switch (map.kind()) {
        case MapKind::BetaCf: {
            BetaInteger b = BetaInteger::one();
            while (static_cast<long>(out.size()) < digit_bound) {
                Digit d = Digit::beta(b.mask());
                if (admissible_with(d)) out.push_back(d);
                b = b.successor();
            }
            break;
        }
        case MapKind::Radix:
        case MapKind::Bolyai:
        case MapKind::PseudoGolden: {
            for (long v = 0; v <= digit_bound; ++v) {
                Digit d = Digit::integer(v);
                if (admissible_with(d)) out.push_back(d);
            }
            break;
        }
        default: {  // the 1-based families
            for (long v = 1; v <= digit_bound; ++v) {
                Digit d = Digit::integer(v);
                if (admissible_with(d)) out.push_back(d);
            }
            break;
        }
    }
    return out;
}

}  // namespace

RealScalar adjacent_ratio_scan(const MapPtr& map, int rank, long digit_bound) {
    if (rank < 1) throw std::domain_error("scan needs rank >= 1");
    if (digit_bound < 1) throw std::domain_error("scan needs a positive digit bound");

    PrecisionPolicy policy;
    std::optional<RealScalar> best;

    auto note = [&](const RealScalar& wa, const RealScalar& wb) {
        RealScalar r = wa / wb;
        try {
            if (compare(r, RealScalar{BigRational(1)}, policy) == Order::Less) r = wb / wa;
            if (!best || compare(r, *best, policy) == Order::Greater) best = r;
        } catch (const PrecisionExhausted&) {
            // a tie that deep cannot change the maximum
        }
    };

    // depth-first over admissible prefixes; at each node measure consecutive
    // sibling pairs
    std::vector<DigitSeq> level{DigitSeq{}};
    for (int depth = 0; depth < rank; ++depth) {
        std::vector<DigitSeq> next;
        for (const DigitSeq& prefix : level) {
            std::vector<Digit> kids = child_digits(*map, prefix, digit_bound);
            std::optional<RealScalar> prev_width;
            for (const Digit& d : kids) {
                DigitSeq word = prefix;
                word.push_back(d);
                RealScalar w = cylinder(*map, word, policy).width();
                if (prev_width) note(*prev_width, w);
                prev_width = w;
                if (depth + 1 < rank) next.push_back(std::move(word));
            }
        }
        level = std::move(next);
    }

    if (!best) throw std::domain_error("scan found no adjacent sibling pairs");
    return *best;
}

}  // namespace entq
