#pragma once
#include "entq/expansions/map.hpp"

namespace entq {

// The set of points whose expansion starts with `digits`. The stored
// endpoints are the closure endpoints; right_closed says which end the
// half-open set actually contains.
struct Cylinder {
    DigitSeq digits;
    RealScalar left;
    RealScalar right;
    bool right_closed = false;

    RealScalar width() const { return right - left; }
};

// Endpoints by composing inverse branches applied to 0 and 1, innermost digit
// first, swapping roles through every decreasing branch. Square-radical cells
// get refinable endpoints; everything else stays exact. The policy backs the
// few comparisons needed for maps whose branches are not onto.
Cylinder cylinder(const FibredMap& map, const DigitSeq& digits,
                  const PrecisionPolicy& policy = PrecisionPolicy{});

}  // namespace entq
