#pragma once
#include "entq/expansions/map.hpp"
#include "entq/numeric/real_scalar.hpp"

namespace entq {

// Largest ratio of cylinder widths over pairs of adjacent same-rank cylinders
// with a common parent, scanning all admissible words up to the given rank.
// `digit_bound` caps the digits tried in each cell: by value for integer
// digit sets, by enumeration order for the beta-integer digit set.
RealScalar adjacent_ratio_scan(const MapPtr& map, int rank, long digit_bound);

}  // namespace entq
