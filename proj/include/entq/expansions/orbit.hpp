#pragma once
#include <memory>

#include "entq/expansions/digit.hpp"
#include "entq/expansions/map.hpp"
#include "entq/numeric/real_scalar.hpp"

namespace entq {

// What asking an endpoint orbit for its next digit can produce.
//
// InfiniteAccum: the orbit sits exactly on 0 approached from the right while
// the map's cells accumulate there, so the point spends its whole future
// inside ever-smaller cells. Once only one endpoint does this, the two
// endpoints disagree at every later rank; both doing it at once is impossible
// because the map is injective on the shared cylinder.
//
// Unresolved: the working precision of this orbit instance cannot separate
// the point from a cell boundary. The caller escalates by rebuilding the
// orbit at higher precision and replaying the digits consumed so far.
enum class DigitKind { Finite, InfiniteAccum, Unresolved };

struct DigitResult {
  DigitKind kind = DigitKind::Unresolved;
  Digit digit;  // valid only when kind == Finite
};

// One endpoint of an interval being pushed through a fibred map. The side
// records which half-neighbourhood of the point actually lies inside the
// interval; decreasing branches flip it as the orbit advances.
class EndpointOrbit {
 public:
  virtual ~EndpointOrbit() = default;
  virtual DigitResult digit() = 0;
  virtual void advance(const Digit& d) = 0;
  // replays digits already agreed on, after a rebuild at new precision or a
  // fresh endpoint; radix orbits collapse the whole replay into one modular
  // power, everyone else just loops advance
  virtual void fast_forward(const DigitSeq& digits, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) advance(digits[i]);
  }
  virtual Side side() const = 0;
};

using OrbitPtr = std::unique_ptr<EndpointOrbit>;

// Picks an exact-arithmetic orbit when the seed and map allow one, otherwise
// a ball-arithmetic orbit at the given precision. `bits` is ignored by the
// exact representations that never need it.
OrbitPtr make_endpoint_orbit(const MapPtr& map, const RealScalar& seed,
                             Side side, long bits);

}  // namespace entq
