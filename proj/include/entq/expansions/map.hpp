#pragma once
#include <memory>
#include <string>

#include "entq/expansions/digit.hpp"
#include "entq/numeric/policy.hpp"
#include "entq/numeric/real_scalar.hpp"

namespace entq {

enum class MapKind { Rcf, Radix, Lueroth, AlternatingLueroth, Bolyai, PseudoGolden, BetaCf };

// A fibred system on [0,1): digit cells partition the interval and the map is
// injective and monotone on each cell. digit_of takes a side so that boundary
// points, and one-sided limits (which is what cylinder endpoints are), have a
// well-defined digit.
class FibredMap {
public:
    virtual ~FibredMap() = default;

    virtual MapKind kind() const = 0;
    virtual std::string name() const = 0;
    // side from which a point belongs to its own cell's closure: FromLeft for
    // right-closed cells, FromRight for left-closed ones
    virtual Side membership_side() const = 0;
    virtual bool increasing(const Digit& d) const = 0;
    // true when the cells accumulate at 0, so an orbit that lands exactly on 0
    // has no next digit and the expansion terminates
    virtual bool zero_terminates() const = 0;
    // branch-count proxy used to seed precision policies for this map's cylinders
    virtual double branch_proxy() const = 0;
    // width of the widest rank-1 cell (contraction bound, for digit caps)
    virtual double max_cell_width() const = 0;

    virtual Digit digit_of(const RealScalar& x, Side side, const PrecisionPolicy& policy) const = 0;
    virtual RealScalar apply(const RealScalar& x, const Digit& d, const PrecisionPolicy& policy) const = 0;
    // inverse of the branch carrying digit d, applied to y in [0, 1]
    virtual RealScalar inverse_branch(const Digit& d, const RealScalar& y) const = 0;
    virtual bool admissible(const DigitSeq& digits) const = 0;

    virtual long radix() const { return 0; }    // radix maps only
    virtual int golden_k() const { return 0; }  // pseudo-golden maps only
    virtual RealScalar growth_root() const;     // gamma for pseudo-golden maps
};

using MapPtr = std::shared_ptr<const FibredMap>;

MapPtr make_rcf();
MapPtr make_radix(long g);
MapPtr make_lueroth();
MapPtr make_alternating_lueroth();
MapPtr make_bolyai();
MapPtr make_pseudo_golden(int k);
MapPtr make_beta_cf();

// First `count` digits of the point x, each computed on the orbit point from
// the side on which it sits inside its own cell. Stops early with
// terminated = true when the orbit hits a point with no digit (exactly 0
// under the continued-fraction style maps).
struct Expansion {
    DigitSeq digits;
    bool terminated = false;
};
Expansion expand(const FibredMap& map, const RealScalar& x, std::size_t count,
                 const PrecisionPolicy& policy);

}  // namespace entq
