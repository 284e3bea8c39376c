#include "entq/expansions/cylinder.hpp"

#include <utility>
#include <vector>

#include "entq/expansions/measure.hpp"
#include "entq/numeric/beta_integer.hpp"
#include "entq/numeric/radical.hpp"

namespace entq {

namespace {

Cylinder golden_cylinder(const FibredMap& map, const DigitSeq& digits,
                         const PrecisionPolicy& policy) {
    int k = map.golden_k();
    RealScalar gamma = map.growth_root();
    if (k == 2) {
        // branch 1 is not onto: its image tops out at gamma - 1, so clamp
        // before pulling back through psi_1; the compare stays exact
        RealScalar lo{BigRational(0)};
        RealScalar hi{BigRational(1)};
        RealScalar cap = gamma - RealScalar(1);
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
            if (it->payload == 1 && compare(hi, cap, policy) == Order::Greater) hi = cap;
            RealScalar dv{BigRational(it->payload)};
            lo = (dv + lo) / gamma;
            hi = (dv + hi) / gamma;
        }
        return {digits, lo, hi, false};
    }
    // for k >= 3 the clamp can tie exactly against the refinable root, so
    // derive the sup from the cell measure instead of comparing
    RealScalar lo{BigRational(0)};
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) lo = map.inverse_branch(*it, lo);
    RealScalar hi = lo + pseudo_golden_cylinder_measure(k, digits);
    return {digits, lo, hi, false};
}

Cylinder bolyai_cylinder(const DigitSeq& digits) {
    std::vector<int> ds;
    ds.reserve(digits.size());
    bool all0 = true, all2 = true;
    for (const Digit& d : digits) {
        int v = static_cast<int>(d.as_long());
        ds.push_back(v);
        all0 = all0 && v == 0;
        all2 = all2 && v == 2;
    }
    // the all-0 and all-2 words pin an endpoint at an exact rational; keep it
    // exact so orbit code downstream can certify sided digits there
    RealScalar lo = all0 ? RealScalar{BigRational(0)}
                         : RealScalar{RefinableReal(
                               [ds](long bits) { return nested_radical(ds, 0, bits); })};
    RealScalar hi = all2 ? RealScalar{BigRational(1)}
                         : RealScalar{RefinableReal(
                               [ds](long bits) { return nested_radical(ds, 1, bits); })};
    return {digits, lo, hi, false};
}

Cylinder beta_cf_cylinder(const FibredMap& map, const DigitSeq& digits,
                          const PrecisionPolicy& policy) {
    // a digit whose word ends in 1 has branch image [0, beta - 1), so clamp
    // the sup before pulling back; every quantity here is an exact quadratic
    RealScalar lo{BigRational(0)};
    RealScalar hi{BigRational(1)};
    bool right_closed = false;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        BetaInteger b(it->payload);
        RealScalar gap{b.gap_to_successor()};
        if (compare(hi, gap, policy) == Order::Greater) hi = gap;
        RealScalar a = map.inverse_branch(*it, lo);
        RealScalar c = map.inverse_branch(*it, hi);
        lo = std::move(c);
        hi = std::move(a);
        right_closed = !right_closed;
    }
    return {digits, lo, hi, right_closed};
}

Cylinder generic_cylinder(const FibredMap& map, const DigitSeq& digits) {
    // compose inverse branches innermost first over [0, 1); every decreasing
    // branch swaps both the endpoints and the closed end
    RealScalar lo{BigRational(0)};
    RealScalar hi{BigRational(1)};
    bool right_closed = false;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        RealScalar a = map.inverse_branch(*it, lo);
        RealScalar b = map.inverse_branch(*it, hi);
        if (map.increasing(*it)) {
            lo = std::move(a);
            hi = std::move(b);
        } else {
            lo = std::move(b);
            hi = std::move(a);
            right_closed = !right_closed;
        }
    }
    return {digits, lo, hi, right_closed};
}

}  // namespace

Cylinder cylinder(const FibredMap& map, const DigitSeq& digits, const PrecisionPolicy& policy) {
    if (!map.admissible(digits))
        throw InadmissibleDigits(map.name() + " rejects digits (" + to_string(digits) + ")");
    if (digits.empty())
        return {digits, RealScalar{BigRational(0)}, RealScalar{BigRational(1)},
                map.membership_side() == Side::FromLeft};
    switch (map.kind()) {
        case MapKind::PseudoGolden: return golden_cylinder(map, digits, policy);
        case MapKind::Bolyai: return bolyai_cylinder(digits);
        case MapKind::BetaCf: return beta_cf_cylinder(map, digits, policy);
        default: return generic_cylinder(map, digits);
    }
}

}  // namespace entq
