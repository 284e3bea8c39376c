#pragma once
#include <string>

#include "entq/numeric/quadratic.hpp"
#include "entq/numeric/real_scalar.hpp"

namespace entq {

// Finite sum of nonnegative powers of the golden mean with 0/1 coefficients
// and no two adjacent 1s (Zeckendorf form). The word is stored as a bit mask,
// bit j = coefficient of beta^j. Numeric order of masks equals value order.
class BetaInteger {
public:
    BetaInteger() : mask_(0) {}
    explicit BetaInteger(BigInt mask);
    static BetaInteger zero() { return BetaInteger(); }
    static BetaInteger one() { return BetaInteger(BigInt(1)); }
    static bool valid_mask(const BigInt& mask);
    static BetaInteger from_word(const std::string& word);  // MSB first, e.g. "101"

    const BigInt& mask() const { return mask_; }
    std::string word() const;  // MSB first; "0" for zero
    QuadraticElement value() const;
    bool is_zero() const { return mask_ == 0; }
    // true if the lowest coefficient is 1 (then the gap to the successor is
    // beta - 1, else 1)
    bool ends_in_one() const { return mpz_tstbit(mask_.get_mpz_t(), 0) != 0; }
    QuadraticElement gap_to_successor() const;

    BetaInteger successor() const;

    friend bool operator==(const BetaInteger& a, const BetaInteger& b) { return a.mask_ == b.mask_; }
    friend bool operator<(const BetaInteger& a, const BetaInteger& b) { return a.mask_ < b.mask_; }

private:
    BigInt mask_;
};

// Greatest beta-integer <= y (side FromRight) or < y-side limit (FromLeft:
// greatest beta-integer strictly below y when y is itself a beta-integer).
// Requires y >= 1 on the chosen side.
BetaInteger beta_floor(const RealScalar& y, const PrecisionPolicy& policy,
                       Side side = Side::FromRight);

}  // namespace entq
