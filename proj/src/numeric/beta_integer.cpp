#include "entq/numeric/beta_integer.hpp"

#include <stdexcept>
#include <vector>

namespace entq {

BetaInteger::BetaInteger(BigInt mask) : mask_(std::move(mask)) {
    if (sgn(mask_) < 0 || !valid_mask(mask_)) throw std::domain_error("BetaInteger: invalid word");
}

bool BetaInteger::valid_mask(const BigInt& mask) {
    BigInt shifted;
    mpz_fdiv_q_2exp(shifted.get_mpz_t(), mask.get_mpz_t(), 1);
    BigInt overlap = mask & shifted;
    return overlap == 0;
}

BetaInteger BetaInteger::from_word(const std::string& word) {
    BigInt mask(0);
    for (char c : word) {
        if (c != '0' && c != '1') throw std::domain_error("BetaInteger: word must be over {0,1}");
        mask <<= 1;
        if (c == '1') mask |= 1;
    }
    return BetaInteger(mask);
}

std::string BetaInteger::word() const {
    if (mask_ == 0) return "0";
    std::string w = mask_.get_str(2);
    return w;
}

QuadraticElement BetaInteger::value() const {
    // sum of beta^j = F_j beta + F_{j-1} over set bits; F_{-1} = 1, F_0 = 0, F_1 = 1
    BigInt u(0), v(0);          // value = u + v*beta
    BigInt fprev(1), fcur(0);   // F_{j-1}, F_j for j = 0
    std::size_t top = mask_ == 0 ? 0 : mpz_sizeinbase(mask_.get_mpz_t(), 2);
    for (std::size_t j = 0; j < top; ++j) {
        if (mpz_tstbit(mask_.get_mpz_t(), j)) { u += fprev; v += fcur; }
        BigInt fnext = fprev + fcur;
        fprev = fcur;
        fcur = fnext;
    }
    // u + v*(1+sqrt5)/2 = (2u + v + v*sqrt5)/2
    return QuadraticElement(2 * u + v, v, BigInt(2));
}

QuadraticElement BetaInteger::gap_to_successor() const {
    if (ends_in_one()) return QuadraticElement(-1, 1, 2);  // beta - 1
    return QuadraticElement(BigRational(1));
}

BetaInteger BetaInteger::successor() const {
    // numeric-order successor over valid masks: increment, then resolve "11"
    // pairs by the identity beta^j + beta^{j+1} = beta^{j+2}. Starting from a
    // valid mask, every carry step keeps all bits below the lowest adjacent
    // pair zero, so no valid mask is skipped.
    BigInt x = mask_ + 1;
    while (!valid_mask(x)) {
        BigInt shifted;
        mpz_fdiv_q_2exp(shifted.get_mpz_t(), x.get_mpz_t(), 1);
        BigInt overlap = x & shifted;  // bit j set here means bits j, j+1 adjacent in x
        unsigned long j = mpz_scan1(overlap.get_mpz_t(), 0);
        BigInt carry(0);
        mpz_setbit(carry.get_mpz_t(), j);
        x += carry;
    }
    return BetaInteger(x);
}

BetaInteger beta_floor(const RealScalar& y, const PrecisionPolicy& policy, Side side) {
    // strict comparisons emulate y - eps: greedy on the left limit yields the
    // predecessor exactly when y is itself a beta-integer
    bool strict = (side == Side::FromLeft);
    auto fits = [&](const QuadraticElement& power, const RealScalar& rem) {
        Order ord = compare(RealScalar(power), rem, policy);
        if (ord == Order::Less) return true;
        if (ord == Order::Equal) return !strict;
        return false;
    };

    if (!fits(QuadraticElement(BigRational(1)), y))
        throw std::domain_error("beta_floor: requires y >= 1 on the given side");

    // climb the power ladder beta^j = F_j beta + F_{j-1} until it exceeds y
    std::vector<QuadraticElement> powers;
    powers.push_back(QuadraticElement(BigRational(1)));
    BigInt fprev(1), fcur(0);  // F_{j-1}, F_j at j = 0
    for (;;) {
        BigInt fnext = fprev + fcur;
        BigInt fp = fcur, fc = fnext;  // F_{j}, F_{j+1} for j+1
        QuadraticElement next(2 * fp + fc, fc, BigInt(2));
        if (!fits(next, y)) break;
        powers.push_back(next);
        fprev = fp;
        fcur = fc;
    }

    BigInt mask(0);
    RealScalar rem = y;
    std::size_t skip_below = powers.size() + 2;  // position just above any taken power
    for (std::size_t idx = powers.size(); idx-- > 0;) {
        if (idx + 1 == skip_below) continue;  // adjacent to a taken power
        if (fits(powers[idx], rem)) {
            mpz_setbit(mask.get_mpz_t(), idx);
            rem = rem - RealScalar(powers[idx]);
            skip_below = idx;
        }
    }
    return BetaInteger(mask);
}

}  // namespace entq
