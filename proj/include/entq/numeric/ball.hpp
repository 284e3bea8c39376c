#pragma once
#include <optional>
#include <string>

#include "entq/numeric/types.hpp"

namespace entq {

enum class Order { Less, Equal, Greater };

// Directed fixed-point enclosure: the true value lies in [lo, hi] * 2^-prec.
// Every operation rounds outward, so enclosure is preserved; speed is secondary
// to never reporting a wrong digit.
class Ball {
public:
    Ball() : lo_(0), hi_(0), prec_(0) {}
    Ball(BigInt lo, BigInt hi, long prec);

    static Ball exact_integer(const BigInt& v, long prec);
    static Ball from_rational(const BigRational& q, long prec);
    // [lo, hi] given as rationals (outward-rounded to prec)
    static Ball from_endpoints(const BigRational& lo, const BigRational& hi, long prec);

    const BigInt& lo_scaled() const { return lo_; }
    const BigInt& hi_scaled() const { return hi_; }
    long prec() const { return prec_; }

    BigRational lower() const;
    BigRational upper() const;
    BigRational midpoint() const;
    BigRational width() const;
    bool is_point() const { return lo_ == hi_; }

    Ball to_prec(long prec) const;  // re-round (outward if coarser, exact if finer)

    Ball neg() const;
    Ball add(const Ball& o) const;
    Ball sub(const Ball& o) const;
    Ball mul(const Ball& o) const;
    Ball square() const;
    Ball div(const Ball& o) const;       // denominator must exclude 0
    Ball sqrt() const;                   // domain clamped at 0 from below
    Ball add_integer(const BigInt& v) const;
    Ball sub_integer(const BigInt& v) const;
    Ball mul_integer(const BigInt& v) const;
    Ball mul_2exp(long k) const;         // exact scale by 2^k

    bool contains_zero() const { return sgn(lo_) <= 0 && sgn(hi_) >= 0; }
    bool excludes_zero() const { return sgn(lo_) > 0 || sgn(hi_) < 0; }
    bool contains(const BigRational& q) const;
    // certain containment in the other ball's interval
    bool inside(const Ball& outer) const;

    // floor of the value if certain, else nullopt
    std::optional<BigInt> floor_certain() const;
    // trichotomy if the enclosures are disjoint (or both are equal points)
    static std::optional<Order> compare(const Ball& a, const Ball& b);
    static std::optional<Order> compare_rational(const Ball& a, const BigRational& q);

    Ball intersect(const Ball& o) const;  // both must enclose the same value
    double to_double() const;
    std::string decimal(int digits) const;  // midpoint, for display only

private:
    BigInt lo_, hi_;
    long prec_;
};

}  // namespace entq
