#pragma once
#include <variant>

#include "entq/numeric/ball.hpp"
#include "entq/numeric/policy.hpp"
#include "entq/numeric/quadratic.hpp"
#include "entq/numeric/refinable.hpp"
#include "entq/numeric/types.hpp"

namespace entq {

// Which infinitesimal neighbour of a point is meant: x + eps or x - eps.
// Digit decisions at cell boundaries depend on it; interior points ignore it.
enum class Side { FromRight, FromLeft };

inline Side flip(Side s) { return s == Side::FromRight ? Side::FromLeft : Side::FromRight; }

// Tagged union of the three number kinds. Operations return the least exact
// kind of their inputs; exact kinds never degrade to balls.
class RealScalar {
public:
    RealScalar() : v_(BigRational(0)) {}
    RealScalar(BigRational q) : v_(std::move(q)) {}
    RealScalar(QuadraticElement q) : v_(std::move(q)) {}
    RealScalar(RefinableReal r) : v_(std::move(r)) {}
    RealScalar(long n) : v_(BigRational(n)) {}

    bool is_rational() const { return std::holds_alternative<BigRational>(v_); }
    bool is_quadratic() const { return std::holds_alternative<QuadraticElement>(v_); }
    bool is_refinable() const { return std::holds_alternative<RefinableReal>(v_); }
    bool is_exact() const { return !is_refinable(); }

    const BigRational& rational() const { return std::get<BigRational>(v_); }
    const QuadraticElement& quadratic() const { return std::get<QuadraticElement>(v_); }
    const RefinableReal& refinable() const { return std::get<RefinableReal>(v_); }

    Ball enclose(long bits) const;
    double to_double() const;

    friend RealScalar operator+(const RealScalar& a, const RealScalar& b);
    friend RealScalar operator-(const RealScalar& a, const RealScalar& b);
    friend RealScalar operator*(const RealScalar& a, const RealScalar& b);
    friend RealScalar operator/(const RealScalar& a, const RealScalar& b);
    RealScalar operator-() const;

private:
    std::variant<BigRational, QuadraticElement, RefinableReal> v_;
};

// Exact trichotomy on exact kinds; escalates per policy otherwise. Equal is
// reported only when exactness proves it; two refinables never compare Equal
// (PrecisionExhausted instead).
Order compare(const RealScalar& x, const RealScalar& y, const PrecisionPolicy& policy);

BigInt floor(const RealScalar& x, const PrecisionPolicy& policy);

// Floor of x + eps (FromRight) or x - eps (FromLeft). Differs from floor only
// when x is exactly an integer, which only exact kinds can certify.
BigInt floor_sided(const RealScalar& x, Side side, const PrecisionPolicy& policy);

}  // namespace entq
