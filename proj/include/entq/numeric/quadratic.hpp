#pragma once
#include "entq/numeric/ball.hpp"
#include "entq/numeric/types.hpp"

namespace entq {

// Element (p + q*sqrt(5))/d of the quadratic field Q(sqrt 5), canonical form
// gcd(p, q, d) = 1, d > 0. Order and equality are decided exactly with integer
// arithmetic; no floating point is consulted.
class QuadraticElement {
public:
    QuadraticElement() : p_(0), q_(0), d_(1) {}
    QuadraticElement(BigInt p, BigInt q, BigInt d);
    explicit QuadraticElement(const BigRational& r)
        : QuadraticElement(r.get_num(), BigInt(0), r.get_den()) {}

    static QuadraticElement golden();  // (1 + sqrt 5)/2

    const BigInt& p() const { return p_; }
    const BigInt& q() const { return q_; }
    const BigInt& d() const { return d_; }

    bool is_rational() const { return q_ == 0; }
    BigRational rational_value() const;  // requires is_rational()

    int sign() const;
    QuadraticElement neg() const;
    QuadraticElement add(const QuadraticElement& o) const;
    QuadraticElement sub(const QuadraticElement& o) const;
    QuadraticElement mul(const QuadraticElement& o) const;
    QuadraticElement div(const QuadraticElement& o) const;
    QuadraticElement inverse() const;
    QuadraticElement add_rational(const BigRational& r) const;
    QuadraticElement mul_rational(const BigRational& r) const;

    BigInt floor() const;  // exact
    Ball enclose(long prec) const;
    double to_double() const;

    static Order compare(const QuadraticElement& a, const QuadraticElement& b);
    static Order compare_rational(const QuadraticElement& a, const BigRational& r);
    bool operator==(const QuadraticElement& o) const {
        return p_ == o.p_ && q_ == o.q_ && d_ == o.d_;
    }

    // combined coefficient size, for orbit-demotion decisions
    std::size_t bit_size() const;

private:
    void canonicalize();
    BigInt p_, q_, d_;
};

// sqrt(5) as a directed enclosure at the given precision
Ball sqrt5_ball(long prec);

// sign of p + q*sqrt(5) on raw coefficients, skipping canonicalization (hot
// path for orbit digit tests)
int sqrt5_combination_sign(const BigInt& p, const BigInt& q);

}  // namespace entq
