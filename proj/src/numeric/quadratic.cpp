#include "entq/numeric/quadratic.hpp"

#include <stdexcept>
#include <utility>

namespace entq {

namespace {
// sign of p + q*sqrt(5), exact
int root5_sign(const BigInt& p, const BigInt& q) {
    int sp = sgn(p), sq = sgn(q);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // opposite signs: the larger magnitude of p^2 vs 5 q^2 wins
    BigInt lhs = p * p, rhs = 5 * q * q;
    if (lhs == rhs) return 0;  // impossible for q != 0 (sqrt 5 irrational), kept for safety
    return lhs > rhs ? sp : sq;
}
}  // namespace

QuadraticElement::QuadraticElement(BigInt p, BigInt q, BigInt d)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
    if (d_ == 0) throw std::domain_error("QuadraticElement: zero denominator");
    canonicalize();
}

void QuadraticElement::canonicalize() {
    if (sgn(d_) < 0) { p_ = -p_; q_ = -q_; d_ = -d_; }
    BigInt g = gcd(gcd(p_, q_), d_);
    if (g > 1) { p_ /= g; q_ /= g; d_ /= g; }
}

QuadraticElement QuadraticElement::golden() { return QuadraticElement(1, 1, 2); }

BigRational QuadraticElement::rational_value() const {
    if (q_ != 0) throw std::logic_error("QuadraticElement: not rational");
    return make_rational(p_, d_);
}

int sqrt5_combination_sign(const BigInt& p, const BigInt& q) { return root5_sign(p, q); }

int QuadraticElement::sign() const { return root5_sign(p_, q_); }

QuadraticElement QuadraticElement::neg() const { return QuadraticElement(-p_, -q_, d_); }

QuadraticElement QuadraticElement::add(const QuadraticElement& o) const {
    return QuadraticElement(p_ * o.d_ + o.p_ * d_, q_ * o.d_ + o.q_ * d_, d_ * o.d_);
}

QuadraticElement QuadraticElement::sub(const QuadraticElement& o) const { return add(o.neg()); }

QuadraticElement QuadraticElement::mul(const QuadraticElement& o) const {
    return QuadraticElement(p_ * o.p_ + 5 * q_ * o.q_, p_ * o.q_ + q_ * o.p_, d_ * o.d_);
}

QuadraticElement QuadraticElement::inverse() const {
    // d/(p + q sqrt5) = d (p - q sqrt5)/(p^2 - 5 q^2)
    BigInt norm = p_ * p_ - 5 * q_ * q_;
    if (norm == 0) throw std::domain_error("QuadraticElement: inverse of zero");
    return QuadraticElement(d_ * p_, -(d_ * q_), norm);
}

QuadraticElement QuadraticElement::div(const QuadraticElement& o) const { return mul(o.inverse()); }

QuadraticElement QuadraticElement::add_rational(const BigRational& r) const {
    return QuadraticElement(p_ * r.get_den() + r.get_num() * d_, q_ * r.get_den(), d_ * r.get_den());
}

QuadraticElement QuadraticElement::mul_rational(const BigRational& r) const {
    return QuadraticElement(p_ * r.get_num(), q_ * r.get_num(), d_ * r.get_den());
}

BigInt QuadraticElement::floor() const {
    if (q_ == 0) return floor_div(p_, d_);
    // floor(q sqrt5) exactly, then the numerator lies in [p + s, p + s + 1)
    BigInt s;
    BigInt five_q2 = 5 * q_ * q_;
    mpz_sqrt(s.get_mpz_t(), five_q2.get_mpz_t());
    if (sgn(q_) < 0) s = -(s + 1);
    return floor_div(p_ + s, d_);
}

Ball sqrt5_ball(long prec) {
    BigInt v = 5 * pow_ui(BigInt(2), static_cast<unsigned long>(2 * prec));
    BigInt lo;
    mpz_sqrt(lo.get_mpz_t(), v.get_mpz_t());
    return Ball(lo, lo + 1, prec);
}

Ball QuadraticElement::enclose(long prec) const {
    Ball root = sqrt5_ball(prec);
    Ball num = root.mul_integer(q_).add_integer(p_);
    // divide by positive integer d: directed rounding on the scaled bounds
    BigInt lo, hi;
    mpz_fdiv_q(lo.get_mpz_t(), num.lo_scaled().get_mpz_t(), d_.get_mpz_t());
    mpz_cdiv_q(hi.get_mpz_t(), num.hi_scaled().get_mpz_t(), d_.get_mpz_t());
    return Ball(lo, hi, prec);
}

double QuadraticElement::to_double() const { return enclose(96).to_double(); }

Order QuadraticElement::compare(const QuadraticElement& a, const QuadraticElement& b) {
    int s = a.sub(b).sign();
    return s < 0 ? Order::Less : (s > 0 ? Order::Greater : Order::Equal);
}

Order QuadraticElement::compare_rational(const QuadraticElement& a, const BigRational& r) {
    int s = root5_sign(a.p_ * r.get_den() - r.get_num() * a.d_, a.q_ * r.get_den());
    return s < 0 ? Order::Less : (s > 0 ? Order::Greater : Order::Equal);
}

std::size_t QuadraticElement::bit_size() const {
    return bit_length(p_) + bit_length(q_) + bit_length(d_);
}

}  // namespace entq
