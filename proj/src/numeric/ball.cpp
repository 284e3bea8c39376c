#include "entq/numeric/ball.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace entq {

namespace {

BigInt shift_left(const BigInt& v, long k) {
    BigInt r;
    mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

BigInt fdiv_2exp(const BigInt& v, long k) {
    BigInt r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

BigInt cdiv_2exp(const BigInt& v, long k) {
    BigInt r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

BigInt fdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt cdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt sqrt_floor(const BigInt& v) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

}  // namespace

Ball::Ball(BigInt lo, BigInt hi, long prec) : lo_(std::move(lo)), hi_(std::move(hi)), prec_(prec) {
    if (lo_ > hi_) throw std::logic_error("Ball: lo > hi");
}

Ball Ball::exact_integer(const BigInt& v, long prec) {
    BigInt s = shift_left(v, prec);
    return Ball(s, s, prec);
}

Ball Ball::from_rational(const BigRational& q, long prec) {
    BigInt scaled_num = shift_left(q.get_num(), prec);
    return Ball(fdiv(scaled_num, q.get_den()), cdiv(scaled_num, q.get_den()), prec);
}

Ball Ball::from_endpoints(const BigRational& lo, const BigRational& hi, long prec) {
    if (lo > hi) throw std::logic_error("Ball::from_endpoints: lo > hi");
    return Ball(fdiv(shift_left(lo.get_num(), prec), lo.get_den()),
                cdiv(shift_left(hi.get_num(), prec), hi.get_den()), prec);
}

BigRational Ball::lower() const { return make_rational(lo_, shift_left(1, prec_)); }
BigRational Ball::upper() const { return make_rational(hi_, shift_left(1, prec_)); }
BigRational Ball::midpoint() const { return make_rational(lo_ + hi_, shift_left(2, prec_)); }
BigRational Ball::width() const { return make_rational(hi_ - lo_, shift_left(1, prec_)); }

Ball Ball::to_prec(long prec) const {
    if (prec == prec_) return *this;
    if (prec > prec_) return Ball(shift_left(lo_, prec - prec_), shift_left(hi_, prec - prec_), prec);
    long d = prec_ - prec;
    return Ball(fdiv_2exp(lo_, d), cdiv_2exp(hi_, d), prec);
}

Ball Ball::neg() const { return Ball(-hi_, -lo_, prec_); }

Ball Ball::add(const Ball& o) const {
    long p = std::max(prec_, o.prec_);
    Ball a = to_prec(p), b = o.to_prec(p);
    return Ball(a.lo_ + b.lo_, a.hi_ + b.hi_, p);
}

Ball Ball::sub(const Ball& o) const { return add(o.neg()); }

Ball Ball::mul(const Ball& o) const {
    long p = std::max(prec_, o.prec_);
    Ball a = to_prec(p), b = o.to_prec(p);
    BigInt c1 = a.lo_ * b.lo_, c2 = a.lo_ * b.hi_, c3 = a.hi_ * b.lo_, c4 = a.hi_ * b.hi_;
    BigInt mn = std::min(std::min(c1, c2), std::min(c3, c4));
    BigInt mx = std::max(std::max(c1, c2), std::max(c3, c4));
    return Ball(fdiv_2exp(mn, p), cdiv_2exp(mx, p), p);
}

Ball Ball::square() const {
    BigInt l2 = lo_ * lo_, h2 = hi_ * hi_;
    BigInt mx = std::max(l2, h2);
    BigInt mn = contains_zero() ? BigInt(0) : std::min(l2, h2);
    return Ball(fdiv_2exp(mn, prec_), cdiv_2exp(mx, prec_), prec_);
}

Ball Ball::div(const Ball& o) const {
    if (!o.excludes_zero()) throw std::domain_error("Ball::div: denominator encloses 0");
    long p = std::max(prec_, o.prec_);
    Ball a = to_prec(p), b = o.to_prec(p);
    // value = (ai/2^p)/(bj/2^p) = ai/bj; rescale to 2^-p grid with directed rounding
    BigInt n1 = shift_left(a.lo_, p), n2 = shift_left(a.hi_, p);
    BigInt q1 = fdiv(n1, b.lo_), q2 = fdiv(n1, b.hi_), q3 = fdiv(n2, b.lo_), q4 = fdiv(n2, b.hi_);
    BigInt c1 = cdiv(n1, b.lo_), c2 = cdiv(n1, b.hi_), c3 = cdiv(n2, b.lo_), c4 = cdiv(n2, b.hi_);
    BigInt mn = std::min(std::min(q1, q2), std::min(q3, q4));
    BigInt mx = std::max(std::max(c1, c2), std::max(c3, c4));
    return Ball(mn, mx, p);
}

Ball Ball::sqrt() const {
    if (sgn(hi_) < 0) throw std::domain_error("Ball::sqrt: negative");
    BigInt lo = sgn(lo_) < 0 ? BigInt(0) : lo_;
    BigInt lr = sqrt_floor(shift_left(lo, prec_));
    BigInt hs = shift_left(hi_, prec_);
    BigInt hr = sqrt_floor(hs);
    if (hr * hr < hs) hr += 1;
    return Ball(lr, hr, prec_);
}

Ball Ball::add_integer(const BigInt& v) const {
    BigInt s = shift_left(v, prec_);
    return Ball(lo_ + s, hi_ + s, prec_);
}

Ball Ball::sub_integer(const BigInt& v) const { return add_integer(-v); }

Ball Ball::mul_integer(const BigInt& v) const {
    if (sgn(v) >= 0) return Ball(lo_ * v, hi_ * v, prec_);
    return Ball(hi_ * v, lo_ * v, prec_);
}

Ball Ball::mul_2exp(long k) const {
    if (k >= 0) return Ball(shift_left(lo_, k), shift_left(hi_, k), prec_);
    return Ball(fdiv_2exp(lo_, -k), cdiv_2exp(hi_, -k), prec_);
}

bool Ball::contains(const BigRational& q) const {
    // lo/2^p <= num/den <= hi/2^p  with den > 0
    BigInt scaled = shift_left(q.get_num(), prec_);
    return lo_ * q.get_den() <= scaled && scaled <= hi_ * q.get_den();
}

bool Ball::inside(const Ball& outer) const {
    long p = std::max(prec_, outer.prec_);
    Ball a = to_prec(p), b = outer.to_prec(p);
    return b.lo_ <= a.lo_ && a.hi_ <= b.hi_;
}

std::optional<BigInt> Ball::floor_certain() const {
    BigInt fl = fdiv_2exp(lo_, prec_), fh = fdiv_2exp(hi_, prec_);
    if (fl == fh) return fl;
    return std::nullopt;
}

std::optional<Order> Ball::compare(const Ball& a, const Ball& b) {
    long p = std::max(a.prec_, b.prec_);
    Ball x = a.to_prec(p), y = b.to_prec(p);
    if (x.hi_ < y.lo_) return Order::Less;
    if (y.hi_ < x.lo_) return Order::Greater;
    if (x.lo_ == x.hi_ && y.lo_ == y.hi_ && x.lo_ == y.lo_) return Order::Equal;
    return std::nullopt;
}

std::optional<Order> Ball::compare_rational(const Ball& a, const BigRational& q) {
    BigInt scaled = shift_left(q.get_num(), a.prec_);
    BigInt lo = a.lo_ * q.get_den(), hi = a.hi_ * q.get_den();
    if (hi < scaled) return Order::Less;
    if (scaled < lo) return Order::Greater;
    if (lo == hi && lo == scaled) return Order::Equal;
    return std::nullopt;
}

Ball Ball::intersect(const Ball& o) const {
    long p = std::max(prec_, o.prec_);
    Ball a = to_prec(p), b = o.to_prec(p);
    BigInt lo = std::max(a.lo_, b.lo_), hi = std::min(a.hi_, b.hi_);
    if (lo > hi) throw std::logic_error("Ball::intersect: disjoint enclosures");
    return Ball(lo, hi, p);
}

double Ball::to_double() const {
    BigRational m = midpoint();
    return mpq_get_d(m.get_mpq_t());
}

std::string Ball::decimal(int digits) const {
    BigRational m = midpoint();
    bool negative = sgn(m) < 0;
    if (negative) m = -m;
    BigInt ip = floor_rational(m);
    BigRational frac = m - BigRational(ip);
    std::ostringstream out;
    if (negative) out << '-';
    out << ip.get_str() << '.';
    for (int i = 0; i < digits; ++i) {
        frac *= 10;
        BigInt d = floor_rational(frac);
        out << d.get_str();
        frac -= BigRational(d);
    }
    return out.str();
}

}  // namespace entq
