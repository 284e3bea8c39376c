#include "entq/numeric/real_scalar.hpp"

namespace entq {

namespace {

RefinableReal as_refinable(const RealScalar& x) {
    if (x.is_rational()) return RefinableReal::constant(x.rational());
    if (x.is_quadratic()) {
        QuadraticElement q = x.quadratic();
        return RefinableReal([q](long bits) { return q.enclose(bits); });
    }
    return x.refinable();
}

QuadraticElement as_quadratic(const RealScalar& x) {
    if (x.is_rational()) return QuadraticElement(x.rational());
    return x.quadratic();
}

}  // namespace

Ball RealScalar::enclose(long bits) const {
    if (is_rational()) return Ball::from_rational(rational(), bits);
    if (is_quadratic()) return quadratic().enclose(bits);
    return refinable().refine(bits);
}

double RealScalar::to_double() const {
    if (is_rational()) return mpq_get_d(rational().get_mpq_t());
    return enclose(96).to_double();
}

RealScalar operator+(const RealScalar& a, const RealScalar& b) {
    if (a.is_rational() && b.is_rational()) return RealScalar(BigRational(a.rational() + b.rational()));
    if (a.is_exact() && b.is_exact()) return RealScalar(as_quadratic(a).add(as_quadratic(b)));
    RefinableReal x = as_refinable(a), y = as_refinable(b);
    return RealScalar(RefinableReal([x, y](long bits) { return x.refine(bits + 2).add(y.refine(bits + 2)); }));
}

RealScalar operator-(const RealScalar& a, const RealScalar& b) { return a + (-b); }

RealScalar RealScalar::operator-() const {
    if (is_rational()) return RealScalar(BigRational(-rational()));
    if (is_quadratic()) return RealScalar(quadratic().neg());
    RefinableReal r = refinable();
    return RealScalar(RefinableReal([r](long bits) { return r.refine(bits).neg(); }));
}

RealScalar operator*(const RealScalar& a, const RealScalar& b) {
    if (a.is_rational() && b.is_rational()) return RealScalar(BigRational(a.rational() * b.rational()));
    if (a.is_exact() && b.is_exact()) return RealScalar(as_quadratic(a).mul(as_quadratic(b)));
    RefinableReal x = as_refinable(a), y = as_refinable(b);
    return RealScalar(RefinableReal([x, y](long bits) { return x.refine(bits + 4).mul(y.refine(bits + 4)); }));
}

RealScalar operator/(const RealScalar& a, const RealScalar& b) {
    if (a.is_rational() && b.is_rational()) return RealScalar(BigRational(a.rational() / b.rational()));
    if (a.is_exact() && b.is_exact()) return RealScalar(as_quadratic(a).div(as_quadratic(b)));
    RefinableReal x = as_refinable(a), y = as_refinable(b);
    return RealScalar(RefinableReal([x, y](long bits) {
        Ball den = y.refine(bits + 4);
        for (long extra = 64; den.contains_zero() && extra <= 1024; extra *= 2) den = y.refine(bits + extra);
        if (den.contains_zero()) throw PrecisionExhausted("division by a refinable that may be zero");
        return x.refine(bits + 4).div(den);
    }));
}

Order compare(const RealScalar& x, const RealScalar& y, const PrecisionPolicy& policy) {
    if (x.is_rational() && y.is_rational()) {
        int c = cmp(x.rational(), y.rational());
        return c < 0 ? Order::Less : (c > 0 ? Order::Greater : Order::Equal);
    }
    if (x.is_exact() && y.is_exact())
        return QuadraticElement::compare(as_quadratic(x), as_quadratic(y));
    // at least one refinable: escalate until the enclosures separate
    for (int e = 0; e <= policy.max_escalations; ++e) {
        long bits = policy.bits_at(e);
        auto ord = Ball::compare(x.enclose(bits), y.enclose(bits));
        if (ord && *ord != Order::Equal) return *ord;
    }
    throw PrecisionExhausted("compare: enclosures overlap at max precision (equal values or insufficient budget)");
}

BigInt floor(const RealScalar& x, const PrecisionPolicy& policy) {
    if (x.is_rational()) return floor_rational(x.rational());
    if (x.is_quadratic()) return x.quadratic().floor();
    for (int e = 0; e <= policy.max_escalations; ++e) {
        auto f = x.refinable().refine(policy.bits_at(e)).floor_certain();
        if (f) return *f;
    }
    throw PrecisionExhausted("floor: ball straddles an integer at max precision");
}

BigInt floor_sided(const RealScalar& x, Side side, const PrecisionPolicy& policy) {
    if (x.is_rational()) {
        const BigRational& q = x.rational();
        if (side == Side::FromLeft && is_integer(q)) return BigInt(q.get_num() - 1);
        return floor_rational(q);
    }
    if (x.is_quadratic()) {
        const QuadraticElement& q = x.quadratic();
        if (side == Side::FromLeft && q.is_rational() && is_integer(q.rational_value()))
            return BigInt(q.rational_value().get_num() - 1);
        return q.floor();
    }
    return floor(x, policy);  // a ball cannot certify exact integrality
}

}  // namespace entq
