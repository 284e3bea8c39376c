#include "entq/numeric/elementary.hpp"

#include <stdexcept>

namespace entq {

namespace {
constexpr long kGuard = 32;

BigInt two_pow(long e) { return pow_ui(BigInt(2), static_cast<unsigned long>(e)); }

// rational upper bound on |x| over the enclosure
BigRational abs_bound(const Ball& x) {
    BigRational l = x.lower(), h = x.upper();
    if (sgn(l) < 0) l = -l;
    if (sgn(h) < 0) h = -h;
    return l > h ? l : h;
}
}  // namespace

Ball atan_inv_ball(unsigned long q, long prec) {
    if (q < 2) throw std::domain_error("atan_inv_ball: q >= 2");
    long work = prec + kGuard;
    BigInt scale = two_pow(work);
    BigInt q2 = BigInt(q) * q;
    // alternating series sum (-1)^k / ((2k+1) q^(2k+1)); each floor division
    // loses < 1 ulp and the dropped tail is below the first omitted term
    BigInt acc(0);
    BigInt denom_pow(q);
    unsigned long k = 0;
    long terms = 0;
    for (;;) {
        BigInt term = scale / (denom_pow * (2 * k + 1));
        if (term == 0) break;
        if (k % 2 == 0) acc += term; else acc -= term;
        denom_pow *= q2;
        ++k;
        ++terms;
    }
    BigInt slack(terms + 1);
    return Ball(acc - slack, acc + slack, work).to_prec(prec);
}

Ball pi_ball(long prec) {
    long work = prec + kGuard;
    Ball a5 = atan_inv_ball(5, work).mul_integer(BigInt(16));
    Ball a239 = atan_inv_ball(239, work).mul_integer(BigInt(4));
    return a5.sub(a239).to_prec(prec);
}

Ball pi_ball_oracle(long prec) {
    long work = prec + kGuard;
    Ball a2 = atan_inv_ball(2, work);
    Ball a3 = atan_inv_ball(3, work);
    return a2.add(a3).mul_integer(BigInt(4)).to_prec(prec);
}

Ball ln_ball(const Ball& x, long prec) {
    long work = prec + kGuard;
    Ball v = x.to_prec(work);
    if (sgn(v.lo_scaled()) <= 0) throw std::domain_error("ln_ball: not strictly positive");
    // reduce to m = x / 2^s, then ln x = s ln 2 + 2 atanh((m-1)/(m+1))
    long s = static_cast<long>(bit_length(v.hi_scaled())) - work;  // m starts in ~[1/2, 1)
    Ball m = v.mul_2exp(-s);
    BigRational two_thirds(2, 3);
    if (Ball::compare_rational(m, two_thirds) == std::optional<Order>(Order::Less)) {
        --s;
        m = v.mul_2exp(-s);  // now in ~[2/3, 4/3)
    }
    Ball one = Ball::exact_integer(1, work);
    Ball u = m.sub(one).div(m.add(one));
    Ball u2 = u.square();
    BigRational ub = abs_bound(u);
    if (ub >= 1) throw std::logic_error("ln_ball: reduction failed");
    BigRational geo = 1 - ub * ub;  // tail of sum u^(2j+1)/(2j+1) is < |u|^(2k+1)/geo
    BigRational ulp_gate = make_rational(BigInt(1), two_pow(prec + 2));
    Ball term = u;
    Ball acc = Ball::exact_integer(0, work);
    for (unsigned long k = 0;; ++k) {
        acc = acc.add(term.div(Ball::exact_integer(BigInt(2 * k + 1), work)));
        term = term.mul(u2);
        BigRational tail = abs_bound(term) / geo;
        if (tail < ulp_gate) {
            acc = acc.add(Ball::from_endpoints(-tail, tail, work));
            break;
        }
        if (k > static_cast<unsigned long>(work)) throw std::logic_error("ln_ball: series stalled");
    }
    Ball result = acc.mul_integer(BigInt(2));
    if (s != 0) {
        // ln 2 = 2 atanh(1/3), same tail scheme with |u| = 1/3
        Ball u3 = Ball::from_rational(BigRational(1, 3), work);
        Ball u3sq = u3.square();
        Ball t = u3;
        Ball a = Ball::exact_integer(0, work);
        for (unsigned long k = 0;; ++k) {
            a = a.add(t.div(Ball::exact_integer(BigInt(2 * k + 1), work)));
            t = t.mul(u3sq);
            BigRational tail = abs_bound(t) * BigRational(9, 8);
            if (tail < ulp_gate) {
                a = a.add(Ball::from_endpoints(-tail, tail, work));
                break;
            }
        }
        result = result.add(a.mul_integer(BigInt(2)).mul_integer(BigInt(s)));
    }
    return result.to_prec(prec);
}

Ball ln_rational(const BigRational& x, long prec) {
    if (sgn(x) <= 0) throw std::domain_error("ln_rational: not positive");
    return ln_ball(Ball::from_rational(x, prec + kGuard), prec);
}

Ball ln2_oracle(long prec) {
    long work = prec + kGuard;
    BigInt scale = two_pow(work);
    BigInt acc(0);
    long k = 1;
    for (;;) {
        BigInt term = scale / (BigInt(k) * two_pow(k));
        if (term == 0) break;
        acc += term;
        ++k;
    }
    // k floor roundings plus a tail below twice the first omitted term
    BigInt slack(k + 1);
    return Ball(acc, acc + slack, work).to_prec(prec);
}

}  // namespace entq
