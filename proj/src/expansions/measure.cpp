#include "entq/expansions/measure.hpp"

#include <stdexcept>

#include "entq/numeric/quadratic.hpp"
#include "entq/numeric/radical.hpp"

namespace entq {

BigRational rcf_cylinder_measure(const std::vector<BigInt>& quotients) {
    // 1 / (Q_n (Q_n + Q_{n-1})) with the continuant recursion
    BigInt qprev(0), qcur(1);
    for (const BigInt& a : quotients) {
        if (a < 1) throw InadmissibleDigits("rcf quotients must be positive");
        BigInt next = a * qcur + qprev;
        qprev = qcur;
        qcur = std::move(next);
    }
    BigInt den = qcur * (qcur + qprev);
    return make_rational(1, den);
}

namespace {

Ball pow_ball(const Ball& b, long e) {
    Ball acc = Ball::exact_integer(BigInt(1), b.prec());
    Ball sq = b;
    for (long rem = e; rem > 0; rem >>= 1) {
        if (rem & 1) acc = acc.mul(sq);
        if (rem > 1) sq = sq.square();
    }
    return acc;
}

}  // namespace

RealScalar pseudo_golden_cylinder_measure(int k, const DigitSeq& digits) {
    if (k < 2) throw std::domain_error("pseudo-golden index must be >= 2");
    int run = 0;
    for (const Digit& d : digits) {
        if (d.beta_word || (d.payload != 0 && d.payload != 1))
            throw InadmissibleDigits("pseudo-golden digits must be 0 or 1");
        if (d.payload == 1) {
            if (++run >= k) throw InadmissibleDigits("pseudo-golden digits contain a blocked run of ones");
        } else {
            run = 0;
        }
    }
    long m = static_cast<long>(digits.size());
    long j = run;  // trailing ones
    long terms = k - j;

    if (k == 2) {
        // lambda = gamma^-(m+j); gamma^t = F_t gamma + F_{t-1} inverts exactly
        long t = m + j;
        if (t == 0) return RealScalar{BigRational(1)};
        BigInt fprev(0), fcur(1);
        for (long i = 1; i < t; ++i) {
            BigInt next = fcur + fprev;
            fprev = fcur;
            fcur = std::move(next);
        }
        QuadraticElement gt = QuadraticElement::golden()
                                  .mul_rational(BigRational(fcur))
                                  .add_rational(BigRational(fprev));
        return RealScalar{gt.inverse()};
    }

    RealScalar gamma = root_of_pseudo_golden(k, 64);
    return RealScalar{RefinableReal([gamma, m, terms](long bits) {
        Ball g = gamma.enclose(bits + 64);
        Ball inv = Ball::exact_integer(BigInt(1), bits + 64).div(g);
        Ball geom = Ball::exact_integer(BigInt(0), bits + 64);
        Ball p = Ball::exact_integer(BigInt(1), bits + 64);
        for (long i = 0; i < terms; ++i) {
            geom = geom.add(p);
            p = p.mul(inv);
        }
        return pow_ball(inv, m + 1).mul(geom).to_prec(bits);
    })};
}

}  // namespace entq
