#include "entq/numeric/radical.hpp"

#include <stdexcept>

namespace entq {

Ball nested_radical(const std::vector<int>& digits, int seed, long prec) {
    if (digits.empty()) throw std::domain_error("nested_radical: empty digit string");
    if (seed != 0 && seed != 1) throw std::domain_error("nested_radical: seed must be 0 or 1");
    long work = prec + 32;
    // each sqrt contracts (derivative < 1/2 on the domain), so per-level
    // rounding does not accumulate
    Ball y = Ball::exact_integer(seed, work);
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (*it < 0 || *it > 2) throw std::domain_error("nested_radical: digit out of range");
        y = y.add_integer(BigInt(1 + *it)).sqrt().sub_integer(BigInt(1));
    }
    return y.to_prec(prec);
}

namespace {

// sign of X^k - X^(k-1) - ... - 1 at the dyadic point a / 2^j, computed on the
// integer numerator a^k - sum_i a^(k-i) 2^(ij)
int poly_sign_at(int k, const BigInt& a, long j) {
    BigInt h(1);
    BigInt shift_unit = pow_ui(BigInt(2), static_cast<unsigned long>(j));
    BigInt shift(1);
    for (int s = 1; s <= k; ++s) {
        shift *= shift_unit;
        h = h * a - shift;
    }
    return sgn(h);
}

}  // namespace

RealScalar root_of_pseudo_golden(int k, long bits) {
    if (k < 2) throw std::domain_error("root_of_pseudo_golden: k >= 2");
    if (k == 2) return RealScalar(QuadraticElement::golden());
    RefinableReal r(RefinableReal([k](long want) {
        // binary-search digits of the root in [1, 2]; the polynomial is
        // negative at 1 and positive at 2, and the root here is simple
        BigInt a(1);
        long j = 0;
        long steps = want + 4;
        for (long i = 0; i < steps; ++i) {
            BigInt mid = 2 * a + 1;
            ++j;
            int s = poly_sign_at(k, mid, j);
            if (s == 0) {
                BigRational exact = make_rational(mid, pow_ui(BigInt(2), static_cast<unsigned long>(j)));
                return Ball::from_rational(exact, want);
            }
            a = s < 0 ? mid : 2 * a;
        }
        BigInt den = pow_ui(BigInt(2), static_cast<unsigned long>(j));
        return Ball::from_endpoints(make_rational(a, den), make_rational(a + 1, den), want);
    }));
    r.refine(bits);
    return RealScalar(std::move(r));
}

}  // namespace entq
