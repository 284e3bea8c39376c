#pragma once
#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace entq {

using BigInt = mpz_class;
// mpq_class keeps denominator > 0 and gcd(num, den) = 1 after canonicalization,
// which is exactly the BigRational contract.
using BigRational = mpq_class;

inline BigInt pow_ui(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt pow_ui(unsigned long base, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// number of bits of |x|; 0 for x = 0
inline std::size_t bit_length(const BigInt& x) {
    if (x == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// floor of a rational as a BigInt
inline BigInt floor_rational(const BigRational& x) {
    return floor_div(x.get_num(), x.get_den());
}

inline bool is_integer(const BigRational& x) { return x.get_den() == 1; }

struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entq
