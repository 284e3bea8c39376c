#pragma once
#include "entq/numeric/ball.hpp"

namespace entq {

// Rigorous enclosures of a few elementary quantities. Two independent
// identities are provided for pi and ln 2 so constants can be cross-checked
// against oracles that do not share a code path.

Ball atan_inv_ball(unsigned long q, long prec);  // arctan(1/q), q >= 2

Ball pi_ball(long prec);         // Machin: 16 atan(1/5) - 4 atan(1/239)
Ball pi_ball_oracle(long prec);  // 4 (atan(1/2) + atan(1/3))

// natural log of an enclosed positive value
Ball ln_ball(const Ball& x, long prec);
Ball ln_rational(const BigRational& x, long prec);

Ball ln2_oracle(long prec);  // sum 1/(k 2^k)

}  // namespace entq
