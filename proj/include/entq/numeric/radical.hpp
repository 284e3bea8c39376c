#pragma once
#include <vector>

#include "entq/numeric/ball.hpp"
#include "entq/numeric/real_scalar.hpp"

namespace entq {

// Evaluates psi_{e1} o ... o psi_{en}(seed) where psi_e(y) = sqrt(y + 1 + e) - 1,
// innermost first. These are the endpoints of square-radical cylinders.
Ball nested_radical(const std::vector<int>& digits, int seed, long prec);

// Positive root of X^k - X^(k-1) - ... - X - 1 on (1, 2). k = 2 is the golden
// mean and stays exact; higher k come back as refinable bisection enclosures.
RealScalar root_of_pseudo_golden(int k, long bits);

}  // namespace entq
