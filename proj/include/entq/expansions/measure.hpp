#pragma once
#include <vector>

#include "entq/expansions/digit.hpp"
#include "entq/numeric/real_scalar.hpp"

namespace entq {

// Lebesgue measure of the continued-fraction cylinder with the given partial
// quotients: 1/(Q_m (Q_m + Q_{m-1})) with Q_{-1} = 0, Q_0 = 1,
// Q_i = a_i Q_{i-1} + Q_{i-2}.
BigRational rcf_cylinder_measure(const std::vector<BigInt>& quotients);

// Measure of a gamma-adic cylinder for the k-th pseudo-golden mean. With j
// the length of the trailing run of 1s, the continuation set is cut down to
// words not starting with k-j further 1s, giving
//   sum_{i=1}^{k-j} gamma^-(m+i)
// which collapses to gamma^-m when j = 0. Exact for k = 2.
RealScalar pseudo_golden_cylinder_measure(int k, const DigitSeq& digits);

}  // namespace entq
