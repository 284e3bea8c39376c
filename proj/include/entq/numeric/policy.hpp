#pragma once
#include <cmath>
#include <cstdint>

namespace entq {

// Escalation schedule for adaptive-precision comparisons and digit decisions.
struct PrecisionPolicy {
    long initial_bits = 256;     // >= 64
    int escalation_factor = 2;   // >= 2
    int max_escalations = 4;     // >= 0

    long bits_at(int escalation) const {
        long b = initial_bits;
        for (int i = 0; i < escalation; ++i) b *= escalation_factor;
        return b;
    }
    long max_bits() const { return bits_at(max_escalations); }
};

// Default policy for work seeded by a rank-n cylinder of a map with branch
// proxy g: the seed interval has width about g^-n, and every digit decision
// happens at that scale or coarser.
inline PrecisionPolicy policy_for_seed(long n, double branch_proxy_g) {
    PrecisionPolicy p;
    double bits = static_cast<double>(n) * std::log2(branch_proxy_g);
    p.initial_bits = static_cast<long>(std::ceil(bits)) + 128;
    if (p.initial_bits < 64) p.initial_bits = 64;
    return p;
}

}  // namespace entq
