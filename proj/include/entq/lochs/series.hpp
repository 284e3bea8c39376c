#pragma once
#include <vector>

#include "entq/expansions/cylinder.hpp"
#include "entq/lochs/agree.hpp"

namespace entq {

// How the separating rank-(m+1) boundary sits inside the source cylinder:
// exactly one boundary point strictly inside, or several. None is used for
// rows where the classification does not apply (target not h-adic, or the row
// stopped at the cap instead of separating).
enum class HitType { None, Type1, Type2 };

struct MSeriesRow {
    long n = 0;
    long m = 0;
    long ell = -1;  // digit budget floor(n log g / log h); -1 unless both maps are radix maps
    bool jump = false;
    HitType hit = HitType::None;
};

struct MSeries {
    std::vector<MSeriesRow> rows;
    bool radix_pair = false;
    long g = 0;          // set when radix_pair
    long h = 0;
    bool capped = false; // some row hit its cap; its m is a lower bound
};

// m(n) for n = 1..len(seed): digits of T determined by the rank-n S-cylinder
// of the seed. Endpoint T-orbits are carried across n; only the endpoint that
// actually moved is recomputed, by replaying the already determined prefix.
MSeries m_series(const MapPtr& mapS, const DigitSeq& seed, const MapPtr& mapT,
                 const PrecisionPolicy& policy);

// Largest l with h^l <= g^n, exactly. Ties (exact powers) take the larger l.
long ell(long n, long g, long h);

struct JumpStats {
    std::vector<long> times;      // n_k, rounds where m increased
    std::vector<long> hangs;      // v_k = n_k - n_{k-1}, with n_0 = 0
    std::vector<HitType> types;   // hit label of the row before the jump resolved
};

// Jump rounds derived from the m values (m(0) = 0), with the hang lengths
// between them. Hit labels are taken from the series rows.
JumpStats jump_times(const MSeries& series);

// Count rank-(m+1) branch boundaries of an h-adic target strictly inside A.
// One boundary: Type1; more: Type2; none: None. Endpoint touching does not
// count.
HitType classify_hit_type(const Cylinder& A, const MapPtr& mapT, long m);

struct HangEstimate {
    double frequency = 0.0;       // pooled fraction of steps with m(n+1) = m(n)
    double standard_error = 0.0;  // binomial
    long steps = 0;
    long hangs = 0;
};

// Pool hang steps across trials generated with a g-adic source.
HangEstimate hang_frequency(const std::vector<MSeries>& trials, long g);

// Lower jump-time bound for a (g-adic, h-adic) pair: at a jump,
// m >= l - 1 - log g / log h, checked as h^(l-1-m) <= g in exact integers.
bool jump_bound_holds(long m, long ellv, long g, long h);

// Golden-target analogue at a jump from a g-adic source:
// g^(n-1) <= gamma^(m+2), checked with exact quadratic arithmetic.
bool golden_jump_bound_holds(long m, long n, long g);

}  // namespace entq
