#pragma once
#include "entq/expansions/map.hpp"
#include "entq/expansions/orbit.hpp"

namespace entq {

enum class AgreementStatus { Separated, CapReached, PrecisionExhausted };

// How many leading T-digits an interval pins down. Separated means the next
// digit genuinely differs between the endpoints; CapReached and
// PrecisionExhausted both leave m as a certified lower bound.
struct AgreementResult {
    long m = 0;
    DigitSeq digits;
    AgreementStatus status = AgreementStatus::Separated;
};

// Digits shared by the T-expansions of left (approached from the right) and
// right (approached from the left). A digit counts as determined when both
// one-sided expansions agree on it, i.e. no branch boundary cuts the open
// interval.
AgreementResult determined_digits(const RealScalar& left, const RealScalar& right,
                                  const MapPtr& mapT, long cap,
                                  const PrecisionPolicy& policy);

// Runaway guard for agreement driven by a rank-n S-cylinder: generous multiple
// of the digit count such an interval can justify.
long default_cap(const MapPtr& mapS, long n, const MapPtr& mapT);

}  // namespace entq
