#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "entq/expansions/cylinder.hpp"
#include "entq/lochs/series.hpp"

namespace entq {
namespace {

// Endpoint pair being pushed through T. Orbits survive across extend() calls;
// replacing an endpoint or escalating precision rebuilds the affected orbit
// and replays the agreed prefix.
class AgreementCore {
public:
    AgreementCore(MapPtr mapT, const PrecisionPolicy& policy)
        : map_(std::move(mapT)), policy_(policy) {}

    void set_left(RealScalar v) {
        left_ = std::move(v);
        left_orbit_.reset();
    }
    void set_right(RealScalar v) {
        right_ = std::move(v);
        right_orbit_.reset();
    }

    long m() const { return m_; }
    const DigitSeq& digits() const { return digits_; }

    AgreementStatus extend(long cap) {
        ensure_orbits();
        for (;;) {
            if (m_ >= cap) return AgreementStatus::CapReached;
            DigitResult a, b;
            bool blown = false;
            try {
                a = left_orbit_->digit();
                b = right_orbit_->digit();
            } catch (const PrecisionExhausted&) {
                blown = true;
            }
            if (blown || a.kind == DigitKind::Unresolved || b.kind == DigitKind::Unresolved) {
                if (!escalate()) return AgreementStatus::PrecisionExhausted;
                continue;
            }
            if (a.kind == DigitKind::InfiniteAccum && b.kind == DigitKind::InfiniteAccum)
                throw std::logic_error("both endpoint orbits claim the accumulation point");
            if (a.kind != DigitKind::Finite || b.kind != DigitKind::Finite)
                return AgreementStatus::Separated;
            if (!(a.digit == b.digit)) return AgreementStatus::Separated;
            try {
                left_orbit_->advance(a.digit);
                right_orbit_->advance(a.digit);
            } catch (const PrecisionExhausted&) {
                // one orbit may have moved already; the rebuild replays only
                // the committed prefix, so both land back in sync
                if (!escalate()) return AgreementStatus::PrecisionExhausted;
                continue;
            }
            digits_.push_back(a.digit);
            ++m_;
        }
    }

private:
    void ensure_orbits() {
        long bits = policy_.bits_at(esc_);
        if (!left_orbit_) {
            left_orbit_ = make_endpoint_orbit(map_, left_, Side::FromRight, bits);
            left_orbit_->fast_forward(digits_, digits_.size());
        }
        if (!right_orbit_) {
            right_orbit_ = make_endpoint_orbit(map_, right_, Side::FromLeft, bits);
            right_orbit_->fast_forward(digits_, digits_.size());
        }
    }

    bool escalate() {
        if (esc_ >= policy_.max_escalations) return false;
        ++esc_;
        left_orbit_.reset();
        right_orbit_.reset();
        ensure_orbits();
        return true;
    }

    MapPtr map_;
    PrecisionPolicy policy_;
    RealScalar left_;
    RealScalar right_;
    OrbitPtr left_orbit_;
    OrbitPtr right_orbit_;
    int esc_ = 0;
    long m_ = 0;
    DigitSeq digits_;
};

BigInt exact_floor(const RealScalar& x) {
    if (x.is_rational()) return floor_rational(x.rational());
    return x.quadratic().floor();
}

bool exact_is_integer(const RealScalar& x) {
    if (x.is_rational()) return is_integer(x.rational());
    const QuadraticElement& q = x.quadratic();
    return q.is_rational() && is_integer(q.rational_value());
}

bool same_exact(const RealScalar& a, const RealScalar& b) {
    if (a.is_rational() && b.is_rational()) return a.rational() == b.rational();
    if (a.is_quadratic() && b.is_quadratic()) return a.quadratic() == b.quadratic();
    return false;  // refinables: safer to rebuild than to prove equality
}

}  // namespace

AgreementResult determined_digits(const RealScalar& left, const RealScalar& right,
                                  const MapPtr& mapT, long cap,
                                  const PrecisionPolicy& policy) {
    if (cap < 0) throw std::domain_error("determined_digits needs cap >= 0");
    if (left.is_exact() && right.is_exact() &&
        compare(left, right, policy) != Order::Less)
        throw std::domain_error("determined_digits needs left < right");
    AgreementCore core(mapT, policy);
    core.set_left(left);
    core.set_right(right);
    AgreementResult out;
    out.status = core.extend(cap);
    out.m = core.m();
    out.digits = core.digits();
    return out;
}

long default_cap(const MapPtr& mapS, long n, const MapPtr& mapT) {
    double shrink = std::log(mapS->branch_proxy());
    double grow = std::log(1.0 / mapT->max_cell_width());
    double c = 8.0 * static_cast<double>(n) * shrink / grow;
    return static_cast<long>(std::ceil(c)) + 64;
}

MSeries m_series(const MapPtr& mapS, const DigitSeq& seed, const MapPtr& mapT,
                 const PrecisionPolicy& policy) {
    if (!mapS->admissible(seed))
        throw InadmissibleDigits(mapS->name() + " rejects the seed digits");

    MSeries out;
    const long g = mapS->radix();
    const long h = mapT->radix();
    out.radix_pair = g > 0 && h > 0;
    if (out.radix_pair) {
        out.g = g;
        out.h = h;
    }

    AgreementCore core(mapT, policy);
    const std::size_t N = seed.size();
    out.rows.reserve(N);

    BigInt gn(1), hl(1);  // running g^n and h^ell for the digit budget
    long ellv = 0;
    long prev_m = 0;

    // radix sources keep the cylinder as P/g^n and touch only the endpoint the
    // new digit moved; everyone else recomputes the cylinder and compares
    BigInt P(0), D(1);
    Cylinder prevA;
    if (g > 0) {
        core.set_left(RealScalar{BigRational(0)});
        core.set_right(RealScalar{BigRational(1)});
    }

    for (std::size_t i = 0; i < N; ++i) {
        const long n = static_cast<long>(i + 1);
        RealScalar row_left, row_right;
        bool row_exact = true;
        if (g > 0) {
            long d = seed[i].as_long();
            BigInt Pg = P * g;
            Pg += d;
            P = Pg;
            D *= g;
            BigInt Q = P + 1;
            row_left = RealScalar{make_rational(P, D)};
            row_right = RealScalar{make_rational(Q, D)};
            if (d != 0) core.set_left(row_left);
            if (d != g - 1) core.set_right(row_right);
        } else {
            DigitSeq prefix(seed.begin(), seed.begin() + static_cast<std::ptrdiff_t>(i + 1));
            Cylinder A = cylinder(*mapS, prefix, policy);
            if (i == 0 || !same_exact(prevA.left, A.left)) core.set_left(A.left);
            if (i == 0 || !same_exact(prevA.right, A.right)) core.set_right(A.right);
            row_left = A.left;
            row_right = A.right;
            row_exact = A.left.is_exact() && A.right.is_exact();
            prevA = std::move(A);
        }

        AgreementStatus st = core.extend(default_cap(mapS, n, mapT));
        if (st == AgreementStatus::PrecisionExhausted)
            throw PrecisionExhausted("m_series out of precision at n = " + std::to_string(n));
        if (st == AgreementStatus::CapReached) out.capped = true;

        MSeriesRow row;
        row.n = n;
        row.m = core.m();
        if (out.radix_pair) {
            gn *= g;
            BigInt next = hl * h;
            while (next <= gn) {
                hl = next;
                next = hl * h;
                ++ellv;
            }
            row.ell = ellv;
        }
        row.jump = row.m > prev_m;
        if (h > 0 && st == AgreementStatus::Separated && row_exact) {
            Cylinder A;
            A.left = row_left;
            A.right = row_right;
            row.hit = classify_hit_type(A, mapT, row.m);
        }
        prev_m = row.m;
        out.rows.push_back(std::move(row));
    }
    return out;
}

long ell(long n, long g, long h) {
    if (n < 1 || g < 2 || h < 2)
        throw std::domain_error("ell needs n >= 1 and bases >= 2");
    double guess = static_cast<double>(n) * std::log(static_cast<double>(g)) /
                   std::log(static_cast<double>(h));
    long cand = static_cast<long>(std::floor(guess)) - 2;
    if (cand < 0) cand = 0;
    BigInt G = pow_ui(BigInt(g), static_cast<unsigned long>(n));
    BigInt H = pow_ui(BigInt(h), static_cast<unsigned long>(cand));
    while (H > G) {
        H /= h;
        --cand;
    }
    BigInt next = H * h;
    while (next <= G) {  // ties go up: an exact power h^l = g^n counts as l
        H = next;
        next = H * h;
        ++cand;
    }
    return cand;
}

JumpStats jump_times(const MSeries& series) {
    JumpStats out;
    long prev_m = 0;
    long prev_n = 0;
    for (const auto& row : series.rows) {
        if (row.m > prev_m) {
            out.times.push_back(row.n);
            out.hangs.push_back(row.n - prev_n);
            out.types.push_back(row.hit);
            prev_n = row.n;
        }
        prev_m = row.m;
    }
    return out;
}

HitType classify_hit_type(const Cylinder& A, const MapPtr& mapT, long m) {
    long h = mapT->radix();
    if (h < 2) throw std::domain_error("hit classification needs an h-adic target");
    if (m < 0) throw std::domain_error("hit classification needs m >= 0");
    if (!A.left.is_exact() || !A.right.is_exact())
        throw std::domain_error("hit classification needs exact interval endpoints");
    RealScalar scale{BigRational(pow_ui(BigInt(h), static_cast<unsigned long>(m) + 1))};
    RealScalar lo_s = A.left * scale;
    RealScalar hi_s = A.right * scale;
    // strictly interior grid points j: first one above the left endpoint, last
    // one below the right endpoint; endpoints on the grid do not count
    BigInt lo = exact_floor(lo_s) + 1;
    BigInt hi = exact_floor(hi_s);
    if (exact_is_integer(hi_s)) hi -= 1;
    if (hi < lo) return HitType::None;
    return hi == lo ? HitType::Type1 : HitType::Type2;
}

HangEstimate hang_frequency(const std::vector<MSeries>& trials, long g) {
    if (g < 2) throw std::domain_error("hang frequency needs a radix source with g >= 2");
    HangEstimate out;
    for (const auto& t : trials) {
        for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
            ++out.steps;
            if (t.rows[i + 1].m == t.rows[i].m) ++out.hangs;
        }
    }
    if (out.steps > 0) {
        double p = static_cast<double>(out.hangs) / static_cast<double>(out.steps);
        out.frequency = p;
        out.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(out.steps));
    }
    return out;
}

bool jump_bound_holds(long m, long ellv, long g, long h) {
    if (g < 2 || h < 2) throw std::domain_error("jump bound needs bases >= 2");
    long e = ellv - 1 - m;
    if (e <= 0) return true;
    return pow_ui(BigInt(h), static_cast<unsigned long>(e)) <= g;
}

bool golden_jump_bound_holds(long m, long n, long g) {
    if (n < 1 || m < 0 || g < 2)
        throw std::domain_error("golden jump bound needs n >= 1, m >= 0, g >= 2");
    // gamma^(m+2) = F(m+2) gamma + F(m+1) against g^(n-1), all exact
    BigInt fprev(1), fcur(1);
    for (long j = 2; j < m + 2; ++j) {
        BigInt next = fprev + fcur;
        fprev = fcur;
        fcur = next;
    }
    QuadraticElement power = QuadraticElement::golden()
                                 .mul_rational(BigRational(fcur))
                                 .add_rational(BigRational(fprev));
    BigRational target(pow_ui(BigInt(g), static_cast<unsigned long>(n - 1)));
    return QuadraticElement::compare_rational(power, target) != Order::Less;
}

}  // namespace entq
