#include "entq/entropy/entropy.hpp"

#include <cmath>

#include "entq/numeric/elementary.hpp"
#include "entq/numeric/quadratic.hpp"

namespace entq {
namespace {

constexpr long kGuard = 32;
constexpr unsigned long kSeriesDepth = 1ul << 18;

// positive series sum 1/((2k+1) q^(2k+1)); scaled floor sums as in the other
// elementary series, one ulp per kept term plus a geometric tail under 2 ulp
Ball atanh_inv_ball(unsigned long q, long prec) {
    if (q < 3) throw std::domain_error("atanh_inv_ball: q >= 3");
    BigInt scale = pow_ui(BigInt(2), static_cast<unsigned long>(prec));
    BigInt q2 = BigInt(q) * q;
    BigInt acc(0);
    BigInt denom_pow(q);
    long terms = 0;
    for (unsigned long k = 0;; ++k) {
        BigInt term = scale / (denom_pow * (2 * k + 1));
        if (term == 0) break;
        acc += term;
        denom_pow *= q2;
        ++terms;
    }
    return Ball(acc, acc + BigInt(terms + 2), prec);
}

// sum over j >= 2 of 2 ln j / (j^2 - 1), which is the piecewise-linear cell
// series rearranged so each logarithm appears once; the tail is pinched by
// integral comparison against 2 ln x / x^2. The tail dominates the error, so
// a fixed internal precision suffices and the result is computed only once.
Ball lueroth_series_impl() {
    const long work = 128 + kGuard;
    const unsigned long K = kSeriesDepth;

    Ball lnj = ln_rational(BigRational(2), work);
    Ball sum = lnj.mul_integer(BigInt(2)).div(Ball::exact_integer(BigInt(3), work));
    for (unsigned long j = 3; j <= K; ++j) {
        lnj = lnj.add(atanh_inv_ball(2 * j - 1, work).mul_integer(BigInt(2)));
        BigInt den = BigInt(j) * j - 1;
        sum = sum.add(lnj.mul_integer(BigInt(2)).div(Ball::exact_integer(den, work)));
    }

    Ball one = Ball::exact_integer(BigInt(1), work);
    Ball lnK1 = lnj.add(atanh_inv_ball(2 * K + 1, work).mul_integer(BigInt(2)));
    // upper: sum_{j>K} 2 ln j / j^2 <= 2(ln K + 1)/K, inflated by the largest
    // j^2/(j^2-1) factor; lower: integral from K+1 of the same integrand
    Ball upper = lnj.add(one)
                     .mul_integer(BigInt(2))
                     .div(Ball::exact_integer(BigInt(K), work))
                     .mul(Ball::from_rational(
                         BigRational(1) + make_rational(BigInt(1), BigInt(K) * K), work));
    Ball lower = lnK1.add(one).mul_integer(BigInt(2)).div(
        Ball::exact_integer(BigInt(K) + 1, work));
    BigRational lo = lower.lower();
    if (sgn(lo) < 0) lo = 0;
    return sum.add(Ball::from_endpoints(lo, upper.upper(), work)).to_prec(128);
}

const Ball& lueroth_series() {
    static const Ball value = lueroth_series_impl();
    return value;
}

}  // namespace

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::ClosedForm: return "closed-form";
        case Provenance::SeriesWithTailBound: return "series-with-tail-bound";
        default: return "estimated";
    }
}

double EntropyValue::error_bound() const {
    double w = enclosure.width().get_d();
    return w * 0.5000001 + 1e-300;  // outward of the half-width
}

EntropyValue entropy_constant(const MapPtr& map, long bits) {
    if (bits < 64) bits = 64;
    const long work = bits + kGuard;
    switch (map->kind()) {
        case MapKind::Rcf: {
            Ball pi = pi_ball(work);
            Ball ln2 = ln_rational(BigRational(2), work);
            Ball v = pi.square().div(ln2.mul_integer(BigInt(6)));
            return {v.to_prec(bits), Provenance::ClosedForm};
        }
        case MapKind::Radix:
            return {ln_rational(BigRational(map->radix()), bits), Provenance::ClosedForm};
        case MapKind::Lueroth:
        case MapKind::AlternatingLueroth:
            return {lueroth_series().to_prec(bits), Provenance::SeriesWithTailBound};
        case MapKind::PseudoGolden: {
            Ball root = map->growth_root().enclose(work);
            return {ln_ball(root, bits), Provenance::ClosedForm};
        }
        default:
            throw UnknownEntropy(map->name() +
                                 ": neither the invariant measure nor the entropy is known");
    }
}

EntropyValue lochs_ratio(const MapPtr& mapS, const MapPtr& mapT, long bits) {
    EntropyValue hs = entropy_constant(mapS, bits + kGuard);
    EntropyValue ht = entropy_constant(mapT, bits + kGuard);
    EntropyValue out;
    out.enclosure = hs.enclosure.div(ht.enclosure).to_prec(bits);
    out.provenance = (hs.provenance == Provenance::SeriesWithTailBound ||
                      ht.provenance == Provenance::SeriesWithTailBound)
                         ? Provenance::SeriesWithTailBound
                         : Provenance::ClosedForm;
    return out;
}

EstimateReport estimate_entropy(const std::vector<double>& ratios, KnownSide known,
                                double h) {
    if (ratios.empty()) throw std::domain_error("estimate_entropy needs samples");
    if (!(h > 0.0)) throw std::domain_error("estimate_entropy needs h > 0");

    const double n = static_cast<double>(ratios.size());
    double sum = 0.0;
    for (double r : ratios) {
        if (known == KnownSide::S && r == 0.0)
            throw DegenerateSample("a trial determined no digits; cannot invert m/n");
        sum += r;
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (double r : ratios) ss += (r - mean) * (r - mean);
    const double sd = ratios.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;

    EstimateReport out;
    out.mean_ratio = mean;
    out.sample_std = sd;
    out.mean_standard_error = sd / std::sqrt(n);
    out.trials = ratios.size();
    out.known_side = known;
    out.known_entropy = h;
    if (known == KnownSide::S) {
        out.estimated_entropy = h / mean;
        out.entropy_standard_error = h * out.mean_standard_error / (mean * mean);
    } else {
        out.estimated_entropy = h * mean;
        out.entropy_standard_error = h * out.mean_standard_error;
    }
    return out;
}

}  // namespace entq
