#include "entq/expansions/map.hpp"

#include <stdexcept>
#include <utility>

#include "entq/numeric/beta_integer.hpp"
#include "entq/numeric/radical.hpp"

namespace entq {

namespace {

// keep orbits in the cheapest exact kind: a quadratic that collapsed to a
// rational goes back to being one
RealScalar simplify(RealScalar v) {
    if (v.is_quadratic() && v.quadratic().is_rational())
        return RealScalar(v.quadratic().rational_value());
    return v;
}

bool exact_zero(const RealScalar& x) {
    if (x.is_rational()) return sgn(x.rational()) == 0;
    if (x.is_quadratic()) return x.quadratic().sign() == 0;
    return false;  // an enclosure can never certify exact zero
}

RealScalar reciprocal(const RealScalar& x) { return RealScalar(BigRational(1)) / x; }

RealScalar digit_scalar(const Digit& d) { return RealScalar(BigRational(d.payload)); }

class RcfMap final : public FibredMap {
public:
    MapKind kind() const override { return MapKind::Rcf; }
    std::string name() const override { return "rcf"; }
    Side membership_side() const override { return Side::FromLeft; }
    bool increasing(const Digit&) const override { return false; }
    bool zero_terminates() const override { return true; }
    double branch_proxy() const override { return 4.0; }
    double max_cell_width() const override { return 0.5; }

    Digit digit_of(const RealScalar& x, Side side, const PrecisionPolicy& policy) const override {
        if (exact_zero(x)) throw std::domain_error("rcf: no digit at 0, cells accumulate there");
        BigInt a = floor_sided(reciprocal(x), flip(side), policy);
        if (a < 1) throw std::domain_error("rcf: point outside (0, 1]");
        return Digit::integer(std::move(a));
    }

    RealScalar apply(const RealScalar& x, const Digit& d, const PrecisionPolicy&) const override {
        return simplify(reciprocal(x) - digit_scalar(d));
    }

    RealScalar inverse_branch(const Digit& d, const RealScalar& y) const override {
        return simplify(RealScalar(BigRational(1)) / (digit_scalar(d) + y));
    }

    bool admissible(const DigitSeq& digits) const override {
        for (const Digit& d : digits)
            if (d.beta_word || d.payload < 1) return false;
        return true;
    }
};

class RadixMap final : public FibredMap {
public:
    explicit RadixMap(long g) : g_(g) {
        if (g < 2) throw std::domain_error("radix map needs base >= 2");
    }
    MapKind kind() const override { return MapKind::Radix; }
    std::string name() const override { return "radix-" + std::to_string(g_); }
    Side membership_side() const override { return Side::FromRight; }
    bool increasing(const Digit&) const override { return true; }
    bool zero_terminates() const override { return false; }
    double branch_proxy() const override { return static_cast<double>(g_); }
    double max_cell_width() const override { return 1.0 / static_cast<double>(g_); }
    long radix() const override { return g_; }

    Digit digit_of(const RealScalar& x, Side side, const PrecisionPolicy& policy) const override {
        BigInt d = floor_sided(RealScalar(BigRational(g_)) * x, side, policy);
        if (d < 0 || d >= g_) throw std::domain_error("radix: point outside [0, 1)");
        return Digit::integer(std::move(d));
    }

    RealScalar apply(const RealScalar& x, const Digit& d, const PrecisionPolicy&) const override {
        return simplify(RealScalar(BigRational(g_)) * x - digit_scalar(d));
    }

    RealScalar inverse_branch(const Digit& d, const RealScalar& y) const override {
        return simplify((digit_scalar(d) + y) / RealScalar(BigRational(g_)));
    }

    bool admissible(const DigitSeq& digits) const override {
        for (const Digit& d : digits)
            if (d.beta_word || d.payload < 0 || d.payload >= g_) return false;
        return true;
    }

private:
    long g_;
};

class LuerothMap final : public FibredMap {
public:
    MapKind kind() const override { return MapKind::Lueroth; }
    std::string name() const override { return "lueroth"; }
    Side membership_side() const override { return Side::FromRight; }
    bool increasing(const Digit&) const override { return true; }
    bool zero_terminates() const override { return true; }
    double branch_proxy() const override { return 4.0; }
    double max_cell_width() const override { return 0.5; }

    Digit digit_of(const RealScalar& x, Side side, const PrecisionPolicy& policy) const override {
        if (exact_zero(x)) throw std::domain_error("lueroth: no digit at 0, cells accumulate there");
        BigInt k = floor_sided(reciprocal(x), flip(side), policy);
        if (k < 1) throw std::domain_error("lueroth: point outside (0, 1)");
        return Digit::integer(std::move(k));
    }

    RealScalar apply(const RealScalar& x, const Digit& d, const PrecisionPolicy&) const override {
        BigInt kk = d.payload * (d.payload + 1);
        return simplify(RealScalar(BigRational(kk)) * x - digit_scalar(d));
    }

    RealScalar inverse_branch(const Digit& d, const RealScalar& y) const override {
        BigInt kk = d.payload * (d.payload + 1);
        return simplify((y + digit_scalar(d)) / RealScalar(BigRational(kk)));
    }

    bool admissible(const DigitSeq& digits) const override {
        for (const Digit& d : digits)
            if (d.beta_word || d.payload < 1) return false;
        return true;
    }
};

// Same cells as Lueroth up to closure side, but each branch runs downhill:
// T x = (k+1) - k(k+1) x sends (1/(k+1), 1/k] onto [0, 1).
class AltLuerothMap final : public FibredMap {
public:
    MapKind kind() const override { return MapKind::AlternatingLueroth; }
    std::string name() const override { return "alt-lueroth"; }
    Side membership_side() const override { return Side::FromLeft; }
    bool increasing(const Digit&) const override { return false; }
    bool zero_terminates() const override { return true; }
    double branch_proxy() const override { return 4.0; }
    double max_cell_width() const override { return 0.5; }

    Digit digit_of(const RealScalar& x, Side side, const PrecisionPolicy& policy) const override {
        if (exact_zero(x)) throw std::domain_error("alt-lueroth: no digit at 0, cells accumulate there");
        BigInt k = floor_sided(reciprocal(x), flip(side), policy);
        if (k < 1) throw std::domain_error("alt-lueroth: point outside (0, 1]");
        return Digit::integer(std::move(k));
    }

    RealScalar apply(const RealScalar& x, const Digit& d, const PrecisionPolicy&) const override {
        BigInt kk = d.payload * (d.payload + 1);
        return simplify(RealScalar(BigRational(d.payload + 1)) - RealScalar(BigRational(kk)) * x);
    }

    RealScalar inverse_branch(const Digit& d, const RealScalar& y) const override {
        BigInt kk = d.payload * (d.payload + 1);
        return simplify((RealScalar(BigRational(d.payload + 1)) - y) / RealScalar(BigRational(kk)));
    }

    bool admissible(const DigitSeq& digits) const override {
        for (const Digit& d : digits)
            if (d.beta_word || d.payload < 1) return false;
        return true;
    }
};

class BolyaiMap final : public FibredMap {
public:
    MapKind kind() const override { return MapKind::Bolyai; }
    std::string name() const override { return "bolyai"; }
    Side membership_side() const override { return Side::FromRight; }
    bool increasing(const Digit&) const override { return true; }
    bool zero_terminates() const override { return false; }
    double branch_proxy() const override { return 3.0; }
    double max_cell_width() const override { return 0.41421356237309515; }  // sqrt 2 - 1

    Digit digit_of(const RealScalar& x, Side side, const PrecisionPolicy& policy) const override {
        // x is in [sqrt(1+d) - 1, sqrt(2+d) - 1) exactly when x(x+2) is in [d, d+1)
        BigInt d = floor_sided(x * (x + RealScalar(BigRational(2))), side, policy);
        if (d < 0 || d > 2) throw std::domain_error("bolyai: point outside [0, 1)");
        return Digit::integer(std::move(d));
    }

    RealScalar apply(const RealScalar& x, const Digit& d, const PrecisionPolicy&) const override {
        return simplify(x * (x + RealScalar(BigRational(2))) - digit_scalar(d));
    }

    RealScalar inverse_branch(const Digit& d, const RealScalar& y) const override {
        BigInt c = d.payload + 1;
        return RealScalar(RefinableReal([y, c](long bits) {
            return y.enclose(bits + 32).add_integer(c).sqrt().sub_integer(1).to_prec(bits);
        }));
    }

    bool admissible(const DigitSeq& digits) const override {
        for (const Digit& d : digits)
            if (d.beta_word || d.payload < 0 || d.payload > 2) return false;
        return true;
    }
};

class PseudoGoldenMap final : public FibredMap {
public:
    explicit PseudoGoldenMap(int k) : k_(k), gamma_(root_of_pseudo_golden(k, 128)) {
        gamma_double_ = gamma_.to_double();
    }
    MapKind kind() const override { return MapKind::PseudoGolden; }
    std::string name() const override { return "pseudo-golden-" + std::to_string(k_); }
    Side membership_side() const override { return Side::FromRight; }
    bool increasing(const Digit&) const override { return true; }
    bool zero_terminates() const override { return false; }
    double branch_proxy() const override { return 2.0; }
    double max_cell_width() const override { return 1.0 / gamma_double_; }
    int golden_k() const override { return k_; }
    RealScalar growth_root() const override { return gamma_; }

    Digit digit_of(const RealScalar& x, Side side, const PrecisionPolicy& policy) const override {
        BigInt d = floor_sided(gamma_ * x, side, policy);
        if (d < 0 || d > 1) throw std::domain_error("pseudo-golden: point outside [0, 1)");
        return Digit::integer(std::move(d));
    }

    RealScalar apply(const RealScalar& x, const Digit& d, const PrecisionPolicy&) const override {
        return simplify(gamma_ * x - digit_scalar(d));
    }

    RealScalar inverse_branch(const Digit& d, const RealScalar& y) const override {
        return simplify((digit_scalar(d) + y) / gamma_);
    }

    bool admissible(const DigitSeq& digits) const override {
        int run = 0;
        for (const Digit& d : digits) {
            if (d.beta_word || d.payload < 0 || d.payload > 1) return false;
            if (d.payload == 1) {
                if (++run >= k_) return false;  // k ones in a row never happen
            } else {
                run = 0;
            }
        }
        return true;
    }

private:
    int k_;
    RealScalar gamma_;
    double gamma_double_;
};

class BetaCfMap final : public FibredMap {
public:
    MapKind kind() const override { return MapKind::BetaCf; }
    std::string name() const override { return "beta-cf"; }
    Side membership_side() const override { return Side::FromLeft; }
    bool increasing(const Digit&) const override { return false; }
    bool zero_terminates() const override { return true; }
    double branch_proxy() const override { return 4.0; }
    double max_cell_width() const override { return 0.3819660112501051; }  // 1 - 1/beta

    Digit digit_of(const RealScalar& x, Side side, const PrecisionPolicy& policy) const override {
        if (exact_zero(x)) throw std::domain_error("beta-cf: no digit at 0, cells accumulate there");
        BetaInteger b = beta_floor(reciprocal(x), policy, flip(side));
        return Digit::beta(b.mask());
    }

    RealScalar apply(const RealScalar& x, const Digit& d, const PrecisionPolicy&) const override {
        return simplify(reciprocal(x) - RealScalar(BetaInteger(d.payload).value()));
    }

    RealScalar inverse_branch(const Digit& d, const RealScalar& y) const override {
        return simplify(RealScalar(BigRational(1)) / (RealScalar(BetaInteger(d.payload).value()) + y));
    }

    bool admissible(const DigitSeq& digits) const override {
        // after a digit whose cell gap is beta - 1 the image is only [0, 1/beta),
        // so the next digit is at least beta (mask 2)
        bool short_gap = false;
        for (const Digit& d : digits) {
            if (!d.beta_word || sgn(d.payload) <= 0 || !BetaInteger::valid_mask(d.payload))
                return false;
            if (short_gap && d.payload < 2) return false;
            short_gap = mpz_tstbit(d.payload.get_mpz_t(), 0) != 0;
        }
        return true;
    }
};

}  // namespace

RealScalar FibredMap::growth_root() const {
    throw std::logic_error(name() + ": growth root undefined");
}

MapPtr make_rcf() { return std::make_shared<RcfMap>(); }
MapPtr make_radix(long g) { return std::make_shared<RadixMap>(g); }
MapPtr make_lueroth() { return std::make_shared<LuerothMap>(); }
MapPtr make_alternating_lueroth() { return std::make_shared<AltLuerothMap>(); }
MapPtr make_bolyai() { return std::make_shared<BolyaiMap>(); }
MapPtr make_pseudo_golden(int k) { return std::make_shared<PseudoGoldenMap>(k); }
MapPtr make_beta_cf() { return std::make_shared<BetaCfMap>(); }

Expansion expand(const FibredMap& map, const RealScalar& x, std::size_t count,
                 const PrecisionPolicy& policy) {
    Expansion out;
    out.digits.reserve(count);
    RealScalar cur = x;
    for (std::size_t i = 0; i < count; ++i) {
        if (map.zero_terminates() && exact_zero(cur)) {
            out.terminated = true;
            break;
        }
        Digit d = map.digit_of(cur, map.membership_side(), policy);
        cur = map.apply(cur, d, policy);
        out.digits.push_back(std::move(d));
    }
    return out;
}

}  // namespace entq
