#include "entq/expansions/orbit.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entq/numeric/beta_integer.hpp"
#include "entq/numeric/quadratic.hpp"

namespace entq {

namespace {

// floor of num/den biased by the side the point is approached from: an exact
// multiple counts to the lower cell when coming from the left
BigInt sided_fdiv(const BigInt& num, const BigInt& den, Side side) {
    BigInt q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (side == Side::FromLeft && r == 0) q -= 1;
    return q;
}

// ball floor with the same bias; only a point ball can certify the exact-hit
// case, anything straddling a boundary stays undecided
std::optional<BigInt> sided_floor_ball(const Ball& t, Side side) {
    auto f = t.floor_certain();
    if (!f) return std::nullopt;
    if (side == Side::FromLeft && t.is_point()) {
        BigRational v = t.lower();
        if (is_integer(v)) return BigInt(v.get_num() - 1);
    }
    return f;
}

bool exact_zero_of(const RealScalar& x) {
    if (x.is_rational()) return sgn(x.rational()) == 0;
    if (x.is_quadratic()) return x.quadratic().sign() == 0;
    return false;
}

[[noreturn]] void left_of_zero() {
    throw std::logic_error("endpoint orbit reached 0 from the left");
}

class RcfOrbit final : public EndpointOrbit {
 public:
  RcfOrbit(BigInt num, BigInt den, Side side)
      : p_(std::move(num)), q_(std::move(den)), side_(side) {
    if (sgn(q_) <= 0 || sgn(p_) < 0 || p_ > q_)
      throw std::domain_error("rcf orbit seed outside [0, 1]");
  }
  DigitResult digit() override {
    if (p_ == 0) {
      if (side_ == Side::FromLeft) left_of_zero();
      return {DigitKind::InfiniteAccum, {}};
    }
    BigInt a = sided_fdiv(q_, p_, flip(side_));
    if (a < 1) throw std::logic_error("rcf orbit left the unit interval");
    return {DigitKind::Finite, Digit::integer(std::move(a))};
  }
  void advance(const Digit& d) override {
    BigInt np = q_ - d.payload * p_;
    q_ = p_;
    p_ = std::move(np);
    side_ = flip(side_);
  }
  Side side() const override { return side_; }

 private:
  BigInt p_, q_;  // value p/q
  Side side_;
};

class RadixOrbit final : public EndpointOrbit {
 public:
  RadixOrbit(long g, BigInt num, BigInt den, Side side)
      : g_(g), w_(std::move(num)), d_(std::move(den)), side_(side) {
    if (sgn(d_) <= 0 || sgn(w_) < 0 || w_ > d_)
      throw std::domain_error("radix orbit seed outside [0, 1]");
  }
  DigitResult digit() override {
    BigInt t = w_ * g_;
    BigInt a = sided_fdiv(t, d_, side_);
    if (a < 0 || a >= g_) throw std::logic_error("radix orbit left the unit interval");
    return {DigitKind::Finite, Digit::integer(std::move(a))};
  }
  void advance(const Digit& d) override { w_ = w_ * g_ - d.payload * d_; }
  void fast_forward(const DigitSeq&, std::size_t count) override {
    // frac(g^count x) in one modular power; an exact landing on 0 means the
    // left-limit orbit is sitting at 1, not 0
    if (count == 0) return;
    BigInt e(static_cast<unsigned long>(count));
    BigInt base(g_), hp;
    mpz_powm(hp.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), d_.get_mpz_t());
    w_ = (w_ * hp) % d_;
    if (w_ == 0 && side_ == Side::FromLeft) w_ = d_;
  }
  Side side() const override { return side_; }

 private:
  long g_;
  BigInt w_, d_;  // value w/d, d fixed
  Side side_;
};

class RadixBallOrbit final : public EndpointOrbit {
 public:
  RadixBallOrbit(long g, const RealScalar& seed, Side side, long bits)
      : g_(g), ball_(seed.enclose(bits)), side_(side) {}
  DigitResult digit() override {
    Ball t = ball_.mul_integer(BigInt(g_));
    auto a = sided_floor_ball(t, side_);
    if (!a) return {DigitKind::Unresolved, {}};
    if (*a < 0 || *a >= g_) throw std::logic_error("radix orbit left the unit interval");
    return {DigitKind::Finite, Digit::integer(std::move(*a))};
  }
  void advance(const Digit& d) override {
    ball_ = ball_.mul_integer(BigInt(g_)).sub_integer(d.payload);
  }
  Side side() const override { return side_; }

 private:
  long g_;
  Ball ball_;
  Side side_;
};

class LuerothOrbit final : public EndpointOrbit {
 public:
  LuerothOrbit(BigInt num, BigInt den, Side side)
      : w_(std::move(num)), d_(std::move(den)), side_(side) {
    if (sgn(d_) <= 0 || sgn(w_) < 0 || w_ > d_)
      throw std::domain_error("lueroth orbit seed outside [0, 1]");
  }
  DigitResult digit() override {
    if (w_ == 0) {
      if (side_ == Side::FromLeft) left_of_zero();
      return {DigitKind::InfiniteAccum, {}};
    }
    BigInt k = sided_fdiv(d_, w_, flip(side_));
    if (k < 1) throw std::logic_error("lueroth orbit left the unit interval");
    return {DigitKind::Finite, Digit::integer(std::move(k))};
  }
  void advance(const Digit& d) override {
    BigInt kk = d.payload * (d.payload + 1);
    w_ = kk * w_ - d.payload * d_;
  }
  Side side() const override { return side_; }

 private:
  BigInt w_, d_;
  Side side_;
};

class AltLuerothOrbit final : public EndpointOrbit {
 public:
  AltLuerothOrbit(BigInt num, BigInt den, Side side)
      : w_(std::move(num)), d_(std::move(den)), side_(side) {
    if (sgn(d_) <= 0 || sgn(w_) < 0 || w_ > d_)
      throw std::domain_error("alternating lueroth orbit seed outside [0, 1]");
  }
  DigitResult digit() override {
    if (w_ == 0) {
      if (side_ == Side::FromLeft) left_of_zero();
      return {DigitKind::InfiniteAccum, {}};
    }
    BigInt k = sided_fdiv(d_, w_, flip(side_));
    if (k < 1) throw std::logic_error("alternating lueroth orbit left the unit interval");
    return {DigitKind::Finite, Digit::integer(std::move(k))};
  }
  void advance(const Digit& d) override {
    BigInt kk = d.payload * (d.payload + 1);
    w_ = (d.payload + 1) * d_ - kk * w_;
    side_ = flip(side_);
  }
  Side side() const override { return side_; }

 private:
  BigInt w_, d_;
  Side side_;
};

class GoldenOrbit final : public EndpointOrbit {
 public:
  // value (u + v*gamma)/den with gamma the golden mean
  GoldenOrbit(BigInt u, BigInt v, BigInt den, Side side)
      : u_(std::move(u)), v_(std::move(v)), d_(std::move(den)), side_(side) {
    if (sgn(d_) <= 0) throw std::domain_error("golden orbit: denominator must be positive");
  }
  DigitResult digit() override {
    if (u_ == 0 && v_ == 0 && side_ == Side::FromLeft) left_of_zero();
    // gamma*x - 1 carries the sign of (u + 3v - 2d) + (u + v) sqrt5
    BigInt a = u_ + 3 * v_ - 2 * d_;
    BigInt b = u_ + v_;
    int s = sqrt5_combination_sign(a, b);
    long dig;
    if (s > 0)
      dig = 1;
    else if (s < 0)
      dig = 0;
    else
      dig = side_ == Side::FromRight ? 1 : 0;
    return {DigitKind::Finite, Digit::integer(dig)};
  }
  void advance(const Digit& d) override {
    BigInt nu = v_ - d.payload * d_;
    BigInt nv = u_ + v_;
    u_ = std::move(nu);
    v_ = std::move(nv);
  }
  Side side() const override { return side_; }

 private:
  BigInt u_, v_, d_;
  Side side_;
};

class BolyaiOrbit final : public EndpointOrbit {
 public:
  BolyaiOrbit(const RealScalar& seed, Side side, long bits)
      : side_(side), bits_(bits) {
    if (seed.is_rational()) {
      w_ = seed.rational().get_num();
      den_ = seed.rational().get_den();
      exact_ = true;
    } else {
      ball_ = seed.enclose(bits);
    }
  }
  DigitResult digit() override {
    if (exact_) {
      BigInt num = w_ * (w_ + 2 * den_);
      BigInt dd = den_ * den_;
      BigInt a = sided_fdiv(num, dd, side_);
      if (a < 0 || a > 2) throw std::logic_error("bolyai orbit left the unit interval");
      return {DigitKind::Finite, Digit::integer(std::move(a))};
    }
    Ball t = ball_.add_integer(BigInt(1)).square().sub_integer(BigInt(1));
    auto a = sided_floor_ball(t, side_);
    if (!a) return {DigitKind::Unresolved, {}};
    if (*a < 0 || *a > 2) throw std::logic_error("bolyai orbit left the unit interval");
    return {DigitKind::Finite, Digit::integer(std::move(*a))};
  }
  void advance(const Digit& d) override {
    if (exact_) {
      // x(x+2) - d squares the denominator, so hand off to a ball once the
      // coefficients pass a few multiples of the working precision
      BigInt dd = den_ * den_;
      w_ = w_ * (w_ + 2 * den_) - d.payload * dd;
      den_ = std::move(dd);
      if (static_cast<long>(bit_length(den_)) > 4 * bits_) {
        ball_ = Ball::from_rational(make_rational(w_, den_), bits_);
        exact_ = false;
      }
      return;
    }
    BigInt off = 1 + d.payload;
    ball_ = ball_.add_integer(BigInt(1)).square().sub_integer(off);
  }
  Side side() const override { return side_; }

 private:
  bool exact_ = false;
  BigInt w_, den_;
  Ball ball_ = Ball::exact_integer(BigInt(0), 64);
  Side side_;
  long bits_;
};

// tri-state beta_floor on a ball: nullopt when the working precision cannot
// separate the remainder from a ladder power
std::optional<BetaInteger> beta_floor_ball(const Ball& y, Side side) {
  bool strict = (side == Side::FromLeft);
  long prec = y.prec() + 32;
  auto fits = [&](const QuadraticElement& power, const Ball& rem) -> std::optional<bool> {
    auto ord = Ball::compare(power.enclose(prec), rem);
    if (!ord) return std::nullopt;
    if (*ord == Order::Less) return true;
    if (*ord == Order::Equal) return !strict;
    return false;
  };

  auto f1 = fits(QuadraticElement(BigRational(1)), y);
  if (!f1) return std::nullopt;
  if (!*f1) throw std::domain_error("beta_floor: requires y >= 1 on the given side");

  std::vector<QuadraticElement> powers;
  powers.push_back(QuadraticElement(BigRational(1)));
  BigInt fprev(1), fcur(0);
  for (;;) {
    BigInt fnext = fprev + fcur;
    BigInt fp = fcur, fc = fnext;
    QuadraticElement next(2 * fp + fc, fc, BigInt(2));
    auto f = fits(next, y);
    if (!f) return std::nullopt;
    if (!*f) break;
    powers.push_back(next);
    fprev = fp;
    fcur = fc;
  }

  BigInt mask(0);
  Ball rem = y;
  std::size_t skip_below = powers.size() + 2;
  for (std::size_t idx = powers.size(); idx-- > 0;) {
    if (idx + 1 == skip_below) continue;
    auto f = fits(powers[idx], rem);
    if (!f) return std::nullopt;
    if (*f) {
      mpz_setbit(mask.get_mpz_t(), idx);
      rem = rem.sub(powers[idx].enclose(prec));
      skip_below = idx;
    }
  }
  return BetaInteger(mask);
}

class BetaCfOrbit final : public EndpointOrbit {
 public:
  BetaCfOrbit(const RealScalar& seed, Side side, long bits)
      : side_(side), bits_(bits), policy_{bits, 2, 0} {
    if (seed.is_rational()) {
      x_ = QuadraticElement(seed.rational());
      exact_ = true;
    } else if (seed.is_quadratic()) {
      x_ = seed.quadratic();
      exact_ = true;
    } else {
      ball_ = seed.enclose(bits);
    }
  }
  DigitResult digit() override {
    if (exact_) {
      if (x_.sign() == 0) {
        if (side_ == Side::FromLeft) left_of_zero();
        return {DigitKind::InfiniteAccum, {}};
      }
      BetaInteger b = beta_floor(RealScalar(x_.inverse()), policy_, flip(side_));
      return {DigitKind::Finite, Digit::beta(b.mask())};
    }
    if (ball_.is_point() && !ball_.excludes_zero()) {
      if (side_ == Side::FromLeft) left_of_zero();
      return {DigitKind::InfiniteAccum, {}};
    }
    if (!ball_.excludes_zero()) return {DigitKind::Unresolved, {}};
    Ball rec = Ball::exact_integer(BigInt(1), ball_.prec()).div(ball_);
    auto b = beta_floor_ball(rec, flip(side_));
    if (!b) return {DigitKind::Unresolved, {}};
    return {DigitKind::Finite, Digit::beta(b->mask())};
  }
  void advance(const Digit& d) override {
    QuadraticElement bv = BetaInteger(d.payload).value();
    if (exact_) {
      x_ = x_.inverse().sub(bv);
      if (static_cast<long>(x_.bit_size()) > 4 * bits_) {
        ball_ = x_.enclose(bits_);
        exact_ = false;
      }
    } else {
      Ball rec = Ball::exact_integer(BigInt(1), ball_.prec()).div(ball_);
      ball_ = rec.sub(bv.enclose(ball_.prec()));
    }
    side_ = flip(side_);
  }
  Side side() const override { return side_; }

 private:
  bool exact_ = false;
  QuadraticElement x_;
  Ball ball_ = Ball::exact_integer(BigInt(0), 64);
  Side side_;
  long bits_;
  PrecisionPolicy policy_;
};

// reference orbit: drives the map's own digit_of/apply at fixed precision and
// reports Unresolved instead of escalating internally
class GenericOrbit final : public EndpointOrbit {
 public:
  GenericOrbit(MapPtr map, RealScalar seed, Side side, long bits)
      : map_(std::move(map)), x_(std::move(seed)), side_(side), policy_{bits, 2, 0} {}
  DigitResult digit() override {
    if (map_->zero_terminates() && exact_zero_of(x_)) {
      if (side_ == Side::FromLeft) left_of_zero();
      return {DigitKind::InfiniteAccum, {}};
    }
    try {
      return {DigitKind::Finite, map_->digit_of(x_, side_, policy_)};
    } catch (const PrecisionExhausted&) {
      return {DigitKind::Unresolved, {}};
    }
  }
  void advance(const Digit& d) override {
    x_ = map_->apply(x_, d, policy_);
    if (!map_->increasing(d)) side_ = flip(side_);
  }
  Side side() const override { return side_; }

 private:
  MapPtr map_;
  RealScalar x_;
  Side side_;
  PrecisionPolicy policy_;
};

}  // namespace

OrbitPtr make_endpoint_orbit(const MapPtr& map, const RealScalar& seed, Side side, long bits) {
  switch (map->kind()) {
    case MapKind::Rcf:
      if (seed.is_rational())
        return std::make_unique<RcfOrbit>(seed.rational().get_num(), seed.rational().get_den(),
                                          side);
      break;
    case MapKind::Radix:
      if (seed.is_rational())
        return std::make_unique<RadixOrbit>(map->radix(), seed.rational().get_num(),
                                            seed.rational().get_den(), side);
      if (seed.is_refinable())
        return std::make_unique<RadixBallOrbit>(map->radix(), seed, side, bits);
      break;
    case MapKind::Lueroth:
      if (seed.is_rational())
        return std::make_unique<LuerothOrbit>(seed.rational().get_num(),
                                              seed.rational().get_den(), side);
      break;
    case MapKind::AlternatingLueroth:
      if (seed.is_rational())
        return std::make_unique<AltLuerothOrbit>(seed.rational().get_num(),
                                                 seed.rational().get_den(), side);
      break;
    case MapKind::Bolyai:
      return std::make_unique<BolyaiOrbit>(seed, side, bits);
    case MapKind::PseudoGolden:
      if (map->golden_k() == 2 && seed.is_exact()) {
        if (seed.is_rational())
          return std::make_unique<GoldenOrbit>(seed.rational().get_num(), BigInt(0),
                                               seed.rational().get_den(), side);
        const QuadraticElement& q = seed.quadratic();
        // (p + q sqrt5)/d = ((p - q) + 2q*gamma)/d
        return std::make_unique<GoldenOrbit>(q.p() - q.q(), 2 * q.q(), q.d(), side);
      }
      break;
    case MapKind::BetaCf:
      return std::make_unique<BetaCfOrbit>(seed, side, bits);
  }
  return std::make_unique<GenericOrbit>(map, seed, side, bits);
}

}  // namespace entq
