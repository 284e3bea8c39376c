#include "entq/numeric/refinable.hpp"

#include <stdexcept>

namespace entq {

RefinableReal RefinableReal::constant(const BigRational& q) {
    return RefinableReal([q](long bits) { return Ball::from_rational(q, bits); });
}

Ball RefinableReal::refine(long bits) const {
    if (!state_) throw std::logic_error("RefinableReal: empty");
    std::lock_guard<std::mutex> lock(state_->mu);
    if (state_->has_best && state_->best.prec() >= bits) return state_->best;
    Ball b = state_->eval(bits);
    if (state_->has_best) b = b.intersect(state_->best);
    state_->best = b;
    state_->has_best = true;
    return b;
}

Ball RefinableReal::current() const {
    if (!state_) throw std::logic_error("RefinableReal: empty");
    {
        std::lock_guard<std::mutex> lock(state_->mu);
        if (state_->has_best) return state_->best;
    }
    return refine(64);
}

}  // namespace entq
