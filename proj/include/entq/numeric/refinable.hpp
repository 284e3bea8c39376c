#pragma once
#include <functional>
#include <memory>
#include <mutex>

#include "entq/numeric/ball.hpp"

namespace entq {

// A real number given by a procedure that can enclose it at any requested
// precision. Successive enclosures are forced to be nested by intersecting
// with the cached best ball, so a buggy evaluator fails loudly instead of
// silently widening.
class RefinableReal {
public:
    using Evaluator = std::function<Ball(long bits)>;

    RefinableReal() = default;
    explicit RefinableReal(Evaluator eval)
        : state_(std::make_shared<State>(std::move(eval))) {}

    static RefinableReal constant(const BigRational& q);

    bool valid() const { return static_cast<bool>(state_); }

    // Enclosure with width <= 2^-(bits-1) not guaranteed; callers escalate per
    // policy. The returned ball is at least as tight as any earlier one.
    Ball refine(long bits) const;

    // Best enclosure computed so far (refines at 64 bits on first use).
    Ball current() const;

private:
    struct State {
        explicit State(Evaluator e) : eval(std::move(e)) {}
        Evaluator eval;
        Ball best;
        bool has_best = false;
        std::mutex mu;
    };
    std::shared_ptr<State> state_;
};

}  // namespace entq
