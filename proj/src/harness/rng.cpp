#include "entq/harness/rng.hpp"

#include <limits>
#include <stdexcept>

#include "entq/expansions/orbit.hpp"
#include "entq/numeric/types.hpp"

namespace entq {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t state = master + index * 0x9E3779B97F4A7C15ull;
    return splitmix64(state);  // advances state by one more gamma first
}

std::mt19937_64 trial_stream(std::uint64_t derived_seed) {
    return std::mt19937_64(derived_seed);
}

long uniform_below(std::mt19937_64& gen, long bound) {
    if (bound < 1) throw std::domain_error("uniform_below: bound must be positive");
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / b * b;
    for (;;) {
        std::uint64_t r = gen();
        if (r < limit) return static_cast<long>(r % b);
    }
}

namespace {

// Expansion of x under the map, digit by digit on a membership-side orbit,
// escalating precision by rebuild-and-replay like the agreement engine does.
// Returns false when the expansion terminates before n digits.
bool expand_by_orbit(const MapPtr& map, const BigRational& x, std::size_t n,
                     const PrecisionPolicy& policy, DigitSeq& out) {
    int esc = 0;
    OrbitPtr orbit = make_endpoint_orbit(map, RealScalar(x), map->membership_side(),
                                         policy.bits_at(esc));
    out.clear();
    out.reserve(n);
    auto rebuild = [&]() {
        if (esc >= policy.max_escalations)
            throw PrecisionExhausted("random seed expansion ran out of precision");
        ++esc;
        orbit = make_endpoint_orbit(map, RealScalar(x), map->membership_side(),
                                    policy.bits_at(esc));
        orbit->fast_forward(out, out.size());
    };
    while (out.size() < n) {
        DigitResult r;
        bool blown = false;
        try {
            r = orbit->digit();
        } catch (const PrecisionExhausted&) {
            blown = true;
        }
        if (blown || r.kind == DigitKind::Unresolved) {
            rebuild();
            continue;
        }
        if (r.kind == DigitKind::InfiniteAccum) return false;
        out.push_back(r.digit);
        try {
            orbit->advance(r.digit);
        } catch (const PrecisionExhausted&) {
            rebuild();  // replay includes the digit just pushed
        }
    }
    return true;
}

}  // namespace

DigitSeq random_seed_digits(const MapPtr& mapS, std::size_t n, std::mt19937_64& gen,
                            const PrecisionPolicy& policy) {
    DigitSeq out;
    if (mapS->kind() == MapKind::Radix) {
        const long g = mapS->radix();
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(Digit::integer(uniform_below(gen, g)));
        return out;
    }
    // n + 10 decimal digits leave the sampled point well inside its rank-n
    // cylinder with overwhelming probability, so the word distribution is
    // indistinguishable from the expansion of a uniform point.
    const std::size_t source_digits = n + 10;
    for (int attempt = 0; attempt < 16; ++attempt) {
        BigInt num = 0;
        for (std::size_t i = 0; i < source_digits; ++i) {
            BigInt shifted = num * 10;
            shifted += uniform_below(gen, 10);
            num = shifted;
        }
        if (num == 0) continue;
        BigRational x = make_rational(num, pow_ui(BigInt(10), source_digits));
        if (expand_by_orbit(mapS, x, n, policy, out)) return out;
    }
    throw std::runtime_error("random_seed_digits: every draw terminated early");
}

}  // namespace entq
