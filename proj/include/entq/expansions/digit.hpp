#pragma once
#include <stdexcept>
#include <string>
#include <vector>

#include "entq/numeric/types.hpp"

namespace entq {

// One expansion digit. The payload is the digit value itself for integer-digit
// maps and the Zeckendorf coefficient mask for beta-continued-fraction digits.
struct Digit {
    BigInt payload;
    bool beta_word = false;

    static Digit integer(BigInt v) { return Digit{std::move(v), false}; }
    static Digit integer(long v) { return Digit{BigInt(v), false}; }
    static Digit beta(BigInt mask) { return Digit{std::move(mask), true}; }

    long as_long() const;           // requires the payload to fit in a long
    std::string to_string() const;  // beta digits render as their 0/1 word

    bool operator==(const Digit& o) const {
        return beta_word == o.beta_word && payload == o.payload;
    }
};

using DigitSeq = std::vector<Digit>;

std::string to_string(const DigitSeq& digits);  // comma separated

struct InadmissibleDigits : std::runtime_error {
    explicit InadmissibleDigits(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entq
