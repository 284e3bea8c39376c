#include "entq/expansions/digit.hpp"

#include "entq/numeric/beta_integer.hpp"

namespace entq {

long Digit::as_long() const {
    if (!payload.fits_slong_p()) throw std::overflow_error("digit payload exceeds long");
    return payload.get_si();
}

std::string Digit::to_string() const {
    if (beta_word) return BetaInteger(payload).word();
    return payload.get_str();
}

std::string to_string(const DigitSeq& digits) {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) out += ',';
        out += digits[i].to_string();
    }
    return out;
}

}  // namespace entq
