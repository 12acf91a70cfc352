#include "bibcount/rational.hpp"

#include <string>

namespace bibcount {

std::string format_decimal(const Rational& value, int digits) {
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;

    const bool negative = sgn(value) < 0;
    Rational magnitude = abs(value);
    Rational scaled = magnitude * scale + Rational(1, 2);
    mpz_class rounded = scaled.get_num() / scaled.get_den();

    std::string digits_str = rounded.get_str();
    if (digits > 0) {
        if (digits_str.size() <= static_cast<std::size_t>(digits))
            digits_str.insert(0, static_cast<std::size_t>(digits) + 1 - digits_str.size(), '0');
        digits_str.insert(digits_str.size() - static_cast<std::size_t>(digits), 1, '.');
    }
    if (negative && rounded != 0) digits_str.insert(0, 1, '-');
    return digits_str;
}

std::string format_exact(const Rational& value) {
    Rational q = value;
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace bibcount
