#include "circres/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace circres {

std::string to_string(const Rational& q) {
    if (is_integral(q)) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

namespace {

Integer parse_integer(std::string_view text, bool allow_sign) {
    std::size_t pos = 0;
    bool negative = false;
    if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size()) throw std::invalid_argument("empty number");
    for (std::size_t i = pos; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw std::invalid_argument("bad digit in number '" + std::string(text) + "'");
        }
    }
    Integer value(std::string(text.substr(pos)));
    return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, true));
    Integer num = parse_integer(text.substr(0, slash), true);
    Integer den = parse_integer(text.substr(slash + 1), false);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::size_t bit_size(const Rational& q) {
    Integer num = abs(numerator_of(q));
    std::size_t bits = num == 0 ? 1 : boost::multiprecision::msb(num) + 1;
    return bits + boost::multiprecision::msb(denominator_of(q)) + 1;
}

}  // namespace circres
