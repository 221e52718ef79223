#include "qparadox/rational.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace qparadox {

namespace {

BigInt pow10(unsigned exponent) {
    return boost::multiprecision::pow(BigInt(10), exponent);
}

}  // namespace

std::string fraction_string(const Rational& r) {
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string decimal_string(const Rational& r, unsigned places) {
    BigInt num = numerator(r);
    const BigInt den = denominator(r);
    const bool negative = num < 0;
    if (negative) num = -num;

    const BigInt scaled = num * pow10(places);
    BigInt quotient = scaled / den;
    const BigInt remainder = scaled % den;
    const BigInt twice = remainder * 2;
    if (twice > den || (twice == den && quotient % 2 != 0)) ++quotient;

    std::string digits = quotient.str();
    if (digits.size() <= places) {
        digits.insert(0, places + 1 - digits.size(), '0');
    }
    std::string out;
    if (negative && quotient != 0) out += '-';
    out.append(digits, 0, digits.size() - places);
    if (places > 0) {
        out += '.';
        out.append(digits, digits.size() - places, places);
    }
    return out;
}

Rational rational_from_decimal(std::string_view text) {
    auto fail = [&] {
        throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'");
    };

    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }

    std::string mantissa;
    unsigned frac_digits = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa += c;
            seen_digit = true;
            if (seen_point) ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) fail();

    long long exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        const char* first = text.data() + pos;
        const char* last = text.data() + text.size();
        if (first < last && *first == '+') ++first;
        const auto [ptr, ec] = std::from_chars(first, last, exponent);
        if (ec != std::errc() || ptr != last) fail();
    } else if (pos != text.size()) {
        fail();
    }

    // cpp_int reads a leading zero as an octal prefix; trim to decimal form.
    const auto first_significant = mantissa.find_first_not_of('0');
    mantissa = first_significant == std::string::npos ? "0" : mantissa.substr(first_significant);

    BigInt num(mantissa);
    if (negative) num = -num;

    const long long shift = exponent - static_cast<long long>(frac_digits);
    if (shift >= 0) {
        return Rational(num * pow10(static_cast<unsigned>(shift)), BigInt(1));
    }
    return Rational(num, pow10(static_cast<unsigned>(-shift)));
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("cannot convert non-finite value to rational");
    }
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) {
        throw std::invalid_argument("failed to format double");
    }
    return rational_from_decimal(std::string_view(buffer, ptr - buffer));
}

}  // namespace qparadox
