#include "friedrichs/rational.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace friedrichs {

using boost::multiprecision::cpp_int;

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) {
        throw std::domain_error("rational_from_double: non-finite value");
    }
    if (value == 0.0) return Rational(0);
    int exponent = 0;
    const double mantissa = std::frexp(value, &exponent);
    // mantissa * 2^53 is an integer for every finite double.
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;
    cpp_int num = scaled;
    cpp_int den = 1;
    if (exponent >= 0) {
        num <<= exponent;
    } else {
        den <<= -exponent;
    }
    return Rational(num, den);
}

namespace {

Rational parse_decimal(std::string_view text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    cpp_int digits = 0;
    long frac_digits = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c >= '0' && c <= '9') {
            digits = digits * 10 + (c - '0');
            if (seen_point) ++frac_digits;
            seen_digit = true;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw std::invalid_argument("parse_rational: no digits in '" + std::string(text) + "'");
    long exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        const std::string rest(text.substr(pos));
        std::size_t used = 0;
        try {
            exponent = std::stol(rest, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_rational: bad exponent in '" + std::string(text) + "'");
        }
        pos += used;
    }
    if (pos != text.size()) {
        throw std::invalid_argument("parse_rational: trailing characters in '" + std::string(text) + "'");
    }
    exponent -= frac_digits;
    if (exponent > 4000 || exponent < -4000) throw std::invalid_argument("parse_rational: exponent out of range");
    cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    Rational result = exponent >= 0 ? Rational(digits * scale) : Rational(digits, scale);
    return negative ? Rational(-result) : result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text);
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return num / den;
}

double to_double(const Rational& value) {
    // Correctly rounded: form a quotient with >= 60 significant bits and fold
    // the remainder into a sticky bit before the final rounding to double.
    cpp_int num = boost::multiprecision::numerator(value);
    const cpp_int den = boost::multiprecision::denominator(value);
    if (num == 0) return 0.0;
    const bool negative = num < 0;
    if (negative) num = -num;
    const long e = static_cast<long>(boost::multiprecision::msb(num)) -
                   static_cast<long>(boost::multiprecision::msb(den));
    const long shift = 60 - e;
    cpp_int q;
    cpp_int r;
    if (shift >= 0) {
        boost::multiprecision::divide_qr(cpp_int(num << shift), den, q, r);
    } else {
        boost::multiprecision::divide_qr(num, cpp_int(den << -shift), q, r);
    }
    auto bits = q.convert_to<std::uint64_t>();
    if (r != 0) bits |= 1u;
    const double magnitude = std::ldexp(static_cast<double>(bits), static_cast<int>(-shift));
    return negative ? -magnitude : magnitude;
}

std::string to_string(const Rational& value) {
    const cpp_int num = boost::multiprecision::numerator(value);
    const cpp_int den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational pow(const Rational& base, unsigned exponent) {
    Rational result = 1;
    Rational factor = base;
    while (exponent != 0) {
        if (exponent & 1u) result *= factor;
        exponent >>= 1;
        if (exponent != 0) factor *= factor;
    }
    return result;
}

int sign(const Rational& value) {
    return value > 0 ? 1 : (value < 0 ? -1 : 0);
}

}  // namespace friedrichs
