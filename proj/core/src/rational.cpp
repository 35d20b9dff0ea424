#include "privfn/rational.hpp"

#include "privfn/errors.hpp"

namespace privfn {

namespace {

bool valid_integer_token(std::string_view s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
    if (!valid_integer_token(s)) {
        throw ParseError("not a rational: \"" + std::string(whole) + "\"");
    }
    return BigInt(std::string(s));
}

} // namespace

Rational parse_rational(std::string_view text) {
    const size_t slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    const BigInt num = parse_integer(text.substr(0, slash), text);
    const BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) {
        throw ParseError("zero denominator: \"" + std::string(text) + "\"");
    }
    return Rational(num, den);
}

std::string format_rational(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

} // namespace privfn
