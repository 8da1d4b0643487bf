#include "gman/rational.hpp"

#include <stdexcept>

namespace gman {

namespace {

bool valid_integer(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

Integer to_integer(std::string_view s) {
    if (s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den)) {
        throw std::invalid_argument("malformed rational \"" + std::string(text) + "\"");
    }
    Integer d = to_integer(den);
    if (d == 0) {
        throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    }
    Rational r(to_integer(num), d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational factorial(unsigned n) {
    Integer f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return Rational(f);
}

}  // namespace gman
