#include "prelie/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace prelie {

Rat parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    auto check_int = [](const std::string& t) {
        if (t.empty()) throw std::invalid_argument("malformed rational literal");
        std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (start == t.size()) throw std::invalid_argument("malformed rational literal");
        for (std::size_t i = start; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                throw std::invalid_argument("malformed rational literal: " + t);
    };
    if (slash == std::string::npos) {
        check_int(s);
        return Rat(Int(s));
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    Int d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in rational literal");
    return Rat(Int(num), d);
}

std::string format_rational(const Rat& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

bool rational_sqrt(const Rat& value, Rat& out) {
    if (value < 0) return false;
    Int n = numerator(value);
    Int d = denominator(value);
    Int sn = sqrt(n);
    Int sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return false;
    out = Rat(sn, sd);
    return true;
}

} // namespace prelie
