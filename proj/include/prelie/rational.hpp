#ifndef PRELIE_RATIONAL_HPP
#define PRELIE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace prelie {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input
// or zero denominator.
Rat parse_rational(const std::string& text);

// "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rat& value);

// Exact square root if value is a perfect square of a rational, else nullopt.
bool rational_sqrt(const Rat& value, Rat& out);

} // namespace prelie

#endif
