#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace gbf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Bad input (unknown group, non-subgroup argument, inconsistent op data).
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configured cap would be exceeded; the message names the cap.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Order caps for group construction. Products get a looser cap since the
// domination criterion and shifted evaluations live on H x K.
struct Caps {
    unsigned base_order = 128;
    unsigned product_order = 4096;
};

// "p/q" with q > 0 and gcd(p,q) = 1; cpp_rational keeps that canonical form.
std::string rat_str(const Rat& r);
Rat rat_parse(std::string_view s);

}  // namespace gbf
