#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace morsekit::rings {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class R>
struct ScalarTraits;

template <>
struct ScalarTraits<Integer> {
    static bool is_unit(const Integer& c) { return c == 1 || c == -1; }
    // Only called on units.
    static Integer unit_inverse(const Integer& c) { return c; }
    static std::string name() { return "Z"; }
};

template <>
struct ScalarTraits<Rational> {
    static bool is_unit(const Rational& c) { return c != 0; }
    static Rational unit_inverse(const Rational& c) { return Rational(1) / c; }
    static std::string name() { return "Q"; }
};

inline bool is_integral(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline Integer to_integer(const Rational& q) { return boost::multiprecision::numerator(q); }

} // namespace morsekit::rings
