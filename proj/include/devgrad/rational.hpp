#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace devgrad {

/// Exact rational scalar backend. Arbitrary precision so that elimination
/// and high-order differentiation never overflow.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rational rational_of(long long p, long long q = 1) {
    if (q == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(BigInt(p), BigInt(q));
}

/// Parses "p/q" or "p". Whitespace is not accepted.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rational(p, q);
}

inline std::string format_rational(const Rational& r) {
    std::string num = numerator(r).str();
    if (denominator(r) == 1) return num;
    return num + "/" + denominator(r).str();
}

// Scalar traits shared by the two backends (exact rationals, doubles).
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& x) { return x == 0; }
    static double abs_value(const Rational& x) { return std::abs(to_double(x)); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool is_zero(double x) { return x == 0.0; }
    static double abs_value(double x) { return std::abs(x); }
};

}  // namespace devgrad
