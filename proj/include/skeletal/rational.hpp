#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

#include "skeletal/errors.hpp"

namespace skeletal {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt int_pow(BigInt base, unsigned e)
{
    BigInt r = 1;
    while (e) {
        if (e & 1u)
            r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

inline Rational rat_pow(const Rational& x, unsigned e)
{
    return Rational(int_pow(numerator(x), e), int_pow(denominator(x), e));
}

// Exact conversion; every finite double is a dyadic rational.
inline Rational rational_from_double(double x)
{
    if (!std::isfinite(x))
        throw ArgumentError("rational_from_double: non-finite value");
    if (x == 0.0)
        return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp); // x = m * 2^exp, |m| in [0.5, 1)
    // scale mantissa to an integer (53 bits suffice)
    BigInt num = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(num);
    if (exp > 0)
        r *= Rational(int_pow(BigInt(2), static_cast<unsigned>(exp)));
    else if (exp < 0)
        r /= Rational(int_pow(BigInt(2), static_cast<unsigned>(-exp)));
    return r;
}

// Accepts "p", "p/q", and plain decimals such as "0.25".
inline Rational parse_rational(const std::string& s)
{
    if (s.empty())
        throw ArgumentError("parse_rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0)
            throw ArgumentError("parse_rational: zero denominator");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac = s.size() - dot - 1;
        BigInt num(digits.empty() || digits == "-" ? "0" : digits);
        return Rational(num, int_pow(BigInt(10), static_cast<unsigned>(frac)));
    }
    return Rational(BigInt(s));
}

inline std::string rational_to_string(const Rational& r)
{
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace skeletal
