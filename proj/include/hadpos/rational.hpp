#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace hadpos {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always stored in lowest terms with a
// positive denominator. cpp_rational maintains both invariants.
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) {
    return Rational(num, den);
}

inline BigInt numerator(const Rational& q) {
    return boost::multiprecision::numerator(q);
}

inline BigInt denominator(const Rational& q) {
    return boost::multiprecision::denominator(q);
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

// Binomial coefficient for a non-negative integer top argument.
inline BigInt binomial(const BigInt& n, long long k) {
    if (k < 0 || n < k) return 0;
    BigInt num = 1;
    for (long long i = 0; i < k; ++i) num *= n - i;
    return num / factorial(static_cast<unsigned>(k));
}

// Generalized binomial binom(z, n) = z (z-1) ... (z-n+1) / n! for any
// integer z, so that negative top arguments are legal.
inline Rational gen_binomial(long long z, long long n) {
    if (n < 0) return 0;
    if (n == 0) return 1;
    BigInt num = 1;
    for (long long i = 0; i < n; ++i) num *= BigInt(z) - i;
    return Rational(num, factorial(static_cast<unsigned>(n)));
}

inline Rational pow_rational(const Rational& base, long long e) {
    if (e < 0) return Rational(1) / pow_rational(base, -e);
    Rational r = 1, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline std::string to_string(const Rational& q) {
    return q.str();
}

// Exact dyadic conversion: every finite double is a rational with a
// power-of-two denominator.
inline Rational rat_from_double(double x) {
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp); // x = m * 2^exp, |m| in [1/2, 1)
    BigInt num = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(num);
    if (exp >= 0) r *= pow_rational(Rational(2), exp);
    else r /= pow_rational(Rational(2), -exp);
    return r;
}

} // namespace hadpos
