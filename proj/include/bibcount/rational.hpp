#pragma once

#include <gmpxx.h>

#include <concepts>
#include <string>

namespace bibcount {

/// Exact rational used for weights, scores and aggregates.
using Rational = mpq_class;

/// Scalar types the numeric modules are instantiated for: exact rationals
/// and IEEE doubles.
template <typename T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <Scalar T>
inline T from_rational(const Rational& q) {
    if constexpr (std::same_as<T, double>) {
        return q.get_d();
    } else {
        return q;
    }
}

template <Scalar T>
inline T from_ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return from_rational<T>(q);
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double d) { return d; }

/// Exact value of a double as a rational.
inline Rational to_rational(double d) { return Rational(d); }
inline Rational to_rational(const Rational& q) { return q; }

/// Decimal rendering rounded half away from zero to `digits` places.
std::string format_decimal(const Rational& value, int digits);

/// "p/q" (or "p" for integers).
std::string format_exact(const Rational& value);

}  // namespace bibcount
