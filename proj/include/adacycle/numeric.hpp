#ifndef ADACYCLE_NUMERIC_HPP_
#define ADACYCLE_NUMERIC_HPP_

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace adacycle {

using Rational = mpq_class;
using Integer = mpz_class;

// A run is carried out entirely in one of these modes.
enum class NumericMode { exact, floating };

const char* mode_name(NumericMode mode) noexcept;
NumericMode parse_mode(std::string_view text);

// Compile-time description of the two scalar types a run can use.
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr NumericMode mode = NumericMode::floating;
  static constexpr bool exact = false;
  static double to_double(double x) { return x; }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static bool same(double a, double b, double tol) {
    return std::abs(a - b) <= tol;
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr NumericMode mode = NumericMode::exact;
  static constexpr bool exact = true;
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_rational(const Rational& q) { return q; }
  // Exact mode ignores the tolerance.
  static bool same(const Rational& a, const Rational& b, double) {
    return a == b;
  }
};

template <typename T>
double to_double(const T& x) {
  return ScalarTraits<T>::to_double(x);
}

// Parses "p/q", an integer, or a plain decimal ("0.4", "-1.25e-3") into an
// exact rational. Decimals are converted digit by digit, so "0.4" is 2/5.
Rational parse_rational(std::string_view text);

// "p/q" (or "p" when q == 1).
std::string format_rational(const Rational& q);

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

// Fixed number of significant digits, for human-readable reports.
std::string format_significant(double x, int digits = 12);

// Best rational approximation with denominator <= max_denominator, found from
// the continued-fraction convergents and semiconvergents of x. Returns
// nullopt when no such rational lies within tol of x.
std::optional<Rational> rationalize(double x, long max_denominator,
                                    double tol);

}  // namespace adacycle

#endif  // ADACYCLE_NUMERIC_HPP_
