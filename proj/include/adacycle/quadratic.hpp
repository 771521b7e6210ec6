#ifndef ADACYCLE_QUADRATIC_HPP_
#define ADACYCLE_QUADRATIC_HPP_

#include <compare>
#include <string>
#include <utility>

#include "adacycle/numeric.hpp"

namespace adacycle {

// Splits n >= 1 as square^2 * squarefree.
std::pair<Integer, Integer> split_square(const Integer& n);

bool is_squarefree(const Integer& n);

// Exact element a + b*sqrt(d) of Q(sqrt(d)), d squarefree and positive.
// Values with b == 0 are stored with d == 1, so a rational mixes freely with
// any field; two genuinely irrational values must share d.
class QuadraticIrrational {
 public:
  QuadraticIrrational() = default;
  // Implicit so rationals and integer literals mix into field arithmetic.
  QuadraticIrrational(long value) : a_(value) {}            // NOLINT
  QuadraticIrrational(Rational value) : a_(std::move(value)) {}  // NOLINT
  QuadraticIrrational(Rational a, Rational b, Integer d);

  const Rational& rational_part() const noexcept { return a_; }
  const Rational& surd_coefficient() const noexcept { return b_; }
  const Integer& radicand() const noexcept { return d_; }
  bool is_rational() const noexcept { return b_ == 0; }

  QuadraticIrrational conjugate() const;
  // Sign of a + b*sqrt(d), decided without floating point.
  int sign() const;
  Integer floor() const;
  double to_double() const;

  // "(a+b*sqrt(d))", or "p/q" when rational.
  std::string to_string() const;
  // Decimal expansion with the requested number of significant digits.
  std::string to_decimal(int digits) const;

  QuadraticIrrational operator-() const;
  QuadraticIrrational& operator+=(const QuadraticIrrational& rhs);
  QuadraticIrrational& operator-=(const QuadraticIrrational& rhs);
  QuadraticIrrational& operator*=(const QuadraticIrrational& rhs);
  QuadraticIrrational& operator/=(const QuadraticIrrational& rhs);

  friend QuadraticIrrational operator+(QuadraticIrrational lhs,
                                       const QuadraticIrrational& rhs) {
    return lhs += rhs;
  }
  friend QuadraticIrrational operator-(QuadraticIrrational lhs,
                                       const QuadraticIrrational& rhs) {
    return lhs -= rhs;
  }
  friend QuadraticIrrational operator*(QuadraticIrrational lhs,
                                       const QuadraticIrrational& rhs) {
    return lhs *= rhs;
  }
  friend QuadraticIrrational operator/(QuadraticIrrational lhs,
                                       const QuadraticIrrational& rhs) {
    return lhs /= rhs;
  }

  friend bool operator==(const QuadraticIrrational& x,
                         const QuadraticIrrational& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }
  friend std::strong_ordering operator<=>(const QuadraticIrrational& x,
                                          const QuadraticIrrational& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  void normalize();
  const Integer& shared_radicand(const QuadraticIrrational& rhs) const;

  Rational a_;
  Rational b_;
  Integer d_ = 1;
};

}  // namespace adacycle

#endif  // ADACYCLE_QUADRATIC_HPP_
