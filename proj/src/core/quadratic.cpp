#include "adacycle/quadratic.hpp"

#include <cmath>

#include "adacycle/error.hpp"

namespace adacycle {

std::pair<Integer, Integer> split_square(const Integer& n) {
  if (n < 1) throw Error(ErrorCode::domain, "split_square needs n >= 1");
  Integer rest = n;
  Integer square = 1;
  Integer squarefree = 1;
  // Strip every prime p with p^3 <= rest. What remains has at most two prime
  // factors, so it is either squarefree or a perfect square.
  for (unsigned long p = 2; Integer(p) * p * p <= rest; p = (p == 2 ? 3 : p + 2)) {
    unsigned long exponent = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      ++exponent;
    }
    for (unsigned long k = 0; k < exponent / 2; ++k) square *= p;
    if (exponent % 2) squarefree *= p;
  }
  if (mpz_perfect_square_p(rest.get_mpz_t())) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
    square *= root;
  } else {
    squarefree *= rest;
  }
  return {square, squarefree};
}

bool is_squarefree(const Integer& n) { return split_square(n).first == 1; }

QuadraticIrrational::QuadraticIrrational(Rational a, Rational b, Integer d)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  if (d_ < 1 || !is_squarefree(d_))
    throw Error(ErrorCode::domain,
                "radicand " + d_.get_str() + " is not a positive squarefree integer");
  normalize();
}

void QuadraticIrrational::normalize() {
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (b_ == 0) d_ = 1;
}

const Integer& QuadraticIrrational::shared_radicand(
    const QuadraticIrrational& rhs) const {
  if (is_rational()) return rhs.d_;
  if (rhs.is_rational() || rhs.d_ == d_) return d_;
  throw Error(ErrorCode::domain, "cannot mix sqrt(" + d_.get_str() +
                                     ") and sqrt(" + rhs.d_.get_str() + ")");
}

QuadraticIrrational QuadraticIrrational::conjugate() const {
  QuadraticIrrational out = *this;
  out.b_ = -out.b_;
  return out;
}

int QuadraticIrrational::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 d.
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * Rational(d_);
  int c = cmp(lhs, rhs);
  return c == 0 ? 0 : (c > 0 ? sa : sb);
}

Integer QuadraticIrrational::floor() const {
  Integer guess;
  mpz_set_d(guess.get_mpz_t(), std::floor(to_double()));
  while ((*this - QuadraticIrrational(Rational(guess))).sign() < 0) guess -= 1;
  while ((*this - QuadraticIrrational(Rational(guess + 1))).sign() >= 0)
    guess += 1;
  return guess;
}

double QuadraticIrrational::to_double() const {
  if (is_rational()) return a_.get_d();
  mpf_class root(0, 256);
  mpf_class radicand(d_, 256);
  mpf_sqrt(root.get_mpf_t(), radicand.get_mpf_t());
  mpf_class value(a_, 256);
  value += mpf_class(b_, 256) * root;
  return value.get_d();
}

std::string QuadraticIrrational::to_string() const {
  if (is_rational()) return format_rational(a_);
  std::string out = "(";
  if (a_ != 0) out += format_rational(a_);
  const Rational mag = abs(b_);
  if (b_ < 0)
    out += "-";
  else if (a_ != 0)
    out += "+";
  if (mag != 1) out += format_rational(mag) + "*";
  out += "sqrt(" + d_.get_str() + "))";
  return out;
}

std::string QuadraticIrrational::to_decimal(int digits) const {
  if (digits < 1) digits = 1;
  const mp_bitcnt_t bits = static_cast<mp_bitcnt_t>(digits * 4 + 64);
  mpf_class value(a_, bits);
  if (!is_rational()) {
    mpf_class root(0, bits);
    mpf_class radicand(d_, bits);
    mpf_sqrt(root.get_mpf_t(), radicand.get_mpf_t());
    value += mpf_class(b_, bits) * root;
  }
  if (value == 0) return "0";
  mp_exp_t exponent = 0;
  std::string mantissa = value.get_str(exponent, 10, digits);
  std::string sign;
  if (!mantissa.empty() && mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  std::string out;
  if (exponent <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exponent), '0') + mantissa;
  } else if (static_cast<std::size_t>(exponent) >= mantissa.size()) {
    out = mantissa + std::string(exponent - mantissa.size(), '0');
  } else {
    out = mantissa.substr(0, exponent) + "." + mantissa.substr(exponent);
  }
  return sign + out;
}

QuadraticIrrational QuadraticIrrational::operator-() const {
  QuadraticIrrational out = *this;
  out.a_ = -out.a_;
  out.b_ = -out.b_;
  return out;
}

QuadraticIrrational& QuadraticIrrational::operator+=(
    const QuadraticIrrational& rhs) {
  Integer d = shared_radicand(rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  d_ = std::move(d);
  normalize();
  return *this;
}

QuadraticIrrational& QuadraticIrrational::operator-=(
    const QuadraticIrrational& rhs) {
  return *this += -rhs;
}

QuadraticIrrational& QuadraticIrrational::operator*=(
    const QuadraticIrrational& rhs) {
  Integer d = shared_radicand(rhs);
  Rational a = a_ * rhs.a_ + b_ * rhs.b_ * Rational(d);
  Rational b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = std::move(d);
  normalize();
  return *this;
}

QuadraticIrrational& QuadraticIrrational::operator/=(
    const QuadraticIrrational& rhs) {
  Integer d = shared_radicand(rhs);
  Rational norm = rhs.a_ * rhs.a_ - rhs.b_ * rhs.b_ * Rational(d);
  if (norm == 0) throw Error(ErrorCode::domain, "division by zero");
  QuadraticIrrational inverse(Rational(rhs.a_ / norm), Rational(-rhs.b_ / norm),
                              rhs.is_rational() ? Integer(1) : d);
  return *this *= inverse;
}

}  // namespace adacycle
