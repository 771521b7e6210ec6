#include "adacycle/numeric.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "adacycle/error.hpp"

namespace adacycle {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::dimension: return "dimension mismatch";
    case ErrorCode::domain: return "domain error";
    case ErrorCode::insufficient_data: return "insufficient data";
    case ErrorCode::weak_learning_failure: return "weak learning failure";
    case ErrorCode::perfect_classification: return "perfect classification";
    case ErrorCode::parse: return "parse error";
    case ErrorCode::io: return "i/o error";
    case ErrorCode::precondition: return "precondition violated";
  }
  return "unknown error";
}

const char* mode_name(NumericMode mode) noexcept {
  return mode == NumericMode::exact ? "exact" : "float";
}

NumericMode parse_mode(std::string_view text) {
  if (text == "exact") return NumericMode::exact;
  if (text == "float") return NumericMode::floating;
  throw Error(ErrorCode::parse,
              "unknown numeric mode '" + std::string(text) + "'");
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw Error(ErrorCode::parse,
                "not a number: '" + std::string(whole) + "'");
  Integer value(std::string(s), 10);
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::parse, "empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), whole);
    Integer den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0)
      throw Error(ErrorCode::parse,
                  "zero denominator in '" + std::string(whole) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  // Decimal with optional exponent.
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    Integer ex = parse_integer(text.substr(e + 1), whole);
    if (!ex.fits_slong_p())
      throw Error(ErrorCode::parse, "exponent out of range");
    exponent = ex.get_si();
    text = text.substr(0, e);
  }
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  long fraction_digits = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
        (!fp.empty() && !all_digits(fp)))
      throw Error(ErrorCode::parse,
                  "not a number: '" + std::string(whole) + "'");
    digits = std::string(ip) + std::string(fp);
    fraction_digits = static_cast<long>(fp.size());
  } else {
    if (!all_digits(text))
      throw Error(ErrorCode::parse,
                  "not a number: '" + std::string(whole) + "'");
    digits = std::string(text);
  }
  Rational q{Integer(digits, 10)};
  long shift = exponent - fraction_digits;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift < 0)
    q /= scale;
  else
    q *= scale;
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string format_rational(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

std::string format_significant(double x, int digits) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*g", digits, x);
  return buf.data();
}

std::optional<Rational> rationalize(double x, long max_denominator,
                                    double tol) {
  if (!std::isfinite(x) || max_denominator < 1) return std::nullopt;
  // Convergents h/k of the continued fraction of x, using exact arithmetic
  // on the double's binary value.
  Rational value(x);
  Integer h_prev = 0, h = 1, k_prev = 1, k = 0;
  Integer floor_part;
  Rational rest = value;
  Rational best;
  bool have = false;
  for (int iter = 0; iter < 64; ++iter) {
    mpz_fdiv_q(floor_part.get_mpz_t(), rest.get_num_mpz_t(),
               rest.get_den_mpz_t());
    Integer h_next = floor_part * h + h_prev;
    Integer k_next = floor_part * k + k_prev;
    if (k_next > max_denominator) {
      // Largest admissible semiconvergent.
      Integer steps = (Integer(max_denominator) - k_prev) / k;
      if (steps > 0) {
        Rational semi(steps * h + h_prev, steps * k + k_prev);
        semi.canonicalize();
        if (!have || abs(semi - value) < abs(best - value)) {
          best = semi;
          have = true;
        }
      }
      break;
    }
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    best = Rational(h, k);
    best.canonicalize();
    have = true;
    Rational frac = rest - Rational(floor_part);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  if (!have) return std::nullopt;
  if (std::abs(best.get_d() - x) > tol) return std::nullopt;
  return best;
}

}  // namespace adacycle
