#ifndef ADACYCLE_FAREY_HPP_
#define ADACYCLE_FAREY_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adacycle/error.hpp"
#include "adacycle/numeric.hpp"
#include "adacycle/quadratic.hpp"

namespace adacycle {

inline Integer floor_of(double x) {
  Integer out;
  mpz_set_d(out.get_mpz_t(), std::floor(x));
  return out;
}
inline Integer floor_of(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}
inline Integer floor_of(const QuadraticIrrational& x) { return x.floor(); }

inline double integer_as(const Integer& k, double) { return k.get_d(); }
inline Rational integer_as(const Integer& k, const Rational&) { return Rational(k); }
inline QuadraticIrrational integer_as(const Integer& k, const QuadraticIrrational&) {
  return QuadraticIrrational(Rational(k));
}

// Farey map on [0,1]: x/(1-x) below 1/2, (1-x)/x from 1/2 up (the boundary
// point takes the right branch).
template <typename T>
T farey(const T& x) {
  if (x < T(0) || x > T(1))
    throw Error(ErrorCode::domain, "Farey map is defined on [0,1]");
  if (x < T(1) / T(2)) return x / (T(1) - x);
  return (T(1) - x) / x;
}

// Gauss map 1/x mod 1 on (0,1).
template <typename T>
T gauss(const T& x) {
  if (!(x > T(0)) || !(x < T(1)))
    throw Error(ErrorCode::domain, "Gauss map is defined on (0,1)");
  T inv = T(1) / x;
  return inv - integer_as(floor_of(inv), x);
}

// Left inverse branch of the Farey map, x/(x+1); maps [0,1] onto [0,1/2].
template <typename T>
T inv_L(const T& x) {
  if (x < T(0) || x > T(1))
    throw Error(ErrorCode::domain, "inverse branch L is used on [0,1]");
  return x / (x + T(1));
}

// Right inverse branch, 1/(x+1); maps [0,1] onto [1/2,1].
template <typename T>
T inv_R(const T& x) {
  if (x < T(0) || x > T(1))
    throw Error(ErrorCode::domain, "inverse branch R is used on [0,1]");
  return T(1) / (x + T(1));
}

enum class FareyLetter { L, R };

// A composition of inverse branches. Letters are listed in application
// order: the word "RL" means apply R first, then L.
class FareyWord {
 public:
  explicit FareyWord(std::vector<FareyLetter> letters);
  static FareyWord parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  FareyLetter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<FareyLetter>& letters() const noexcept { return letters_; }

  // All-L words fix 0 only.
  bool is_degenerate() const noexcept;
  // Length of the shortest prefix whose repetition gives the word.
  std::size_t primitive_period() const noexcept;
  bool is_primitive() const noexcept { return primitive_period() == size(); }
  FareyWord rotated(std::size_t shift) const;
  // Lexicographically least rotation, with L < R.
  FareyWord canonical() const;
  std::string to_string() const;

  bool operator==(const FareyWord&) const = default;
  auto operator<=>(const FareyWord&) const = default;

 private:
  std::vector<FareyLetter> letters_;
};

// x -> (a x + b) / (c x + d) with integer entries.
struct MoebiusMatrix {
  Integer a = 1, b = 0, c = 0, d = 1;

  static MoebiusMatrix of(FareyLetter letter);
  // this * rhs: apply rhs first.
  MoebiusMatrix operator*(const MoebiusMatrix& rhs) const;
  Integer determinant() const { return a * d - b * c; }

  template <typename T>
  T apply(const T& x) const {
    return (integer_as(a, x) * x + integer_as(b, x)) /
           (integer_as(c, x) * x + integer_as(d, x));
  }

  bool operator==(const MoebiusMatrix&) const = default;
};

template <typename T>
T apply_letter(FareyLetter letter, const T& x) {
  return letter == FareyLetter::L ? inv_L(x) : inv_R(x);
}

// Matrix of the composed map (last letter outermost).
MoebiusMatrix word_matrix(const FareyWord& word);

struct PeriodicPoint {
  QuadraticIrrational value;
  // Smaller than the word length when the word is a proper power.
  std::size_t primitive_period;
};

// Fixed point of the word's composed map in (0,1]. Degenerate words are
// rejected with a precondition error (their only fixed point is 0).
PeriodicPoint periodic_point(const FareyWord& word);

// Points visited when the word's letters are applied in order from start;
// the returned list has word.size() entries starting with start itself.
template <typename T>
std::vector<T> word_orbit(const FareyWord& word, const T& start) {
  std::vector<T> out;
  out.reserve(word.size());
  T x = start;
  for (std::size_t i = 0; i < word.size(); ++i) {
    out.push_back(x);
    x = apply_letter(word[i], x);
  }
  return out;
}

struct OrbitEntry {
  FareyWord word;  // canonical rotation
  std::vector<QuadraticIrrational> values;
  bool degenerate = false;
  std::size_t primitive_period = 0;
  bool primitive() const noexcept {
    return !degenerate && primitive_period == word.size();
  }
};

inline constexpr std::size_t kMaxEnumerationLength = 20;

// One entry per rotation class of words of length k, in lexicographic order
// of the canonical words. Degenerate and non-primitive classes are kept and
// annotated.
std::vector<OrbitEntry> enumerate_orbits(std::size_t k);

struct UniquenessReport {
  std::size_t max_k = 0;
  std::size_t primitive_orbits = 0;
  std::size_t values = 0;
  // Pairs of (word, word) sharing an orbit value.
  std::vector<std::pair<std::string, std::string>> collisions;
  bool all_distinct() const noexcept { return collisions.empty(); }
};

// Checks that primitive orbit values are pairwise distinct across all word
// lengths 1..max_k.
UniquenessReport orbit_uniqueness(std::size_t max_k);

// One block per entry. With exact set each value is printed in a+b*sqrt(d)
// form next to a 50-digit decimal; otherwise as a 12-digit decimal.
std::string format_orbit_listing(const std::vector<OrbitEntry>& entries,
                                 bool exact);

// Continued-fraction terms of x in (0,1) via exact Gauss-map iteration.
std::vector<Integer> cf_expansion(const Rational& x, std::size_t max_terms);
std::vector<Integer> cf_expansion(const QuadraticIrrational& x,
                                  std::size_t max_terms);

}  // namespace adacycle

#endif  // ADACYCLE_FAREY_HPP_
