#ifndef ADACYCLE_SIMPLEX_HPP_
#define ADACYCLE_SIMPLEX_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adacycle/numeric.hpp"

namespace adacycle {

// Float-mode tolerance on the weight sum.
inline constexpr double kSimplexTolerance = 1e-12;

// A point on the probability simplex: one positive weight per data point.
template <typename T>
class WeightVector {
 public:
  static WeightVector uniform(std::size_t n);

  // Validates positivity and the unit sum (exactly in exact mode, within
  // kSimplexTolerance in float mode).
  static WeightVector from_components(std::vector<T> components);

  // Float-mode only: rescales nonnegative components onto the simplex. Used
  // by the update paths, where components may underflow to zero on long runs.
  static WeightVector normalized(std::vector<T> components);

  // Rebuilds weights read back from a file without rescaling them, so the
  // values survive a round trip bit for bit. Float components may be zero.
  static WeightVector stored(std::vector<T> components);

  std::size_t size() const noexcept { return components_.size(); }
  const T& operator[](std::size_t i) const { return components_[i]; }
  std::span<const T> components() const noexcept { return components_; }
  std::vector<double> to_doubles() const;

  T sum() const;

  bool operator==(const WeightVector&) const = default;

 private:
  explicit WeightVector(std::vector<T> components)
      : components_(std::move(components)) {}

  std::vector<T> components_;
};

// Per-point correctness of one hypothesis: +1 correct, -1 misclassified.
class MistakeDichotomy {
 public:
  MistakeDichotomy() = default;
  explicit MistakeDichotomy(std::vector<std::int8_t> entries);
  static MistakeDichotomy from_ints(std::span<const int> entries);
  // "+-+" form; also accepts the unicode minus sign.
  static MistakeDichotomy parse(std::string_view text);

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  std::span<const std::int8_t> entries() const noexcept { return entries_; }

  bool has_correct() const noexcept;
  std::vector<std::size_t> misclassified() const;
  MistakeDichotomy negated() const;
  std::string to_string() const;

  auto operator<=>(const MistakeDichotomy&) const = default;

 private:
  std::vector<std::int8_t> entries_;
};

enum class PoolOrigin { synthetic, learned };

// The finite set of dichotomies available to the booster. Duplicate rows are
// dropped at construction (first occurrence kept, so indices follow the
// input order).
class HypothesisPool {
 public:
  HypothesisPool(std::vector<MistakeDichotomy> rows, PoolOrigin origin);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t points() const noexcept { return points_; }
  const MistakeDichotomy& row(std::size_t i) const { return rows_.at(i); }
  std::span<const MistakeDichotomy> all_rows() const noexcept { return rows_; }
  PoolOrigin origin() const noexcept { return origin_; }
  std::size_t dropped_duplicates() const noexcept { return dropped_; }

  std::optional<std::size_t> index_of(const MistakeDichotomy& eta) const;

 private:
  std::vector<MistakeDichotomy> rows_;
  std::size_t points_ = 0;
  std::size_t dropped_ = 0;
  PoolOrigin origin_;
};

// Iteration-ordered chosen dichotomies; column t is the dichotomy of step t.
class MistakeLattice {
 public:
  explicit MistakeLattice(std::vector<MistakeDichotomy> columns);

  std::size_t columns() const noexcept { return columns_.size(); }
  std::size_t rows() const noexcept {
    return columns_.empty() ? 0 : columns_.front().size();
  }
  const MistakeDichotomy& column(std::size_t t) const { return columns_.at(t); }
  int at(std::size_t row, std::size_t t) const { return columns_[t][row]; }

 private:
  std::vector<MistakeDichotomy> columns_;
};

struct NablaViolation {
  std::size_t row;
  std::size_t iteration;  // the first of the two consecutive -1 entries
};

// Status of the periodic learning condition: no point misclassified at two
// consecutive iterations.
struct NablaResult {
  std::optional<NablaViolation> violation;
  bool holds() const noexcept { return !violation.has_value(); }
};

template <typename T>
T edge_dot(const WeightVector<T>& w, const MistakeDichotomy& eta);

// 1 - 2 * (misclassified mass). Indices are zero-based.
template <typename T>
T edge_from_misclassified(const WeightVector<T>& w,
                          std::span<const std::size_t> misclassified);

// Reports the earliest violation, scanning iterations first, then rows.
NablaResult check_nabla(const MistakeLattice& lattice);

extern template class WeightVector<double>;
extern template class WeightVector<Rational>;

}  // namespace adacycle

#endif  // ADACYCLE_SIMPLEX_HPP_
