#ifndef ADACYCLE_BOOST_HPP_
#define ADACYCLE_BOOST_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adacycle/numeric.hpp"
#include "adacycle/simplex.hpp"

namespace adacycle {

// How a row is picked from the pool at each iteration.
//   optimal:        argmax edge, lowest row index among ties
//   first_above:    lowest-index row whose edge exceeds the threshold,
//                   falling back to optimal when none does
//   fixed_sequence: replays the listed row indices, repeating the list
//                   when the run is longer than it
class SelectionRule {
 public:
  enum class Kind { optimal, first_above, fixed_sequence };

  static SelectionRule optimal();
  static SelectionRule first_above(Rational threshold);
  static SelectionRule fixed_sequence(std::vector<std::size_t> rows);

  // "optimal", "first-above:THETA" (THETA decimal or p/q), or
  // "fixed:i,j,k" with zero-based row indices.
  static SelectionRule parse(const std::string& text);
  std::string to_string() const;

  Kind kind() const noexcept { return kind_; }
  const Rational& threshold() const noexcept { return threshold_; }
  const std::vector<std::size_t>& sequence() const noexcept { return sequence_; }

 private:
  SelectionRule() = default;

  Kind kind_ = Kind::optimal;
  Rational threshold_;
  std::vector<std::size_t> sequence_;
};

template <typename T>
struct Selection {
  std::size_t row;
  MistakeDichotomy eta;
  T edge;
};

template <typename T>
struct BoostStep {
  std::size_t iteration;
  std::size_t row;
  MistakeDichotomy eta;
  T edge;
  // Transcendental in the edge, so kept as a double in both modes.
  double alpha;
  WeightVector<T> weights_after;
};

enum class HaltReason { none, weak_learning_failure, perfect_classification };

const char* halt_reason_name(HaltReason reason) noexcept;
HaltReason parse_halt_reason(const std::string& text);

// Where a trace came from. Recorded verbatim into trace files.
struct TraceSource {
  std::string kind = "pool";  // "pool" or "dataset"
  std::string path;
  std::string label_column;
  std::string positive_class;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sample_size;
  std::optional<std::size_t> original_size;
  std::optional<std::size_t> dropped_rows;
  std::optional<std::size_t> max_depth;
  std::optional<std::size_t> max_leaves;

  bool operator==(const TraceSource&) const = default;
};

template <typename T>
struct BoostTrace {
  WeightVector<T> initial;
  std::vector<BoostStep<T>> steps;
  std::shared_ptr<const HypothesisPool> pool;
  std::string rule;
  TraceSource source;
  HaltReason halt = HaltReason::none;
  std::size_t halt_iteration = 0;
  std::string halt_detail;

  static constexpr NumericMode mode = ScalarTraits<T>::mode;

  std::size_t size() const noexcept { return steps.size(); }
  // Weights in force at iteration t (before its update); t == size() gives
  // the final weights.
  const WeightVector<T>& weights_at(std::size_t t) const;
  std::vector<T> edges() const;
  std::vector<double> edges_as_double() const;
  MistakeLattice lattice(std::size_t from = 0,
                         std::size_t to = static_cast<std::size_t>(-1)) const;
};

using AnyTrace = std::variant<BoostTrace<double>, BoostTrace<Rational>>;

NumericMode mode_of(const AnyTrace& trace) noexcept;
std::size_t trace_size(const AnyTrace& trace) noexcept;

// Rows are scanned in index order; errors with weak_learning_failure when no
// row has a positive edge.
template <typename T>
Selection<T> select(const WeightVector<T>& w, const HypothesisPool& pool,
                    const SelectionRule& rule, std::size_t iteration = 0);

// Rational form of the update: w_i / (1 + eta_i r). Exact mode needs no
// renormalization (the output sums to 1 identically); float mode rescales
// to absorb rounding drift.
template <typename T>
WeightVector<T> weight_update(const WeightVector<T>& w,
                              const MistakeDichotomy& eta, const T& edge);

// Exponential form: w_i exp(-eta_i alpha) / Z. Independent oracle for
// weight_update.
WeightVector<double> exponential_update(const WeightVector<double>& w,
                                        const MistakeDichotomy& eta,
                                        double alpha);

// 0.5 * ln((1 + r) / (1 - r)) for r in (0, 1).
double alpha(double edge);
double alpha(const Rational& edge);

template <typename T>
BoostTrace<T> run(std::shared_ptr<const HypothesisPool> pool,
                  const SelectionRule& rule, std::size_t t_max);

AnyTrace run_any(std::shared_ptr<const HypothesisPool> pool,
                 const SelectionRule& rule, std::size_t t_max,
                 NumericMode mode);

struct StrongClassification {
  std::vector<std::int8_t> labels;
  std::vector<bool> tie;  // the weighted vote was exactly zero; label is +1
};

// predictions[row][i] is h_row(x_i) in {+1, -1}.
template <typename T>
StrongClassification strong_classify(
    const BoostTrace<T>& trace,
    const std::vector<std::vector<std::int8_t>>& predictions);

extern template struct BoostTrace<double>;
extern template struct BoostTrace<Rational>;

}  // namespace adacycle

#endif  // ADACYCLE_BOOST_HPP_
