#ifndef ADACYCLE_LEARNERS_HPP_
#define ADACYCLE_LEARNERS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adacycle/boost.hpp"
#include "adacycle/simplex.hpp"

namespace adacycle {

struct DatasetProvenance {
  std::string path;
  std::string label_column;
  std::string positive_class;  // one-vs-rest: this class is +1
  std::size_t original_size = 0;
  std::size_t dropped_rows = 0;  // rows with a non-numeric feature cell
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sample_size;
};

class Dataset {
 public:
  Dataset(std::vector<double> features, std::size_t cols,
          std::vector<std::int8_t> labels, std::vector<std::string> feature_names,
          DatasetProvenance provenance);

  std::size_t rows() const noexcept { return labels_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t row, std::size_t col) const { return x_[row * cols_ + col]; }
  std::span<const double> row(std::size_t r) const {
    return {x_.data() + r * cols_, cols_};
  }
  std::int8_t label(std::size_t r) const { return labels_[r]; }
  const std::vector<std::int8_t>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& feature_names() const noexcept { return names_; }
  const DatasetProvenance& provenance() const noexcept { return provenance_; }
  std::size_t positives() const noexcept;

 private:
  std::vector<double> x_;
  std::size_t cols_;
  std::vector<std::int8_t> labels_;
  std::vector<std::string> names_;
  DatasetProvenance provenance_;
};

// Header row required. Every column except the label must be numeric; rows
// where some feature cell is not a number are dropped and counted. A label
// equal to positive_class maps to +1, anything else to -1.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& positive_class);

// Uniform sample without replacement from a 64-bit Mersenne Twister seeded
// with seed. Rows keep their original relative order.
Dataset sample(const Dataset& ds, std::size_t size, std::uint64_t seed);

class TreeHypothesis {
 public:
  struct Node {
    int feature = -1;  // -1 for a leaf
    double threshold = 0.0;
    int left = -1;   // x[feature] <= threshold
    int right = -1;
    std::int8_t label = 1;
  };

  explicit TreeHypothesis(std::vector<Node> nodes);

  std::int8_t predict(std::span<const double> x) const;
  std::size_t depth() const;
  std::size_t leaf_count() const;
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  // Swaps every leaf label.
  TreeHypothesis flipped() const;

 private:
  std::vector<Node> nodes_;
};

struct TreeBounds {
  std::size_t max_depth = 3;
  std::size_t max_leaves = 4;
};

// Greedy best-first growth: each round splits the leaf whose best split
// lowers the weighted misclassification most. Candidate thresholds are
// midpoints between consecutive distinct values. Ties go to the lowest
// feature, then the lowest threshold, then the earliest leaf.
TreeHypothesis train_tree(const Dataset& ds, std::span<const double> weights,
                          const TreeBounds& bounds);

MistakeDichotomy dichotomy_of(const TreeHypothesis& h, const Dataset& ds);

// Trains a fresh tree each iteration. The trace pool is the list of distinct
// dichotomies met, in order of first appearance.
template <typename T>
BoostTrace<T> run_on_dataset(const Dataset& ds, const TreeBounds& bounds,
                             std::size_t t_max);

AnyTrace run_on_dataset_any(const Dataset& ds, const TreeBounds& bounds,
                            std::size_t t_max, NumericMode mode);

}  // namespace adacycle

#endif  // ADACYCLE_LEARNERS_HPP_
