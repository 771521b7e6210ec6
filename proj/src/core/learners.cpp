#include "adacycle/learners.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "adacycle/error.hpp"

namespace adacycle {

Dataset::Dataset(std::vector<double> features, std::size_t cols,
                 std::vector<std::int8_t> labels,
                 std::vector<std::string> feature_names,
                 DatasetProvenance provenance)
    : x_(std::move(features)),
      cols_(cols),
      labels_(std::move(labels)),
      names_(std::move(feature_names)),
      provenance_(std::move(provenance)) {
  if (cols_ == 0) throw Error(ErrorCode::parse, "dataset has no feature columns");
  if (x_.size() != labels_.size() * cols_)
    throw Error(ErrorCode::dimension, "feature matrix does not match labels");
  for (auto y : labels_)
    if (y != 1 && y != -1) throw Error(ErrorCode::invalid_argument, "labels must be +1 or -1");
}

std::size_t Dataset::positives() const noexcept {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), 1));
}

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& positive_class) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::parse, path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_line(line);
  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end())
    throw Error(ErrorCode::parse, path + ": no column named '" + label_column + "'");
  const std::size_t label_idx = static_cast<std::size_t>(label_it - header.begin());

  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != label_idx) names.push_back(header[c]);

  DatasetProvenance prov;
  prov.path = path;
  prov.label_column = label_column;
  prov.positive_class = positive_class;

  std::vector<double> x;
  std::vector<std::int8_t> y;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size())
      throw Error(ErrorCode::parse, path + ":" + std::to_string(line_no) + ": expected " +
                                        std::to_string(header.size()) + " cells, got " +
                                        std::to_string(cells.size()));
    ++prov.original_size;
    std::vector<double> row;
    bool ok = true;
    for (std::size_t c = 0; c < cells.size() && ok; ++c) {
      if (c == label_idx) continue;
      auto v = parse_number(cells[c]);
      if (v)
        row.push_back(*v);
      else
        ok = false;
    }
    if (!ok || cells[label_idx].empty()) {
      ++prov.dropped_rows;
      continue;
    }
    x.insert(x.end(), row.begin(), row.end());
    y.push_back(cells[label_idx] == positive_class ? 1 : -1);
  }
  if (y.empty()) throw Error(ErrorCode::insufficient_data, path + ": no usable rows");
  const auto pos = std::count(y.begin(), y.end(), 1);
  if (pos == 0 || pos == static_cast<long>(y.size()))
    throw Error(ErrorCode::insufficient_data,
                path + ": single-class dataset for positive class '" + positive_class + "'");
  const std::size_t cols = names.size();
  return Dataset(std::move(x), cols, std::move(y), std::move(names), std::move(prov));
}

Dataset sample(const Dataset& ds, std::size_t size, std::uint64_t seed) {
  if (size > ds.rows())
    throw Error(ErrorCode::invalid_argument,
                "sample size " + std::to_string(size) + " exceeds " + std::to_string(ds.rows()) +
                    " rows");
  if (size == 0) throw Error(ErrorCode::invalid_argument, "sample size must be positive");
  // Partial Fisher-Yates driven directly by the engine output, so the draw
  // does not depend on the standard library's distribution code.
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(ds.rows());
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < size; ++i) {
    const std::uint64_t span = ds.rows() - i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw;
    do draw = rng();
    while (draw >= limit);
    std::swap(idx[i], idx[i + draw % span]);
  }
  idx.resize(size);
  std::sort(idx.begin(), idx.end());

  std::vector<double> x;
  std::vector<std::int8_t> y;
  x.reserve(size * ds.cols());
  for (auto r : idx) {
    auto row = ds.row(r);
    x.insert(x.end(), row.begin(), row.end());
    y.push_back(ds.label(r));
  }
  DatasetProvenance prov = ds.provenance();
  prov.seed = seed;
  prov.sample_size = size;
  return Dataset(std::move(x), ds.cols(), std::move(y), ds.feature_names(), std::move(prov));
}

TreeHypothesis::TreeHypothesis(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(ErrorCode::invalid_argument, "tree has no nodes");
  for (const auto& n : nodes_) {
    if (n.feature < 0) continue;
    const auto size = static_cast<int>(nodes_.size());
    if (n.left <= 0 || n.right <= 0 || n.left >= size || n.right >= size)
      throw Error(ErrorCode::invalid_argument, "tree child index out of range");
  }
}

std::int8_t TreeHypothesis::predict(std::span<const double> x) const {
  std::size_t i = 0;
  while (nodes_[i].feature >= 0) {
    const auto& n = nodes_[i];
    if (static_cast<std::size_t>(n.feature) >= x.size())
      throw Error(ErrorCode::dimension, "feature index out of range");
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                       : n.right);
  }
  return nodes_[i].label;
}

std::size_t TreeHypothesis::depth() const {
  std::vector<std::size_t> d(nodes_.size(), 0);
  std::size_t best = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (n.feature < 0) {
      best = std::max(best, d[i]);
      continue;
    }
    d[static_cast<std::size_t>(n.left)] = d[i] + 1;
    d[static_cast<std::size_t>(n.right)] = d[i] + 1;
  }
  return best;
}

std::size_t TreeHypothesis::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.feature < 0; }));
}

TreeHypothesis TreeHypothesis::flipped() const {
  auto nodes = nodes_;
  for (auto& n : nodes)
    if (n.feature < 0) n.label = static_cast<std::int8_t>(-n.label);
  return TreeHypothesis(std::move(nodes));
}

namespace {

constexpr double kMinGain = 1e-15;

struct Leaf {
  std::size_t node;
  std::size_t depth;
  std::vector<std::size_t> members;
};

struct Split {
  double error = 0.0;  // weighted misclassification after the split
  int feature = -1;
  double threshold = 0.0;
  std::int8_t left_label = 1;
  std::int8_t right_label = 1;
};

// Weighted mass of positive and negative labels over members.
std::pair<double, double> masses(const Dataset& ds, std::span<const double> w,
                                 const std::vector<std::size_t>& members) {
  double pos = 0.0, neg = 0.0;
  for (auto i : members) (ds.label(i) > 0 ? pos : neg) += w[i];
  return {pos, neg};
}

std::int8_t majority(double pos, double neg) { return pos >= neg ? 1 : -1; }

std::optional<Split> best_split(const Dataset& ds, std::span<const double> w,
                                const std::vector<std::size_t>& members) {
  const auto [pos_total, neg_total] = masses(ds, w, members);
  std::optional<Split> best;
  std::vector<std::size_t> order(members);
  for (std::size_t f = 0; f < ds.cols(); ++f) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return ds.at(a, f) < ds.at(b, f);
    });
    double pos_left = 0.0, neg_left = 0.0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      const auto i = order[k];
      (ds.label(i) > 0 ? pos_left : neg_left) += w[i];
      const double here = ds.at(i, f);
      const double next = ds.at(order[k + 1], f);
      if (!(here < next)) continue;
      const double pos_right = pos_total - pos_left;
      const double neg_right = neg_total - neg_left;
      const double error = std::min(pos_left, neg_left) + std::min(pos_right, neg_right);
      // Strict improvement keeps the lowest feature and threshold on ties.
      if (!best || error < best->error - kMinGain)
        best = Split{error, static_cast<int>(f), here + (next - here) / 2,
                     majority(pos_left, neg_left), majority(pos_right, neg_right)};
    }
  }
  return best;
}

}  // namespace

TreeHypothesis train_tree(const Dataset& ds, std::span<const double> weights,
                          const TreeBounds& bounds) {
  if (weights.size() != ds.rows())
    throw Error(ErrorCode::dimension, "weights do not match dataset rows");
  if (bounds.max_depth < 1 || bounds.max_leaves < 2)
    throw Error(ErrorCode::invalid_argument, "tree needs max_depth >= 1 and max_leaves >= 2");

  std::vector<TreeHypothesis::Node> nodes(1);
  std::vector<Leaf> leaves(1);
  leaves[0].node = 0;
  leaves[0].depth = 0;
  leaves[0].members.resize(ds.rows());
  std::iota(leaves[0].members.begin(), leaves[0].members.end(), 0);
  {
    auto [pos, neg] = masses(ds, weights, leaves[0].members);
    nodes[0].label = majority(pos, neg);
  }

  while (leaves.size() < bounds.max_leaves) {
    std::optional<std::size_t> pick;
    Split pick_split;
    double pick_gain = kMinGain;
    for (std::size_t l = 0; l < leaves.size(); ++l) {
      const auto& leaf = leaves[l];
      if (leaf.depth >= bounds.max_depth || leaf.members.size() < 2) continue;
      auto [pos, neg] = masses(ds, weights, leaf.members);
      const double current = std::min(pos, neg);
      if (current <= 0.0) continue;  // pure
      auto split = best_split(ds, weights, leaf.members);
      if (!split) continue;
      const double gain = current - split->error;
      if (gain > pick_gain) {
        pick = l;
        pick_gain = gain;
        pick_split = *split;
      }
    }
    if (!pick) break;

    Leaf parent = std::move(leaves[*pick]);
    leaves.erase(leaves.begin() + static_cast<long>(*pick));
    const int left = static_cast<int>(nodes.size());
    auto& node = nodes[parent.node];
    node.feature = pick_split.feature;
    node.threshold = pick_split.threshold;
    node.left = left;
    node.right = left + 1;
    TreeHypothesis::Node left_node, right_node;
    left_node.label = pick_split.left_label;
    right_node.label = pick_split.right_label;
    nodes.push_back(left_node);
    nodes.push_back(right_node);

    Leaf l{static_cast<std::size_t>(left), parent.depth + 1, {}};
    Leaf r{static_cast<std::size_t>(left + 1), parent.depth + 1, {}};
    const auto f = static_cast<std::size_t>(pick_split.feature);
    for (auto i : parent.members)
      (ds.at(i, f) <= pick_split.threshold ? l : r).members.push_back(i);
    // Keep leaves in creation order so ties go to the earliest leaf.
    leaves.push_back(std::move(l));
    leaves.push_back(std::move(r));
    std::sort(leaves.begin(), leaves.end(),
              [](const Leaf& a, const Leaf& b) { return a.node < b.node; });
  }

  TreeHypothesis tree(std::move(nodes));
  double edge = 0.0;
  for (std::size_t i = 0; i < ds.rows(); ++i)
    edge += weights[i] * ds.label(i) * tree.predict(ds.row(i));
  return edge < 0.0 ? tree.flipped() : tree;
}

MistakeDichotomy dichotomy_of(const TreeHypothesis& h, const Dataset& ds) {
  std::vector<std::int8_t> eta(ds.rows());
  for (std::size_t i = 0; i < ds.rows(); ++i)
    eta[i] = static_cast<std::int8_t>(ds.label(i) * h.predict(ds.row(i)));
  return MistakeDichotomy(std::move(eta));
}

template <typename T>
BoostTrace<T> run_on_dataset(const Dataset& ds, const TreeBounds& bounds, std::size_t t_max) {
  if (t_max < 1) throw Error(ErrorCode::invalid_argument, "t_max must be >= 1");
  std::vector<MistakeDichotomy> seen;
  std::map<MistakeDichotomy, std::size_t> index;
  std::vector<BoostStep<T>> steps;
  steps.reserve(t_max);
  WeightVector<T> w = WeightVector<T>::uniform(ds.rows());
  const WeightVector<T> initial = w;
  HaltReason halt = HaltReason::none;
  std::size_t halt_iteration = 0;
  std::string halt_detail;

  for (std::size_t t = 0; t < t_max; ++t) {
    const auto wd = w.to_doubles();
    const TreeHypothesis tree = train_tree(ds, wd, bounds);
    MistakeDichotomy eta = dichotomy_of(tree, ds);
    T edge = edge_dot(w, eta);
    if (!(edge > 0)) {
      halt = HaltReason::weak_learning_failure;
      halt_iteration = t;
      halt_detail = "learned tree has edge " + format_double(to_double(edge));
      break;
    }
    if (edge >= 1) {
      halt = HaltReason::perfect_classification;
      halt_iteration = t;
      halt_detail = "learned tree classifies every point correctly";
      break;
    }
    auto [it, inserted] = index.emplace(eta, seen.size());
    if (inserted) seen.push_back(eta);
    WeightVector<T> next = weight_update(w, eta, edge);
    const double a = alpha(edge);
    steps.push_back(BoostStep<T>{t, it->second, std::move(eta), std::move(edge), a, next});
    w = std::move(next);
  }

  if (seen.empty()) {
    // Halted before any step: keep the offending dichotomy so the trace still
    // names a valid pool.
    const auto wd = initial.to_doubles();
    auto eta = dichotomy_of(train_tree(ds, wd, bounds), ds);
    if (!eta.has_correct()) eta = eta.negated();
    seen.push_back(std::move(eta));
  }
  const auto& p = ds.provenance();
  TraceSource source;
  source.kind = "dataset";
  source.path = p.path;
  source.label_column = p.label_column;
  source.positive_class = p.positive_class;
  source.seed = p.seed;
  source.sample_size = p.sample_size;
  source.original_size = p.original_size;
  source.dropped_rows = p.dropped_rows;
  source.max_depth = bounds.max_depth;
  source.max_leaves = bounds.max_leaves;
  return BoostTrace<T>{initial,
                       std::move(steps),
                       std::make_shared<const HypothesisPool>(std::move(seen), PoolOrigin::learned),
                       "optimal",
                       std::move(source),
                       halt,
                       halt_iteration,
                       std::move(halt_detail)};
}

template BoostTrace<double> run_on_dataset(const Dataset&, const TreeBounds&, std::size_t);
template BoostTrace<Rational> run_on_dataset(const Dataset&, const TreeBounds&, std::size_t);

AnyTrace run_on_dataset_any(const Dataset& ds, const TreeBounds& bounds, std::size_t t_max,
                            NumericMode mode) {
  if (mode == NumericMode::exact) return run_on_dataset<Rational>(ds, bounds, t_max);
  return run_on_dataset<double>(ds, bounds, t_max);
}

}  // namespace adacycle
