#include "adacycle/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adacycle/error.hpp"

namespace adacycle {

template <typename T>
WeightVector<T> WeightVector<T>::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::dimension, "weight vector needs n >= 1");
  if constexpr (ScalarTraits<T>::exact) {
    return WeightVector(
        std::vector<T>(n, Rational(1, static_cast<unsigned long>(n))));
  } else {
    return WeightVector(std::vector<T>(n, 1.0 / static_cast<double>(n)));
  }
}

template <typename T>
WeightVector<T> WeightVector<T>::from_components(std::vector<T> components) {
  if (components.empty())
    throw Error(ErrorCode::dimension, "weight vector needs n >= 1");
  T total = 0;
  for (const T& c : components) {
    if (!(c > 0))
      throw Error(ErrorCode::domain, "weight components must be positive");
    total += c;
  }
  if constexpr (ScalarTraits<T>::exact) {
    if (total != 1)
      throw Error(ErrorCode::domain,
                  "weights sum to " + format_rational(total) + ", not 1");
  } else {
    if (std::abs(total - 1.0) > kSimplexTolerance)
      throw Error(ErrorCode::domain,
                  "weights sum to " + format_double(total) + ", not 1");
  }
  return WeightVector(std::move(components));
}

template <typename T>
WeightVector<T> WeightVector<T>::normalized(std::vector<T> components) {
  if constexpr (ScalarTraits<T>::exact) {
    return from_components(std::move(components));
  } else {
    double total = 0.0;
    for (double c : components) {
      if (!(c >= 0.0) || !std::isfinite(c))
        throw Error(ErrorCode::domain, "weight components must be finite and nonnegative");
      total += c;
    }
    if (!(total > 0.0))
      throw Error(ErrorCode::domain, "weight vector has zero mass");
    for (double& c : components) c /= total;
    return WeightVector(std::move(components));
  }
}

template <typename T>
WeightVector<T> WeightVector<T>::stored(std::vector<T> components) {
  if constexpr (ScalarTraits<T>::exact) {
    return from_components(std::move(components));
  } else {
    if (components.empty()) throw Error(ErrorCode::dimension, "empty weight vector");
    double total = 0.0;
    for (double c : components) {
      if (!(c >= 0.0) || !std::isfinite(c))
        throw Error(ErrorCode::domain, "weight components must be finite and nonnegative");
      total += c;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw Error(ErrorCode::domain, "stored weights do not sum to 1");
    return WeightVector(std::move(components));
  }
}

template <typename T>
std::vector<double> WeightVector<T>::to_doubles() const {
  std::vector<double> out;
  out.reserve(components_.size());
  for (const T& c : components_) out.push_back(to_double(c));
  return out;
}

template <typename T>
T WeightVector<T>::sum() const {
  T total = 0;
  for (const T& c : components_) total += c;
  return total;
}

template class WeightVector<double>;
template class WeightVector<Rational>;

MistakeDichotomy::MistakeDichotomy(std::vector<std::int8_t> entries)
    : entries_(std::move(entries)) {
  for (auto e : entries_)
    if (e != 1 && e != -1)
      throw Error(ErrorCode::domain, "dichotomy entries must be +1 or -1");
}

MistakeDichotomy MistakeDichotomy::from_ints(std::span<const int> entries) {
  std::vector<std::int8_t> out;
  out.reserve(entries.size());
  for (int e : entries) {
    if (e != 1 && e != -1)
      throw Error(ErrorCode::domain, "dichotomy entries must be +1 or -1");
    out.push_back(static_cast<std::int8_t>(e));
  }
  return MistakeDichotomy(std::move(out));
}

MistakeDichotomy MistakeDichotomy::parse(std::string_view text) {
  static constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";
  std::vector<std::int8_t> out;
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (c == '+') {
      out.push_back(1);
      ++i;
    } else if (c == '-') {
      out.push_back(-1);
      ++i;
    } else if (text.substr(i, kUnicodeMinus.size()) == kUnicodeMinus) {
      out.push_back(-1);
      i += kUnicodeMinus.size();
    } else {
      throw Error(ErrorCode::parse, "invalid dichotomy character in '" +
                                        std::string(text) + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::parse, "empty dichotomy");
  return MistakeDichotomy(std::move(out));
}

bool MistakeDichotomy::has_correct() const noexcept {
  return std::find(entries_.begin(), entries_.end(), 1) != entries_.end();
}

std::vector<std::size_t> MistakeDichotomy::misclassified() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] < 0) out.push_back(i);
  return out;
}

MistakeDichotomy MistakeDichotomy::negated() const {
  std::vector<std::int8_t> out(entries_);
  for (auto& e : out) e = static_cast<std::int8_t>(-e);
  return MistakeDichotomy(std::move(out));
}

std::string MistakeDichotomy::to_string() const {
  std::string out;
  out.reserve(entries_.size());
  for (auto e : entries_) out.push_back(e > 0 ? '+' : '-');
  return out;
}

HypothesisPool::HypothesisPool(std::vector<MistakeDichotomy> rows,
                               PoolOrigin origin)
    : origin_(origin) {
  if (rows.empty()) throw Error(ErrorCode::invalid_argument, "empty pool");
  points_ = rows.front().size();
  if (points_ == 0) throw Error(ErrorCode::dimension, "pool rows are empty");
  for (const auto& r : rows) {
    if (r.size() != points_)
      throw Error(ErrorCode::dimension, "pool rows have unequal lengths");
    if (!r.has_correct())
      throw Error(ErrorCode::domain,
                  "pool row " + r.to_string() + " has no correct entry");
  }
  // Sorted index over the rows finds duplicates; survivors keep input order.
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a] < rows[b]; });
  std::vector<bool> keep(rows.size(), true);
  for (std::size_t k = 1; k < order.size(); ++k)
    if (rows[order[k]] == rows[order[k - 1]]) keep[order[k]] = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (keep[i])
      rows_.push_back(std::move(rows[i]));
    else
      ++dropped_;
  }
}

std::optional<std::size_t> HypothesisPool::index_of(
    const MistakeDichotomy& eta) const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i] == eta) return i;
  return std::nullopt;
}

MistakeLattice::MistakeLattice(std::vector<MistakeDichotomy> columns)
    : columns_(std::move(columns)) {
  for (const auto& c : columns_)
    if (c.size() != columns_.front().size())
      throw Error(ErrorCode::dimension, "lattice columns have unequal lengths");
}

template <typename T>
T edge_dot(const WeightVector<T>& w, const MistakeDichotomy& eta) {
  if (w.size() != eta.size())
    throw Error(ErrorCode::dimension, "weight/dichotomy length mismatch");
  T edge = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (eta[i] > 0)
      edge += w[i];
    else
      edge -= w[i];
  }
  return edge;
}

template <typename T>
T edge_from_misclassified(const WeightVector<T>& w,
                          std::span<const std::size_t> misclassified) {
  T mass = 0;
  for (std::size_t j : misclassified) {
    if (j >= w.size())
      throw Error(ErrorCode::dimension, "misclassified index out of range");
    mass += w[j];
  }
  return T(1 - 2 * mass);
}

template double edge_dot(const WeightVector<double>&, const MistakeDichotomy&);
template Rational edge_dot(const WeightVector<Rational>&,
                           const MistakeDichotomy&);
template double edge_from_misclassified(const WeightVector<double>&,
                                        std::span<const std::size_t>);
template Rational edge_from_misclassified(const WeightVector<Rational>&,
                                          std::span<const std::size_t>);

NablaResult check_nabla(const MistakeLattice& lattice) {
  if (lattice.columns() < 2)
    throw Error(ErrorCode::insufficient_data,
                "periodic learning check needs at least 2 columns");
  for (std::size_t t = 0; t + 1 < lattice.columns(); ++t)
    for (std::size_t i = 0; i < lattice.rows(); ++i)
      if (lattice.at(i, t) < 0 && lattice.at(i, t + 1) < 0)
        return NablaResult{NablaViolation{i, t}};
  return NablaResult{};
}

}  // namespace adacycle
