#include "adacycle/boost.hpp"

#include <cmath>
#include <sstream>

#include "adacycle/error.hpp"

namespace adacycle {

SelectionRule SelectionRule::optimal() { return SelectionRule(); }

SelectionRule SelectionRule::first_above(Rational threshold) {
  if (!(threshold > 0 && threshold < 1))
    throw Error(ErrorCode::domain, "first-above threshold must lie in (0,1)");
  SelectionRule rule;
  rule.kind_ = Kind::first_above;
  rule.threshold_ = std::move(threshold);
  return rule;
}

SelectionRule SelectionRule::fixed_sequence(std::vector<std::size_t> rows) {
  if (rows.empty())
    throw Error(ErrorCode::invalid_argument, "fixed sequence is empty");
  SelectionRule rule;
  rule.kind_ = Kind::fixed_sequence;
  rule.sequence_ = std::move(rows);
  return rule;
}

SelectionRule SelectionRule::parse(const std::string& text) {
  if (text == "optimal") return optimal();
  static const std::string kFirstAbove = "first-above:";
  static const std::string kFixed = "fixed:";
  if (text.rfind(kFirstAbove, 0) == 0)
    return first_above(parse_rational(text.substr(kFirstAbove.size())));
  if (text.rfind(kFixed, 0) == 0) {
    std::vector<std::size_t> rows;
    std::stringstream in(text.substr(kFixed.size()));
    std::string item;
    while (std::getline(in, item, ',')) {
      Rational q = parse_rational(item);
      if (q.get_den() != 1 || q < 0)
        throw Error(ErrorCode::parse, "invalid row index '" + item + "'");
      rows.push_back(q.get_num().get_ui());
    }
    return fixed_sequence(std::move(rows));
  }
  throw Error(ErrorCode::parse, "invalid selection rule '" + text +
                                    "' (expected optimal, first-above:THETA "
                                    "or fixed:i,j,...)");
}

std::string SelectionRule::to_string() const {
  switch (kind_) {
    case Kind::optimal:
      return "optimal";
    case Kind::first_above:
      return "first-above:" + format_rational(threshold_);
    case Kind::fixed_sequence: {
      std::string out = "fixed:";
      for (std::size_t i = 0; i < sequence_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(sequence_[i]);
      }
      return out;
    }
  }
  return "optimal";
}

const char* halt_reason_name(HaltReason reason) noexcept {
  switch (reason) {
    case HaltReason::none: return "none";
    case HaltReason::weak_learning_failure: return "weak_learning_failure";
    case HaltReason::perfect_classification: return "perfect_classification";
  }
  return "none";
}

HaltReason parse_halt_reason(const std::string& text) {
  if (text == "none") return HaltReason::none;
  if (text == "weak_learning_failure") return HaltReason::weak_learning_failure;
  if (text == "perfect_classification")
    return HaltReason::perfect_classification;
  throw Error(ErrorCode::parse, "unknown halt reason '" + text + "'");
}

template <typename T>
const WeightVector<T>& BoostTrace<T>::weights_at(std::size_t t) const {
  if (t == 0) return initial;
  return steps.at(t - 1).weights_after;
}

template <typename T>
std::vector<T> BoostTrace<T>::edges() const {
  std::vector<T> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.edge);
  return out;
}

template <typename T>
std::vector<double> BoostTrace<T>::edges_as_double() const {
  std::vector<double> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(to_double(s.edge));
  return out;
}

template <typename T>
MistakeLattice BoostTrace<T>::lattice(std::size_t from, std::size_t to) const {
  to = std::min(to, steps.size());
  std::vector<MistakeDichotomy> columns;
  for (std::size_t t = from; t < to; ++t) columns.push_back(steps[t].eta);
  return MistakeLattice(std::move(columns));
}

template struct BoostTrace<double>;
template struct BoostTrace<Rational>;

NumericMode mode_of(const AnyTrace& trace) noexcept {
  return std::holds_alternative<BoostTrace<double>>(trace)
             ? NumericMode::floating
             : NumericMode::exact;
}

std::size_t trace_size(const AnyTrace& trace) noexcept {
  return std::visit([](const auto& t) { return t.size(); }, trace);
}

namespace {

template <typename T>
bool exceeds(const T& edge, const Rational& threshold) {
  if constexpr (ScalarTraits<T>::exact)
    return edge > threshold;
  else
    return edge > threshold.get_d();
}

// Float edges within rounding of the current best count as ties, so both
// modes pick the same (lowest) row.
constexpr double kFloatTieTol = 1e-12;

template <typename T>
bool beats(const T& edge, const T& best) {
  if constexpr (ScalarTraits<T>::exact)
    return edge > best;
  else
    return edge > best + kFloatTieTol;
}

}  // namespace

template <typename T>
Selection<T> select(const WeightVector<T>& w, const HypothesisPool& pool,
                    const SelectionRule& rule, std::size_t iteration) {
  if (w.size() != pool.points())
    throw Error(ErrorCode::dimension, "weights and pool disagree on n");

  if (rule.kind() == SelectionRule::Kind::fixed_sequence) {
    const auto& seq = rule.sequence();
    std::size_t row = seq[iteration % seq.size()];
    if (row >= pool.rows())
      throw Error(ErrorCode::invalid_argument,
                  "fixed sequence row " + std::to_string(row) +
                      " outside pool of " + std::to_string(pool.rows()));
    T edge = edge_dot(w, pool.row(row));
    if (!(edge > 0))
      throw Error(ErrorCode::weak_learning_failure,
                  "scheduled row " + std::to_string(row) +
                      " has non-positive edge at iteration " +
                      std::to_string(iteration));
    return {row, pool.row(row), std::move(edge)};
  }

  std::optional<std::size_t> best;
  T best_edge = 0;
  for (std::size_t i = 0; i < pool.rows(); ++i) {
    T edge = edge_dot(w, pool.row(i));
    if (rule.kind() == SelectionRule::Kind::first_above &&
        exceeds(edge, rule.threshold()))
      return {i, pool.row(i), std::move(edge)};
    if (!best || beats(edge, best_edge)) {
      best = i;
      best_edge = std::move(edge);
    }
  }
  if (!(best_edge > 0))
    throw Error(ErrorCode::weak_learning_failure,
                "no pool row has a positive edge at iteration " +
                    std::to_string(iteration));
  return {*best, pool.row(*best), std::move(best_edge)};
}

template Selection<double> select(const WeightVector<double>&,
                                  const HypothesisPool&, const SelectionRule&,
                                  std::size_t);
template Selection<Rational> select(const WeightVector<Rational>&,
                                    const HypothesisPool&,
                                    const SelectionRule&, std::size_t);

template <typename T>
WeightVector<T> weight_update(const WeightVector<T>& w,
                              const MistakeDichotomy& eta, const T& edge) {
  if (w.size() != eta.size())
    throw Error(ErrorCode::dimension, "weight/dichotomy length mismatch");
  if (edge >= 1)
    throw Error(ErrorCode::perfect_classification,
                "edge reached 1; the update divides by zero");
  if (!(edge > 0))
    throw Error(ErrorCode::domain, "weight update needs a positive edge");
  const T consistent = edge_dot(w, eta);
  if (!ScalarTraits<T>::same(consistent, edge, 1e-9))
    throw Error(ErrorCode::domain, "edge does not match the dichotomy");

  const T up = 1 + edge;
  const T down = 1 - edge;
  std::vector<T> next;
  next.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    next.push_back(T(w[i] / (eta[i] > 0 ? up : down)));
  return WeightVector<T>::normalized(std::move(next));
}

template WeightVector<double> weight_update(const WeightVector<double>&,
                                            const MistakeDichotomy&,
                                            const double&);
template WeightVector<Rational> weight_update(const WeightVector<Rational>&,
                                              const MistakeDichotomy&,
                                              const Rational&);

WeightVector<double> exponential_update(const WeightVector<double>& w,
                                        const MistakeDichotomy& eta,
                                        double alpha_value) {
  if (w.size() != eta.size())
    throw Error(ErrorCode::dimension, "weight/dichotomy length mismatch");
  if (!(alpha_value >= 0) || !std::isfinite(alpha_value))
    throw Error(ErrorCode::domain, "alpha must be finite and nonnegative");
  const double shrink = std::exp(-alpha_value);
  const double grow = std::exp(alpha_value);
  std::vector<double> next;
  next.reserve(w.size());
  double z = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    next.push_back(w[i] * (eta[i] > 0 ? shrink : grow));
    z += next.back();
  }
  for (double& c : next) c /= z;
  return WeightVector<double>::normalized(std::move(next));
}

double alpha(double edge) {
  if (!(edge > 0.0 && edge < 1.0))
    throw Error(ErrorCode::domain, "alpha needs an edge in (0,1)");
  return 0.5 * std::log((1.0 + edge) / (1.0 - edge));
}

double alpha(const Rational& edge) {
  if (!(edge > 0 && edge < 1))
    throw Error(ErrorCode::domain, "alpha needs an edge in (0,1)");
  // The ratio is formed exactly before the single rounding.
  Rational ratio = (1 + edge) / (1 - edge);
  return 0.5 * std::log(ratio.get_d());
}

template <typename T>
BoostTrace<T> run(std::shared_ptr<const HypothesisPool> pool,
                  const SelectionRule& rule, std::size_t t_max) {
  if (!pool) throw Error(ErrorCode::invalid_argument, "no pool");
  if (t_max < 1) throw Error(ErrorCode::invalid_argument, "t_max must be >= 1");

  BoostTrace<T> trace{WeightVector<T>::uniform(pool->points()), {}, pool,
                      rule.to_string(), {}, HaltReason::none, 0, {}};
  trace.steps.reserve(t_max);
  for (std::size_t t = 0; t < t_max; ++t) {
    const WeightVector<T>& w = trace.weights_at(t);
    std::optional<Selection<T>> sel;
    try {
      sel = select(w, *pool, rule, t);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::weak_learning_failure) throw;
      trace.halt = HaltReason::weak_learning_failure;
      trace.halt_iteration = t;
      trace.halt_detail = e.what();
      break;
    }
    if (sel->edge >= 1) {
      trace.halt = HaltReason::perfect_classification;
      trace.halt_iteration = t;
      trace.halt_detail = "row " + std::to_string(sel->row) +
                          " classifies every point correctly";
      break;
    }
    WeightVector<T> next = weight_update(w, sel->eta, sel->edge);
    const double a = alpha(sel->edge);
    trace.steps.push_back(BoostStep<T>{t, sel->row, std::move(sel->eta),
                                       std::move(sel->edge), a,
                                       std::move(next)});
  }
  return trace;
}

template BoostTrace<double> run(std::shared_ptr<const HypothesisPool>,
                                const SelectionRule&, std::size_t);
template BoostTrace<Rational> run(std::shared_ptr<const HypothesisPool>,
                                  const SelectionRule&, std::size_t);

AnyTrace run_any(std::shared_ptr<const HypothesisPool> pool,
                 const SelectionRule& rule, std::size_t t_max,
                 NumericMode mode) {
  if (mode == NumericMode::exact)
    return run<Rational>(std::move(pool), rule, t_max);
  return run<double>(std::move(pool), rule, t_max);
}

template <typename T>
StrongClassification strong_classify(
    const BoostTrace<T>& trace,
    const std::vector<std::vector<std::int8_t>>& predictions) {
  if (trace.steps.empty())
    throw Error(ErrorCode::insufficient_data, "empty trace");
  const std::size_t n = trace.initial.size();
  std::vector<double> vote(n, 0.0);
  for (const auto& step : trace.steps) {
    if (step.row >= predictions.size() || predictions[step.row].size() != n)
      throw Error(ErrorCode::dimension,
                  "predictions missing for row " + std::to_string(step.row));
    for (std::size_t i = 0; i < n; ++i)
      vote[i] += step.alpha * predictions[step.row][i];
  }
  StrongClassification out;
  out.labels.resize(n);
  out.tie.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.tie[i] = vote[i] == 0.0;
    out.labels[i] = vote[i] < 0.0 ? -1 : 1;
  }
  return out;
}

template StrongClassification strong_classify(
    const BoostTrace<double>&, const std::vector<std::vector<std::int8_t>>&);
template StrongClassification strong_classify(
    const BoostTrace<Rational>&, const std::vector<std::vector<std::int8_t>>&);

}  // namespace adacycle
