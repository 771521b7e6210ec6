#include "adacycle/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "adacycle/error.hpp"

namespace adacycle {

IndexPartition partition(const MistakeDichotomy& eta_prev,
                         const MistakeDichotomy& eta_cur) {
  if (eta_prev.size() != eta_cur.size())
    throw Error(ErrorCode::dimension, "partition needs equal-length dichotomies");
  IndexPartition part;
  for (std::size_t i = 0; i < eta_cur.size(); ++i) {
    const bool was_correct = eta_prev[i] > 0;
    if (eta_cur[i] > 0)
      (was_correct ? part.i_plus : part.i_minus).push_back(i);
    else
      (was_correct ? part.j_plus : part.j_minus).push_back(i);
  }
  return part;
}

namespace {

template <typename T>
T mass(const WeightVector<T>& w, const std::vector<std::size_t>& indices) {
  T total = 0;
  for (std::size_t i : indices) {
    if (i >= w.size()) throw Error(ErrorCode::dimension, "index out of range");
    total += w[i];
  }
  return total;
}

template <typename T>
void check_prev_edge(const T& r_prev) {
  if (!(r_prev > 0) || !(r_prev < 1))
    throw Error(ErrorCode::domain, "previous edge must lie in (0,1)");
}

}  // namespace

template <typename T>
T four_term_edge(const WeightVector<T>& w_prev, const T& r_prev,
                 const IndexPartition& part) {
  check_prev_edge(r_prev);
  const T up = 1 + r_prev;
  const T down = 1 - r_prev;
  T edge = mass(w_prev, part.i_plus) / up;
  edge -= mass(w_prev, part.j_plus) / up;
  edge += mass(w_prev, part.i_minus) / down;
  edge -= mass(w_prev, part.j_minus) / down;
  return edge;
}

template <typename T>
T three_weight_edge(const WeightVector<T>& w_prev, const T& r_prev,
                    const IndexPartition& part) {
  check_prev_edge(r_prev);
  const T up = 1 + r_prev;
  return T((up - 2 * mass(w_prev, part.j_plus)) / up);
}

template <typename T>
std::vector<std::size_t> ThreeWeightReport<T>::mismatches() const {
  std::vector<std::size_t> out;
  for (const auto& s : steps)
    if (!s.matches) out.push_back(s.iteration);
  return out;
}

template <typename T>
std::vector<std::size_t> ThreeWeightReport<T>::biconditional_exceptions() const {
  std::vector<std::size_t> out;
  for (const auto& s : steps)
    if (s.matches != s.nabla_holds) out.push_back(s.iteration);
  return out;
}

template <typename T>
ThreeWeightReport<T> check_thm_3wgt(const BoostTrace<T>& trace, double tol,
                                    std::size_t from, std::size_t to) {
  ThreeWeightReport<T> report;
  to = std::min(to, trace.size());
  for (std::size_t t = std::max<std::size_t>(from, 1); t < to; ++t) {
    const auto& prev = trace.steps[t - 1];
    const auto& cur = trace.steps[t];
    const IndexPartition part = partition(prev.eta, cur.eta);
    T predicted = three_weight_edge(trace.weights_at(t - 1), prev.edge, part);
    const bool matches = ScalarTraits<T>::same(predicted, cur.edge, tol);
    report.steps.push_back(
        ThreeWeightStep<T>{t, part.nabla_holds(), std::move(predicted), cur.edge, matches});
  }
  return report;
}

template <typename T>
Subsums<T> subsums(const WeightVector<T>& w_prev, const T& r_prev,
                   const IndexPartition& part) {
  check_prev_edge(r_prev);
  if (!part.nabla_holds())
    throw Error(ErrorCode::precondition,
                "subsums need the periodic learning condition (j_minus empty)");
  if (part.i_minus.empty())
    throw Error(ErrorCode::precondition,
                "no previously misclassified points: the previous edge cannot "
                "be below 1");
  const T up = 1 + r_prev;
  const T down = 1 - r_prev;
  return Subsums<T>{T(mass(w_prev, part.i_plus) / up),
                    T(mass(w_prev, part.i_minus) / down),
                    T(mass(w_prev, part.j_plus) / up)};
}

template <typename T>
bool subsums_match(const Subsums<T>& s, const T& r_cur, double tol) {
  using Traits = ScalarTraits<T>;
  const T half = T(1) / 2;
  return Traits::same(s.i_plus, T(r_cur / 2), tol) &&
         Traits::same(s.i_minus, half, tol) &&
         Traits::same(s.j_plus, T((1 - r_cur) / 2), tol);
}

template <typename T>
T prior_mistake_mass(const WeightVector<T>& w_prev, const IndexPartition& part) {
  return mass(w_prev, part.i_minus);
}

bool ContributionVector::all_rational() const noexcept {
  return std::all_of(entries.begin(), entries.end(),
                     [](const Contribution& c) { return c.exact.has_value(); });
}

bool ContributionVector::groups_normalized(double tol) const {
  for (auto group : {ContributionGroup::i_plus, ContributionGroup::i_minus,
                     ContributionGroup::j_plus}) {
    bool any = false;
    bool exact = true;
    Rational exact_sum = 0;
    double sum = 0.0;
    for (const auto& c : entries) {
      if (c.group != group) continue;
      any = true;
      sum += c.value;
      if (c.exact)
        exact_sum += *c.exact;
      else
        exact = false;
    }
    if (!any) continue;
    if (exact ? exact_sum != 1 : std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

template <typename T>
ContributionVector contributions(const WeightVector<T>& w_prev,
                                 const T& r_prev, const IndexPartition& part,
                                 long max_denominator) {
  const Subsums<T> sums = subsums(w_prev, r_prev, part);
  const T up = 1 + r_prev;
  const T down = 1 - r_prev;
  ContributionVector out;
  auto add_group = [&](const std::vector<std::size_t>& indices,
                       ContributionGroup group, const T& scale, const T& total) {
    if (indices.empty() || !(total > 0))
      throw Error(ErrorCode::precondition,
                  "degenerate contribution group (empty or zero mass)");
    for (std::size_t i : indices) {
      T share = T(w_prev[i] / scale / total);
      Contribution c{i, group, to_double(share), std::nullopt};
      if constexpr (ScalarTraits<T>::exact)
        c.exact = share;
      else
        c.exact = rationalize(share, max_denominator, 1e-9);
      out.entries.push_back(std::move(c));
    }
  };
  add_group(part.i_plus, ContributionGroup::i_plus, up, sums.i_plus);
  add_group(part.i_minus, ContributionGroup::i_minus, down, sums.i_minus);
  add_group(part.j_plus, ContributionGroup::j_plus, up, sums.j_plus);
  std::sort(out.entries.begin(), out.entries.end(),
            [](const Contribution& x, const Contribution& y) { return x.index < y.index; });
  return out;
}

double CycleReport::mean_edge() const {
  if (edge_values.empty()) return 0.0;
  return std::accumulate(edge_values.begin(), edge_values.end(), 0.0) /
         static_cast<double>(edge_values.size());
}

template <typename T>
BoostTrace<T> slice_trace(const BoostTrace<T>& trace, std::size_t from,
                          std::size_t to) {
  to = std::min(to, trace.size());
  if (from > to) throw Error(ErrorCode::invalid_argument, "empty slice");
  BoostTrace<T> out{trace.weights_at(from), {}, trace.pool, trace.rule,
                    trace.source, HaltReason::none, 0, {}};
  for (std::size_t t = from; t < to; ++t) {
    auto step = trace.steps[t];
    step.iteration = t - from;
    out.steps.push_back(std::move(step));
  }
  return out;
}

namespace {

struct DoubleStates {
  std::vector<double> edges;
  std::vector<std::size_t> rows;
  std::vector<std::vector<double>> weights;  // weights in force at step t
};

template <typename T>
DoubleStates double_states(const BoostTrace<T>& trace, bool sorted) {
  DoubleStates s;
  s.edges = trace.edges_as_double();
  for (const auto& step : trace.steps) s.rows.push_back(step.row);
  s.weights.reserve(trace.size());
  for (std::size_t t = 0; t < trace.size(); ++t) {
    auto w = trace.weights_at(t).to_doubles();
    if (sorted) std::sort(w.begin(), w.end());
    s.weights.push_back(std::move(w));
  }
  return s;
}

double state_gap(const DoubleStates& s, std::size_t a, std::size_t b,
                 bool with_weights) {
  double gap = std::abs(s.edges[a] - s.edges[b]);
  if (with_weights) {
    // Weights can match within tol while vanishing components still flip a
    // near-tied choice; such states are not the same.
    if (s.rows[a] != s.rows[b]) return std::numeric_limits<double>::infinity();
    const auto& wa = s.weights[a];
    const auto& wb = s.weights[b];
    for (std::size_t i = 0; i < wa.size(); ++i)
      gap = std::max(gap, std::abs(wa[i] - wb[i]));
  }
  return gap;
}

// True when state t and t+k agree for every t in [end - (repeats+1)k, end - k).
bool periodic_tail(const DoubleStates& s, std::size_t end, std::size_t k,
                   std::size_t repeats, double tol, bool with_weights) {
  // Cheap rejection on the last pair first.
  if (state_gap(s, end - 1 - k, end - 1, with_weights) >= tol) return false;
  for (std::size_t t = end - (repeats + 1) * k; t + k < end; ++t)
    if (state_gap(s, t, t + k, with_weights) >= tol) return false;
  return true;
}

std::optional<std::size_t> smallest_period(const DoubleStates& s,
                                           std::size_t start, std::size_t end,
                                           std::size_t repeats, double tol,
                                           bool with_weights,
                                           std::size_t limit) {
  const std::size_t avail = end - start;
  const std::size_t k_max = std::min(limit, avail / (repeats + 1));
  for (std::size_t k = 1; k <= k_max; ++k)
    if (periodic_tail(s, end, k, repeats, tol, with_weights)) return k;
  return std::nullopt;
}

}  // namespace

template <typename T>
std::optional<CycleReport> detect_cycle(const BoostTrace<T>& trace,
                                        const CycleOptions& options) {
  const std::size_t length = trace.size();
  if (options.min_repeats < 1)
    throw Error(ErrorCode::invalid_argument, "min_repeats must be >= 1");
  if (length < 3 * options.min_repeats)
    throw Error(ErrorCode::insufficient_data,
                "cycle detection needs at least " +
                    std::to_string(3 * options.min_repeats) + " iterations");
  const DoubleStates s = double_states(trace, options.align_permutations);
  const double burn = std::clamp(options.burn_in, 0.0, 1.0);
  const std::size_t start = static_cast<std::size_t>(burn * static_cast<double>(length));
  if (start >= length) return std::nullopt;

  auto weight_period = smallest_period(s, start, length, options.min_repeats,
                                       options.tol, true, length);
  if (!weight_period) return std::nullopt;
  const std::size_t k = *weight_period;
  const std::size_t edge_period =
      smallest_period(s, start, length, options.min_repeats, options.tol,
                      false, k)
          .value_or(k);

  // Walk the phase back as far as the periodicity extends.
  std::size_t phase = length - (options.min_repeats + 1) * k;
  while (phase > 0 && state_gap(s, phase - 1, phase - 1 + k, true) < options.tol)
    --phase;

  CycleReport report;
  report.weight_period = k;
  report.edge_period = edge_period;
  report.phase = phase;
  report.window_end = length;
  for (std::size_t t = phase; t + k < length; ++t)
    report.residual = std::max(report.residual, state_gap(s, t, t + k, true));
  // Report the last whole period, where the orbit has settled most, starting
  // at an iteration congruent to the phase.
  const std::size_t edge_from = phase + (length - phase - edge_period) / edge_period * edge_period;
  report.edge_values.assign(s.edges.begin() + static_cast<long>(edge_from),
                            s.edges.begin() + static_cast<long>(edge_from + edge_period));
  const std::size_t weight_from = phase + (length - phase - k) / k * k;
  for (std::size_t t = weight_from; t < weight_from + k; ++t)
    report.weight_cycle.push_back(trace.weights_at(t).to_doubles());
  for (std::size_t i = 0; i < edge_period; ++i)
    for (std::size_t j = i + 1; j < edge_period; ++j)
      if (std::abs(report.edge_values[i] - report.edge_values[j]) < options.tol)
        report.edges_distinct = false;
  if (length - phase >= 2) report.nabla = check_nabla(trace.lattice(phase, length));
  report.farey_word = match_farey(report, options.tol);
  return report;
}

std::optional<FareyWord> match_farey(const CycleReport& report, double tol) {
  const auto& v = report.edge_values;
  if (v.empty()) return std::nullopt;
  std::vector<FareyLetter> letters;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double prev = v[i];
    const double next = v[(i + 1) % v.size()];
    if (std::abs(next - 1.0 / (1.0 + prev)) <= tol)
      letters.push_back(FareyLetter::R);
    else if (std::abs(next - prev / (1.0 + prev)) <= tol)
      letters.push_back(FareyLetter::L);
    else
      return std::nullopt;
  }
  return FareyWord(std::move(letters));
}

bool replays_farey(const FareyWord& word, std::span<const double> edges,
                   double tol) {
  if (edges.size() != word.size() || edges.empty()) return false;
  double x = edges[0];
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (x < 0.0 || x > 1.0) return false;
    x = apply_letter(word[i], x);
    if (std::abs(x - edges[(i + 1) % edges.size()]) > tol) return false;
  }
  return true;
}

const char* agreement_status_name(AgreementResult::Status status) noexcept {
  switch (status) {
    case AgreementResult::Status::agree_everywhere: return "agree_everywhere";
    case AgreementResult::Status::disagreement: return "disagreement";
    case AgreementResult::Status::precondition_failed: return "precondition_failed";
  }
  return "precondition_failed";
}

namespace {

bool same_edge_cycle(const CycleReport& x, const CycleReport& y, double tol) {
  if (x.edge_period != y.edge_period) return false;
  const std::size_t k = x.edge_period;
  for (std::size_t shift = 0; shift < k; ++shift) {
    bool all = true;
    for (std::size_t i = 0; i < k && all; ++i)
      all = std::abs(x.edge_values[i] - y.edge_values[(i + shift) % k]) < tol;
    if (all) return true;
  }
  return false;
}

template <typename T>
bool states_agree(const BoostTrace<T>& a, std::size_t ta,
                  const BoostTrace<T>& b, std::size_t tb, double tol) {
  if (a.steps[ta].eta != b.steps[tb].eta) return false;
  const auto& wa = a.weights_at(ta);
  const auto& wb = b.weights_at(tb);
  if (wa.size() != wb.size()) return false;
  for (std::size_t i = 0; i < wa.size(); ++i)
    if (!ScalarTraits<T>::same(wa[i], wb[i], tol)) return false;
  return true;
}

AgreementResult precondition(std::string detail) {
  return {AgreementResult::Status::precondition_failed, std::nullopt,
          std::move(detail)};
}

}  // namespace

template <typename T>
AgreementResult lattice_agreement(const BoostTrace<T>& a,
                                  const BoostTrace<T>& b,
                                  const LatticeWindow& window, std::size_t q,
                                  const CycleOptions& options) {
  if (window.length == 0) return precondition("empty window");
  if (window.start_a + window.length > a.size() ||
      window.start_b + window.length > b.size())
    return precondition("window exceeds a trace");
  if (q >= window.length) return precondition("q lies outside the window");

  std::optional<CycleReport> ca;
  std::optional<CycleReport> cb;
  try {
    ca = detect_cycle(a, options);
    cb = detect_cycle(b, options);
  } catch (const Error& e) {
    return precondition(std::string("cycle detection failed: ") + e.what());
  }
  if (!ca || !cb) return precondition("a trace does not cycle");
  if (!same_edge_cycle(*ca, *cb, options.tol))
    return precondition("the traces cycle on different edge values");
  if (window.start_a < ca->phase || window.start_b < cb->phase)
    return precondition("window starts before the cycling regime");
  if (window.length >= 2) {
    const auto end_a = window.start_a + window.length;
    const auto end_b = window.start_b + window.length;
    if (!check_nabla(a.lattice(window.start_a, end_a)).holds() ||
        !check_nabla(b.lattice(window.start_b, end_b)).holds())
      return precondition("periodic learning condition fails on a window");
  }
  if (!states_agree(a, window.start_a + q, b, window.start_b + q, options.tol))
    return precondition("windows do not agree at q");

  std::optional<std::size_t> first;
  for (std::size_t off = 0; off < window.length; ++off) {
    if (!states_agree(a, window.start_a + off, b, window.start_b + off,
                      options.tol)) {
      first = off;
      break;
    }
  }
  if (first)
    return {AgreementResult::Status::disagreement, first,
            "windows diverge at offset " + std::to_string(*first)};
  return {AgreementResult::Status::agree_everywhere, std::nullopt, {}};
}

#define ADACYCLE_INSTANTIATE(T)                                                \
  template T four_term_edge(const WeightVector<T>&, const T&,                  \
                            const IndexPartition&);                            \
  template T three_weight_edge(const WeightVector<T>&, const T&,               \
                               const IndexPartition&);                         \
  template struct ThreeWeightReport<T>;                                        \
  template ThreeWeightReport<T> check_thm_3wgt(const BoostTrace<T>&, double,   \
                                               std::size_t, std::size_t);      \
  template Subsums<T> subsums(const WeightVector<T>&, const T&,                \
                              const IndexPartition&);                          \
  template bool subsums_match(const Subsums<T>&, const T&, double);            \
  template T prior_mistake_mass(const WeightVector<T>&, const IndexPartition&); \
  template ContributionVector contributions(const WeightVector<T>&, const T&,  \
                                            const IndexPartition&, long);      \
  template BoostTrace<T> slice_trace(const BoostTrace<T>&, std::size_t,        \
                                     std::size_t);                             \
  template std::optional<CycleReport> detect_cycle(const BoostTrace<T>&,       \
                                                   const CycleOptions&);       \
  template AgreementResult lattice_agreement(                                  \
      const BoostTrace<T>&, const BoostTrace<T>&, const LatticeWindow&,        \
      std::size_t, const CycleOptions&);

ADACYCLE_INSTANTIATE(double)
ADACYCLE_INSTANTIATE(Rational)

#undef ADACYCLE_INSTANTIATE

}  // namespace adacycle
