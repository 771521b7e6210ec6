#ifndef ADACYCLE_CYCLE_HPP_
#define ADACYCLE_CYCLE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adacycle/boost.hpp"
#include "adacycle/farey.hpp"
#include "adacycle/simplex.hpp"

namespace adacycle {

// Indices split by correctness at the previous and the current iteration:
//   i_plus  correct then correct       i_minus  misclassified then correct
//   j_plus  correct then misclassified j_minus  misclassified twice
struct IndexPartition {
  std::vector<std::size_t> i_plus;
  std::vector<std::size_t> i_minus;
  std::vector<std::size_t> j_plus;
  std::vector<std::size_t> j_minus;

  // j_minus is empty exactly when the periodic learning condition holds
  // between the two iterations.
  bool nabla_holds() const noexcept { return j_minus.empty(); }
};

IndexPartition partition(const MistakeDichotomy& eta_prev,
                         const MistakeDichotomy& eta_cur);

// The current edge written through the previous weights and edge, one term
// per index set. Equals edge_dot(weight_update(w_prev, eta_prev, r_prev),
// eta_cur).
template <typename T>
T four_term_edge(const WeightVector<T>& w_prev, const T& r_prev,
                 const IndexPartition& part);

// (1 + r_prev - 2 * sum_{j_plus} w_prev) / (1 + r_prev): the three-weight
// edge update, which reproduces the true edge iff j_minus is empty.
template <typename T>
T three_weight_edge(const WeightVector<T>& w_prev, const T& r_prev,
                    const IndexPartition& part);

template <typename T>
struct ThreeWeightStep {
  std::size_t iteration;
  bool nabla_holds;
  T predicted;
  T edge;
  bool matches;
};

template <typename T>
struct ThreeWeightReport {
  std::vector<ThreeWeightStep<T>> steps;

  // Iterations where the three-weight update differs from the edge.
  std::vector<std::size_t> mismatches() const;
  // Iterations where "matches" and "periodic learning holds" disagree. Empty
  // whenever the three-weight update is exact precisely on those steps.
  std::vector<std::size_t> biconditional_exceptions() const;
};

// Checks iterations [max(from, 1), to) of the trace. Exact traces compare
// exactly; float traces use tol.
template <typename T>
ThreeWeightReport<T> check_thm_3wgt(const BoostTrace<T>& trace,
                                    double tol = 1e-9, std::size_t from = 1,
                                    std::size_t to = static_cast<std::size_t>(-1));

// Scaled subsums of the three-term edge form (requires j_minus empty):
//   i_plus  = sum w/(1+r_prev)   expected r_t/2
//   i_minus = sum w/(1-r_prev)   expected 1/2
//   j_plus  = sum w/(1+r_prev)   expected (1-r_t)/2
template <typename T>
struct Subsums {
  T i_plus;
  T i_minus;
  T j_plus;
};

template <typename T>
Subsums<T> subsums(const WeightVector<T>& w_prev, const T& r_prev,
                   const IndexPartition& part);

template <typename T>
bool subsums_match(const Subsums<T>& s, const T& r_cur, double tol = 1e-9);

// sum_{i_minus} w_prev, which equals (1 - r_prev)/2 under the condition.
template <typename T>
T prior_mistake_mass(const WeightVector<T>& w_prev, const IndexPartition& part);

enum class ContributionGroup { i_plus, i_minus, j_plus };

struct Contribution {
  std::size_t index;
  ContributionGroup group;
  double value;
  // Exact share; in float mode this is the rational reconstruction, absent
  // when no rational with denominator <= the cap fits.
  std::optional<Rational> exact;
};

struct ContributionVector {
  std::vector<Contribution> entries;

  bool all_rational() const noexcept;
  // Group sums equal 1 (exactly when every share is exact, else within tol).
  bool groups_normalized(double tol = 1e-9) const;
};

inline constexpr long kMaxContributionDenominator = 1'000'000;

template <typename T>
ContributionVector contributions(const WeightVector<T>& w_prev,
                                 const T& r_prev, const IndexPartition& part,
                                 long max_denominator = kMaxContributionDenominator);

struct CycleOptions {
  double tol = 1e-9;
  std::size_t min_repeats = 3;
  double burn_in = 0.5;  // fraction of the trace skipped before searching
  // Compare weight vectors as sorted multisets, so cycles that permute rows
  // still register.
  bool align_permutations = false;
};

struct CycleReport {
  std::size_t edge_period = 0;
  std::size_t weight_period = 0;
  std::size_t phase = 0;       // first iteration of the periodic regime
  std::size_t window_end = 0;  // one past the last inspected iteration
  std::vector<double> edge_values;                // one edge period
  std::vector<std::vector<double>> weight_cycle;  // one weight period
  double residual = 0.0;  // max deviation across the verified window
  bool edges_distinct = true;
  std::optional<NablaResult> nabla;
  std::optional<FareyWord> farey_word;

  double mean_edge() const;
};

template <typename T>
BoostTrace<T> slice_trace(const BoostTrace<T>& trace, std::size_t from,
                          std::size_t to);

// Smallest period whose repetition holds for min_repeats further periods at
// the end of the trace, for weights (with edges and chosen rows) and for
// edges alone.
template <typename T>
std::optional<CycleReport> detect_cycle(const BoostTrace<T>& trace,
                                        const CycleOptions& options = {});

// Classifies each consecutive edge pair of the cycle as an R step
// (r' = 1/(1+r)) or an L step (r' = r/(1+r)).
std::optional<FareyWord> match_farey(const CycleReport& report,
                                     double tol = 1e-9);

// Applies the word from edges[0] and checks each visited value against the
// following edge (cyclically) within tol.
bool replays_farey(const FareyWord& word, std::span<const double> edges,
                   double tol);

struct LatticeWindow {
  std::size_t start_a = 0;
  std::size_t start_b = 0;
  std::size_t length = 0;
};

struct AgreementResult {
  enum class Status { agree_everywhere, disagreement, precondition_failed };
  Status status = Status::precondition_failed;
  std::optional<std::size_t> first_disagreement;  // window offset
  std::string detail;
};

const char* agreement_status_name(AgreementResult::Status status) noexcept;

// Two cycling windows that share dichotomy and weights at offset q should
// agree at every offset. Precondition failures (no shared edge cycle,
// periodic learning broken, no agreement at q) are reported separately from
// disagreements, which would be counterexamples.
template <typename T>
AgreementResult lattice_agreement(const BoostTrace<T>& a,
                                  const BoostTrace<T>& b,
                                  const LatticeWindow& window, std::size_t q,
                                  const CycleOptions& options = {});

}  // namespace adacycle

#endif  // ADACYCLE_CYCLE_HPP_
