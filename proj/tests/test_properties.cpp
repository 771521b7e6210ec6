// Randomized invariants over many small exact traces.
#include <doctest.h>

#include <cmath>
#include <random>

#include "adacycle/cycle.hpp"
#include "support.hpp"

using namespace adacycle;
using namespace adacycle::testing;

TEST_SUITE("properties") {
  TEST_CASE("four-term edge, three-weight biconditional, weight values") {
    const auto corpus = fuzz_corpus(1200, 20261018);
    std::size_t steps = 0, with_repeat = 0, wvals = 0;
    for (const auto& trace : corpus) {
      for (std::size_t t = 1; t < trace.size(); ++t) {
        ++steps;
        const auto& prev = trace.steps[t - 1];
        const auto& cur = trace.steps[t];
        const auto& w = trace.weights_at(t - 1);
        auto part = partition(prev.eta, cur.eta);
        CHECK(four_term_edge(w, prev.edge, part) == cur.edge);
        const bool matches = three_weight_edge(w, prev.edge, part) == cur.edge;
        CHECK(matches == part.nabla_holds());
        if (!part.nabla_holds()) ++with_repeat;
        if (part.nabla_holds() && !part.i_minus.empty()) {
          ++wvals;
          CHECK(prior_mistake_mass(w, part) == (1 - prev.edge) / 2);
          CHECK(subsums_match(subsums(w, prev.edge, part), cur.edge));
          CHECK(contributions(w, prev.edge, part).groups_normalized());
        }
      }
      auto report = check_thm_3wgt(trace);
      CHECK(report.biconditional_exceptions().empty());
    }
    CHECK(corpus.size() == 1200);
    // Both sides of the biconditional get exercised.
    CHECK(with_repeat > 50);
    CHECK(steps - with_repeat > 50);
    CHECK(wvals > 50);
  }

  TEST_CASE("rational update against the exponential form") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::size_t checked = 0;
    while (checked < 1000) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 9)(rng);
      std::vector<double> c(n);
      double sum = 0;
      for (auto& x : c) sum += x = u(rng);
      for (auto& x : c) x /= sum;
      auto w = WeightVector<double>::normalized(c);
      std::vector<std::int8_t> e(n);
      for (auto& x : e) x = rng() & 1 ? 1 : -1;
      e[0] = 1;
      e[1] = -1;
      MistakeDichotomy eta(e);
      const double r = edge_dot(w, eta);
      if (!(r > 0) || !(r < 1)) continue;
      auto a = weight_update(w, eta, r);
      auto b = exponential_update(w, eta, alpha(r));
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
      // After the update the chosen dichotomy has edge zero.
      CHECK(std::abs(edge_dot(a, eta)) < 1e-12);
      ++checked;
    }
  }

  TEST_CASE("exact weights stay on the simplex") {
    for (const auto& trace : fuzz_corpus(200, 5)) {
      for (std::size_t t = 0; t <= trace.size(); ++t) {
        Rational sum = 0;
        for (std::size_t i = 0; i < trace.weights_at(t).size(); ++i) {
          CHECK(trace.weights_at(t)[i] > 0);
          sum += trace.weights_at(t)[i];
        }
        CHECK(sum == 1);
      }
    }
  }
}
