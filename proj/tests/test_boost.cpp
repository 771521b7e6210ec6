#include <doctest.h>

#include <cmath>

#include "adacycle/boost.hpp"
#include "adacycle/error.hpp"
#include "support.hpp"

using namespace adacycle;
using namespace adacycle::testing;

TEST_SUITE("boost") {
  TEST_CASE("selection rules") {
    auto pool = pool3();
    auto s = select(WeightVector<Rational>::uniform(3), *pool, SelectionRule::optimal());
    CHECK(s.row == 0);  // three-way tie at 1/3
    CHECK(s.edge == Q("1/3"));

    auto w = weights<Rational>({"1/2", "1/4", "1/4"});
    s = select(w, *pool, SelectionRule::optimal());
    CHECK(s.row == 1);  // edges 0, 1/2, 1/2
    CHECK(s.edge == Q("1/2"));

    s = select(w, *pool, SelectionRule::first_above(Q("2/5")));
    CHECK(s.row == 1);
    CHECK(s.edge == Q("1/2"));

    // Nothing clears the threshold: falls back to the best row.
    s = select(w, *pool, SelectionRule::first_above(Q("9/10")));
    CHECK(s.row == 1);

    auto fixed = SelectionRule::fixed_sequence({2, 0});
    CHECK(select(w, *pool, fixed, 0).row == 2);
    CHECK(select(WeightVector<Rational>::uniform(3), *pool, fixed, 1).row == 0);
    CHECK_THROWS_AS(select(w, *pool, fixed, 1), Error);  // row 0 has edge 0 here
    CHECK(select(w, *pool, fixed, 2).row == 2);
  }

  TEST_CASE("weak learning failure") {
    auto pool = pool_of({"+-"});
    CHECK_THROWS_AS(select(WeightVector<Rational>::uniform(2), *pool, SelectionRule::optimal()),
                    Error);
    try {
      select(WeightVector<Rational>::uniform(2), *pool, SelectionRule::optimal());
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::weak_learning_failure);
    }
    auto trace = run<Rational>(pool, SelectionRule::optimal(), 5);
    CHECK(trace.size() == 0);
    CHECK(trace.halt == HaltReason::weak_learning_failure);
  }

  TEST_CASE("rule syntax") {
    CHECK(SelectionRule::parse("optimal").kind() == SelectionRule::Kind::optimal);
    auto r = SelectionRule::parse("first-above:0.4");
    CHECK(r.kind() == SelectionRule::Kind::first_above);
    CHECK(r.threshold() == Q("2/5"));
    CHECK(r.to_string() == "first-above:2/5");
    CHECK(SelectionRule::parse("fixed:0,2,1").sequence() == std::vector<std::size_t>{0, 2, 1});
    CHECK(SelectionRule::parse(SelectionRule::parse("fixed:1,0").to_string()).sequence() ==
          std::vector<std::size_t>{1, 0});
    for (const char* bad : {"best", "first-above:", "first-above:1", "first-above:0",
                            "first-above:x", "fixed:", "fixed:a"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(SelectionRule::parse(bad), Error);
    }
  }

  TEST_CASE("weight update against the exponential oracle") {
    auto w = WeightVector<Rational>::uniform(3);
    auto next = weight_update(w, MistakeDichotomy::parse("-++"), Q("1/3"));
    CHECK(next == weights<Rational>({"1/2", "1/4", "1/4"}));
    next = weight_update(next, MistakeDichotomy::parse("+-+"), Q("1/2"));
    CHECK(next == weights<Rational>({"1/3", "1/2", "1/6"}));

    auto e = exponential_update(WeightVector<double>::uniform(3), MistakeDichotomy::parse("-++"),
                                0.5 * std::log(2.0));
    CHECK(std::abs(e[0] - 0.5) < 1e-14);
    CHECK(std::abs(e[1] - 0.25) < 1e-14);
    CHECK(std::abs(e[2] - 0.25) < 1e-14);

    auto same = exponential_update(WeightVector<double>::uniform(4),
                                   MistakeDichotomy::parse("-+-+"), 0.0);
    for (std::size_t i = 0; i < 4; ++i) CHECK(same[i] == doctest::Approx(0.25).epsilon(1e-15));

    auto sym = exponential_update(WeightVector<double>::uniform(5),
                                  MistakeDichotomy::parse("-+--+"), 0.73);
    CHECK(sym[0] == sym[2]);
    CHECK(sym[2] == sym[3]);
  }

  TEST_CASE("weight update errors") {
    auto w = WeightVector<Rational>::uniform(3);
    auto eta = MistakeDichotomy::parse("-++");
    auto code = [&](const Rational& r) {
      try {
        weight_update(w, eta, r);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::invalid_argument;
    };
    CHECK(code(1) == ErrorCode::perfect_classification);
    CHECK(code(0) == ErrorCode::domain);
    CHECK(code(Q("1/2")) == ErrorCode::domain);  // disagrees with w . eta
  }

  TEST_CASE("alpha") {
    CHECK(alpha(Q("1/3")) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(alpha(Q("3/5")) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(alpha(1e-12) > 0);
    CHECK(alpha(1e-12) < alpha(1e-6));
    CHECK_THROWS_AS(alpha(0.0), Error);
    CHECK_THROWS_AS(alpha(1.0), Error);
  }

  TEST_CASE("exact run follows Fibonacci ratios") {
    auto trace = run<Rational>(pool3(), SelectionRule::optimal(), 6);
    REQUIRE(trace.size() == 6);
    const char* expected[] = {"1/3", "1/2", "2/3", "3/5", "5/8", "8/13"};
    for (std::size_t t = 0; t < 6; ++t) CHECK(trace.steps[t].edge == Q(expected[t]));
    CHECK(trace.weights_at(2) == weights<Rational>({"1/3", "1/2", "1/6"}));
    CHECK(trace.weights_at(3) == weights<Rational>({"1/5", "3/10", "1/2"}));
    CHECK(trace.steps[3].row == 0);
    for (std::size_t t = 0; t < trace.size(); ++t)
      CHECK(trace.steps[t].weights_after ==
            weight_update(trace.weights_at(t), trace.steps[t].eta, trace.steps[t].edge));
  }

  TEST_CASE("float run reaches the golden edge") {
    auto trace = run<double>(pool3(), SelectionRule::optimal(), 200);
    CHECK(std::abs(trace.steps.back().edge - (std::sqrt(5.0) - 1) / 2) < 1e-9);
  }

  TEST_CASE("first-above 2/5") {
    // On the three-point pool the runner-up edge (~0.382) never clears 2/5,
    // so the rule matches optimal and the run stays on the golden edge.
    auto golden = run<double>(pool3(), SelectionRule::first_above(Q("2/5")), 500);
    CHECK(std::abs(golden.steps.back().edge - 0.6180339887498949) < 1e-9);
    // The four-point pool gives the 2-cycle.
    auto two = run<double>(pool4(), SelectionRule::first_above(Q("2/5")), 500);
    const double a = two.steps[498].edge, b = two.steps[499].edge;
    CHECK(std::abs(std::min(a, b) - (std::sqrt(2.0) - 1)) < 1e-9);
    CHECK(std::abs(std::max(a, b) - 1 / std::sqrt(2.0)) < 1e-9);
  }

  TEST_CASE("perfect classification halts the run") {
    auto trace = run<Rational>(pool_of({"-++", "+++"}), SelectionRule::optimal(), 4);
    CHECK(trace.size() == 0);
    CHECK(trace.halt == HaltReason::perfect_classification);
    CHECK_THROWS_AS(run<double>(pool3(), SelectionRule::optimal(), 0), Error);
  }

  TEST_CASE("strong classifier") {
    auto trace = run<Rational>(pool3(), SelectionRule::optimal(), 1);
    std::vector<std::vector<std::int8_t>> preds{{1, -1, 1}, {1, 1, 1}, {-1, -1, -1}};
    auto c = strong_classify(trace, preds);
    CHECK(c.labels == preds[0]);

    auto two = run<Rational>(pool_of({"-++", "+-+"}), SelectionRule::fixed_sequence({0, 1}), 2);
    REQUIRE(two.size() == 2);
    two.steps[1].alpha = two.steps[0].alpha;
    std::vector<std::vector<std::int8_t>> opposite{{1, 1, 1}, {-1, 1, 1}};
    auto tie = strong_classify(two, opposite);
    CHECK(tie.tie[0]);
    CHECK(tie.labels[0] == 1);
    CHECK_FALSE(tie.tie[1]);

    // Six golden steps, predictions equal to the labels (+1) where correct:
    // every point is correct by the alpha-weighted majority.
    auto six = run<Rational>(pool3(), SelectionRule::optimal(), 6);
    std::vector<std::vector<std::int8_t>> h;
    for (const auto& row : six.pool->all_rows())
      h.emplace_back(row.entries().begin(), row.entries().end());
    auto strong = strong_classify(six, h);
    CHECK(strong.labels == std::vector<std::int8_t>{1, 1, 1});
  }

  TEST_CASE("float and exact runs agree") {
    auto e = run<Rational>(pool3(), SelectionRule::optimal(), 40);
    auto f = run<double>(pool3(), SelectionRule::optimal(), 40);
    for (std::size_t t = 0; t < 40; ++t) {
      CHECK(e.steps[t].row == f.steps[t].row);
      CHECK(to_double(e.steps[t].edge) == doctest::Approx(f.steps[t].edge).epsilon(1e-12));
    }
  }
}
