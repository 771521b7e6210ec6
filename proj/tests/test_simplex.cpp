#include <doctest.h>

#include "adacycle/error.hpp"
#include "adacycle/simplex.hpp"
#include "support.hpp"

using namespace adacycle;
using namespace adacycle::testing;

TEST_SUITE("simplex") {
  TEST_CASE("weight vectors live on the simplex") {
    auto u = WeightVector<Rational>::uniform(3);
    CHECK(u.sum() == 1);
    CHECK(u[1] == Rational(1, 3));
    CHECK_THROWS_AS(WeightVector<Rational>::from_components({Q("1/2"), Q("1/3")}), Error);
    CHECK_THROWS_AS(WeightVector<Rational>::from_components({Q("3/2"), Q("-1/2")}), Error);
    CHECK_THROWS_AS(WeightVector<Rational>::from_components({Q("1"), Q("0")}), Error);
    CHECK_NOTHROW(WeightVector<double>::from_components({0.5, 0.5 + 1e-13}));
    CHECK_THROWS_AS(WeightVector<double>::from_components({0.5, 0.5 + 1e-9}), Error);
    CHECK_THROWS_AS(WeightVector<double>::uniform(0), Error);
  }

  TEST_CASE("stored weights keep their bits") {
    std::vector<double> c{0.1, 0.2, 0.7000000000000001};
    auto w = WeightVector<double>::stored(c);
    CHECK(w[2] == c[2]);
    CHECK_NOTHROW(WeightVector<double>::stored({0.0, 1.0}));
    CHECK_THROWS_AS(WeightVector<double>::stored({0.5, 0.6}), Error);
  }

  TEST_CASE("dichotomies") {
    auto d = MistakeDichotomy::parse("+-+");
    CHECK(d.size() == 3);
    CHECK(d[1] == -1);
    CHECK(d.to_string() == "+-+");
    CHECK(d.negated().to_string() == "-+-");
    CHECK(d.misclassified() == std::vector<std::size_t>{1});
    CHECK(MistakeDichotomy::parse("+\xE2\x88\x92+") == d);
    const int ints[] = {1, -1, 1};
    CHECK(MistakeDichotomy::from_ints(ints) == d);
    const int bad[] = {1, 0};
    CHECK_THROWS_AS(MistakeDichotomy::from_ints(bad), Error);
    CHECK_THROWS_AS(MistakeDichotomy::parse("+x"), Error);
    CHECK_FALSE(MistakeDichotomy::parse("--").has_correct());
  }

  TEST_CASE("pools validate and drop duplicates in order") {
    auto p = pool_of({"+-+", "-++", "+-+", "++-"});
    CHECK(p->rows() == 3);
    CHECK(p->dropped_duplicates() == 1);
    CHECK(p->row(0).to_string() == "+-+");
    CHECK(p->row(2).to_string() == "++-");
    CHECK(p->index_of(MistakeDichotomy::parse("++-")) == 2u);
    CHECK_FALSE(p->index_of(MistakeDichotomy::parse("+++")).has_value());
    CHECK_THROWS_AS(pool_of({"+-", "+-+"}), Error);
    CHECK_THROWS_AS(pool_of({"---"}), Error);
    CHECK_THROWS_AS(HypothesisPool({}, PoolOrigin::synthetic), Error);
  }

  TEST_CASE("edge_dot") {
    CHECK(edge_dot(WeightVector<Rational>::uniform(3), MistakeDichotomy::parse("++-")) == Q("1/3"));
    CHECK(edge_dot(weights<Rational>({"1/2", "1/4", "1/4"}), MistakeDichotomy::parse("+++")) == 1);
    CHECK(edge_dot(weights<Rational>({"1/2", "1/4", "1/4"}), MistakeDichotomy::parse("-++")) == 0);
    CHECK_THROWS_AS(edge_dot(WeightVector<Rational>::uniform(3), MistakeDichotomy::parse("++")),
                    Error);
  }

  TEST_CASE("edge_from_misclassified") {
    const std::size_t last[] = {2};
    CHECK(edge_from_misclassified(WeightVector<Rational>::uniform(3), std::span(last)) == Q("1/3"));
    CHECK(edge_from_misclassified(weights<Rational>({"1/5", "3/10", "1/2"}),
                                  std::span<const std::size_t>()) == 1);
    const std::size_t first[] = {0};
    CHECK(edge_from_misclassified(weights<Rational>({"1/5", "3/10", "1/2"}), std::span(first)) ==
          Q("3/5"));
    const std::size_t out_of_range[] = {3};
    CHECK_THROWS_AS(
        edge_from_misclassified(WeightVector<Rational>::uniform(3), std::span(out_of_range)), Error);
  }

  TEST_CASE("edge forms agree") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
      auto pool = random_pool(rng, 6, 1);
      std::vector<Rational> c;
      Rational total = 0;
      for (int k = 0; k < 6; ++k) {
        c.emplace_back(std::uniform_int_distribution<int>(1, 50)(rng));
        total += c.back();
      }
      for (auto& x : c) x /= total;
      auto w = WeightVector<Rational>::from_components(c);
      auto miss = pool->row(0).misclassified();
      CHECK(edge_dot(w, pool->row(0)) == edge_from_misclassified(w, std::span<const std::size_t>(miss)));
    }
  }

  TEST_CASE("periodic learning condition") {
    // The golden run's 3x6 lattice: each point misses once every three steps.
    auto trace = run<Rational>(pool3(), SelectionRule::optimal(), 6);
    CHECK(check_nabla(trace.lattice()).holds());

    MistakeLattice twice({MistakeDichotomy::parse("-++"), MistakeDichotomy::parse("-++")});
    auto r = check_nabla(twice);
    REQUIRE_FALSE(r.holds());
    CHECK(r.violation->row == 0);
    CHECK(r.violation->iteration == 0);

    MistakeLattice later({MistakeDichotomy::parse("++-+"), MistakeDichotomy::parse("+-++"),
                          MistakeDichotomy::parse("+-++")});
    r = check_nabla(later);
    REQUIRE_FALSE(r.holds());
    CHECK(r.violation->row == 1);
    CHECK(r.violation->iteration == 1);

    CHECK_THROWS_AS(check_nabla(MistakeLattice({MistakeDichotomy::parse("-++")})), Error);
  }
}
