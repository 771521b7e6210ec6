#include <doctest.h>

#include <algorithm>
#include <random>

#include "adacycle/learners.hpp"
#include "support.hpp"

using namespace adacycle;
using namespace adacycle::testing;

namespace {
const Dataset& iris_versicolor() {
  static const Dataset ds = load_csv(data_path("iris.csv"), "species", "versicolor");
  return ds;
}

Dataset toy(std::vector<double> x, std::size_t cols, std::vector<std::int8_t> y) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < cols; ++c) names.push_back("f" + std::to_string(c));
  return Dataset(std::move(x), cols, std::move(y), std::move(names), {});
}

double weighted_error(const TreeHypothesis& h, const Dataset& ds, const std::vector<double>& w) {
  double e = 0;
  for (std::size_t i = 0; i < ds.rows(); ++i)
    if (h.predict(ds.row(i)) != ds.label(i)) e += w[i];
  return e;
}

// Best single split by exhaustive search over features, midpoints and leaf
// labels.
double best_stump_error(const Dataset& ds, const std::vector<double>& w) {
  double best = 1.0;
  for (std::size_t f = 0; f < ds.cols(); ++f) {
    std::vector<double> v;
    for (std::size_t i = 0; i < ds.rows(); ++i) v.push_back(ds.at(i, f));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
      const double thr = (v[k] + v[k + 1]) / 2;
      for (int left : {-1, 1}) {
        double e = 0;
        for (std::size_t i = 0; i < ds.rows(); ++i) {
          const int pred = ds.at(i, f) <= thr ? left : -left;
          if (pred != ds.label(i)) e += w[i];
        }
        best = std::min(best, e);
      }
    }
  }
  return best;
}
}  // namespace

TEST_SUITE("learners") {
  TEST_CASE("iris loads") {
    const auto& ds = iris_versicolor();
    CHECK(ds.rows() == 150);
    CHECK(ds.cols() == 4);
    CHECK(ds.positives() == 50);
    CHECK(ds.feature_names() ==
          std::vector<std::string>{"sepal_length", "sepal_width", "petal_length", "petal_width"});
    CHECK(ds.at(0, 0) == 5.1);
    CHECK(ds.label(0) == -1);
    CHECK(ds.label(50) == 1);
    CHECK(ds.provenance().original_size == 150);
    CHECK(ds.provenance().dropped_rows == 0);
    CHECK(ds.provenance().positive_class == "versicolor");

    auto wine = load_csv(data_path("wine.csv"), "cultivar", "class_0");
    CHECK(wine.rows() == 178);
    CHECK(wine.cols() == 13);
    CHECK(wine.positives() == 59);
  }

  TEST_CASE("csv errors") {
    auto one = temp_file("one.csv", "a,b,y\n1,2,p\n");
    CHECK(error_code_of([&] { load_csv(one, "y", "p"); }) == ErrorCode::insufficient_data);
    CHECK(error_code_of([&] { load_csv(data_path("iris.csv"), "label", "x"); }) ==
          ErrorCode::parse);
    CHECK(error_code_of([&] { load_csv(data_path("nope.csv"), "y", "p"); }) == ErrorCode::io);
    auto ragged = temp_file("ragged.csv", "a,y\n1,p\n2\n");
    CHECK(error_code_of([&] { load_csv(ragged, "y", "p"); }) == ErrorCode::parse);
    auto empty = temp_file("empty.csv", "");
    CHECK(error_code_of([&] { load_csv(empty, "y", "p"); }) == ErrorCode::parse);

    auto messy = temp_file("messy.csv", "a,b,y\n1,2,p\nx,2,q\n3,,p\n4,5,q\n");
    auto ds = load_csv(messy, "y", "p");
    CHECK(ds.rows() == 2);
    CHECK(ds.provenance().dropped_rows == 2);
    CHECK(ds.provenance().original_size == 4);
    CHECK(ds.labels() == std::vector<std::int8_t>{1, -1});
  }

  TEST_CASE("sampling") {
    const auto& ds = iris_versicolor();
    auto a = sample(ds, 40, 7);
    auto b = sample(ds, 40, 7);
    auto c = sample(ds, 40, 8);
    CHECK(a.rows() == 40);
    CHECK(a.labels() == b.labels());
    bool same = true;
    for (std::size_t i = 0; i < 40; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        CHECK(a.at(i, j) == b.at(i, j));
        same = same && a.at(i, j) == c.at(i, j);
      }
    CHECK_FALSE(same);
    CHECK(a.provenance().seed == 7u);
    CHECK(a.provenance().sample_size == 40u);
    CHECK(sample(ds, 150, 1).rows() == 150);
    CHECK(error_code_of([&] { sample(ds, 151, 1); }) == ErrorCode::invalid_argument);
    CHECK(error_code_of([&] { sample(ds, 0, 1); }) == ErrorCode::invalid_argument);
  }

  TEST_CASE("trees on separable data") {
    auto ds = toy({0, 1, 2, 3, 10, 11, 12, 13}, 1, {-1, -1, -1, -1, 1, 1, 1, 1});
    std::vector<double> w(8, 1.0 / 8);
    auto h = train_tree(ds, w, {1, 2});
    CHECK(h.depth() == 1);
    CHECK(h.leaf_count() == 2);
    CHECK(weighted_error(h, ds, w) == 0);
    CHECK(h.nodes()[0].threshold == 6.5);
    auto eta = dichotomy_of(h, ds);
    CHECK(eta.misclassified().empty());
    auto flipped = dichotomy_of(h.flipped(), ds);
    CHECK(flipped.misclassified().size() == 8);
    CHECK_THROWS_AS(train_tree(ds, w, {0, 2}), Error);
    CHECK_THROWS_AS(train_tree(ds, w, {1, 1}), Error);
    CHECK_THROWS_AS(train_tree(ds, std::vector<double>(3, 0.1), {1, 2}), Error);
  }

  TEST_CASE("bounds are respected") {
    const auto& ds = iris_versicolor();
    std::vector<double> w(ds.rows(), 1.0 / static_cast<double>(ds.rows()));
    for (std::size_t depth = 1; depth <= 4; ++depth)
      for (std::size_t leaves = 2; leaves <= 6; ++leaves) {
        auto h = train_tree(ds, w, {depth, leaves});
        CHECK(h.depth() <= depth);
        CHECK(h.leaf_count() <= leaves);
      }
  }

  TEST_CASE("weight concentrated on one point") {
    const auto& ds = iris_versicolor();
    std::vector<double> w(ds.rows(), 1e-6);
    w[120] = 1.0;
    auto h = train_tree(ds, w, {1, 2});
    CHECK(h.predict(ds.row(120)) == ds.label(120));
  }

  TEST_CASE("stumps match exhaustive search") {
    const auto& ds = iris_versicolor();
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> w(ds.rows());
      double sum = 0;
      for (auto& x : w) sum += x = u(rng);
      for (auto& x : w) x /= sum;
      auto h = train_tree(ds, w, {1, 2});
      CHECK(weighted_error(h, ds, w) == doctest::Approx(best_stump_error(ds, w)).epsilon(1e-12));
      // Deterministic.
      auto again = train_tree(ds, w, {1, 2});
      CHECK(again.nodes()[0].feature == h.nodes()[0].feature);
      CHECK(again.nodes()[0].threshold == h.nodes()[0].threshold);
    }
  }

  TEST_CASE("boosting on a dataset") {
    const auto& ds = iris_versicolor();
    auto one = run_on_dataset<double>(ds, {3, 4}, 1);
    REQUIRE(one.size() == 1);
    CHECK(one.steps[0].edge > 0);
    CHECK(one.source.kind == "dataset");
    CHECK(one.source.positive_class == "versicolor");
    CHECK(one.source.max_depth == 3u);
    CHECK(one.rule == "optimal");

    auto trace = run_on_dataset<double>(ds, {2, 3}, 200);
    CHECK(trace.size() == 200);
    for (const auto& s : trace.steps) {
      CHECK(s.edge > 0);
      CHECK(s.edge < 1);
      CHECK(s.row < trace.pool->rows());
      CHECK(trace.pool->row(s.row) == s.eta);
    }

    auto setosa = load_csv(data_path("iris.csv"), "species", "setosa");
    auto done = run_on_dataset<double>(setosa, {3, 4}, 10);
    CHECK(done.halt == HaltReason::perfect_classification);
    CHECK(done.size() == 0);
    CHECK(done.pool->rows() == 1);
    CHECK_THROWS_AS(run_on_dataset<double>(ds, {3, 4}, 0), Error);
  }
}
