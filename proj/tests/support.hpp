// Shared fixtures for the unit, property and acceptance tests.
#ifndef ADACYCLE_TESTS_SUPPORT_HPP_
#define ADACYCLE_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "adacycle/boost.hpp"
#include "adacycle/error.hpp"
#include "adacycle/simplex.hpp"

namespace adacycle::testing {

inline Rational Q(const char* text) { return parse_rational(text); }

inline std::shared_ptr<const HypothesisPool> pool_of(std::initializer_list<const char*> rows) {
  std::vector<MistakeDichotomy> out;
  for (const char* r : rows) out.push_back(MistakeDichotomy::parse(r));
  return std::make_shared<const HypothesisPool>(std::move(out), PoolOrigin::synthetic);
}

// Three points, each row misses one.
inline std::shared_ptr<const HypothesisPool> pool3() { return pool_of({"-++", "+-+", "++-"}); }
// Four points, each row misses one.
inline std::shared_ptr<const HypothesisPool> pool4() {
  return pool_of({"-+++", "+-++", "++-+", "+++-"});
}

template <typename T>
WeightVector<T> weights(std::initializer_list<const char*> values) {
  std::vector<T> c;
  for (const char* v : values) c.push_back(ScalarTraits<T>::from_rational(Q(v)));
  return WeightVector<T>::from_components(std::move(c));
}

inline std::string data_path(const std::string& name) {
  return std::string(ADACYCLE_DATA_DIR) + "/" + name;
}

// Writes contents to a fresh file under the temp directory.
inline std::string temp_file(const std::string& name, const std::string& contents) {
  auto dir = std::filesystem::temp_directory_path() / "adacycle_tests";
  std::filesystem::create_directories(dir);
  auto path = (dir / name).string();
  std::ofstream(path, std::ios::binary) << contents;
  return path;
}

template <typename F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected an adacycle::Error");
}

inline Integer fibonacci(unsigned n) {
  Integer a = 0, b = 1;  // F_0, F_1
  for (unsigned i = 0; i < n; ++i) {
    Integer c = a + b;
    a = b;
    b = c;
  }
  return a;
}

// Random pool: n points, m rows, every row with at least one +1.
inline std::shared_ptr<const HypothesisPool> random_pool(std::mt19937_64& rng, std::size_t n,
                                                         std::size_t m) {
  std::bernoulli_distribution coin(0.6);
  std::vector<MistakeDichotomy> rows;
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<std::int8_t> e(n);
    bool any = false;
    for (auto& x : e) {
      x = coin(rng) ? 1 : -1;
      any = any || x > 0;
    }
    if (!any) e[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = 1;
    rows.emplace_back(std::move(e));
  }
  return std::make_shared<const HypothesisPool>(std::move(rows), PoolOrigin::synthetic);
}

inline SelectionRule random_rule(std::mt19937_64& rng, std::size_t pool_rows) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return SelectionRule::optimal();
    case 1: {
      Rational theta(std::uniform_int_distribution<int>(1, 9)(rng), 10);
      theta.canonicalize();
      return SelectionRule::first_above(theta);
    }
    default: {
      // Repeated rows force points to be misclassified twice in a row.
      std::vector<std::size_t> seq(std::uniform_int_distribution<std::size_t>(1, 4)(rng));
      for (auto& s : seq) s = std::uniform_int_distribution<std::size_t>(0, pool_rows - 1)(rng);
      return SelectionRule::fixed_sequence(std::move(seq));
    }
  }
}

// Short exact traces over random pools (n <= 8 points, m <= 12 rows,
// t <= 10 steps) and random rules. Deterministic for a given seed.
inline std::vector<BoostTrace<Rational>> fuzz_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BoostTrace<Rational>> out;
  while (out.size() < count) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    auto pool = random_pool(rng, n, m);
    auto rule = random_rule(rng, pool->rows());
    const std::size_t t = std::uniform_int_distribution<std::size_t>(2, 10)(rng);
    auto trace = run<Rational>(pool, rule, t);
    if (trace.size() >= 2) out.push_back(std::move(trace));
  }
  return out;
}

}  // namespace adacycle::testing

#endif  // ADACYCLE_TESTS_SUPPORT_HPP_
