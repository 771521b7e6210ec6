#include <doctest.h>

#include "adacycle/learners.hpp"
#include "adacycle/trace_io.hpp"
#include "support.hpp"

using namespace adacycle;
using namespace adacycle::testing;

namespace {
void replace_once(std::string& s, const std::string& from, const std::string& to) {
  auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  s.replace(pos, from.size(), to);
}
}  // namespace

TEST_SUITE("trace_io") {
  TEST_CASE("exact round trip") {
    AnyTrace trace = run<Rational>(pool3(), SelectionRule::optimal(), 25);
    const auto text = serialize_trace(trace);
    auto back = parse_trace(text);
    REQUIRE(std::holds_alternative<BoostTrace<Rational>>(back));
    CHECK(serialize_trace(back) == text);
    const auto& a = std::get<BoostTrace<Rational>>(trace);
    const auto& b = std::get<BoostTrace<Rational>>(back);
    CHECK(a.edges() == b.edges());
    CHECK(b.steps[24].edge == Q("75025/121393"));
    CHECK(text.find("\"edge_exact\": \"1/3\"") != std::string::npos);
  }

  TEST_CASE("float round trip is bit exact") {
    AnyTrace trace = run<double>(pool4(), SelectionRule::first_above(Q("2/5")), 300);
    const auto text = serialize_trace(trace);
    auto back = parse_trace(text);
    REQUIRE(std::holds_alternative<BoostTrace<double>>(back));
    CHECK(serialize_trace(back) == text);
    const auto& a = std::get<BoostTrace<double>>(trace);
    const auto& b = std::get<BoostTrace<double>>(back);
    CHECK(a.edges() == b.edges());
    for (std::size_t t = 0; t < a.size(); ++t) {
      CHECK(a.steps[t].alpha == b.steps[t].alpha);
      CHECK(a.steps[t].weights_after == b.steps[t].weights_after);
    }
    CHECK(b.rule == "first-above:2/5");
  }

  TEST_CASE("dataset provenance survives") {
    auto ds = sample(load_csv(data_path("iris.csv"), "species", "versicolor"), 60, 3);
    AnyTrace trace = run_on_dataset<double>(ds, {2, 3}, 20);
    auto back = parse_trace(serialize_trace(trace));
    const auto& src = std::get<BoostTrace<double>>(back).source;
    CHECK(src == std::get<BoostTrace<double>>(trace).source);
    CHECK(src.kind == "dataset");
    CHECK(src.seed == 3u);
    CHECK(src.sample_size == 60u);
  }

  TEST_CASE("files") {
    AnyTrace trace = run<Rational>(pool3(), SelectionRule::optimal(), 5);
    auto path = temp_file("t.json", "");
    save_trace(trace, path);
    CHECK(serialize_trace(load_trace(path)) == serialize_trace(trace));
    CHECK(error_code_of([] { load_trace("/nonexistent/dir/t.json"); }) == ErrorCode::io);
    CHECK(error_code_of([&] { save_trace(trace, "/nonexistent/dir/t.json"); }) == ErrorCode::io);
  }

  TEST_CASE("malformed traces") {
    const auto good = serialize_trace(AnyTrace(run<Rational>(pool3(), SelectionRule::optimal(), 3)));
    CHECK(error_code_of([] { parse_trace("{not json"); }) == ErrorCode::parse);
    CHECK(error_code_of([] { parse_trace("{}"); }) == ErrorCode::parse);

    auto bad = good;
    replace_once(bad, "\"version\": 1", "\"version\": 2");
    CHECK(error_code_of([&] { parse_trace(bad); }) == ErrorCode::parse);

    bad = good;
    replace_once(bad, "\"row\": 0", "\"row\": 2");
    CHECK(error_code_of([&] { parse_trace(bad); }) == ErrorCode::parse);

    bad = good;
    replace_once(bad, "\"row\": 0", "\"row\": 9");
    CHECK(error_code_of([&] { parse_trace(bad); }) == ErrorCode::parse);

    bad = good;
    replace_once(bad, "\"t\": 1", "\"t\": 2");
    CHECK(error_code_of([&] { parse_trace(bad); }) == ErrorCode::parse);

    bad = good;
    replace_once(bad, "\"schema\": \"adacycle-trace\"", "\"schema\": \"other\"");
    CHECK(error_code_of([&] { parse_trace(bad); }) == ErrorCode::parse);

    bad = good;
    replace_once(bad, "\"1/2\"", "\"x/2\"");
    CHECK(error_code_of([&] { parse_trace(bad); }) == ErrorCode::parse);
  }

  TEST_CASE("pool files") {
    auto pool = parse_pool("# three points\n-++\n\n  +-+  # trailing\n++-\n");
    CHECK(pool->rows() == 3);
    CHECK(pool->points() == 3);
    CHECK(format_pool(*pool) == "-++\n+-+\n++-\n");
    CHECK(parse_pool(format_pool(*pool))->rows() == 3);
    CHECK(load_pool(data_path("e4.pool"))->points() == 4);
    CHECK(error_code_of([] { parse_pool("# nothing\n"); }) == ErrorCode::parse);
    CHECK(error_code_of([] { parse_pool("-+x\n"); }) == ErrorCode::parse);
    CHECK(error_code_of([] { parse_pool("-++\n+-\n"); }) == ErrorCode::parse);
    CHECK(error_code_of([] { parse_pool("---\n"); }) == ErrorCode::parse);
    CHECK(error_code_of([] { load_pool("/nonexistent.pool"); }) == ErrorCode::io);
  }
}
