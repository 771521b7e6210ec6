#include "adacycle/trace_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "adacycle/error.hpp"

namespace adacycle {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::io, "write failed for " + path);
}

namespace {

Json scalar_json(double x) { return x; }
Json scalar_json(const Rational& x) { return format_rational(x); }

template <typename T>
T scalar_from(const Json& j);

template <>
double scalar_from<double>(const Json& j) {
  if (!j.is_number()) throw Error(ErrorCode::parse, "expected a number");
  return j.get<double>();
}

template <>
Rational scalar_from<Rational>(const Json& j) {
  if (!j.is_string()) throw Error(ErrorCode::parse, "expected a rational string");
  return parse_rational(j.get<std::string>());
}

template <typename T>
Json weights_json(const WeightVector<T>& w) {
  Json out = Json::array();
  for (const auto& c : w.components()) out.push_back(scalar_json(c));
  return out;
}

template <typename T>
WeightVector<T> weights_from(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::parse, "weights must be an array");
  std::vector<T> c;
  c.reserve(j.size());
  for (const auto& v : j) c.push_back(scalar_from<T>(v));
  return WeightVector<T>::stored(std::move(c));
}

const char* origin_name(PoolOrigin o) { return o == PoolOrigin::learned ? "learned" : "synthetic"; }

Json source_json(const TraceSource& s) {
  Json j;
  j["kind"] = s.kind;
  if (!s.path.empty()) j["path"] = s.path;
  if (!s.label_column.empty()) j["label_column"] = s.label_column;
  if (!s.positive_class.empty()) j["positive_class"] = s.positive_class;
  if (s.seed) j["seed"] = *s.seed;
  if (s.sample_size) j["sample_size"] = *s.sample_size;
  if (s.original_size) j["original_size"] = *s.original_size;
  if (s.dropped_rows) j["dropped_rows"] = *s.dropped_rows;
  if (s.max_depth) j["max_depth"] = *s.max_depth;
  if (s.max_leaves) j["max_leaves"] = *s.max_leaves;
  return j;
}

TraceSource source_from(const Json& j) {
  TraceSource s;
  s.kind = j.at("kind").get<std::string>();
  s.path = j.value("path", "");
  s.label_column = j.value("label_column", "");
  s.positive_class = j.value("positive_class", "");
  auto opt = [&j](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<typename std::decay_t<decltype(field)>::value_type>();
  };
  opt("seed", s.seed);
  opt("sample_size", s.sample_size);
  opt("original_size", s.original_size);
  opt("dropped_rows", s.dropped_rows);
  opt("max_depth", s.max_depth);
  opt("max_leaves", s.max_leaves);
  return s;
}

template <typename T>
Json trace_json(const BoostTrace<T>& trace) {
  Json j;
  j["schema"] = kTraceSchema;
  j["version"] = kTraceVersion;
  j["mode"] = mode_name(ScalarTraits<T>::mode);
  j["rule"] = trace.rule;
  j["source"] = source_json(trace.source);
  Json pool = Json::array();
  for (const auto& row : trace.pool->all_rows()) pool.push_back(row.to_string());
  j["pool_origin"] = origin_name(trace.pool->origin());
  j["pool"] = std::move(pool);
  j["initial_weights"] = weights_json(trace.initial);
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    Json step;
    step["t"] = s.iteration;
    step["row"] = s.row;
    step["eta"] = s.eta.to_string();
    step["edge"] = to_double(s.edge);
    if constexpr (ScalarTraits<T>::exact) step["edge_exact"] = format_rational(s.edge);
    step["alpha"] = s.alpha;
    step["weights"] = weights_json(s.weights_after);
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  j["halt"] = {{"reason", halt_reason_name(trace.halt)},
               {"iteration", trace.halt_iteration},
               {"detail", trace.halt_detail}};
  return j;
}

template <typename T>
BoostTrace<T> trace_from(const Json& j) {
  std::vector<MistakeDichotomy> rows;
  for (const auto& r : j.at("pool")) rows.push_back(MistakeDichotomy::parse(r.get<std::string>()));
  const auto origin_text = j.value("pool_origin", "synthetic");
  if (origin_text != "synthetic" && origin_text != "learned")
    throw Error(ErrorCode::parse, "unknown pool origin '" + origin_text + "'");
  auto pool = std::make_shared<const HypothesisPool>(
      std::move(rows), origin_text == "learned" ? PoolOrigin::learned : PoolOrigin::synthetic);
  if (pool->dropped_duplicates() != 0)
    throw Error(ErrorCode::parse, "trace pool lists a dichotomy twice");

  BoostTrace<T> trace{weights_from<T>(j.at("initial_weights")),
                      {},
                      pool,
                      j.at("rule").get<std::string>(),
                      source_from(j.at("source")),
                      parse_halt_reason(j.at("halt").at("reason").get<std::string>()),
                      j.at("halt").at("iteration").get<std::size_t>(),
                      j.at("halt").at("detail").get<std::string>()};
  if (trace.initial.size() != pool->points())
    throw Error(ErrorCode::parse, "initial weights do not match the pool");
  for (const auto& s : j.at("steps")) {
    const auto t = s.at("t").get<std::size_t>();
    if (t != trace.steps.size()) throw Error(ErrorCode::parse, "steps out of order");
    const auto row = s.at("row").get<std::size_t>();
    if (row >= pool->rows()) throw Error(ErrorCode::parse, "step row outside the pool");
    auto eta = MistakeDichotomy::parse(s.at("eta").get<std::string>());
    if (!(eta == pool->row(row)))
      throw Error(ErrorCode::parse, "step " + std::to_string(t) + " dichotomy differs from its pool row");
    T edge = ScalarTraits<T>::exact ? scalar_from<T>(s.at("edge_exact")) : scalar_from<T>(s.at("edge"));
    auto w = weights_from<T>(s.at("weights"));
    if (w.size() != pool->points()) throw Error(ErrorCode::parse, "step weights have the wrong length");
    trace.steps.push_back(BoostStep<T>{t, row, std::move(eta), std::move(edge),
                                       s.at("alpha").get<double>(), std::move(w)});
  }
  return trace;
}

}  // namespace

std::string serialize_trace(const AnyTrace& trace) {
  return std::visit([](const auto& t) { return trace_json(t).dump(1) + "\n"; }, trace);
}

AnyTrace parse_trace(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("trace is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("schema", "") != kTraceSchema)
      throw Error(ErrorCode::parse, "not an adacycle trace");
    if (j.at("version").get<int>() != kTraceVersion)
      throw Error(ErrorCode::parse, "unsupported trace version " + j.at("version").dump());
    const auto mode = parse_mode(j.at("mode").get<std::string>());
    if (mode == NumericMode::exact) return trace_from<Rational>(j);
    return trace_from<double>(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed trace: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse) throw;
    throw Error(ErrorCode::parse, std::string("malformed trace: ") + e.what());
  }
}

void save_trace(const AnyTrace& trace, const std::string& path) {
  write_file(path, serialize_trace(trace));
}

AnyTrace load_trace(const std::string& path) { return parse_trace(read_file(path)); }

std::shared_ptr<const HypothesisPool> parse_pool(std::string_view text, PoolOrigin origin) {
  std::vector<MistakeDichotomy> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string compact;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    if (compact.empty()) continue;
    try {
      rows.push_back(MistakeDichotomy::parse(compact));
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, "pool line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (rows.empty()) throw Error(ErrorCode::parse, "pool file lists no dichotomies");
  try {
    return std::make_shared<const HypothesisPool>(std::move(rows), origin);
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, std::string("invalid pool: ") + e.what());
  }
}

std::shared_ptr<const HypothesisPool> load_pool(const std::string& path) {
  return parse_pool(read_file(path));
}

std::string format_pool(const HypothesisPool& pool) {
  std::string out;
  for (const auto& row : pool.all_rows()) out += row.to_string() + "\n";
  return out;
}

}  // namespace adacycle
