#include "adacycle/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "adacycle/error.hpp"
#include "adacycle/farey.hpp"

namespace adacycle {

const char* check_name(Check check) noexcept {
  switch (check) {
    case Check::three_weight: return "3wgt";
    case Check::weight_values: return "wvals";
    case Check::general_cycle: return "gencyc";
    case Check::farey: return "farey";
    case Check::nabla: return "nabla";
  }
  return "?";
}

std::vector<Check> all_checks() {
  return {Check::three_weight, Check::weight_values, Check::general_cycle, Check::farey,
          Check::nabla};
}

Check parse_check(const std::string& text) {
  for (Check c : all_checks())
    if (text == check_name(c)) return c;
  throw Error(ErrorCode::invalid_argument,
              "unknown check '" + text + "' (expected 3wgt, wvals, gencyc, farey or nabla)");
}

std::vector<Check> parse_checks(const std::string& text) {
  if (text == "all") return all_checks();
  std::vector<Check> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    Check c = parse_check(item);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  if (out.empty()) throw Error(ErrorCode::invalid_argument, "empty check list");
  return out;
}

const char* check_status_name(CheckStatus status) noexcept {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

bool AnalysisReport::all_passed() const noexcept {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::fail; });
}

namespace {

std::string join(const std::vector<std::size_t>& v, std::size_t limit = 20) {
  std::string out;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  if (v.size() > limit) out += ",... (" + std::to_string(v.size()) + " total)";
  return out;
}

// "iteration 4" or "iterations 4,7".
std::string at_iterations(const std::vector<std::size_t>& v) {
  return (v.size() == 1 ? "iteration " : "iterations ") + join(v);
}

template <typename T>
CheckResult check_three_weight(const BoostTrace<T>& trace, std::size_t from, std::size_t to,
                               double tol) {
  CheckResult r{Check::three_weight, CheckStatus::skipped, {}, {}};
  if (to < 2 || from + 1 >= to) {
    r.detail = "needs two consecutive iterations";
    return r;
  }
  const auto report = check_thm_3wgt(trace, tol, std::max<std::size_t>(from, 1), to);
  const auto mismatches = report.mismatches();
  const auto exceptions = report.biconditional_exceptions();
  r.iterations = mismatches;
  if (mismatches.empty() && exceptions.empty()) {
    r.status = CheckStatus::pass;
    r.detail = "three-weight update reproduces the edge at all " +
               std::to_string(report.steps.size()) + " steps";
  } else {
    r.status = CheckStatus::fail;
    r.detail = "three-weight update misses the edge at " + at_iterations(mismatches);
    if (!exceptions.empty())
      r.detail += "; match/condition disagreement at " + at_iterations(exceptions);
  }
  return r;
}

template <typename T>
CheckResult check_weight_values(const BoostTrace<T>& trace, std::size_t from, std::size_t to,
                                double tol) {
  CheckResult r{Check::weight_values, CheckStatus::skipped, {}, {}};
  std::size_t checked = 0;
  for (std::size_t t = std::max<std::size_t>(from, 1); t < to; ++t) {
    const auto& prev = trace.steps[t - 1];
    const auto& cur = trace.steps[t];
    const auto part = partition(prev.eta, cur.eta);
    if (!part.nabla_holds() || part.i_minus.empty()) continue;
    const auto& w_prev = trace.weights_at(t - 1);
    ++checked;
    const auto s = subsums(w_prev, prev.edge, part);
    const T expected_mass = (1 - prev.edge) / 2;
    if (!subsums_match(s, cur.edge, tol) ||
        !ScalarTraits<T>::same(prior_mistake_mass(w_prev, part), expected_mass, tol))
      r.iterations.push_back(t);
  }
  if (checked == 0) {
    r.detail = "no step satisfies the periodic learning condition";
    return r;
  }
  r.status = r.iterations.empty() ? CheckStatus::pass : CheckStatus::fail;
  r.detail = r.iterations.empty()
                 ? "subsums equal r/2, 1/2, (1-r)/2 at all " + std::to_string(checked) + " steps"
                 : "subsums differ at " + at_iterations(r.iterations);
  return r;
}

template <typename T>
CheckResult check_general_cycle(const BoostTrace<T>& trace, const std::optional<CycleReport>& cycle,
                                const CycleOptions& options) {
  CheckResult r{Check::general_cycle, CheckStatus::skipped, {}, {}};
  if (!cycle) {
    r.detail = "no cycle detected";
    return r;
  }
  const std::size_t k = cycle->weight_period;
  if (cycle->phase + k >= trace.size()) {
    r.detail = "cycle window too short";
    return r;
  }
  // The trace against itself one weight period later: the windows agree at
  // offset 0, so they should agree everywhere.
  LatticeWindow window{cycle->phase, cycle->phase + k, trace.size() - cycle->phase - k};
  const auto result = lattice_agreement(trace, trace, window, 0, options);
  switch (result.status) {
    case AgreementResult::Status::agree_everywhere:
      r.status = CheckStatus::pass;
      r.detail = "windows shifted by " + std::to_string(k) + " agree at all " +
                 std::to_string(window.length) + " offsets";
      break;
    case AgreementResult::Status::disagreement:
      r.status = CheckStatus::fail;
      r.iterations.push_back(window.start_a + *result.first_disagreement);
      r.detail = result.detail;
      break;
    case AgreementResult::Status::precondition_failed:
      r.detail = "precondition: " + result.detail;
      break;
  }
  return r;
}

CheckResult check_farey(const std::optional<CycleReport>& cycle, double tol) {
  CheckResult r{Check::farey, CheckStatus::skipped, {}, {}};
  if (!cycle) {
    r.detail = "no cycle detected";
    return r;
  }
  if (!cycle->farey_word) {
    r.status = CheckStatus::fail;
    r.detail = "edge cycle is not an orbit of the inverse Farey branches";
    return r;
  }
  const auto& word = *cycle->farey_word;
  if (!replays_farey(word, cycle->edge_values, tol)) {
    r.status = CheckStatus::fail;
    r.detail = "word " + word.to_string() + " does not replay the edges";
    return r;
  }
  if (word.is_degenerate()) {
    r.status = CheckStatus::fail;
    r.detail = "degenerate word " + word.to_string();
    return r;
  }
  const auto orbit = word_orbit(word, periodic_point(word).value);
  double gap = 0.0;
  for (std::size_t i = 0; i < cycle->edge_values.size(); ++i)
    gap = std::max(gap, std::abs(cycle->edge_values[i] - orbit[i].to_double()));
  if (gap > tol) {
    r.status = CheckStatus::fail;
    r.detail = "edges are off the exact orbit of " + word.to_string() + " by " +
               format_significant(gap, 3);
    return r;
  }
  r.status = CheckStatus::pass;
  r.detail = "word " + word.to_string() + " (class " + word.canonical().to_string() +
             "), periodic point " + orbit[0].to_string();
  return r;
}

template <typename T>
CheckResult check_nabla_scope(const BoostTrace<T>& trace, std::size_t from, std::size_t to) {
  CheckResult r{Check::nabla, CheckStatus::skipped, {}, {}};
  if (to < from + 2) {
    r.detail = "needs two consecutive iterations";
    return r;
  }
  const auto result = check_nabla(trace.lattice(from, to));
  if (result.holds()) {
    r.status = CheckStatus::pass;
    r.detail = "no point misclassified twice in a row over iterations " + std::to_string(from) +
               ".." + std::to_string(to - 1);
  } else {
    r.status = CheckStatus::fail;
    const auto& v = *result.violation;
    r.iterations.push_back(from + v.iteration + 1);
    r.detail = "point " + std::to_string(v.row) + " misclassified at iterations " +
               std::to_string(from + v.iteration) + " and " +
               std::to_string(from + v.iteration + 1);
  }
  return r;
}

template <typename T>
AnalysisReport analyze_typed(const BoostTrace<T>& trace, const AnalysisOptions& options) {
  AnalysisReport report;
  report.mode = ScalarTraits<T>::mode;
  report.length = trace.size();
  report.rule = trace.rule;
  report.halt = halt_reason_name(trace.halt);
  try {
    report.cycle = detect_cycle(trace, options.cycle);
    if (!report.cycle) report.cycle_note = "no cycle detected";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::insufficient_data) throw;
    report.cycle_note = std::string("no cycle detected: ") + e.what();
  }
  report.scope_begin = report.cycle ? report.cycle->phase : 0;
  report.scope_end = trace.size();
  const double tol = options.cycle.tol;
  for (Check c : options.checks) {
    switch (c) {
      case Check::three_weight:
        report.checks.push_back(check_three_weight(trace, report.scope_begin, report.scope_end, tol));
        break;
      case Check::weight_values:
        report.checks.push_back(check_weight_values(trace, report.scope_begin, report.scope_end, tol));
        break;
      case Check::general_cycle:
        report.checks.push_back(check_general_cycle(trace, report.cycle, options.cycle));
        break;
      case Check::farey:
        report.checks.push_back(check_farey(report.cycle, tol));
        break;
      case Check::nabla:
        report.checks.push_back(check_nabla_scope(trace, report.scope_begin, report.scope_end));
        break;
    }
  }
  return report;
}

}  // namespace

AnalysisReport analyze(const AnyTrace& trace, const AnalysisOptions& options) {
  return std::visit([&](const auto& t) { return analyze_typed(t, options); }, trace);
}

std::string AnalysisReport::to_text() const {
  std::ostringstream out;
  out << "trace: " << length << " iterations, mode " << mode_name(mode) << ", rule " << rule
      << ", halt " << halt << "\n";
  if (cycle) {
    out << "cycle: edge period " << cycle->edge_period << ", weight period "
        << cycle->weight_period << ", from iteration " << cycle->phase << "\n";
    out << "  edges:";
    for (double e : cycle->edge_values) out << " " << format_significant(e, 12);
    out << "\n  mean edge " << format_significant(cycle->mean_edge(), 12) << ", residual "
        << format_significant(cycle->residual, 3) << "\n";
    if (cycle->nabla)
      out << "  periodic learning condition: " << (cycle->nabla->holds() ? "holds" : "fails")
          << "\n";
    out << "  farey word: "
        << (cycle->farey_word ? "[" + cycle->farey_word->to_string() + "]" : std::string("none"))
        << "\n";
  } else {
    out << cycle_note << "\n";
  }
  out << "checks over iterations " << scope_begin << ".." << (scope_end ? scope_end - 1 : 0)
      << ":\n";
  for (const auto& c : checks)
    out << "  " << check_name(c.check) << ": " << check_status_name(c.status) << " (" << c.detail
        << ")\n";
  return out.str();
}

std::string AnalysisReport::to_json() const {
  nlohmann::ordered_json j;
  j["length"] = length;
  j["mode"] = mode_name(mode);
  j["rule"] = rule;
  j["halt"] = halt;
  if (cycle) {
    nlohmann::ordered_json c;
    c["edge_period"] = cycle->edge_period;
    c["weight_period"] = cycle->weight_period;
    c["phase"] = cycle->phase;
    c["edge_values"] = cycle->edge_values;
    c["mean_edge"] = cycle->mean_edge();
    c["residual"] = cycle->residual;
    c["edges_distinct"] = cycle->edges_distinct;
    if (cycle->nabla) c["nabla_holds"] = cycle->nabla->holds();
    c["farey_word"] = cycle->farey_word ? nlohmann::ordered_json(cycle->farey_word->to_string())
                                        : nlohmann::ordered_json();
    j["cycle"] = std::move(c);
  } else {
    j["cycle"] = nullptr;
    j["cycle_note"] = cycle_note;
  }
  j["scope"] = {scope_begin, scope_end};
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    list.push_back({{"check", check_name(c.check)},
                    {"status", check_status_name(c.status)},
                    {"detail", c.detail},
                    {"iterations", c.iterations}});
  j["checks"] = std::move(list);
  j["all_passed"] = all_passed();
  return j.dump(2) + "\n";
}

}  // namespace adacycle
