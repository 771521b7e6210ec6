#include "adacycle/adacycle.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "adacycle/analysis.hpp"
#include "adacycle/boost.hpp"
#include "adacycle/error.hpp"
#include "adacycle/farey.hpp"
#include "adacycle/learners.hpp"
#include "adacycle/plot.hpp"
#include "adacycle/trace_io.hpp"

struct adc_pool {
  std::shared_ptr<const adacycle::HypothesisPool> pool;
};
struct adc_dataset {
  adacycle::Dataset ds;
};
struct adc_trace {
  adacycle::AnyTrace trace;
};
struct adc_report {
  adacycle::AnalysisReport report;
};

namespace {

using namespace adacycle;

thread_local std::string last_error;

adc_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return ADC_E_INVALID_ARGUMENT;
    case ErrorCode::dimension: return ADC_E_DIMENSION;
    case ErrorCode::domain: return ADC_E_DOMAIN;
    case ErrorCode::insufficient_data: return ADC_E_INSUFFICIENT_DATA;
    case ErrorCode::weak_learning_failure: return ADC_E_WEAK_LEARNING;
    case ErrorCode::perfect_classification: return ADC_E_PERFECT_CLASSIFICATION;
    case ErrorCode::parse: return ADC_E_PARSE;
    case ErrorCode::io: return ADC_E_IO;
    case ErrorCode::precondition: return ADC_E_PRECONDITION;
  }
  return ADC_E_INTERNAL;
}

template <typename F>
adc_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return ADC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ADC_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ADC_E_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* adc_version(void) { return "0.1.0"; }

const char* adc_status_name(adc_status status) {
  switch (status) {
    case ADC_OK: return "ok";
    case ADC_E_INVALID_ARGUMENT: return "invalid_argument";
    case ADC_E_DIMENSION: return "dimension";
    case ADC_E_DOMAIN: return "domain";
    case ADC_E_INSUFFICIENT_DATA: return "insufficient_data";
    case ADC_E_WEAK_LEARNING: return "weak_learning_failure";
    case ADC_E_PERFECT_CLASSIFICATION: return "perfect_classification";
    case ADC_E_PARSE: return "parse";
    case ADC_E_IO: return "io";
    case ADC_E_PRECONDITION: return "precondition";
    case ADC_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* adc_last_error(void) { return last_error.c_str(); }

void adc_string_free(char* s) { std::free(s); }

adc_status adc_pool_parse(const char* text, adc_pool** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new adc_pool{parse_pool(text)};
  });
}

adc_status adc_pool_load(const char* path, adc_pool** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new adc_pool{load_pool(path)};
  });
}

size_t adc_pool_rows(const adc_pool* pool) { return pool ? pool->pool->rows() : 0; }
size_t adc_pool_points(const adc_pool* pool) { return pool ? pool->pool->points() : 0; }
void adc_pool_free(adc_pool* pool) { delete pool; }

adc_status adc_dataset_load_csv(const char* path, const char* label_column,
                                const char* positive_class, adc_dataset** out) {
  return guarded([&] {
    require(path && label_column && positive_class && out, "null argument");
    *out = new adc_dataset{load_csv(path, label_column, positive_class)};
  });
}

adc_status adc_dataset_sample(const adc_dataset* ds, size_t size, uint64_t seed,
                              adc_dataset** out) {
  return guarded([&] {
    require(ds && out, "null argument");
    *out = new adc_dataset{sample(ds->ds, size, seed)};
  });
}

size_t adc_dataset_rows(const adc_dataset* ds) { return ds ? ds->ds.rows() : 0; }
size_t adc_dataset_cols(const adc_dataset* ds) { return ds ? ds->ds.cols() : 0; }
size_t adc_dataset_positives(const adc_dataset* ds) { return ds ? ds->ds.positives() : 0; }
size_t adc_dataset_dropped_rows(const adc_dataset* ds) {
  return ds ? ds->ds.provenance().dropped_rows : 0;
}
void adc_dataset_free(adc_dataset* ds) { delete ds; }

adc_status adc_run_pool(const adc_pool* pool, const char* rule, size_t iterations,
                        const char* mode, adc_trace** out) {
  return guarded([&] {
    require(pool && rule && mode && out, "null argument");
    auto trace = run_any(pool->pool, SelectionRule::parse(rule), iterations, parse_mode(mode));
    *out = new adc_trace{std::move(trace)};
  });
}

adc_status adc_run_dataset(const adc_dataset* ds, size_t max_depth, size_t max_leaves,
                           size_t iterations, const char* mode, adc_trace** out) {
  return guarded([&] {
    require(ds && mode && out, "null argument");
    auto trace =
        run_on_dataset_any(ds->ds, TreeBounds{max_depth, max_leaves}, iterations, parse_mode(mode));
    *out = new adc_trace{std::move(trace)};
  });
}

adc_status adc_trace_load(const char* path, adc_trace** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new adc_trace{load_trace(path)};
  });
}

adc_status adc_trace_parse(const char* text, adc_trace** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new adc_trace{parse_trace(text)};
  });
}

adc_status adc_trace_save(const adc_trace* trace, const char* path) {
  return guarded([&] {
    require(trace && path, "null argument");
    save_trace(trace->trace, path);
  });
}

adc_status adc_trace_serialize(const adc_trace* trace, char** out) {
  return guarded([&] {
    require(trace && out, "null argument");
    *out = copy_out(serialize_trace(trace->trace));
  });
}

size_t adc_trace_length(const adc_trace* trace) { return trace ? trace_size(trace->trace) : 0; }

size_t adc_trace_pool_rows(const adc_trace* trace) {
  if (!trace) return 0;
  return std::visit([](const auto& t) { return t.pool->rows(); }, trace->trace);
}

const char* adc_trace_mode(const adc_trace* trace) {
  return trace ? mode_name(mode_of(trace->trace)) : "";
}

const char* adc_trace_halt(const adc_trace* trace) {
  if (!trace) return "";
  return std::visit([](const auto& t) { return halt_reason_name(t.halt); }, trace->trace);
}

adc_status adc_trace_edges(const adc_trace* trace, double* buf, size_t capacity, size_t* length) {
  return guarded([&] {
    require(trace && length, "null argument");
    require(buf || capacity == 0, "null buffer with nonzero capacity");
    const auto edges =
        std::visit([](const auto& t) { return t.edges_as_double(); }, trace->trace);
    *length = edges.size();
    for (size_t i = 0; i < edges.size() && i < capacity; ++i) buf[i] = edges[i];
  });
}

adc_status adc_trace_edge_string(const adc_trace* trace, size_t iteration, char** out) {
  return guarded([&] {
    require(trace && out, "null argument");
    std::visit(
        [&](const auto& t) {
          if (iteration >= t.size())
            throw Error(ErrorCode::invalid_argument, "iteration outside the trace");
          const auto& e = t.steps[iteration].edge;
          if constexpr (std::is_same_v<std::decay_t<decltype(e)>, Rational>)
            *out = copy_out(format_rational(e));
          else
            *out = copy_out(format_double(e));
        },
        trace->trace);
  });
}

void adc_trace_free(adc_trace* trace) { delete trace; }

adc_analysis_options adc_analysis_defaults(void) {
  const CycleOptions d;
  return {d.tol, d.min_repeats, d.burn_in, d.align_permutations ? 1 : 0, nullptr};
}

adc_status adc_analyze(const adc_trace* trace, const adc_analysis_options* options,
                       adc_report** out) {
  return guarded([&] {
    require(trace && out, "null argument");
    AnalysisOptions opts;
    if (options) {
      require(options->tol > 0, "tolerance must be positive");
      opts.cycle.tol = options->tol;
      opts.cycle.min_repeats = options->min_repeats;
      opts.cycle.burn_in = options->burn_in;
      opts.cycle.align_permutations = options->align_permutations != 0;
      if (options->checks) opts.checks = parse_checks(options->checks);
    }
    *out = new adc_report{analyze(trace->trace, opts)};
  });
}

int adc_report_all_passed(const adc_report* report) {
  return report && report->report.all_passed() ? 1 : 0;
}
int adc_report_has_cycle(const adc_report* report) {
  return report && report->report.cycle ? 1 : 0;
}
size_t adc_report_edge_period(const adc_report* report) {
  return adc_report_has_cycle(report) ? report->report.cycle->edge_period : 0;
}
size_t adc_report_weight_period(const adc_report* report) {
  return adc_report_has_cycle(report) ? report->report.cycle->weight_period : 0;
}
size_t adc_report_phase(const adc_report* report) {
  return adc_report_has_cycle(report) ? report->report.cycle->phase : 0;
}
double adc_report_mean_edge(const adc_report* report) {
  return adc_report_has_cycle(report) ? report->report.cycle->mean_edge() : 0.0;
}
int adc_report_nabla_holds(const adc_report* report) {
  if (!adc_report_has_cycle(report) || !report->report.cycle->nabla) return -1;
  return report->report.cycle->nabla->holds() ? 1 : 0;
}

adc_status adc_report_farey_word(const adc_report* report, char** out) {
  return guarded([&] {
    require(report && out, "null argument");
    const auto& c = report->report.cycle;
    *out = copy_out(c && c->farey_word ? c->farey_word->to_string() : std::string());
  });
}

adc_status adc_report_text(const adc_report* report, char** out) {
  return guarded([&] {
    require(report && out, "null argument");
    *out = copy_out(report->report.to_text());
  });
}

adc_status adc_report_json(const adc_report* report, char** out) {
  return guarded([&] {
    require(report && out, "null argument");
    *out = copy_out(report->report.to_json());
  });
}

void adc_report_free(adc_report* report) { delete report; }

adc_status adc_farey_enumerate(size_t k, int exact, char** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = copy_out(format_orbit_listing(enumerate_orbits(k), exact != 0));
  });
}

adc_status adc_farey_orbit(const char* word, int exact, char** out) {
  return guarded([&] {
    require(word && out, "null argument");
    const FareyWord w = FareyWord::parse(word);
    OrbitEntry entry{w, {}, w.is_degenerate(), w.primitive_period()};
    entry.values = entry.degenerate ? word_orbit(w, QuadraticIrrational(0))
                                    : word_orbit(w, periodic_point(w).value);
    *out = copy_out(format_orbit_listing({entry}, exact != 0));
  });
}

adc_status adc_farey_uniqueness(size_t max_k, char** out) {
  return guarded([&] {
    require(out, "null argument");
    const auto r = orbit_uniqueness(max_k);
    std::ostringstream s;
    s << "words up to length " << r.max_k << ": " << r.primitive_orbits << " primitive orbits, "
      << r.values << " values, " << r.collisions.size() << " collisions\n";
    for (const auto& [a, b] : r.collisions) s << "  shared value: [" << a << "] [" << b << "]\n";
    *out = copy_out(s.str());
  });
}

adc_status adc_plot_svg(const adc_trace* trace, const char* references, int width, int height,
                        const char* title, char** out) {
  return guarded([&] {
    require(trace && out, "null argument");
    PlotSpec spec;
    spec.width = width;
    spec.height = height;
    if (title) spec.title = title;
    if (references) {
      std::stringstream in(references);
      std::string item;
      while (std::getline(in, item, ','))
        if (!item.empty()) spec.references.push_back(parse_reference_line(item));
    }
    const auto edges =
        std::visit([](const auto& t) { return t.edges_as_double(); }, trace->trace);
    *out = copy_out(plot_svg(edges, spec));
  });
}

}  // extern "C"
