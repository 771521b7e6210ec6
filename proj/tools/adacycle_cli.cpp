// adacycle command-line front end. Talks to the library only through the C
// interface.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "adacycle/adacycle.h"

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kCheckFailed = 3, kIo = 4 };

struct Failure {
  int code;
  std::string message;
};

int exit_for(adc_status s) {
  switch (s) {
    case ADC_OK: return kOk;
    case ADC_E_INVALID_ARGUMENT: return kUsage;
    case ADC_E_PARSE:
    case ADC_E_IO: return kIo;
    default: return kFailure;
  }
}

void check(adc_status s) {
  if (s != ADC_OK) throw Failure{exit_for(s), adc_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Pool = std::unique_ptr<adc_pool, Deleter<adc_pool, adc_pool_free>>;
using Dataset = std::unique_ptr<adc_dataset, Deleter<adc_dataset, adc_dataset_free>>;
using Trace = std::unique_ptr<adc_trace, Deleter<adc_trace, adc_trace_free>>;
using Report = std::unique_ptr<adc_report, Deleter<adc_report, adc_report_free>>;

std::string take(char* s) {
  std::string out(s ? s : "");
  adc_string_free(s);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{kIo, "cannot write " + path};
  out << text;
  if (!out) throw Failure{kIo, "write failed for " + path};
}

std::vector<double> edges_of(const adc_trace* t) {
  size_t n = 0;
  check(adc_trace_edges(t, nullptr, 0, &n));
  std::vector<double> v(n);
  check(adc_trace_edges(t, v.data(), v.size(), &n));
  return v;
}

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// ---- run ------------------------------------------------------------------

struct RunArgs {
  std::string pool, dataset, label, positive, rule = "optimal", mode = "float", out;
  size_t iters = 0, sample = 0, depth = 3, leaves = 4;
  uint64_t seed = 0;
};

Dataset load_dataset(const std::string& path, const std::string& label,
                     const std::string& positive, size_t sample_size, uint64_t seed) {
  adc_dataset* raw = nullptr;
  check(adc_dataset_load_csv(path.c_str(), label.c_str(), positive.c_str(), &raw));
  Dataset ds(raw);
  if (adc_dataset_dropped_rows(ds.get()))
    std::cerr << "warning: dropped " << adc_dataset_dropped_rows(ds.get())
              << " rows with non-numeric features\n";
  if (sample_size) {
    adc_dataset* sampled = nullptr;
    check(adc_dataset_sample(ds.get(), sample_size, seed, &sampled));
    ds.reset(sampled);
  }
  return ds;
}

void print_run_summary(const adc_trace* t) {
  const auto edges = edges_of(t);
  std::cerr << edges.size() << " iterations (" << adc_trace_mode(t) << "), halt "
            << adc_trace_halt(t);
  if (!edges.empty()) std::cerr << ", last edge " << fmt12(edges.back());
  std::cerr << "\n";
}

int cmd_run(const RunArgs& a, bool pool_given, bool dataset_given) {
  if (pool_given == dataset_given)
    throw Failure{kUsage, "give exactly one of --pool or --dataset"};
  if (a.iters == 0) throw Failure{kUsage, "--iters must be at least 1"};
  Trace trace;
  adc_trace* raw = nullptr;
  if (pool_given) {
    adc_pool* p = nullptr;
    check(adc_pool_load(a.pool.c_str(), &p));
    Pool pool(p);
    check(adc_run_pool(pool.get(), a.rule.c_str(), a.iters, a.mode.c_str(), &raw));
  } else {
    if (a.label.empty() || a.positive.empty())
      throw Failure{kUsage, "--dataset needs --label and --positive"};
    if (a.rule != "optimal")
      throw Failure{kUsage, "dataset runs train the best tree each round; only --rule optimal"};
    auto ds = load_dataset(a.dataset, a.label, a.positive, a.sample, a.seed);
    check(adc_run_dataset(ds.get(), a.depth, a.leaves, a.iters, a.mode.c_str(), &raw));
  }
  trace.reset(raw);
  char* text = nullptr;
  check(adc_trace_serialize(trace.get(), &text));
  write_text(a.out, take(text));
  print_run_summary(trace.get());
  return kOk;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::string trace, checks = "all", format = "text", out;
  double tol = 1e-9, burn_in = 0.5;
  size_t min_repeats = 3;
  bool align = false;
};

int cmd_analyze(const AnalyzeArgs& a) {
  adc_trace* raw = nullptr;
  check(adc_trace_load(a.trace.c_str(), &raw));
  Trace trace(raw);
  adc_analysis_options opts = adc_analysis_defaults();
  opts.tol = a.tol;
  opts.min_repeats = a.min_repeats;
  opts.burn_in = a.burn_in;
  opts.align_permutations = a.align ? 1 : 0;
  opts.checks = a.checks.c_str();
  adc_report* r = nullptr;
  check(adc_analyze(trace.get(), &opts, &r));
  Report report(r);
  char* text = nullptr;
  check(a.format == "json" ? adc_report_json(report.get(), &text)
                           : adc_report_text(report.get(), &text));
  write_text(a.out, take(text));
  return adc_report_all_passed(report.get()) ? kOk : kCheckFailed;
}

// ---- plot -----------------------------------------------------------------

struct PlotArgs {
  std::string trace, out, refs, title = "edge per iteration";
  int width = 800, height = 400;
};

int cmd_plot(const PlotArgs& a) {
  adc_trace* raw = nullptr;
  check(adc_trace_load(a.trace.c_str(), &raw));
  Trace trace(raw);
  char* svg = nullptr;
  check(adc_plot_svg(trace.get(), a.refs.empty() ? nullptr : a.refs.c_str(), a.width, a.height,
                     a.title.c_str(), &svg));
  write_text(a.out, take(svg));
  return kOk;
}

// ---- farey ----------------------------------------------------------------

int cmd_enumerate(size_t k, bool exact, bool uniqueness) {
  char* text = nullptr;
  check(adc_farey_enumerate(k, exact ? 1 : 0, &text));
  std::cout << take(text);
  if (uniqueness) {
    check(adc_farey_uniqueness(k, &text));
    std::cout << take(text);
  }
  return kOk;
}

int cmd_orbit(const std::string& word, bool exact) {
  char* text = nullptr;
  check(adc_farey_orbit(word.c_str(), exact ? 1 : 0, &text));
  const std::string listing = take(text);
  if (listing.find("degenerate") != std::string::npos)
    std::cerr << "warning: word " << word << " uses only L; its orbit is the fixed point 0\n";
  std::cout << listing;
  return kOk;
}

// ---- replicate ------------------------------------------------------------

struct ReplicateArgs {
  std::string dataset, label, positive, out_dir = ".", mode = "float", refs = "golden";
  size_t depth = 3, leaves = 4, iters = 20000, sample = 0, threads = 1;
  std::vector<uint64_t> seeds;
};

struct SummaryRow {
  std::string line;
  std::string error;
};

SummaryRow replicate_one(const ReplicateArgs& a, const adc_dataset* full, uint64_t seed,
                         bool seeded) {
  Dataset sampled;
  const adc_dataset* ds = full;
  if (seeded) {
    adc_dataset* raw = nullptr;
    check(adc_dataset_sample(full, a.sample, seed, &raw));
    sampled.reset(raw);
    ds = sampled.get();
  }
  adc_trace* raw = nullptr;
  check(adc_run_dataset(ds, a.depth, a.leaves, a.iters, a.mode.c_str(), &raw));
  Trace trace(raw);
  adc_report* r = nullptr;
  adc_analysis_options opts = adc_analysis_defaults();
  opts.checks = "nabla";
  check(adc_analyze(trace.get(), &opts, &r));
  Report report(r);

  const std::string tag = seeded ? "seed" + std::to_string(seed) : "full";
  const auto stem = (std::filesystem::path(a.out_dir) /
                     (std::filesystem::path(a.dataset).stem().string() + "_" + a.positive + "_" + tag))
                        .string();
  char* svg = nullptr;
  const std::string title = std::filesystem::path(a.dataset).filename().string() + " (" +
                            a.positive + " vs rest, " + tag + ")";
  if (adc_trace_length(trace.get()) > 0) {
    check(adc_plot_svg(trace.get(), a.refs.empty() ? nullptr : a.refs.c_str(), 800, 400,
                       title.c_str(), &svg));
    write_text(stem + ".svg", take(svg));
  }
  check(adc_trace_save(trace.get(), (stem + ".trace.json").c_str()));

  std::ostringstream row;
  const bool cycle = adc_report_has_cycle(report.get());
  char* word = nullptr;
  check(adc_report_farey_word(report.get(), &word));
  const std::string w = take(word);
  const int nabla = adc_report_nabla_holds(report.get());
  row << std::filesystem::path(a.dataset).filename().string() << '\t' << a.positive << '\t'
      << adc_dataset_rows(full) << '\t' << (seeded ? std::to_string(a.sample) : "full") << '\t'
      << (seeded ? std::to_string(seed) : "-") << '\t' << a.depth << '\t' << a.leaves << '\t'
      << adc_trace_length(trace.get()) << '\t' << adc_trace_halt(trace.get()) << '\t'
      << (cycle ? "yes" : "no") << '\t'
      << (cycle ? std::to_string(adc_report_edge_period(report.get())) : "-") << '\t'
      << (cycle ? std::to_string(adc_report_weight_period(report.get())) : "-") << '\t'
      << (cycle ? fmt12(adc_report_mean_edge(report.get())) : "-") << '\t'
      << (nabla < 0 ? "-" : nabla ? "holds" : "fails") << '\t' << (w.empty() ? "-" : w);
  return {row.str(), {}};
}

int cmd_replicate(ReplicateArgs a) {
  if (a.iters == 0) throw Failure{kUsage, "--iters must be at least 1"};
  if (!a.seeds.empty() && a.sample == 0) throw Failure{kUsage, "--seed needs --sample"};
  if (a.sample && a.seeds.empty()) a.seeds.push_back(0);
  std::error_code ec;
  std::filesystem::create_directories(a.out_dir, ec);
  if (ec) throw Failure{kIo, "cannot create " + a.out_dir + ": " + ec.message()};
  auto full = load_dataset(a.dataset, a.label, a.positive, 0, 0);

  const bool seeded = a.sample != 0;
  const size_t jobs = seeded ? a.seeds.size() : 1;
  std::vector<SummaryRow> rows(jobs);
  std::vector<Failure> failures;
  std::mutex failures_mutex;
  auto work = [&](size_t i) {
    try {
      rows[i] = replicate_one(a, full.get(), seeded ? a.seeds[i] : 0, seeded);
    } catch (const Failure& f) {
      std::lock_guard<std::mutex> lock(failures_mutex);
      failures.push_back(f);
      rows[i].error = f.message;
    }
  };
  const size_t threads = std::max<size_t>(1, std::min(a.threads, jobs));
  std::vector<std::thread> pool;
  for (size_t w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (size_t i = w; i < jobs; i += threads) work(i);
    });
  for (auto& t : pool) t.join();

  std::string table =
      "dataset\tpositive\tn\tsample\tseed\tdepth\tleaves\titerations\thalt\tcycle\tedge_period\t"
      "weight_period\tmean_edge\tnabla\tword\n";
  for (const auto& r : rows)
    if (r.error.empty()) table += r.line + "\n";
  write_text((std::filesystem::path(a.out_dir) / "summary.tsv").string(), table);
  std::cout << table;
  for (const auto& f : failures) std::cerr << "error: " << f.message << "\n";
  return failures.empty() ? kOk : failures.front().code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adacycle: Optimal AdaBoost as a dynamical system"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(adc_version()));

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run boosting on a pool or a dataset and write a trace");
  auto* pool_opt = run->add_option("--pool", run_args.pool, "Pool file of +/- dichotomies");
  auto* dataset_opt = run->add_option("--dataset", run_args.dataset, "CSV dataset");
  run->add_option("--label", run_args.label, "Label column name");
  run->add_option("--positive", run_args.positive, "Class treated as +1");
  run->add_option("--sample", run_args.sample, "Sample this many rows");
  run->add_option("--seed", run_args.seed, "Sampling seed");
  run->add_option("--depth", run_args.depth, "Tree depth bound")->capture_default_str();
  run->add_option("--leaves", run_args.leaves, "Tree leaf bound")->capture_default_str();
  run->add_option("--rule", run_args.rule, "optimal | first-above:THETA | fixed:i,j")
      ->capture_default_str();
  run->add_option("--iters", run_args.iters, "Iterations")->required();
  run->add_option("--mode", run_args.mode, "exact | float")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  run->add_option("--out", run_args.out, "Trace file (stdout when omitted)");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Detect cycles and run the structural checks on a trace");
  analyze->add_option("trace", an.trace, "Trace file")->required();
  analyze->add_option("--tol", an.tol, "Tolerance")->capture_default_str();
  analyze->add_option("--check", an.checks, "3wgt,wvals,gencyc,farey,nabla or all")
      ->capture_default_str();
  analyze->add_option("--min-repeats", an.min_repeats, "Periods a cycle must repeat")
      ->capture_default_str();
  analyze->add_option("--burn-in", an.burn_in, "Fraction of the trace skipped")
      ->capture_default_str();
  analyze->add_flag("--align-permutations", an.align, "Compare weights as sorted multisets");
  analyze->add_option("--format", an.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  analyze->add_option("--out", an.out, "Report file (stdout when omitted)");

  auto* farey = app.add_subcommand("farey", "Periodic orbits of the Farey map");
  farey->require_subcommand(1);
  size_t k = 0;
  bool exact = false, uniqueness = false;
  auto* enumerate = farey->add_subcommand("enumerate", "List orbits of every word of length k");
  enumerate->add_option("--k", k, "Word length (1..20)")->required();
  enumerate->add_flag("--exact", exact, "Exact values and 50-digit decimals");
  enumerate->add_flag("--uniqueness", uniqueness, "Check orbit values are distinct up to k");
  std::string word;
  bool orbit_exact = false;
  auto* orbit = farey->add_subcommand("orbit", "Orbit of one word");
  orbit->add_option("--word", word, "Word over L and R, e.g. RL")->required();
  orbit->add_flag("--exact", orbit_exact, "Exact values and 50-digit decimals");

  ReplicateArgs rep;
  auto* replicate = app.add_subcommand("replicate", "Tree-learner experiments on a dataset");
  replicate->add_option("--dataset", rep.dataset, "CSV dataset")->required();
  replicate->add_option("--label", rep.label, "Label column name")->required();
  replicate->add_option("--positive", rep.positive, "Class treated as +1")->required();
  replicate->add_option("--depth", rep.depth, "Tree depth bound")->capture_default_str();
  replicate->add_option("--leaves", rep.leaves, "Tree leaf bound")->capture_default_str();
  replicate->add_option("--iters", rep.iters, "Iterations")->capture_default_str();
  replicate->add_option("--sample", rep.sample, "Sample size (0 uses every row)");
  replicate->add_option("--seed", rep.seeds, "Sampling seeds, one run each");
  replicate->add_option("--threads", rep.threads, "Worker threads across seeds")
      ->capture_default_str();
  replicate->add_option("--mode", rep.mode, "exact | float")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  replicate->add_option("--ref", rep.refs, "Reference lines for the figures")
      ->capture_default_str();
  replicate->add_option("--out-dir", rep.out_dir, "Output directory")->capture_default_str();

  PlotArgs pl;
  auto* plot = app.add_subcommand("plot", "Edge-vs-iteration figure (SVG)");
  plot->add_option("trace", pl.trace, "Trace file")->required();
  plot->add_option("--out", pl.out, "SVG file (stdout when omitted)");
  plot->add_option("--ref", pl.refs, "golden, sqrt2m1, invsqrt2 or decimals, comma separated");
  plot->add_option("--title", pl.title, "Figure title")->capture_default_str();
  plot->add_option("--width", pl.width, "Width in pixels")->capture_default_str();
  plot->add_option("--height", pl.height, "Height in pixels")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run) return cmd_run(run_args, pool_opt->count() > 0, dataset_opt->count() > 0);
    if (*analyze) return cmd_analyze(an);
    if (*enumerate) return cmd_enumerate(k, exact, uniqueness);
    if (*orbit) return cmd_orbit(word, orbit_exact);
    if (*replicate) return cmd_replicate(rep);
    if (*plot) return cmd_plot(pl);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return kUsage;
}
