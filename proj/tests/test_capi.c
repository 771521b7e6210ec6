/* Exercises the C interface from plain C against the shared library. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "adacycle/adacycle.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static void test_pool_and_run(void) {
  adc_pool* pool = NULL;
  EXPECT(adc_pool_parse("# three\n-++\n+-+\n++-\n", &pool) == ADC_OK);
  EXPECT(adc_pool_rows(pool) == 3);
  EXPECT(adc_pool_points(pool) == 3);

  adc_trace* exact = NULL;
  EXPECT(adc_run_pool(pool, "optimal", 6, "exact", &exact) == ADC_OK);
  EXPECT(adc_trace_length(exact) == 6);
  EXPECT(strcmp(adc_trace_mode(exact), "exact") == 0);
  EXPECT(strcmp(adc_trace_halt(exact), "none") == 0);
  char* s = NULL;
  EXPECT(adc_trace_edge_string(exact, 5, &s) == ADC_OK);
  EXPECT(s && strcmp(s, "8/13") == 0);
  adc_string_free(s);
  EXPECT(adc_trace_edge_string(exact, 6, &s) == ADC_E_INVALID_ARGUMENT);

  double edges[4];
  size_t len = 0;
  EXPECT(adc_trace_edges(exact, edges, 4, &len) == ADC_OK);
  EXPECT(len == 6);
  EXPECT(fabs(edges[1] - 0.5) < 1e-15);

  char* json = NULL;
  EXPECT(adc_trace_serialize(exact, &json) == ADC_OK);
  adc_trace* back = NULL;
  EXPECT(adc_trace_parse(json, &back) == ADC_OK);
  char* json2 = NULL;
  EXPECT(adc_trace_serialize(back, &json2) == ADC_OK);
  EXPECT(json && json2 && strcmp(json, json2) == 0);
  adc_string_free(json);
  adc_string_free(json2);
  adc_trace_free(back);
  adc_trace_free(exact);

  adc_trace* golden = NULL;
  EXPECT(adc_run_pool(pool, "optimal", 2000, "float", &golden) == ADC_OK);
  adc_analysis_options opts = adc_analysis_defaults();
  EXPECT(opts.tol == 1e-9);
  EXPECT(opts.min_repeats == 3);
  adc_report* report = NULL;
  EXPECT(adc_analyze(golden, &opts, &report) == ADC_OK);
  EXPECT(adc_report_all_passed(report) == 1);
  EXPECT(adc_report_has_cycle(report) == 1);
  EXPECT(adc_report_edge_period(report) == 1);
  EXPECT(adc_report_weight_period(report) == 3);
  EXPECT(fabs(adc_report_mean_edge(report) - (sqrt(5.0) - 1) / 2) < 1e-9);
  EXPECT(adc_report_nabla_holds(report) == 1);
  char* word = NULL;
  EXPECT(adc_report_farey_word(report, &word) == ADC_OK);
  EXPECT(word && strcmp(word, "R") == 0);
  adc_string_free(word);
  char* text = NULL;
  EXPECT(adc_report_text(report, &text) == ADC_OK);
  EXPECT(text && strstr(text, "farey: pass") != NULL);
  adc_string_free(text);
  EXPECT(adc_report_json(report, &text) == ADC_OK);
  EXPECT(text && strstr(text, "\"all_passed\": true") != NULL);
  adc_string_free(text);
  adc_report_free(report);

  char* svg = NULL;
  EXPECT(adc_plot_svg(golden, "golden", 640, 320, NULL, &svg) == ADC_OK);
  EXPECT(svg && strncmp(svg, "<svg", 4) == 0);
  adc_string_free(svg);
  EXPECT(adc_plot_svg(golden, "bogus", 640, 320, NULL, &svg) == ADC_E_INVALID_ARGUMENT);
  adc_trace_free(golden);

  adc_trace* t = NULL;
  EXPECT(adc_run_pool(pool, "no-such-rule", 5, "exact", &t) == ADC_E_PARSE);
  EXPECT(strlen(adc_last_error()) > 0);
  EXPECT(adc_run_pool(pool, "optimal", 5, "decimal", &t) == ADC_E_PARSE);
  EXPECT(adc_run_pool(pool, "optimal", 0, "exact", &t) == ADC_E_INVALID_ARGUMENT);
  EXPECT(adc_run_pool(NULL, "optimal", 5, "exact", &t) == ADC_E_INVALID_ARGUMENT);
  EXPECT(t == NULL);
  adc_pool_free(pool);
}

static void test_errors(void) {
  adc_pool* pool = NULL;
  EXPECT(adc_pool_parse("-+x\n", &pool) == ADC_E_PARSE);
  EXPECT(pool == NULL);
  EXPECT(adc_pool_load("/nonexistent.pool", &pool) == ADC_E_IO);
  adc_trace* t = NULL;
  EXPECT(adc_trace_parse("{", &t) == ADC_E_PARSE);
  EXPECT(adc_trace_load("/nonexistent.json", &t) == ADC_E_IO);
  char* out = NULL;
  EXPECT(adc_farey_enumerate(21, 0, &out) == ADC_E_INVALID_ARGUMENT);
  EXPECT(adc_farey_orbit("LL", 1, &out) == ADC_OK);
  adc_string_free(out);
  EXPECT(adc_farey_orbit("RQ", 1, &out) == ADC_E_PARSE);
  EXPECT(strcmp(adc_status_name(ADC_E_IO), "io") == 0);
  EXPECT(strlen(adc_version()) > 0);
  adc_pool_free(NULL);
  adc_trace_free(NULL);
  adc_report_free(NULL);
  adc_string_free(NULL);
}

static void test_farey(void) {
  char* out = NULL;
  EXPECT(adc_farey_enumerate(2, 1, &out) == ADC_OK);
  EXPECT(out && strstr(out, "[LR]") != NULL);
  EXPECT(out && strstr(out, "(-1+sqrt(2))") != NULL);
  adc_string_free(out);
  EXPECT(adc_farey_orbit("R", 0, &out) == ADC_OK);
  EXPECT(out && strstr(out, "0.61803398875") != NULL);
  adc_string_free(out);
  EXPECT(adc_farey_uniqueness(6, &out) == ADC_OK);
  EXPECT(out && strstr(out, " 0 collisions") != NULL);
  adc_string_free(out);
}

static void test_dataset(const char* data_dir) {
  char path[1024];
  snprintf(path, sizeof path, "%s/iris.csv", data_dir);
  adc_dataset* ds = NULL;
  EXPECT(adc_dataset_load_csv(path, "species", "versicolor", &ds) == ADC_OK);
  EXPECT(adc_dataset_rows(ds) == 150);
  EXPECT(adc_dataset_cols(ds) == 4);
  EXPECT(adc_dataset_positives(ds) == 50);
  EXPECT(adc_dataset_dropped_rows(ds) == 0);
  adc_dataset* small = NULL;
  EXPECT(adc_dataset_sample(ds, 50, 4, &small) == ADC_OK);
  EXPECT(adc_dataset_rows(small) == 50);
  EXPECT(adc_dataset_sample(ds, 500, 4, &small) == ADC_E_INVALID_ARGUMENT);
  adc_trace* t = NULL;
  EXPECT(adc_run_dataset(ds, 2, 3, 30, "float", &t) == ADC_OK);
  EXPECT(adc_trace_length(t) == 30);
  adc_trace_free(t);
  EXPECT(adc_run_dataset(ds, 0, 3, 30, "float", &t) == ADC_E_INVALID_ARGUMENT);
  EXPECT(adc_dataset_load_csv(path, "nope", "x", &small) == ADC_E_PARSE);
  adc_dataset_free(ds);
  adc_dataset_free(NULL);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    fprintf(stderr, "usage: test_capi DATA_DIR\n");
    return 2;
  }
  test_pool_and_run();
  test_errors();
  test_farey();
  test_dataset(argv[1]);
  if (failures) {
    fprintf(stderr, "%d C API expectation(s) failed\n", failures);
    return 1;
  }
  printf("C API: all expectations met\n");
  return 0;
}
