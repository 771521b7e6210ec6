/* C interface to the adacycle library.
 *
 * Objects are opaque handles released with their matching *_free function.
 * Every call that can fail returns an adc_status; on failure a message is
 * available from adc_last_error() on the same thread until the next call.
 * Strings returned through char** are heap copies owned by the caller and
 * released with adc_string_free. */
#ifndef ADACYCLE_ADACYCLE_H_
#define ADACYCLE_ADACYCLE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(ADACYCLE_BUILDING_LIBRARY)
#define ADC_API __attribute__((visibility("default")))
#else
#define ADC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adc_status {
  ADC_OK = 0,
  ADC_E_INVALID_ARGUMENT = 1,
  ADC_E_DIMENSION = 2,
  ADC_E_DOMAIN = 3,
  ADC_E_INSUFFICIENT_DATA = 4,
  ADC_E_WEAK_LEARNING = 5,
  ADC_E_PERFECT_CLASSIFICATION = 6,
  ADC_E_PARSE = 7,
  ADC_E_IO = 8,
  ADC_E_PRECONDITION = 9,
  ADC_E_INTERNAL = 10
} adc_status;

typedef struct adc_pool adc_pool;
typedef struct adc_dataset adc_dataset;
typedef struct adc_trace adc_trace;
typedef struct adc_report adc_report;

ADC_API const char* adc_version(void);
ADC_API const char* adc_status_name(adc_status status);
ADC_API const char* adc_last_error(void);
ADC_API void adc_string_free(char* s);

/* Hypothesis pools: one "+-+" dichotomy per line, '#' comments. */
ADC_API adc_status adc_pool_parse(const char* text, adc_pool** out);
ADC_API adc_status adc_pool_load(const char* path, adc_pool** out);
ADC_API size_t adc_pool_rows(const adc_pool* pool);
ADC_API size_t adc_pool_points(const adc_pool* pool);
ADC_API void adc_pool_free(adc_pool* pool);

/* Datasets: CSV with a header row, binarized one-vs-rest. */
ADC_API adc_status adc_dataset_load_csv(const char* path, const char* label_column,
                                        const char* positive_class, adc_dataset** out);
ADC_API adc_status adc_dataset_sample(const adc_dataset* ds, size_t size, uint64_t seed,
                                      adc_dataset** out);
ADC_API size_t adc_dataset_rows(const adc_dataset* ds);
ADC_API size_t adc_dataset_cols(const adc_dataset* ds);
ADC_API size_t adc_dataset_positives(const adc_dataset* ds);
ADC_API size_t adc_dataset_dropped_rows(const adc_dataset* ds);
ADC_API void adc_dataset_free(adc_dataset* ds);

/* Boosting runs. rule: "optimal", "first-above:THETA", "fixed:i,j,...".
 * mode: "exact" or "float". */
ADC_API adc_status adc_run_pool(const adc_pool* pool, const char* rule, size_t iterations,
                                const char* mode, adc_trace** out);
ADC_API adc_status adc_run_dataset(const adc_dataset* ds, size_t max_depth, size_t max_leaves,
                                   size_t iterations, const char* mode, adc_trace** out);

/* Traces. */
ADC_API adc_status adc_trace_load(const char* path, adc_trace** out);
ADC_API adc_status adc_trace_parse(const char* text, adc_trace** out);
ADC_API adc_status adc_trace_save(const adc_trace* trace, const char* path);
ADC_API adc_status adc_trace_serialize(const adc_trace* trace, char** out);
ADC_API size_t adc_trace_length(const adc_trace* trace);
ADC_API size_t adc_trace_pool_rows(const adc_trace* trace);
ADC_API const char* adc_trace_mode(const adc_trace* trace);
ADC_API const char* adc_trace_halt(const adc_trace* trace);
/* Copies min(length, capacity) edges into buf and stores the full length. */
ADC_API adc_status adc_trace_edges(const adc_trace* trace, double* buf, size_t capacity,
                                   size_t* length);
/* "p/q" in exact mode, a round-trip decimal in float mode. */
ADC_API adc_status adc_trace_edge_string(const adc_trace* trace, size_t iteration, char** out);
ADC_API void adc_trace_free(adc_trace* trace);

/* Analysis. checks: comma list of 3wgt,wvals,gencyc,farey,nabla or "all"
 * (NULL means all). */
typedef struct adc_analysis_options {
  double tol;
  size_t min_repeats;
  double burn_in;
  int align_permutations;
  const char* checks;
} adc_analysis_options;

ADC_API adc_analysis_options adc_analysis_defaults(void);
ADC_API adc_status adc_analyze(const adc_trace* trace, const adc_analysis_options* options,
                               adc_report** out);
ADC_API int adc_report_all_passed(const adc_report* report);
ADC_API int adc_report_has_cycle(const adc_report* report);
ADC_API size_t adc_report_edge_period(const adc_report* report);
ADC_API size_t adc_report_weight_period(const adc_report* report);
ADC_API size_t adc_report_phase(const adc_report* report);
ADC_API double adc_report_mean_edge(const adc_report* report);
/* 1 holds, 0 fails, -1 when no cycle was found. */
ADC_API int adc_report_nabla_holds(const adc_report* report);
/* Empty string when no word matched. */
ADC_API adc_status adc_report_farey_word(const adc_report* report, char** out);
ADC_API adc_status adc_report_text(const adc_report* report, char** out);
ADC_API adc_status adc_report_json(const adc_report* report, char** out);
ADC_API void adc_report_free(adc_report* report);

/* Farey orbits. */
ADC_API adc_status adc_farey_enumerate(size_t k, int exact, char** out);
ADC_API adc_status adc_farey_orbit(const char* word, int exact, char** out);
ADC_API adc_status adc_farey_uniqueness(size_t max_k, char** out);

/* Figures. references: comma list of golden, sqrt2m1, invsqrt2 or decimals;
 * NULL for none. title may be NULL. */
ADC_API adc_status adc_plot_svg(const adc_trace* trace, const char* references, int width,
                                int height, const char* title, char** out);

#ifdef __cplusplus
}
#endif

#endif /* ADACYCLE_ADACYCLE_H_ */
