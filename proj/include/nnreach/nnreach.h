/* C interface to the nnreach reachability engine.
 *
 * Objects are opaque handles created by *_load / *_parse functions and released
 * with the matching *_free. Every fallible call returns an nnr_status; on failure
 * nnr_last_error() describes the problem for the calling thread. Handles are
 * immutable after creation, except for the nnr_scenario_set_* overrides, and may
 * be shared between threads when not being modified.
 */
#ifndef NNREACH_H
#define NNREACH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NNREACH_BUILDING)
#    define NNR_API __declspec(dllexport)
#  else
#    define NNR_API __declspec(dllimport)
#  endif
#else
#  define NNR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum nnr_status {
  NNR_OK = 0,
  NNR_UNCERTAIN = 1,      /* verification could not prove safety */
  NNR_ERR_INPUT = 2,      /* bad argument, unreadable or malformed document */
  NNR_ERR_INTERNAL = 3    /* internal invariant violated */
} nnr_status;

typedef enum nnr_document_kind { NNR_DOC_NETWORK = 0, NNR_DOC_SCENARIO = 1 } nnr_document_kind;

typedef struct nnr_network nnr_network;
typedef struct nnr_scenario nnr_scenario;
typedef struct nnr_report nnr_report;

typedef struct nnr_options {
  unsigned threads;   /* 0 selects the hardware concurrency */
  double epsilon;     /* outward padding of result boxes; negative keeps the document's value */
} nnr_options;

NNR_API const char* nnr_version(void);
NNR_API const char* nnr_last_error(void);
NNR_API void nnr_default_options(nnr_options* options);

/* Parses "lo:hi,lo:hi,..." into caller buffers of `capacity` entries; *dim receives
 * the box dimension. */
NNR_API nnr_status nnr_parse_box(const char* text, double* lo, double* hi, size_t capacity, size_t* dim);

/* Reads the format tag of a network or scenario file. */
NNR_API nnr_status nnr_detect_document(const char* path, nnr_document_kind* out);

/* Networks */
NNR_API nnr_status nnr_network_load(const char* path, nnr_network** out);
NNR_API nnr_status nnr_network_parse(const char* text, nnr_network** out);
NNR_API void nnr_network_free(nnr_network* net);
NNR_API size_t nnr_network_input_dim(const nnr_network* net);
NNR_API size_t nnr_network_output_dim(const nnr_network* net);
NNR_API nnr_status nnr_network_eval(const nnr_network* net, const double* input, size_t n_input,
                                    double* output, size_t n_output);

/* Scenarios */
NNR_API nnr_status nnr_scenario_load(const char* path, nnr_scenario** out);
NNR_API nnr_status nnr_scenario_parse(const char* text, const char* base_dir, nnr_scenario** out);
NNR_API void nnr_scenario_free(nnr_scenario* scenario);
NNR_API size_t nnr_scenario_state_dim(const nnr_scenario* scenario);
NNR_API nnr_status nnr_scenario_set_horizon(nnr_scenario* scenario, size_t horizon);
/* One count per controller input, or a single count repeated. */
NNR_API nnr_status nnr_scenario_set_partition(nnr_scenario* scenario, const size_t* counts, size_t n);

/* Engine calls. Each produces a report handle holding a text document. */
NNR_API nnr_status nnr_reach_nn(const nnr_network* net, const double* lo, const double* hi, size_t dim,
                                const size_t* counts, size_t n_counts, const nnr_options* options,
                                nnr_report** out);
NNR_API nnr_status nnr_reach_cls(const nnr_scenario* scenario, const nnr_options* options, nnr_report** out);
/* Returns NNR_UNCERTAIN (with a report) when safety cannot be proven. */
NNR_API nnr_status nnr_verify(const nnr_scenario* scenario, const nnr_options* options, nnr_report** out);
NNR_API nnr_status nnr_sample_network(const nnr_network* net, const double* lo, const double* hi, size_t dim,
                                      size_t count, uint64_t seed, unsigned threads, nnr_report** out);
NNR_API nnr_status nnr_sample_scenario(const nnr_scenario* scenario, size_t count, uint64_t seed,
                                       unsigned threads, nnr_report** out);

/* Reports */
NNR_API const char* nnr_report_text(const nnr_report* report);
NNR_API size_t nnr_report_size(const nnr_report* report);
/* Output boxes (reach-nn), tube steps (reach-cls, verify) or sample rows. */
NNR_API size_t nnr_report_item_count(const nnr_report* report);
NNR_API nnr_status nnr_report_write(const nnr_report* report, const char* path);
NNR_API void nnr_report_free(nnr_report* report);

#ifdef __cplusplus
}
#endif

#endif /* NNREACH_H */
