/* C interface for the adaptive TD route recommendation engine.
 *
 * Usage pattern: create a context, set or load configuration, run
 * commands. All functions returning atdsc_status report failure details
 * through atdsc_last_error(ctx). Strings returned through out-parameters
 * are owned by the caller and released with atdsc_string_free().
 */
#ifndef ATDSC_H
#define ATDSC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct atdsc_ctx atdsc_ctx;

typedef enum {
  ATDSC_OK = 0,
  ATDSC_ERR_RUNTIME = 1, /* runtime failure */
  ATDSC_ERR_USAGE = 2    /* bad arguments, config, or input files */
} atdsc_status;

/* Library version, encoded as major * 10000 + minor * 100 + patch. */
unsigned atdsc_version(void);

atdsc_ctx* atdsc_ctx_new(void);
void atdsc_ctx_free(atdsc_ctx* ctx);

/* Message of the last failed call on this context; empty string if none. */
const char* atdsc_last_error(const atdsc_ctx* ctx);

/* Key=value configuration; unknown keys are usage errors. */
atdsc_status atdsc_config_load(atdsc_ctx* ctx, const char* path);
atdsc_status atdsc_config_set(atdsc_ctx* ctx, const char* key, const char* value);
/* Returns NULL for unknown keys. The pointer stays valid until the next
 * config call on the context. */
const char* atdsc_config_get(atdsc_ctx* ctx, const char* key);

/* Generates a synthetic corpus (trips.csv, adjacency.txt, prior.csv). */
atdsc_status atdsc_synth(atdsc_ctx* ctx, const char* out_dir);

/* Parses and aggregates trip records into a stats snapshot directory.
 * prior_path may be NULL or empty. */
atdsc_status atdsc_ingest(atdsc_ctx* ctx, const char* trips_path, const char* adjacency_path,
                          const char* prior_path, const char* out_dir);

/* Trains the anomaly gate classifier and writes it to model_out.
 * stats_dir may be NULL (zone count then comes from configuration). */
atdsc_status atdsc_train_anomaly(atdsc_ctx* ctx, const char* stats_dir, const char* model_out,
                                 char** summary_out);

/* Runs the learner once and renders the recommended route. */
atdsc_status atdsc_recommend(atdsc_ctx* ctx, const char* stats_dir, char** text_out);

/* Benchmarks all five methods; writes report.csv, report_long.csv and
 * run_log.csv under out_dir. */
atdsc_status atdsc_benchmark(atdsc_ctx* ctx, const char* stats_dir, const char* out_dir);

/* Summarizes an existing report.csv; optionally writes the long-format
 * file when long_out is non-NULL. */
atdsc_status atdsc_report(atdsc_ctx* ctx, const char* report_csv, const char* long_out,
                          char** summary_out);

void atdsc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ATDSC_H */
