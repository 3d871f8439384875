// Copyright 2026 The optbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPTBENCH_OPTBENCH_H
#define OPTBENCH_OPTBENCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(OPTBENCH_BUILDING_LIBRARY)
#    define OB_API __declspec(dllexport)
#  else
#    define OB_API __declspec(dllimport)
#  endif
#else
#  define OB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum ob_status
{
  OB_OK               = 0,
  OB_INVALID_INPUT    = 1, /* bad configuration, arguments or input data */
  OB_RUNTIME_FAILURE  = 2, /* I/O failure or internal error */
} ob_status;

typedef struct ob_experiment ob_experiment;
typedef struct ob_sweep      ob_sweep;
typedef struct ob_analysis   ob_analysis;

/* Message for the last failed call on this thread. Never NULL. */
OB_API char const *ob_last_error(void);
OB_API char const *ob_version(void);

/* ---- experiments ---- */

/* Fails only when the file cannot be read or parsed. Constraint violations
 * are reported by ob_experiment_validate. */
OB_API ob_status ob_experiment_load(char const *path, ob_experiment **out);
OB_API ob_status ob_experiment_parse(char const *yaml_text, ob_experiment **out);
OB_API void      ob_experiment_free(ob_experiment *experiment);

/* Collects all diagnostics. Returns OB_INVALID_INPUT when there is at least
 * one. */
OB_API ob_status   ob_experiment_validate(ob_experiment *experiment, size_t *diagnostic_count);
OB_API char const *ob_experiment_diagnostic(ob_experiment const *experiment, size_t index);

OB_API void        ob_experiment_set_seed(ob_experiment *experiment, uint64_t seed);
OB_API char const *ob_experiment_output_dir(ob_experiment const *experiment);

/* Writes the generated (or loaded) dataset as CSV. */
OB_API ob_status ob_experiment_write_dataset(ob_experiment const *experiment, char const *path);

/* ---- sweeps ---- */

/* Called after each run finishes, serialized, in completion order. */
typedef void (*ob_progress_fn)(size_t completed, size_t total, char const *status, void *user);

/* parallelism 0 = one thread per hardware core. */
OB_API ob_status ob_sweep_run(ob_experiment const *experiment, unsigned parallelism,
                              ob_progress_fn progress, void *user, ob_sweep **out);
OB_API void      ob_sweep_free(ob_sweep *sweep);

OB_API size_t ob_sweep_run_count(ob_sweep const *sweep);
/* status is "completed", "diverged" or "error". */
OB_API ob_status ob_sweep_run_info(ob_sweep const *sweep, size_t index, char const **optimizer,
                                   size_t *batch_size, char const **status, double *peak_accuracy,
                                   double *ttpa_seconds);

/* Appends to runs_csv/epochs_csv (creating them with headers), numbering runs
 * after the highest existing id. Both files are replaced atomically. */
OB_API ob_status ob_sweep_write_csv(ob_sweep const *sweep, char const *runs_csv,
                                    char const *epochs_csv);

/* ---- analysis ---- */

typedef enum ob_treatment
{
  OB_TREATED   = 0, /* drop runs whose peak accuracy is <= threshold */
  OB_UNTREATED = 1,
  OB_BOTH      = 2,
} ob_treatment;

/* Reads runs.csv and runs the statistics pipeline once per requested
 * treatment. Design problems (a missing cell, a single-level factor) yield
 * OB_INVALID_INPUT. */
OB_API ob_status ob_analysis_run(char const *runs_csv, ob_treatment treatment,
                                 double significance, double threshold, ob_analysis **out);
OB_API void      ob_analysis_free(ob_analysis *analysis);

/* One report for OB_TREATED/OB_UNTREATED, two (treated first) for OB_BOTH. */
OB_API size_t      ob_analysis_report_count(ob_analysis const *analysis);
OB_API char const *ob_analysis_treatment(ob_analysis const *analysis, size_t report);
OB_API size_t      ob_analysis_input_count(ob_analysis const *analysis, size_t report);
OB_API size_t      ob_analysis_removed_count(ob_analysis const *analysis, size_t report);
/* Looks up one ANOVA row by source ("batch_size", "optimizer",
 * "interaction", "error", "total"). Undefined f/p come back as NaN. */
OB_API ob_status ob_analysis_anova_row(ob_analysis const *analysis, size_t report,
                                       char const *source, double *df, double *ss, double *f,
                                       double *p);
/* JSON report text, owned by the handle. */
OB_API char const *ob_analysis_json(ob_analysis const *analysis, size_t report);

/* Writes into out_dir: anova_report.json (or anova_report_treated.json and
 * anova_report_untreated.json for OB_BOTH) plus boxplot_data.csv,
 * trend_data.csv and ttpa_ratio_data.csv. Every file is rendered before any
 * is written, and each is replaced atomically. */
OB_API ob_status ob_analysis_write(ob_analysis const *analysis, char const *out_dir);

/* ---- reports ---- */

/* Renders a JSON report file as text tables. Free the result with
 * ob_string_free. */
OB_API ob_status ob_report_render(char const *report_json, char **out_text);
OB_API void      ob_string_free(char *text);

/* ---- numerics ---- */

/* Upper tail of the F(df1, df2) distribution. */
OB_API double ob_f_p_value(double f, double df1, double df2);

#ifdef __cplusplus
}
#endif

#endif
