/*
 Copyright 2026 The zpmsim Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

/* C interface of the zpmsim guidance and simulation library.
 *
 * All entry points follow the same conventions: opaque handles own their
 * resources and are released with the matching *_free function; calls
 * that can fail either return NULL (creation) or a zpm_status, and
 * zpm_last_error() describes the most recent failure on the calling
 * thread. Strings returned by the library are heap-allocated and must be
 * released with zpm_string_free.
 */

#ifndef ZPM_ZPM_H_
#define ZPM_ZPM_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zpm_status {
  ZPM_OK = 0,
  ZPM_ERR_INVALID_ARGUMENT = 1, /* bad handle, key, mode or parameter */
  ZPM_ERR_VALIDATION = 2,       /* config / file / limit validation failed */
  ZPM_ERR_IO = 3,               /* file system failure */
  ZPM_ERR_RUNTIME = 4           /* simulation / numeric failure */
} zpm_status;

typedef struct zpm_scenario zpm_scenario;
typedef struct zpm_trajectory zpm_trajectory;
typedef struct zpm_run_result zpm_run_result;
typedef struct zpm_campaign zpm_campaign;

const char* zpm_version(void);

/* Message of the last failure on this thread ("" when none). */
const char* zpm_last_error(void);

void zpm_string_free(char* s);

/* ---- scenario ---------------------------------------------------- */

/* Built-in defaults (the -90 deg station maneuver example case). */
zpm_scenario* zpm_scenario_default(void);

/* Defaults overlaid with a configuration file. */
zpm_scenario* zpm_scenario_load(const char* config_path);

/* Applies one "section.key=value" override. */
zpm_status zpm_scenario_set(zpm_scenario* scenario, const char* dotted_key,
                            const char* value);

/* The full configuration text of the built-in defaults. */
char* zpm_default_config_text(void);

void zpm_scenario_free(zpm_scenario* scenario);

/* ---- nominal trajectory ------------------------------------------ */

/* Plans the reference trajectory for the scenario (or imports the file
 * named by nominal.trajectory_file when set). */
zpm_trajectory* zpm_nominal_generate(const zpm_scenario* scenario);

zpm_trajectory* zpm_trajectory_load(const char* csv_path);
zpm_status zpm_trajectory_save(const zpm_trajectory* trajectory, const char* csv_path);

/* Validation report against the scenario's CMG limits (JSON). */
char* zpm_trajectory_validate_json(const zpm_trajectory* trajectory,
                                   const zpm_scenario* scenario);

void zpm_trajectory_free(zpm_trajectory* trajectory);

/* ---- closed-loop simulation -------------------------------------- */

/* mode: "traditional", "ltac" or "rtac". */
zpm_run_result* zpm_simulate(const zpm_scenario* scenario,
                             const zpm_trajectory* trajectory, const char* mode);

/* Terminal errors vs the nominal endpoint: out[0] attitude error (deg),
 * out[1] |omega error| (rad/s), out[2] |h_c error| (N m s),
 * out[3] |H error| (N m s). */
zpm_status zpm_result_terminal_errors(const zpm_run_result* result, double out[4]);

char* zpm_result_summary_json(const zpm_run_result* result);
zpm_status zpm_result_write_log_csv(const zpm_run_result* result, const char* path);

/* log.csv, summary.json and the standard SVG charts into out_dir. */
zpm_status zpm_result_write_report(const zpm_run_result* result, const char* out_dir);

void zpm_run_result_free(zpm_run_result* result);

/* ---- Monte-Carlo campaigns ---------------------------------------- */

/* modes_csv: comma-separated subset of "traditional,ltac,rtac". threads
 * <= 0 picks the hardware thread count. */
zpm_campaign* zpm_campaign_run(const zpm_scenario* scenario,
                               const zpm_trajectory* trajectory, int n_samples,
                               uint64_t master_seed, const char* modes_csv,
                               int threads);

char* zpm_campaign_summary_json(const zpm_campaign* campaign);

/* stats.csv, samples.csv, summary.json and first-sample charts. */
zpm_status zpm_campaign_write_report(const zpm_campaign* campaign, const char* out_dir);

void zpm_campaign_free(zpm_campaign* campaign);

/* ---- plotting ------------------------------------------------------ */

/* Re-renders a chart from a stored log CSV. kind: "hc", "dH" or "sigma". */
zpm_status zpm_plot_log_csv(const char* log_csv_path, const char* kind,
                            const char* out_svg_path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ZPM_ZPM_H_ */
