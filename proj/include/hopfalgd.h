/* C interface to the verification toolkit. All heavy objects live behind
 * opaque handles; strings returned through char** are owned by the caller and
 * released with hx_string_free, strings returned as const char* stay owned by
 * the handle they came from. */
#ifndef HOPFALGD_H
#define HOPFALGD_H

#ifdef __cplusplus
extern "C" {
#endif

#define HX_OK 0           /* run completed, all selected checks passed */
#define HX_FAIL 1         /* some check failed, with a witness in the report */
#define HX_EINVAL 2       /* bad input: config, options, or command */
#define HX_INCONCLUSIVE 3 /* no failure, but some check is open at the bound */
#define HX_INTERNAL 4     /* unexpected internal error */

typedef struct hx_instance hx_instance;
typedef struct hx_run hx_run;

/* Parses and validates a configuration. On HX_EINVAL, *errmsg (if non-NULL)
 * receives a description. */
int hx_instance_new(const char* config_json, hx_instance** out, char** errmsg);
void hx_instance_free(hx_instance* ins);

/* content hash of the canonical configuration */
const char* hx_instance_digest(const hx_instance* ins);

/* command: "validate", "check-sigma" or "verify". options_json may be NULL,
 * or a JSON object overriding field / degree_bound / suites / seed / threads.
 * Returns HX_OK or HX_INTERNAL/HX_EINVAL; check outcomes are reported by
 * hx_run_status, not by this return value. */
int hx_run_command(hx_instance* ins, const char* command, const char* options_json, hx_run** out,
                   char** errmsg);

/* HX_OK, HX_FAIL or HX_INCONCLUSIVE */
int hx_run_status(const hx_run* run);
const char* hx_run_report_json(const hx_run* run);
int hx_run_artifact_count(const hx_run* run);
const char* hx_run_artifact_name(const hx_run* run, int index);
const char* hx_run_artifact_json(const hx_run* run, int index);
void hx_run_free(hx_run* run);

void hx_string_free(char* s);
const char* hx_version(void);

#ifdef __cplusplus
}
#endif

#endif /* HOPFALGD_H */
