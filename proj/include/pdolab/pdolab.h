/* C interface to the pdo-lab core. All handles are opaque; every call that can fail returns a
 * pdolab_status and leaves a message retrievable with pdolab_last_error() on the calling thread.
 * Strings returned through out-parameters are owned by the handle they came from and stay valid
 * until that handle is freed. */
#ifndef PDOLAB_H
#define PDOLAB_H

#include <stdint.h>

#if defined(_WIN32)
#define PDOLAB_API __declspec(dllexport)
#else
#define PDOLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  PDOLAB_OK = 0,
  PDOLAB_ERR_ARGUMENT = 1,
  PDOLAB_ERR_CONFIG = 2,
  PDOLAB_ERR_RUNTIME = 3,
  PDOLAB_ERR_IO = 4
} pdolab_status;

typedef enum { PDOLAB_PASS = 0, PDOLAB_FAIL = 1, PDOLAB_FLAGGED = 2 } pdolab_verdict;

typedef struct pdolab_config pdolab_config;
typedef struct pdolab_result pdolab_result;

PDOLAB_API const char* pdolab_version(void);
PDOLAB_API const char* pdolab_last_error(void);
/* Case id of the last runtime failure on this thread, -1 if none. */
PDOLAB_API int pdolab_last_error_case(void);

/* Registry, sorted by name. */
PDOLAB_API int pdolab_scenario_count(void);
PDOLAB_API pdolab_status pdolab_scenario_info(int i, const char** name, const char** description, int* criterion,
                                              double* budget_seconds);
PDOLAB_API int pdolab_scenario_anchor_count(int i);
PDOLAB_API const char* pdolab_scenario_anchor(int i, int k);

/* Configs. */
PDOLAB_API pdolab_status pdolab_config_from_json(const char* json, pdolab_config** out);
PDOLAB_API pdolab_status pdolab_config_from_file(const char* path, pdolab_config** out);
PDOLAB_API pdolab_status pdolab_config_for_scenario(const char* name, pdolab_config** out);
PDOLAB_API pdolab_status pdolab_config_set_out_dir(pdolab_config* c, const char* dir);
PDOLAB_API pdolab_status pdolab_config_set_workers(pdolab_config* c, int workers);
PDOLAB_API pdolab_status pdolab_config_set_seed(pdolab_config* c, uint64_t seed);
/* Applies PDO_LAB_SEED if set. */
PDOLAB_API pdolab_status pdolab_config_apply_env(pdolab_config* c);
PDOLAB_API const char* pdolab_config_scenario(const pdolab_config* c);
PDOLAB_API const char* pdolab_config_out_dir(const pdolab_config* c);
PDOLAB_API uint64_t pdolab_config_seed(const pdolab_config* c);
PDOLAB_API void pdolab_config_free(pdolab_config* c);

/* Runs. */
PDOLAB_API pdolab_status pdolab_run(const pdolab_config* c, pdolab_result** out);
PDOLAB_API int pdolab_result_record_count(const pdolab_result* r);
PDOLAB_API int pdolab_result_failures(const pdolab_result* r);
/* 0 if no record failed, 1 otherwise. */
PDOLAB_API int pdolab_result_exit_status(const pdolab_result* r);
PDOLAB_API pdolab_status pdolab_result_record(const pdolab_result* r, int i, const char** label,
                                              pdolab_verdict* verdict, int* quantity_count, const char** note);
PDOLAB_API pdolab_status pdolab_result_quantity(const pdolab_result* r, int i, int q, const char** name,
                                                double* value, const char** relation, double* tolerance);
/* Writes <dir>/<scenario>.csv and <dir>/<scenario>.json. */
PDOLAB_API pdolab_status pdolab_result_write(const pdolab_result* r, const char* dir);
/* CSV text owned by the result. */
PDOLAB_API const char* pdolab_result_csv(const pdolab_result* r);
PDOLAB_API void pdolab_result_free(pdolab_result* r);

/* Direct probes on registry symbols; params_json is an object of numeric overrides or NULL. */
PDOLAB_API pdolab_status pdolab_numerical_index(const char* symbol, const char* params_json, double L, int N,
                                                double s, double p, int* kernel_dim, int* cokernel_dim, int* index,
                                                double* gap);
PDOLAB_API pdolab_status pdolab_winding_index(const char* symbol, const char* params_json, double L, int N,
                                              int* winding);

#ifdef __cplusplus
}
#endif

#endif
