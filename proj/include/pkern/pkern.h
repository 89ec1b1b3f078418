#ifndef PKERN_PKERN_H
#define PKERN_PKERN_H

/* C interface of the pkern kernelization library. All objects are opaque
 * handles released with their own *_free function. Every call returns a
 * pk_status; on failure pk_last_error() describes the problem. Strings
 * returned through char** are owned by the caller and released with
 * pk_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PK_API __declspec(dllexport)
#else
#define PK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pk_status {
  PK_OK = 0,
  PK_ERR_INPUT = 1,
  PK_ERR_PARSE = 2,
  PK_ERR_COMMIT_CONFLICT = 3,
  PK_ERR_BUDGET = 4,
  PK_ERR_ORACLE_REFUSED = 5,
  PK_ERR_CONTRACT = 6,
  PK_ERR_INTERNAL = 7,
  PK_ERR_NULL_ARGUMENT = 8
} pk_status;

typedef enum pk_answer {
  PK_ANSWER_YES = 0,
  PK_ANSWER_NO = 1,
  PK_ANSWER_NO_BACKDOOR = 2,
  PK_ANSWER_REDUCED = 3
} pk_answer;

typedef enum pk_kernel {
  PK_KERNEL_VC_BUSS = 0,
  PK_KERNEL_VC_NT = 1,
  PK_KERNEL_VC_THRESHOLD = 2,
  PK_KERNEL_MATCHING = 3,
  PK_KERNEL_FVS_RULES = 4,
  PK_KERNEL_TW = 5,
  PK_KERNEL_PW = 6,
  PK_KERNEL_TD = 7
} pk_kernel;

typedef enum pk_target { PK_TARGET_HORN = 0, PK_TARGET_2CNF = 1 } pk_target;

typedef struct pk_engine pk_engine;
typedef struct pk_graph pk_graph;
typedef struct pk_points pk_points;
typedef struct pk_cnf pk_cnf;
typedef struct pk_circuit pk_circuit;
typedef struct pk_result pk_result;

PK_API const char* pk_version(void);
/* Message of the last failed call on this thread; empty if none. */
PK_API const char* pk_last_error(void);
PK_API void pk_string_free(char* s);

/* rounds_budget == 0 means unlimited. */
PK_API pk_status pk_engine_new(size_t workers, int has_schedule_seed, uint64_t schedule_seed, size_t rounds_budget,
                               pk_engine** out);
PK_API void pk_engine_free(pk_engine* engine);

PK_API pk_status pk_graph_parse(const char* text, pk_graph** out);
/* endpoints holds 2 * edge_count vertex ids. */
PK_API pk_status pk_graph_from_edges(uint32_t n, const uint32_t* endpoints, size_t edge_count, pk_graph** out);
PK_API pk_status pk_graph_vertex_count(const pk_graph* g, size_t* out);
PK_API pk_status pk_graph_edge_count(const pk_graph* g, size_t* out);
PK_API pk_status pk_graph_write(const pk_graph* g, char** out);
PK_API void pk_graph_free(pk_graph* g);

PK_API pk_status pk_points_parse(const char* text, pk_points** out);
PK_API pk_status pk_points_write(const pk_points* p, char** out);
PK_API void pk_points_free(pk_points* p);

PK_API pk_status pk_cnf_parse(const char* text, pk_cnf** out);
PK_API pk_status pk_cnf_write(const pk_cnf* f, char** out);
PK_API void pk_cnf_free(pk_cnf* f);

PK_API pk_status pk_circuit_parse(const char* text, pk_circuit** out);
PK_API pk_status pk_circuit_write(const pk_circuit* c, char** out);
PK_API void pk_circuit_free(pk_circuit* c);

/* Graph kernels (vc-buss, vc-nt, vc-thresh, matching, fvs-rules). delta is
 * read by PK_KERNEL_VC_THRESHOLD only. */
PK_API pk_status pk_kernelize(const pk_engine* engine, pk_kernel kind, const pk_graph* g, int64_t k, int delta,
                              pk_result** out);
/* Width kernels (tw, pw, td) with a vertex cover given as a text list of ids. */
PK_API pk_status pk_kernelize_width(const pk_engine* engine, pk_kernel kind, const pk_graph* g, int64_t k,
                                    const char* cover_text, pk_result** out);
/* Point-line cover; k is taken from the points file header. */
PK_API pk_status pk_kernelize_plc(const pk_engine* engine, const pk_points* p, pk_result** out);

PK_API pk_status pk_solve_vc(const pk_engine* engine, const pk_graph* g, int64_t k, pk_result** out);
PK_API pk_status pk_solve_fvs(const pk_engine* engine, const pk_graph* g, int64_t k, pk_result** out);
PK_API pk_status pk_solve_backdoor_sat(const pk_engine* engine, const pk_cnf* f, int64_t k, pk_target target,
                                       pk_result** out);
/* Builds the gadget graph of the circuit, runs the feedback vertex set rules
 * to a fixpoint and reports whether the target vertex was removed. */
PK_API pk_status pk_solve_mcvp(const pk_engine* engine, const pk_circuit* c, int with_leaf_rule, pk_result** out);

PK_API pk_status pk_result_answer(const pk_result* r, pk_answer* out);
PK_API pk_status pk_result_json(const pk_result* r, int with_stats, char** out);
PK_API void pk_result_free(pk_result* r);

/* Generators write the instance in its text format. */
PK_API pk_status pk_gen_random(const char* problem, size_t size, uint64_t seed, char** out);
PK_API pk_status pk_gen_mcvp(size_t gates, uint64_t seed, char** out);
PK_API pk_status pk_gen_necklace(int64_t k, char** out);

/* Exhaustive reference value as JSON. problem is one of vc, matching, fvs,
 * width, lpvc, plc, sat. */
PK_API pk_status pk_oracle(const char* problem, const char* instance_text, char** out);

/* Checks a kernelize JSON outcome against the original instance. cover_text
 * is required for tw/pw/td and ignored otherwise. *pass is 1 on success. */
PK_API pk_status pk_verify(const char* problem, const char* original_text, int64_t k, const char* cover_text,
                           int delta, const char* outcome_json, char** report_json, int* pass);

#ifdef __cplusplus
}
#endif

#endif
