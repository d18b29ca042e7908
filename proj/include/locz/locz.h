/* C interface to the locz shared library.
 *
 * Objects are opaque handles released with their destroy function. Every
 * call that can fail returns a locz_status; on failure a message for the
 * calling thread is available from locz_last_error() until the next call.
 * Strings returned through char** are owned by the caller and released with
 * locz_string_free(). Configs are JSON objects; unknown keys are rejected.
 */
#ifndef LOCZ_H
#define LOCZ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LOCZ_API __declspec(dllexport)
#else
#define LOCZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum locz_status {
  LOCZ_OK = 0,
  LOCZ_ERR_INVALID_ARGUMENT = 1,
  LOCZ_ERR_DISCONNECTED_GRAPH = 2,
  LOCZ_ERR_INVALID_K = 3,
  LOCZ_ERR_BUDGET_EXCEEDED = 4,
  LOCZ_ERR_ILLEGAL_ROBBER_MOVE = 5,
  LOCZ_ERR_INVALID_PAIR = 6,
  LOCZ_ERR_CASE_MISMATCH = 7,
  LOCZ_ERR_EPS_OUT_OF_RANGE = 8,
  LOCZ_ERR_DEGENERATE_REGIME = 9,
  LOCZ_ERR_TOO_MANY_RESAMPLES = 10,
  LOCZ_ERR_PARSE = 11,
  LOCZ_ERR_IO = 12,
  LOCZ_ERR_INTERNAL = 13
} locz_status;

#define LOCZ_UNREACHABLE UINT32_MAX

typedef struct locz_graph locz_graph;
typedef struct locz_report locz_report;

LOCZ_API const char* locz_version(void);
LOCZ_API const char* locz_last_error(void);
LOCZ_API const char* locz_status_name(locz_status status);
LOCZ_API void locz_string_free(char* s);

/* Graphs */
LOCZ_API locz_status locz_graph_generate(uint32_t n, double p, uint64_t seed, locz_graph** out);
/* family: "path", "cycle", "complete" (size = n) or "star" (size = leaves). */
LOCZ_API locz_status locz_graph_family(const char* family, uint32_t size, locz_graph** out);
LOCZ_API locz_status locz_graph_parse(const char* edge_list, locz_graph** out);
LOCZ_API locz_status locz_graph_load(const char* path, locz_graph** out);
LOCZ_API locz_status locz_graph_save(const locz_graph* g, const char* path);
LOCZ_API locz_status locz_graph_to_text(const locz_graph* g, char** out);
LOCZ_API void locz_graph_destroy(locz_graph* g);

LOCZ_API uint32_t locz_graph_vertex_count(const locz_graph* g);
LOCZ_API uint64_t locz_graph_edge_count(const locz_graph* g);
LOCZ_API uint64_t locz_graph_fingerprint(const locz_graph* g);
LOCZ_API int locz_graph_is_connected(const locz_graph* g);
/* Writes n distances; LOCZ_UNREACHABLE for other components. */
LOCZ_API locz_status locz_graph_bfs(const locz_graph* g, uint32_t source, uint32_t* distances);
/* LOCZ_UNREACHABLE when disconnected. */
LOCZ_API locz_status locz_graph_diameter(const locz_graph* g, uint32_t* out);

/* Plays one game and returns its transcript JSON.
 * config: {"k", "cop": "random-cop"|"fixed-cop", "probes": [[...], ...],
 *          "cop_seed", "robber": "greedy-robber"|"diametric-robber"|"random-robber",
 *          "target", "robber_seed", "mode": "class"|"walk", "walk": [...],
 *          "max_rounds", "seed"} */
LOCZ_API locz_status locz_play(const locz_graph* g, const char* config_json, char** transcript);

/* Checks a transcript against the graph by replaying it. */
LOCZ_API locz_status locz_replay(const locz_graph* g, const char* transcript_json);

/* config: {"k"?, "oracle"?, "max_vertices"?, "max_sensors"?, "max_memo_entries"?,
 *          "max_probe_sets"?}. With k: {n, k, verdict, states_explored,
 *          depth_bound}; without: the localization number / metric dimension
 *          report. */
LOCZ_API locz_status locz_solve(const locz_graph* g, const char* config_json, char** out);

/* config: {"n", "d" | "p", "i_override"?, "A"?, "B"?} */
LOCZ_API locz_status locz_bounds(const char* config_json, char** out);

/* kind: mc-capture, mc-survival, expansion-check, symmdiff-check, diameter-check. */
LOCZ_API locz_status locz_experiment(const char* kind, const char* config_json, locz_report** out);
LOCZ_API const char* locz_report_manifest(const locz_report* r);
LOCZ_API size_t locz_report_table_count(const locz_report* r);
LOCZ_API const char* locz_report_table_name(const locz_report* r, size_t index);
LOCZ_API const char* locz_report_table_csv(const locz_report* r, size_t index);
LOCZ_API locz_status locz_report_write(const locz_report* r, const char* dir);
LOCZ_API void locz_report_destroy(locz_report* r);

#ifdef __cplusplus
}
#endif

#endif
