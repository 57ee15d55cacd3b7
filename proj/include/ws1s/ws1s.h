#ifndef WS1S_WS1S_H
#define WS1S_WS1S_H

/* C interface to the WS1S engine. Every handle is opaque; every fallible call
 * returns a ws1s_status and leaves a message for ws1s_last_error() on the
 * calling thread. Strings returned through out-parameters are owned by the
 * caller and released with ws1s_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WS1S_API __declspec(dllexport)
#elif defined(__GNUC__)
#define WS1S_API __attribute__((visibility("default")))
#else
#define WS1S_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ws1s_status {
  WS1S_OK = 0,
  WS1S_ERR_SYNTAX = 1,
  WS1S_ERR_KIND = 2,
  WS1S_ERR_BINDING = 3,
  WS1S_ERR_UNBOUND = 4,
  WS1S_ERR_BUDGET = 5,
  WS1S_ERR_MODE_DISAGREEMENT = 6,
  WS1S_ERR_INVALID_ARGUMENT = 7,
  WS1S_ERR_IO = 8,
  WS1S_ERR_INTERNAL = 9
} ws1s_status;

typedef enum ws1s_semantics {
  WS1S_SEMANTICS_FINITE_STRING = 0,
  WS1S_SEMANTICS_WEAK = 1
} ws1s_semantics;

typedef enum ws1s_mode { WS1S_MODE_INCREMENTAL = 0, WS1S_MODE_FROM_SCRATCH = 1 } ws1s_mode;

typedef struct ws1s_options {
  uint64_t state_budget;  /* product states per session */
  uint64_t subset_budget; /* states per determinization */
  int memo;               /* nonzero enables the compile cache */
  ws1s_semantics semantics;
} ws1s_options;

typedef struct ws1s_automaton ws1s_automaton;
typedef struct ws1s_session ws1s_session;

typedef struct ws1s_step_report {
  size_t step;
  ws1s_mode mode;
  int sat;
  double compile_ms;
  double process_ms;
  uint64_t explored_step;
  uint64_t explored_total;
  /* "[x=1,Y=0]..." / "eps" / "" when unsat; caller frees. */
  char* witness;
  /* JSON object mapping variable names to bit columns, "null" when unsat;
   * caller frees. */
  char* witness_json;
} ws1s_step_report;

WS1S_API ws1s_options ws1s_default_options(void);
WS1S_API const char* ws1s_last_error(void);
WS1S_API const char* ws1s_status_name(ws1s_status status);
WS1S_API void ws1s_string_free(char* s);

/* Automata. `options` may be NULL for defaults. */
WS1S_API ws1s_status ws1s_compile(const char* formula, const ws1s_options* options,
                                  ws1s_automaton** out);
WS1S_API void ws1s_automaton_free(ws1s_automaton* a);
WS1S_API size_t ws1s_automaton_states(const ws1s_automaton* a);
WS1S_API size_t ws1s_automaton_transitions(const ws1s_automaton* a);
WS1S_API ws1s_status ws1s_automaton_dump(const ws1s_automaton* a, char** out);
/* *sat is 0 or 1; *witness as in ws1s_step_report. */
WS1S_API ws1s_status ws1s_automaton_witness(const ws1s_automaton* a, int* sat,
                                            char** witness);
/* Compile-cache hits and misses recorded while building `a`. */
WS1S_API void ws1s_automaton_cache_stats(const ws1s_automaton* a, uint64_t* hits,
                                         uint64_t* misses);

/* Streaming sessions. */
WS1S_API ws1s_status ws1s_session_open(const ws1s_options* options, ws1s_mode mode,
                                       ws1s_session** out);
WS1S_API void ws1s_session_close(ws1s_session* s);
/* On success fills *report; release it with ws1s_step_report_clear. A failed
 * push leaves the session unchanged. */
WS1S_API ws1s_status ws1s_session_push(ws1s_session* s, const char* formula,
                                       ws1s_step_report* report);
WS1S_API void ws1s_step_report_clear(ws1s_step_report* report);
WS1S_API size_t ws1s_session_step(const ws1s_session* s);

/* Benchmark. modes is a bitmask: 1 incremental, 2 from scratch. Writes CSV
 * to out_path. */
WS1S_API ws1s_status ws1s_bench(int family, int n, unsigned modes, int reps,
                                const char* out_path, const ws1s_options* options);

/* Bounded model search over models of length 0..k. *sat is 0 or 1; *model
 * describes the first model found ("" when none); caller frees. */
WS1S_API ws1s_status ws1s_oracle_check(const char* formula, size_t k, int* sat,
                                       char** model);

#ifdef __cplusplus
}
#endif

#endif /* WS1S_WS1S_H */
