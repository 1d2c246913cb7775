#ifndef INASH_INASH_H
#define INASH_INASH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(INASH_BUILDING)
#    define INASH_API __declspec(dllexport)
#  else
#    define INASH_API __declspec(dllimport)
#  endif
#else
#  define INASH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status; on failure a message is available
 * from inash_last_error() on the calling thread until its next failing call.
 * Strings returned through char** are owned by the caller and must be
 * released with inash_string_free(). */
typedef enum inash_status
{
  INASH_OK = 0,
  INASH_ERR_INVALID_ARGUMENT = 1,
  INASH_ERR_PARSE = 2,
  INASH_ERR_SCENARIO = 3,
  INASH_ERR_IO = 4,
  INASH_ERR_GENERATION = 5,
  INASH_ERR_LIMIT = 6,
  INASH_ERR_INTERNAL = 7
} inash_status;

typedef struct inash_scenario inash_scenario;
typedef struct inash_run inash_run;

INASH_API const char* inash_version(void);
INASH_API const char* inash_status_string(inash_status status);
INASH_API const char* inash_last_error(void);
INASH_API void inash_string_free(char* s);
/* Value of INASH_OUT_DIR, or "." when unset or empty. */
INASH_API const char* inash_output_dir(void);

typedef enum inash_cost_mode
{
  INASH_COST_LENGTH = 0,
  INASH_COST_LENGTH_AND_TIME = 1
} inash_cost_mode;

typedef struct inash_planner_options
{
  int iterations;
  int has_seed; /* 0: use the scenario seed */
  uint64_t seed;
  double margin;
  size_t path_cap;
  int best_response;
  int goal_by_center;
  int strict_nearest_only_edges;
  int inactive_as_static;
  int vanish_at_goal;
  int settle;
  int max_settle_rounds;
  double eta;   /* <= 0: default */
  double gamma; /* <= 0: default */
  double speed;
  inash_cost_mode cost_mode;
  size_t max_ioptimal_robots;
  uint64_t max_joint_tuples;
} inash_planner_options;

INASH_API void inash_planner_options_init(inash_planner_options* o);

typedef struct inash_random_params
{
  double bounds_min_x, bounds_min_y, bounds_max_x, bounds_max_y;
  int robots;
  int obstacles;
  double robot_radius;
  double goal_radius;
  double min_rect_side, max_rect_side;
  double min_circle_radius, max_circle_radius;
  double circle_fraction;
  double min_travel_fraction;
  int max_attempts;
} inash_random_params;

INASH_API void inash_random_params_init(inash_random_params* p);

/* Scenarios */
INASH_API inash_status inash_scenario_load(const char* path, inash_scenario** out);
INASH_API inash_status inash_scenario_parse(const char* json_text, inash_scenario** out);
INASH_API inash_status inash_scenario_intersection(inash_scenario** out);
INASH_API inash_status inash_scenario_generate(const inash_random_params* p, uint64_t seed, inash_scenario** out);
INASH_API inash_status inash_scenario_to_json(const inash_scenario* s, char** out);
INASH_API size_t inash_scenario_robot_count(const inash_scenario* s);
INASH_API void inash_scenario_free(inash_scenario* s);

/* Single runs. algorithm: "inash", "prioritized", "anytime-prioritized" or
 * "ioptimal". */
INASH_API inash_status inash_run_create(const inash_scenario* s, const char* algorithm,
                                        const inash_planner_options* o, inash_run** out);
INASH_API inash_status inash_run_to_json(const inash_run* r, int include_graphs, char** out);
/* Unilateral-deviation audit on the run's final graphs. */
INASH_API inash_status inash_run_audit(const inash_run* r, int* all_pass, int* any_cap_hit, char** report_json);
INASH_API inash_status inash_run_render_svg(const inash_run* r, char** out);
INASH_API void inash_run_free(inash_run* r);

/* Accepts a run record or a bare scenario. */
INASH_API inash_status inash_render_svg_from_json(const char* json_text, char** out);

/* Multi-trial experiments. With scenario NULL every trial draws a random
 * scenario from random_params (NULL: defaults) and the trial seed. */
typedef struct inash_bench_options
{
  const char* algorithm;
  int trials;
  uint64_t base_seed;
} inash_bench_options;

INASH_API void inash_bench_options_init(inash_bench_options* b);
INASH_API inash_status inash_bench_run(const inash_scenario* s, const inash_random_params* random_params,
                                       const inash_bench_options* b, const inash_planner_options* o,
                                       char** csv_out, char** json_out);

/* Exhaustive equilibrium analysis of the game over each robot's cheapest
 * per_robot goal paths after o->iterations growth steps. */
INASH_API inash_status inash_oracle_scenario(const inash_scenario* s, const inash_planner_options* o,
                                             size_t per_robot, int pareto, char** json_out);
/* Checks that social optima are equilibria on `count` random finite games. */
INASH_API inash_status inash_oracle_random_games(uint64_t seed, int count, int pareto, char** json_out);

#ifdef __cplusplus
}
#endif

#endif
