#ifndef GYROSHAPE_H
#define GYROSHAPE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define GS_OBJECTIVE_ABSORB 0

#define GS_OBJECTIVE_CONTAIN 1

#define GS_TMIN_APPROX 0

#define GS_TMIN_EXACT 1

typedef enum GsStatus {
  GS_STATUS_OK = 0,
  GS_STATUS_NULL_POINTER = 1,
  GS_STATUS_INVALID_INPUT = 2,
  GS_STATUS_NOT_COPRIME = 3,
  GS_STATUS_ORDERING = 4,
  GS_STATUS_NOT_APPLICABLE = 5,
  GS_STATUS_NUMERICAL = 6,
  GS_STATUS_OUT_OF_RANGE = 7,
  GS_STATUS_PANIC = 99,
} GsStatus;

typedef struct GsDesignOutcome GsDesignOutcome;

typedef struct GsEnvelope GsEnvelope;

typedef struct GsFrontier GsFrontier;

typedef struct GsTrace GsTrace;

/**
 * `exclude_low_order = 0` and `delta = 0` disable those filters.
 */
typedef struct GsDesignQuery {
  int32_t objective;
  double t_max;
  double beat_min;
  uint64_t max_order;
  uint64_t exclude_low_order;
  double d_bound;
  int32_t t_min_mode;
  uint64_t delta;
} GsDesignQuery;

typedef struct GsModalSystem {
  double n;
  double omega1;
  double omega2;
} GsModalSystem;

typedef struct GsPair {
  uint64_t tau;
  uint64_t sigma;
} GsPair;

/**
 * Missing optional values (degenerate pairs have no proxy) are NaN and
 * `has_asymptotics` is false.
 */
typedef struct GsInscribedReport {
  struct GsPair pair;
  double qdot0;
  bool degenerate;
  double r_res;
  double theta_min;
  bool has_asymptotics;
  double theta_asy;
  double u_asy;
  uint64_t slow_node;
  double error_bound;
  bool certified;
  double t_min_exact;
  double t_min_approx;
  double h_q_min;
} GsInscribedReport;

typedef struct GsBeatTime {
  double approx;
  double exact;
} GsBeatTime;

typedef struct GsEnvelopePoint {
  double phi;
  double q;
  double qdot;
} GsEnvelopePoint;

typedef struct GsStateSample {
  double t;
  double q;
  double qdot;
  double z;
  double zdot;
  double hq;
  double hz;
  double h;
} GsStateSample;

typedef struct GsParetoPoint {
  struct GsPair pair;
  double n;
  double r_res_unit;
  double t_min;
  bool dominated;
} GsParetoPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *gs_last_error(void);

/**
 * Defaults for a query: beat ratio 10, order 100, `D = 1`, approximate `T_min`.
 */
struct GsDesignQuery gs_design_query_default(int32_t objective, double t_max);

enum GsStatus gs_modal_system(double n, struct GsModalSystem *result);

/**
 * Checks coprimality and ordering of `(tau, sigma)`.
 */
enum GsStatus gs_pair_validate(uint64_t tau, uint64_t sigma);

enum GsStatus gs_pair_coupling(struct GsPair pair, double *n);

enum GsStatus gs_pair_is_degenerate(struct GsPair pair, bool *degenerate);

/**
 * Resonant pair whose coupling matches `|n|` within `tol`; `found` is false
 * when none exists up to `max_order`.
 */
enum GsStatus gs_pair_from_coupling(double n,
                                    double tol,
                                    uint64_t max_order,
                                    struct GsPair *pair,
                                    bool *found);

enum GsStatus gs_inscribed_exact(struct GsPair pair,
                                 double qdot0,
                                 struct GsInscribedReport *report);

/**
 * Proxy at the first slow node. Degenerate pairs give `NotApplicable`.
 */
enum GsStatus gs_asymptotic_phase(struct GsPair pair, double *theta_asy, double *u_asy);

enum GsStatus gs_error_bound(struct GsPair pair, double *bound);

enum GsStatus gs_beat_time(struct GsPair pair, double theta_min, struct GsBeatTime *beat);

enum GsStatus gs_envelope_new(double n, double qdot0, size_t count, struct GsEnvelope **envelope);

enum GsStatus gs_envelope_len(const struct GsEnvelope *envelope, size_t *len);

enum GsStatus gs_envelope_get(const struct GsEnvelope *envelope,
                              size_t index,
                              struct GsEnvelopePoint *point);

void gs_envelope_free(struct GsEnvelope *envelope);

/**
 * Closed-form impulse response sampled on `[0, t_end]` with step `dt`.
 */
enum GsStatus gs_trace_new(double n, double qdot0, double t_end, double dt, struct GsTrace **trace);

enum GsStatus gs_trace_len(const struct GsTrace *trace, size_t *len);

enum GsStatus gs_trace_get(const struct GsTrace *trace, size_t index, struct GsStateSample *sample);

void gs_trace_free(struct GsTrace *trace);

/**
 * Every admissible pair up to `max_order`, scored and marked for dominance.
 */
enum GsStatus gs_frontier_new(uint64_t max_order,
                              double beat_min,
                              int32_t t_min_mode,
                              struct GsFrontier **frontier);

enum GsStatus gs_frontier_len(const struct GsFrontier *frontier, size_t *len);

enum GsStatus gs_frontier_get(const struct GsFrontier *frontier,
                              size_t index,
                              struct GsParetoPoint *point);

void gs_frontier_free(struct GsFrontier *frontier);

/**
 * Solves a design query. An infeasible query still succeeds; check
 * [`gs_design_feasible`].
 */
enum GsStatus gs_design_solve(const struct GsDesignQuery *query, struct GsDesignOutcome **outcome);

enum GsStatus gs_design_feasible(const struct GsDesignOutcome *outcome, bool *feasible);

/**
 * Chosen pair with `D`-scaled `r_res` and `h_q_min`. `NotApplicable` when
 * the query was infeasible.
 */
enum GsStatus gs_design_chosen(const struct GsDesignOutcome *outcome,
                               struct GsParetoPoint *chosen,
                               double *r_res,
                               double *h_q_min);

/**
 * Borrowed from the handle; valid until [`gs_design_free`].
 */
const char *gs_design_rationale(const struct GsDesignOutcome *outcome);

enum GsStatus gs_design_frontier_len(const struct GsDesignOutcome *outcome, size_t *len);

enum GsStatus gs_design_frontier_get(const struct GsDesignOutcome *outcome,
                                     size_t index,
                                     struct GsParetoPoint *point);

void gs_design_free(struct GsDesignOutcome *outcome);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GYROSHAPE_H */
