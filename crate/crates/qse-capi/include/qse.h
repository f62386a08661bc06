#ifndef QSE_H
#define QSE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Count of pure steered states.
 */
typedef enum QseCountClass {
  QseCountZero = 0,
  QseCountOne = 1,
  QseCountTwo = 2,
  QseCountInfinite = 3,
} QseCountClass;

/**
 * Ellipsoid body rank, lowest to highest.
 */
typedef enum QseDegeneracy {
  QsePoint = 0,
  QseNeedle = 1,
  QsePancake = 2,
  QseFull = 3,
} QseDegeneracy;

typedef enum QseParty {
  QseAlice = 0,
  QseBob = 1,
} QseParty;

/**
 * Result of every call. Numeric values match the CLI exit codes where a
 * counterpart exists.
 */
typedef enum QseStatus {
  QseOk = 0,
  /**
   * Bad state, file, or parameter.
   */
  QseInvalidInput = 2,
  /**
   * Solver failure on a valid input.
   */
  QseNumericFailure = 3,
  QseNullPointer = 4,
} QseStatus;

typedef enum QseVerdict {
  QseNotEntangled = 0,
  QseTwoWaySteerable = 1,
  /**
   * Entangled with zero tangency points; the criterion is silent.
   */
  QseInconclusiveByTangency = 2,
} QseVerdict;

typedef enum QseVerdictBasis {
  QseBasisNone = 0,
  QseBasisOnePureSteeredState = 1,
  QseBasisTwoPureSteeredStates = 2,
  QseBasisPureEntangled = 3,
} QseVerdictBasis;

/**
 * Opaque two-qubit state handle.
 */
typedef struct QseState QseState;

typedef struct QseEllipsoid {
  double center[3];
  /**
   * Descending.
   */
  double semiaxes[3];
  /**
   * Row-major rotation; its columns are the principal axes.
   */
  double orientation[9];
  double gamma_sq;
  enum QseDegeneracy degeneracy;
} QseEllipsoid;

typedef struct QseTangencyPoint {
  /**
   * Bloch vector of the pure steered state.
   */
  double bloch[3];
  /**
   * Measurement direction, sign-folded; outcome_sign picks the effect.
   */
  double direction[3];
  int32_t outcome_sign;
  double probability;
  /**
   * |g| at the maximizer.
   */
  double residual;
} QseTangencyPoint;

typedef struct QseClassification {
  bool entangled;
  double negativity;
  double chsh_value;
  bool chsh_violated;
  enum QseVerdict verdict;
  enum QseVerdictBasis verdict_basis;
  double volume_alice;
  double volume_bob;
  /**
   * False when the corresponding steerer marginal is pure.
   */
  bool has_count_alice;
  bool has_count_bob;
  enum QseCountClass count_alice;
  enum QseCountClass count_bob;
} QseClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qse_version(void);

/**
 * Copy of the calling thread's last error message, or NULL when the last
 * call succeeded. Free with `qse_string_free`.
 */
char *qse_last_error(void);

/**
 * Build a state from a row-major 4x4 density matrix split into real and
 * imaginary parts of 16 doubles each.
 *
 * # Safety
 * `re` and `im` must point to 16 readable doubles; `out` must be writable.
 */
enum QseStatus qse_state_from_matrix(const double *re, const double *im, struct QseState **out);

/**
 * Build a state from Bloch vectors a, b (3 doubles each) and the
 * row-major correlation matrix T (9 doubles).
 *
 * # Safety
 * Pointers must cover the stated lengths; `out` must be writable.
 */
enum QseStatus qse_state_from_pauli(const double *a,
                                    const double *b,
                                    const double *t,
                                    struct QseState **out);

/**
 * Parse a NUL-terminated state-file document (matrix or pauli form).
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
enum QseStatus qse_state_from_json(const char *text, struct QseState **out);

/**
 * # Safety
 * `state` must come from a qse constructor and not be freed twice.
 */
void qse_state_free(struct QseState *state);

/**
 * Steering ellipsoid of the chosen steered party.
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum QseStatus qse_ellipsoid(const struct QseState *state,
                             enum QseParty party,
                             struct QseEllipsoid *out);

/**
 * Pure steered states of the chosen party. `points` must hold capacity
 * entries; at most two are written. `count_class` reports the cardinality
 * (zero, one, two, or a continuum for pure inputs) and `n_points` how many
 * entries were written.
 *
 * # Safety
 * `state` must be a live handle; `points` must cover `capacity` entries;
 * the remaining out-pointers must be writable.
 */
enum QseStatus qse_tangency(const struct QseState *state,
                            enum QseParty party,
                            struct QseTangencyPoint *points,
                            uintptr_t capacity,
                            enum QseCountClass *count_class,
                            uintptr_t *n_points,
                            double *max_g);

/**
 * Full classification: entanglement, CHSH, tangency counts, verdict.
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum QseStatus qse_classify(const struct QseState *state, struct QseClassification *out);

/**
 * Machine-readable report document (17-significant-digit floats), as a
 * NUL-terminated string. Free with `qse_string_free`.
 *
 * # Safety
 * `state` must be a live handle; `out` must be writable.
 */
enum QseStatus qse_report_json(const struct QseState *state, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void qse_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSE_H */
