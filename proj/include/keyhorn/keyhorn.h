/* C interface to the keyhorn library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a kh_status; on a
 * non-zero status kh_last_error() describes the failure (per thread).
 * Strings returned through char** out-parameters are released with
 * kh_string_free. Variables are 1-based.
 */
#ifndef KEYHORN_KEYHORN_H
#define KEYHORN_KEYHORN_H

#include <stddef.h>
#include <stdint.h>

#if defined(KEYHORN_BUILDING_LIBRARY)
#define KH_API __attribute__((visibility("default")))
#else
#define KH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kh_status {
  KH_OK = 0,
  KH_ERR_PARSE = 1,
  KH_ERR_INVALID = 2,
  KH_ERR_VERIFY = 3,
  KH_ERR_LIMIT = 4,
  KH_ERR_NO_BODY = 5,
  KH_ERR_UNIVERSE = 6,
  KH_ERR_INFEASIBLE = 7,
  KH_ERR_OVERFLOW = 8,
  KH_ERR_INTERNAL = 9
} kh_status;

typedef enum kh_measure {
  KH_MEASURE_B = 0,
  KH_MEASURE_BA = 1,
  KH_MEASURE_TA = 2,
  KH_MEASURE_C = 3,
  KH_MEASURE_BC = 4,
  KH_MEASURE_L = 5
} kh_measure;

typedef enum kh_strategy {
  KH_STRATEGY_AUTO = 0,
  KH_STRATEGY_EXACT = 1,
  KH_STRATEGY_HAMILTONIAN = 2,
  KH_STRATEGY_PROCEDURE1 = 3,
  KH_STRATEGY_PROCEDURE2 = 4,
  KH_STRATEGY_BEST_OF = 5
} kh_strategy;

/* A raw body family: n and a list of bodies, not necessarily Sperner. */
typedef struct kh_family kh_family;
/* A canonical body-grouped pure Horn CNF. */
typedef struct kh_formula kh_formula;

KH_API const char* kh_version(void);
KH_API const char* kh_last_error(void);
KH_API void kh_string_free(char* s);

KH_API const char* kh_measure_name(kh_measure mu);
KH_API kh_status kh_measure_parse(const char* text, kh_measure* out);
KH_API const char* kh_strategy_name(kh_strategy s);
KH_API kh_status kh_strategy_parse(const char* text, kh_strategy* out);

/* Upper bound on worker threads used inside the library (default 1). */
KH_API kh_status kh_set_threads(int threads);

/* 64-bit FNV-1a digest as 16 hex digits. */
KH_API kh_status kh_digest(const char* bytes, size_t len, char** out);

/* ---- families ---------------------------------------------------------- */

KH_API kh_status kh_family_parse(const char* text, kh_family** out);
/* Bodies given as a flat variable array; body i is vars[offsets[i] .. offsets[i+1]). */
KH_API kh_status kh_family_create(int n, const int32_t* vars, const size_t* offsets, size_t m, kh_family** out);
KH_API void kh_family_free(kh_family* f);
KH_API kh_status kh_family_write(const kh_family* f, char** out);
/* Writes the normalized (reduced) family. */
KH_API kh_status kh_family_write_normalized(const kh_family* f, char** out);

typedef struct kh_family_stats {
  int n;
  int m;
  int k;
  int delta;
  /* After normalization. */
  int reduced_n;
  int reduced_m;
  int core_size;
  int uncovered_size;
  int dropped_bodies;
  int trivial;
} kh_family_stats;

KH_API kh_status kh_family_stats_get(const kh_family* f, kh_family_stats* out);

/* ---- formulas ---------------------------------------------------------- */

KH_API kh_status kh_formula_parse(const char* text, kh_formula** out);
KH_API void kh_formula_free(kh_formula* phi);
KH_API kh_status kh_formula_write(const kh_formula* phi, char** out);
KH_API kh_status kh_formula_size(const kh_formula* phi, kh_measure mu, int64_t* out);
/* Canonical representation: every minimal body implies all other variables. */
KH_API kh_status kh_canonical_formula(const kh_family* f, kh_formula** out);

/* ---- minimization ------------------------------------------------------ */

typedef struct kh_result_info {
  kh_measure measure;
  int64_t size;
  int64_t lower_bound;
  /* guarantee_den == 0 means no proven factor for the forced strategy. */
  int64_t guarantee_num;
  int64_t guarantee_den;
  kh_strategy strategy;
  double normalize_ms;
  double minimize_ms;
  double lift_ms;
  double verify_ms;
} kh_result_info;

/* normalize, minimize, lift back to the input variables and verify. A failed
 * verification returns KH_ERR_VERIFY and no formula. */
KH_API kh_status kh_minimize(const kh_family* f, kh_measure mu, kh_strategy strategy, kh_formula** out,
                             kh_result_info* info);

/* ---- verification ------------------------------------------------------ */

/* accepted is set to 1 or 0; on rejection *certificate (if requested)
 * receives a human-readable certificate. */
KH_API kh_status kh_verify(const kh_family* f, const kh_formula* phi, int* accepted, char** certificate);

KH_API kh_status kh_equivalent(const kh_formula* a, const kh_formula* b, int* equal);

/* ---- exact oracle and bounds ------------------------------------------- */

typedef struct kh_exact_info {
  int64_t value;
  int optimal;
  int64_t nodes;
} kh_exact_info;

/* max_candidates <= 0 and timeout_ms <= 0 select the defaults (24, 10 s). */
KH_API kh_status kh_exact(const kh_family* f, kh_measure mu, int max_candidates, int64_t timeout_ms,
                          kh_formula** out, kh_exact_info* info);

typedef struct kh_bounds_info {
  int64_t basic;
  /* -1 when not applicable (measures other than C/BC, or one body). */
  int64_t partition;
  int64_t best;
} kh_bounds_info;

KH_API kh_status kh_bounds(const kh_family* f, kh_measure mu, kh_bounds_info* out);

/* ---- prices ------------------------------------------------------------ */

typedef struct kh_price_info {
  /* C: the closed form |to \ from|. L: weight of the shortest-path formula. */
  int64_t value;
  /* Exact price when requested and available, else -1. */
  int64_t exact;
} kh_price_info;

/* Only KH_MEASURE_C and KH_MEASURE_L. from/to are variable lists. formula
 * (nullable) receives the shortest-path formula for L. */
KH_API kh_status kh_price(const kh_family* f, kh_measure mu, const char* from, const char* to, int exact,
                          kh_price_info* out, kh_formula** formula);

/* ---- generators -------------------------------------------------------- */

KH_API kh_status kh_gen_random(int n, int m, int k, uint64_t seed, kh_family** out);
/* edges holds 2*count endpoints. The raw family is returned. */
KH_API kh_status kh_gen_hydra(int n, const int32_t* edges, size_t count, kh_family** out);
/* certificate (nullable) receives the certificate formula. */
KH_API kh_status kh_gen_projective(int d, kh_family** out, kh_formula** certificate);
/* DIMACS 3-CNF in; bodies S, Z, T, X_1, Y_1, ... out; summary (nullable) is a
 * JSON object with the parameters and block sizes. */
KH_API kh_status kh_gen_sat3(const char* dimacs, kh_family** out, char** summary);

/* ---- strongly connected spanning subgraph ------------------------------ */

typedef struct kh_mwscs_info {
  int64_t weight;
  int root;
  int arcs;
  /* Σ over nodes of the cheapest entering arc. */
  int64_t entering_lower_bound;
  /* Set when the family is the projective instance of dimension d. */
  int projective;
  int d;
  int64_t min_x_entering_price;
  int64_t x_lower_bound;
  int64_t certificate_c_size;
  int64_t certificate_clause_terms;
  int certificate_verified;
} kh_mwscs_info;

/* 2-approximate MWSCS of the price_C body graph of the minimal bodies. */
KH_API kh_status kh_mwscs(const kh_family* f, kh_mwscs_info* out);

#ifdef __cplusplus
}
#endif

#endif /* KEYHORN_KEYHORN_H */
