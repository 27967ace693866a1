#ifndef CIRCFLOW_H
#define CIRCFLOW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call. The first three mirror certificate verdicts.
typedef enum CfStatus {
  CF_STATUS_VERIFIED = 0,
  CF_STATUS_REFUTED = 1,
  CF_STATUS_INCONCLUSIVE = 2,
  CF_STATUS_INVALID_ARGUMENT = 3,
  CF_STATUS_NULL_POINTER = 4,
  CF_STATUS_PARSE_ERROR = 5,
  CF_STATUS_COMPUTE_ERROR = 6,
  CF_STATUS_PANIC = 7,
} CfStatus;

// Opaque certificate.
typedef struct CfCertificate CfCertificate;

// Opaque multigraph.
typedef struct CfGraph CfGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after success.
// The pointer stays valid until the next call on this thread.
const char *cf_last_error(void);

// # Safety
// `s` must come from this library and not be freed already.
void cf_string_free(char *s);

// Parses the `circflow-graph v1` text format.
//
// # Safety
// `text` must be a NUL-terminated string; `out` a writable pointer.
enum CfStatus cf_graph_parse(const char *text, struct CfGraph **out);

// Builds a family member: `petersen`, `complete` (m), `complete-bipartite`
// (m), `prism` (m), `flower` (n), `blanusa-chain` (n) or `mp` (p).
//
// # Safety
// `family` must be a NUL-terminated string; `out` a writable pointer.
enum CfStatus cf_graph_family(const char *family, uintptr_t param, struct CfGraph **out);

// # Safety
// `g` must come from this library and not be freed already.
void cf_graph_free(struct CfGraph *g);

// # Safety
// `g` must be a live graph handle or null (which yields 0).
uintptr_t cf_graph_vertex_count(const struct CfGraph *g);

// # Safety
// `g` must be a live graph handle or null (which yields 0).
uintptr_t cf_graph_edge_count(const struct CfGraph *g);

// The graph in text format, or null for a null handle.
//
// # Safety
// `g` must be a live graph handle or null.
char *cf_graph_to_text(const struct CfGraph *g);

// Exact circular flow number as `num/den`. Graphs above `edge_cap` edges
// give `Inconclusive`. `cert` may be null.
//
// # Safety
// `g` must be a live graph handle; `num`, `den` writable.
enum CfStatus cf_circular_flow_number(const struct CfGraph *g,
                                      uintptr_t edge_cap,
                                      int64_t *num,
                                      int64_t *den,
                                      struct CfCertificate **cert);

// Checks a `circflow-flow v1` text against `g`: `Verified` or `Refuted`.
//
// # Safety
// `g` must be a live graph handle; `flow` a NUL-terminated string.
enum CfStatus cf_verify_flow(const struct CfGraph *g,
                             const char *flow,
                             struct CfCertificate **cert);

// Chromatic index; `budget_seconds <= 0` searches without limit.
// `Inconclusive` leaves the bounds in `lower` and `upper`.
//
// # Safety
// `g` must be a live graph handle; `lower`, `upper` writable.
enum CfStatus cf_chromatic_index(const struct CfGraph *g,
                                 double budget_seconds,
                                 uintptr_t *lower,
                                 uintptr_t *upper,
                                 struct CfCertificate **cert);

// # Safety
// `json` must be a NUL-terminated string; `out` a writable pointer.
enum CfStatus cf_certificate_parse(const char *json, struct CfCertificate **out);

// Canonical JSON, or null for a null handle.
//
// # Safety
// `c` must be a live certificate handle or null.
char *cf_certificate_to_json(const struct CfCertificate *c);

// Recorded verdict as a status; `NullPointer` for a null handle.
//
// # Safety
// `c` must be a live certificate handle or null.
enum CfStatus cf_certificate_verdict(const struct CfCertificate *c);

// Re-checks `c` against `g`: the recorded verdict when the witness holds,
// `Refuted` when it does not.
//
// # Safety
// `c` and `g` must be live handles.
enum CfStatus cf_certificate_reverify(const struct CfCertificate *c, const struct CfGraph *g);

// # Safety
// `c` must come from this library and not be freed already.
void cf_certificate_free(struct CfCertificate *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CIRCFLOW_H */
