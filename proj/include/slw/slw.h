/* C interface to the slice-automaton toolkit. */
#ifndef SLW_H
#define SLW_H

#include <stddef.h>

#if defined(SLW_BUILDING)
#define SLW_API __attribute__((visibility("default")))
#else
#define SLW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  SLW_OK = 0,
  SLW_FALSE = 1,    /* boolean answer "no" */
  SLW_RESOURCE = 2, /* a cap was exceeded */
  SLW_INPUT = 3,    /* malformed input or violated precondition */
  SLW_INTERNAL = 4
} slw_status;

typedef enum { SLW_EXECUTION = 0, SLW_CAUSAL = 1 } slw_semantics;
typedef enum { SLW_TEXT = 0, SLW_JSON = 1 } slw_format;

typedef struct {
  size_t max_states;
  size_t max_enum_vertices;
  size_t max_candidates;
} slw_caps;

typedef struct slw_net slw_net;
typedef struct slw_formula slw_formula;
typedef struct slw_automaton slw_automaton;

/* Output of the top-level procedures. Strings are owned by the caller
   (release with slw_string_free); pass NULL for outputs you do not need. */
typedef struct {
  slw_format format;
  char** report;
  char** proof_log; /* JSON array */
} slw_output;

SLW_API const char* slw_version(void);
/* Message of the last failing call on this thread, "" if none. */
SLW_API const char* slw_last_error(void);
SLW_API slw_caps slw_default_caps(void);
SLW_API void slw_string_free(char* s);

SLW_API slw_status slw_net_parse(const char* text, slw_net** out);
SLW_API slw_status slw_net_to_text(const slw_net* n, char** out);
/* Comma separated transition names. */
SLW_API slw_status slw_net_transitions(const slw_net* n, char** out);
SLW_API void slw_net_free(slw_net* n);

SLW_API slw_status slw_formula_parse(const char* text, slw_formula** out);
SLW_API slw_status slw_formula_to_text(const slw_formula* f, char** out);
SLW_API void slw_formula_free(slw_formula* f);

/* Graph formula over DAG decompositions; labels are comma separated. */
SLW_API slw_status slw_compile(const slw_formula* f, int c, const char* labels, const slw_caps* caps, slw_automaton** out);
/* Order formula over c-partial orders. */
SLW_API slw_status slw_po_automaton(const slw_formula* f, int c, const char* labels, const slw_caps* caps,
                                    slw_automaton** out);
SLW_API slw_status slw_net_automaton(const slw_net* n, int c, slw_semantics sem, const slw_caps* caps, slw_automaton** out);

SLW_API slw_status slw_automaton_parse(const char* text, slw_automaton** out);
SLW_API slw_status slw_automaton_to_text(const slw_automaton* a, char** out);
SLW_API size_t slw_automaton_states(const slw_automaton* a);
SLW_API void slw_automaton_free(slw_automaton* a);

SLW_API slw_status slw_union(const slw_automaton* a, const slw_automaton* b, slw_automaton** out);
SLW_API slw_status slw_intersect(const slw_automaton* a, const slw_automaton* b, const slw_caps* caps, slw_automaton** out);
SLW_API slw_status slw_difference(const slw_automaton* a, const slw_automaton* b, const slw_caps* caps, slw_automaton** out);
/* Complement within the c-partial orders over the labels. */
SLW_API slw_status slw_c_complement(const slw_automaton* a, const slw_caps* caps, slw_automaton** out);
/* SLW_OK when L(b) is inside L(a); otherwise SLW_FALSE and, if witness is
   given, the Hasse diagram of a shortest member of L(b) missing from L(a). */
SLW_API slw_status slw_includes(const slw_automaton* a, const slw_automaton* b, const slw_caps* caps, char** witness);
SLW_API slw_status slw_is_empty(const slw_automaton* a);
/* Partial orders with at most k vertices, one "vertex/less" block per member. */
SLW_API slw_status slw_members(const slw_automaton* a, int k, const slw_caps* caps, char** out);

/* SLW_OK when every run of the net satisfies the formula, else SLW_FALSE. */
SLW_API slw_status slw_verify(const slw_net* n, const slw_formula* phi, int c, slw_semantics sem, const slw_caps* caps,
                              slw_output out);
/* The synthesis procedures return SLW_OK with *net set when a net exists,
   SLW_FALSE otherwise. */
SLW_API slw_status slw_synthesize(const slw_formula* phi, const char* labels, int b, int r, int c, slw_semantics sem,
                                  const slw_caps* caps, slw_output out, slw_net** net);
SLW_API slw_status slw_safest(const slw_net* n, const slw_formula* phi, int b, int r, int c, slw_semantics sem,
                              const slw_caps* caps, slw_output out, slw_net** net);
SLW_API slw_status slw_repair(const slw_net* n, const slw_formula* keep, const slw_formula* allow, int b, int r, int c,
                              slw_semantics sem, const slw_caps* caps, slw_output out, slw_net** net);
SLW_API slw_status slw_contract(const slw_formula* yes, const slw_formula* no, const char* labels, int b, int r, int c,
                                slw_semantics sem, const slw_caps* caps, slw_output out, slw_net** net);

#ifdef __cplusplus
}
#endif

#endif
