#ifndef MWG_H
#define MWG_H

#include <stddef.h>

#if defined(_WIN32)
#  define MWG_API __declspec(dllexport)
#else
#  define MWG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. 0 is success; the rest mirror mwg::ErrorCode. */
enum {
    MWG_OK = 0,
    MWG_NON_POSITIVE_WEIGHT = 1,
    MWG_DANGLING_ENDPOINT = 2,
    MWG_DUPLICATE_ID = 3,
    MWG_UNKNOWN_EDGE = 4,
    MWG_UNKNOWN_VERTEX = 5,
    MWG_OVERLAPPING_BLOCKS = 6,
    MWG_LOOP_CONTRACTION = 7,
    MWG_LOOP_AT_VERTEX = 8,
    MWG_EMPTY_VERTEX_SET = 9,
    MWG_PARTIAL_MAP = 10,
    MWG_SIZE_LIMIT_EXCEEDED = 11,
    MWG_EMPTY_GRAPH = 12,
    MWG_NOT_HERMITIAN = 13,
    MWG_CONVERGENCE_FAILURE = 14,
    MWG_NEGATIVE_SHIFT = 15,
    MWG_NOT_COMBINATORIAL = 16,
    MWG_DISCONNECTED = 17,
    MWG_ZERO_VECTOR = 18,
    MWG_INDEX_OUT_OF_RANGE = 19,
    MWG_HYPOTHESIS_NOT_SATISFIED = 20,
    MWG_SAME_VERTEX = 21,
    MWG_MULTI_EDGE = 22,
    MWG_NOT_PENDANT = 23,
    MWG_INVALID_STEP = 24,
    MWG_NOT_SIMPLE = 25,
    MWG_NONZERO_POTENTIAL = 26,
    MWG_NOT_A_HOMOMORPHISM = 27,
    MWG_ALL_VERTICES_VIRTUALISED = 28,
    MWG_BRACKET_VIOLATION = 29,
    MWG_NOT_T_INDEPENDENT = 30,
    MWG_INDEX_COUNT_MISMATCH = 31,
    MWG_CERTIFICATE_VIOLATION = 32,
    MWG_INCONSISTENT_WEIGHT = 33,
    MWG_PARSE_ERROR = 34,
    MWG_IO_ERROR = 35,
    MWG_INVALID_ARGUMENT = 36,
    MWG_INTERNAL_ERROR = 99
};

/* A graph, optionally carrying a Z-cocycle (then it is the quotient of a
 * periodic graph). Handles are immutable; operations return new ones. */
typedef struct mwg_graph mwg_graph;

/* Message and status of the last failed call on this thread. */
MWG_API const char* mwg_last_error(void);
MWG_API int mwg_last_status(void);
/* Stable machine-readable name, e.g. "UNKNOWN_EDGE". */
MWG_API const char* mwg_status_name(int status);

/* Every char* returned through an out-parameter is owned by the caller. */
MWG_API void mwg_string_free(char* s);

MWG_API int mwg_graph_load(const char* path, mwg_graph** out);
MWG_API int mwg_graph_parse(const char* text, mwg_graph** out);
MWG_API int mwg_graph_save(const mwg_graph* g, const char* path);
MWG_API int mwg_graph_serialize(const mwg_graph* g, char** out);
MWG_API void mwg_graph_free(mwg_graph* g);

MWG_API int mwg_graph_vertex_count(const mwg_graph* g, size_t* out);
MWG_API int mwg_graph_edge_count(const mwg_graph* g, size_t* out);
MWG_API int mwg_graph_is_periodic(const mwg_graph* g, int* out);
/* kind: "combinatorial", "standard" or "custom". */
MWG_API int mwg_graph_with_weight_kind(const mwg_graph* g, const char* kind, mwg_graph** out);
/* Floquet graph: alpha_e + t * cocycle_e. Needs a cocycle. */
MWG_API int mwg_graph_with_flux(const mwg_graph* g, double t, mwg_graph** out);

/* Ascending eigenvalues. With values == NULL only *count is set. */
MWG_API int mwg_spectrum(const mwg_graph* g, double* values, size_t capacity, size_t* count);
MWG_API int mwg_spectrum_csv(const mwg_graph* g, char** out);
MWG_API int mwg_spectrum_json(const mwg_graph* g, char** out);

/* Tests spectrum(a) <=_r spectrum(b). */
MWG_API int mwg_compare(const mwg_graph* a, const mwg_graph* b, int r, double tol, int* holds, char** json);

/* op: delete-edge | contract-vertices | contract-edge | contract-pendant |
 * delete-vertex. `target` names the edge or vertex; `second` is the other
 * vertex for contract-vertices (NULL otherwise). weight_class:
 * combinatorial | standard | general. `branch` (general delete-edge only)
 * may be NULL. Fails with MWG_CERTIFICATE_VIOLATION if a claimed relation
 * does not hold numerically. */
MWG_API int mwg_perturb(const mwg_graph* g, const char* op, const char* target, const char* second,
                        const char* weight_class, const char* branch, double tol, mwg_graph** out,
                        char** certificate);

/* script: comma separated steps "delete-edge:NAME", "contract-edge:NAME",
 * "delete-pendant:VERTEX". */
MWG_API int mwg_minor(const mwg_graph* g, const char* script, const char* weight_class, double tol,
                      mwg_graph** out, char** certificate);

/* map_json: {"vertex_map": {src: tgt}, "edge_map": {src: "tgt" or "-tgt"}}. */
MWG_API int mwg_hom_verify(const mwg_graph* source, const mwg_graph* target, const char* map_json, int* is_hom,
                           char** json);
MWG_API int mwg_hom_search(const mwg_graph* source, const mwg_graph* target, int* found, char** json);

/* range: auto | signed | circle. */
MWG_API int mwg_frustration(const mwg_graph* g, const char* range, char** json);
MWG_API int mwg_cheeger(const mwg_graph* g, int k, const char* range, char** json);
MWG_API int mwg_cheeger_inequality(const mwg_graph* g, int k, const char* range, int* holds, char** json);

MWG_API int mwg_clique_bound(const mwg_graph* g, double tol, char** json);
MWG_API int mwg_spanning_tree_count(const mwg_graph* g, double* out);

/* Band CSV over t_j = 2*pi*j/(resolution-1). Needs a cocycle. */
MWG_API int mwg_sweep_csv(const mwg_graph* g, int resolution, char** csv);

/* Comma separated edge / vertex names. */
MWG_API int mwg_bracket_virtualise(const mwg_graph* g, const char* edges, const char* vertices, int resolution,
                                   char** json);
MWG_API int mwg_bracket_contract(const mwg_graph* g, const mwg_graph* split, const char* v1, const char* v2,
                                 int resolution, char** json);
MWG_API int mwg_bracket_intersect(const char* const* reports, size_t count, char** json);
MWG_API int mwg_bracket_summary(const char* report, char** text);

#ifdef __cplusplus
}
#endif

#endif
