#ifndef SHACL_DL_H
#define SHACL_DL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ShaclStatus {
  SHACL_STATUS_OK = 0,
  SHACL_STATUS_NULL_ARGUMENT = 1,
  SHACL_STATUS_INVALID_UTF8 = 2,
  SHACL_STATUS_PARSE_ERROR = 3,
  SHACL_STATUS_UNSUPPORTED = 4,
  SHACL_STATUS_SCHEMA_ERROR = 5,
  SHACL_STATUS_EVALUATION_ERROR = 6,
  SHACL_STATUS_INVALID_ARGUMENT = 7,
  SHACL_STATUS_PANIC = 8,
} ShaclStatus;

typedef enum ShaclGraphFormat {
  SHACL_GRAPH_FORMAT_NTRIPLES = 0,
  SHACL_GRAPH_FORMAT_FACTS = 1,
} ShaclGraphFormat;

/**
 * A parsed data graph.
 */
typedef struct ShaclGraph ShaclGraph;

/**
 * The outcome of validating a graph.
 */
typedef struct ShaclReport ShaclReport;

/**
 * A shape schema, with the prefixes it was written with.
 */
typedef struct ShaclSchema ShaclSchema;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *shacl_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void shacl_string_free(char *s);

/**
 * Parses a graph from N-Triples or simple facts.
 *
 * # Safety
 * `input` must be null or a NUL-terminated string; `out` must be null or
 * writable.
 */
enum ShaclStatus shacl_graph_parse(const char *input,
                                   enum ShaclGraphFormat format,
                                   struct ShaclGraph **out);

/**
 * Number of facts in the graph; 0 for null.
 *
 * # Safety
 * `graph` must be null or a live graph handle.
 */
size_t shacl_graph_fact_count(const struct ShaclGraph *graph);

/**
 * # Safety
 * `graph` must be null or a graph handle not yet freed.
 */
void shacl_graph_free(struct ShaclGraph *graph);

/**
 * Parses a schema written in the shape DSL.
 *
 * # Safety
 * As for [`shacl_graph_parse`].
 */
enum ShaclStatus shacl_schema_parse_dsl(const char *input, struct ShaclSchema **out);

/**
 * Imports a SHACL shapes graph written in Turtle.
 *
 * # Safety
 * As for [`shacl_graph_parse`].
 */
enum ShaclStatus shacl_schema_import_turtle(const char *input, struct ShaclSchema **out);

/**
 * Writes the schema in the shape DSL into a new string.
 *
 * # Safety
 * `schema` must be null or live; `out` must be null or writable.
 */
enum ShaclStatus shacl_schema_to_dsl(const struct ShaclSchema *schema, char **out);

/**
 * # Safety
 * `schema` must be null or a schema handle not yet freed.
 */
void shacl_schema_free(struct ShaclSchema *schema);

/**
 * Validates `graph` against `schema`.
 *
 * # Safety
 * Handles must be null or live; `out` must be null or writable.
 */
enum ShaclStatus shacl_validate(const struct ShaclGraph *graph,
                                const struct ShaclSchema *schema,
                                struct ShaclReport **out);

/**
 * Whether the graph conforms; false for null.
 *
 * # Safety
 * `report` must be null or a live report handle.
 */
bool shacl_report_conforms(const struct ShaclReport *report);

/**
 * Number of violations; 0 for null.
 *
 * # Safety
 * `report` must be null or a live report handle.
 */
size_t shacl_report_violation_count(const struct ShaclReport *report);

/**
 * The report as JSON, in the same shape the command line prints.
 *
 * # Safety
 * `report` must be null or live; `out` must be null or writable.
 */
enum ShaclStatus shacl_report_to_json(const struct ShaclReport *report, char **out);

/**
 * The report as human-readable text.
 *
 * # Safety
 * As for [`shacl_report_to_json`].
 */
enum ShaclStatus shacl_report_to_text(const struct ShaclReport *report, char **out);

/**
 * # Safety
 * `report` must be null or a report handle not yet freed.
 */
void shacl_report_free(struct ShaclReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHACL_DL_H */
