#ifndef WGA_H
#define WGA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WgaGeometry {
  WGA_GEOMETRY_HYPERBOLIC = 0,
  WGA_GEOMETRY_SATELLITE = 1,
} WgaGeometry;

typedef enum WgaStatus {
  WGA_STATUS_OK = 0,
  WGA_STATUS_NULL_POINTER = 1,
  WGA_STATUS_INVALID_UTF8 = 2,
  WGA_STATUS_IO = 3,
  WGA_STATUS_PARSE = 4,
  /**
   * A hypothesis of the requested certificate failed or is undeclared.
   */
  WGA_STATUS_REFUSED = 5,
  WGA_STATUS_BAD_ARGUMENT = 6,
  WGA_STATUS_PANIC = 7,
} WgaStatus;

/**
 * Opaque parsed diagram together with its ambient context.
 */
typedef struct WgaDiagram WgaDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a diagram from SLD text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum WgaStatus wga_diagram_from_sld(const char *text, struct WgaDiagram **out);

/**
 * Read and parse an SLD file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum WgaStatus wga_diagram_from_file(const char *path, struct WgaDiagram **out);

/**
 * Release a diagram. Null is ignored.
 *
 * # Safety
 * `d` must come from a `wga_diagram_from_*` call and not be used afterwards.
 */
void wga_diagram_free(struct WgaDiagram *d);

/**
 * Number of crossings.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum WgaStatus wga_crossing_count(const struct WgaDiagram *d, size_t *out);

/**
 * Twist number of the diagram.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum WgaStatus wga_twist_number(const struct WgaDiagram *d, size_t *out);

/**
 * Certified lower bound on the complement's hyperbolic volume.
 * Returns `Refused` when a hypothesis does not hold.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum WgaStatus wga_volume_lower_bound(const struct WgaDiagram *d, double *out);

/**
 * Certified geometry of the link complement.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum WgaStatus wga_classify(const struct WgaDiagram *d, enum WgaGeometry *out);

/**
 * Whether filling `component` along p/q is certified hyperbolic. `Ok` with
 * `*out == false` means no certificate applies, not that the filling is
 * exceptional.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum WgaStatus wga_filling_certified(const struct WgaDiagram *d,
                                     size_t component,
                                     int64_t p,
                                     int64_t q,
                                     bool *out);

/**
 * Full analysis report as JSON. Free the result with `wga_string_free`.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum WgaStatus wga_report_json(const struct WgaDiagram *d, char **out);

/**
 * Free a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void wga_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *wga_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WGA_H */
