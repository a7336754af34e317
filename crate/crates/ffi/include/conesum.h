#ifndef CONESUM_H
#define CONESUM_H

/* Generated by cbindgen from the conesum-ffi sources; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ConesumFormat {
  CONESUM_FORMAT_TEXT = 0,
  CONESUM_FORMAT_JSON = 1,
} ConesumFormat;

typedef enum ConesumStatus {
  CONESUM_STATUS_OK = 0,
  CONESUM_STATUS_NULL_POINTER = 1,
  CONESUM_STATUS_INVALID_INPUT = 2,
  CONESUM_STATUS_COMPUTATION = 3,
  CONESUM_STATUS_VERIFY_FAILED = 4,
  CONESUM_STATUS_BUFFER_TOO_SMALL = 5,
  CONESUM_STATUS_PANIC = 6,
} ConesumStatus;

/**
 * Opaque cone handle.
 */
typedef struct ConesumCone ConesumCone;

/**
 * Opaque fan handle.
 */
typedef struct ConesumFan ConesumFan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *conesum_last_error(void);

/**
 * Cone generated by `n_rays` row vectors of length `rank`, stored row-major.
 *
 * # Safety
 * `rays` holds `rank * n_rays` values and `out` is writable.
 */
enum ConesumStatus conesum_cone_new(size_t rank,
                                    const int64_t *rays,
                                    size_t n_rays,
                                    struct ConesumCone **out);

/**
 * Cone from a JSON document `{"rank": n, "rays": [[...], ...]}`.
 *
 * # Safety
 * `json` is a NUL-terminated string and `out` is writable.
 */
enum ConesumStatus conesum_cone_from_json(const char *json, struct ConesumCone **out);

/**
 * # Safety
 * `cone` is null or a handle that has not been freed.
 */
void conesum_cone_free(struct ConesumCone *cone);

/**
 * Rank of the ambient lattice, or 0 for a null handle.
 *
 * # Safety
 * `cone` is null or a live handle.
 */
size_t conesum_cone_rank(const struct ConesumCone *cone);

/**
 * # Safety
 * `cone` is null or a live handle.
 */
size_t conesum_cone_dim(const struct ConesumCone *cone);

/**
 * # Safety
 * `cone` is null or a live handle.
 */
size_t conesum_cone_ray_count(const struct ConesumCone *cone);

/**
 * Writes the primitive rays row-major into `buf` (`capacity` values).
 * Returns `BufferTooSmall` if it does not fit; `rank * ray_count` values
 * are needed.
 *
 * # Safety
 * `cone` is a live handle and `buf` holds `capacity` writable values.
 */
enum ConesumStatus conesum_cone_rays(const struct ConesumCone *cone, int64_t *buf, size_t capacity);

/**
 * # Safety
 * `cone` is a live handle and `out` is writable.
 */
enum ConesumStatus conesum_cone_dual(const struct ConesumCone *cone, struct ConesumCone **out);

/**
 * Closed lattice-point sum with its certificate, as text or JSON.
 *
 * # Safety
 * `cone` is a live handle and `out` is writable.
 */
enum ConesumStatus conesum_closed_sum(const struct ConesumCone *cone,
                                      enum ConesumFormat format,
                                      char **out);

/**
 * Interior lattice-point sum with its certificate, as text or JSON.
 *
 * # Safety
 * `cone` is a live handle and `out` is writable.
 */
enum ConesumStatus conesum_interior_sum(const struct ConesumCone *cone,
                                        enum ConesumFormat format,
                                        char **out);

/**
 * Local Hirzebruch class of a full-dimensional cone. Text mode gives the
 * collapsed form.
 *
 * # Safety
 * `cone` is a live handle and `out` is writable.
 */
enum ConesumStatus conesum_local_class(const struct ConesumCone *cone,
                                       enum ConesumFormat format,
                                       char **out);

/**
 * Runs the oracle checks on one cone up to grading degree `bound`. Returns
 * `VerifyFailed` when a check fails; the report is written either way if
 * `report_out` is non-null.
 *
 * # Safety
 * `cone` is a live handle; `report_out` is null or writable.
 */
enum ConesumStatus conesum_verify(const struct ConesumCone *cone,
                                  uint64_t bound,
                                  char **report_out);

/**
 * Fan on `n_rays` rays (row-major, like [`conesum_cone_new`]) generated by
 * `n_cones` cones. Cone `i` lists the ray indices
 * `cone_indices[cone_offsets[i] .. cone_offsets[i + 1]]`, so `cone_offsets`
 * has `n_cones + 1` entries. Faces are added automatically.
 *
 * # Safety
 * The arrays have the stated lengths and `out` is writable.
 */
enum ConesumStatus conesum_fan_new(size_t rank,
                                   const int64_t *rays,
                                   size_t n_rays,
                                   const size_t *cone_offsets,
                                   const size_t *cone_indices,
                                   size_t n_cones,
                                   struct ConesumFan **out);

/**
 * # Safety
 * `fan` is null or a handle that has not been freed.
 */
void conesum_fan_free(struct ConesumFan *fan);

/**
 * Coefficients of the χ_y polynomial, lowest degree first. `*len` receives
 * the number of coefficients even when `capacity` is too small.
 *
 * # Safety
 * `fan` is a live handle, `coefficients` holds `capacity` writable values
 * and `len` is writable.
 */
enum ConesumStatus conesum_chi_y(const struct ConesumFan *fan,
                                 int64_t *coefficients,
                                 size_t capacity,
                                 size_t *len);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is null or a string from this library that has not been freed.
 */
void conesum_string_free(char *s);

/**
 * JSON document for a cone handle.
 *
 * # Safety
 * `cone` is a live handle and `out` is writable.
 */
enum ConesumStatus conesum_cone_to_json(const struct ConesumCone *cone, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONESUM_H */
