#ifndef IMGSHARE_H
#define IMGSHARE_H

/* imgshare - threshold secret sharing for images.
 *
 * A (t,n)-threshold scheme: the leading bits of the image become an
 * AES-128 key that is split with Shamir secret sharing over GF(2^64);
 * the rest of the image is encrypted per participant with an IV derived
 * from that participant's share identifier. Any t of the n share images
 * reconstruct the original bit-exactly; fewer than t reveal nothing
 * about the key beyond the ciphertext.
 *
 * All functions return IMGSHARE_OK on success. On failure a status code
 * is returned and imgshare_last_error() holds a message for the calling
 * thread. Output handles are only written on success and must be
 * released with the matching *_free function.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum imgshare_status {
  IMGSHARE_OK = 0,
  IMGSHARE_ERROR_INVALID_ARGUMENT = 1,
  IMGSHARE_ERROR_UNSUPPORTED = 2,
  IMGSHARE_ERROR_PARSE = 3,
  IMGSHARE_ERROR_IO = 4,
  IMGSHARE_ERROR_INSUFFICIENT_SHARES = 5,
  IMGSHARE_ERROR_INCONSISTENT_SHARES = 6,
  IMGSHARE_ERROR_VERIFICATION = 7,
  IMGSHARE_ERROR_ENTROPY = 8,
  IMGSHARE_ERROR_INTERNAL = 9
} imgshare_status;

/* Opaque handles. */
typedef struct imgshare_image imgshare_image;   /* decoded RGB image */
typedef struct imgshare_params imgshare_params; /* sharing session parameters */
typedef struct imgshare_bundle imgshare_bundle; /* one share image + sidecar metadata */

const char *imgshare_version(void);
const char *imgshare_status_name(imgshare_status status);

/* Message for the most recent failure on this thread; never NULL. */
const char *imgshare_last_error(void);

/* ---- images ------------------------------------------------------- */

/* Takes row-major 8-bit RGB pixels; rgb_len must equal 3*width*height. */
imgshare_status imgshare_image_create(uint32_t width, uint32_t height,
                                      const uint8_t *rgb, size_t rgb_len,
                                      imgshare_image **out);

/* Reads a binary PPM (P6, maxval 255) or an 8-bit RGB/grayscale PNG.
 * The format is detected from the file contents. Grayscale PNGs are
 * expanded to RGB. */
imgshare_status imgshare_image_read_file(const char *path, imgshare_image **out);

/* format is "png" or "ppm". Both are lossless. */
imgshare_status imgshare_image_write_file(const imgshare_image *image,
                                          const char *path, const char *format);

uint32_t imgshare_image_width(const imgshare_image *image);
uint32_t imgshare_image_height(const imgshare_image *image);

/* Borrow the pixel bytes (row-major RGB). Valid until the image is freed. */
imgshare_status imgshare_image_pixels(const imgshare_image *image,
                                      const uint8_t **data, size_t *len);

void imgshare_image_free(imgshare_image *image);

/* ---- session parameters ------------------------------------------- */

/* Requires 1 <= t <= n. Defaults: CBC mode, "sha" IV derivation,
 * key position 0, one worker. */
imgshare_status imgshare_params_create(uint32_t t, uint32_t n, imgshare_params **out);

/* mode is "cbc" or "ofb". */
imgshare_status imgshare_params_set_mode(imgshare_params *params, const char *mode);

/* derivation is "sha" (first 128 bits of SHA-256 of the identifier) or
 * "concat" (identifier bytes repeated twice). */
imgshare_status imgshare_params_set_iv_derivation(imgshare_params *params,
                                                  const char *derivation);

/* Bit offset into the image bitstream from which the 128 key bits are
 * taken. Must be a multiple of 8 and leave room for the key within the
 * padded image. */
imgshare_status imgshare_params_set_key_position(imgshare_params *params,
                                                 uint64_t bit_offset);

/* Deterministic entropy for reproducible fixtures. Test use only: a
 * seeded generator is not a cryptographic source. */
imgshare_status imgshare_params_set_seed(imgshare_params *params, uint64_t seed);

/* Number of worker threads for per-participant share assembly. */
imgshare_status imgshare_params_set_jobs(imgshare_params *params, uint32_t jobs);

void imgshare_params_free(imgshare_params *params);

/* ---- sharing and reconstruction ----------------------------------- */

/* Fills out_bundles[0..n-1] with newly allocated share bundles.
 * The caller provides the array of n slots. */
imgshare_status imgshare_generate_shares(const imgshare_image *image,
                                         const imgshare_params *params,
                                         imgshare_bundle **out_bundles);

/* Reconstructs the original image from at least t bundles of one
 * session. Surplus bundles beyond the first t are cross-checked; if
 * they disagree with the interpolated polynomials and out_warning is
 * non-NULL, a warning string is stored there (free with
 * imgshare_string_free). */
imgshare_status imgshare_reconstruct(const imgshare_bundle *const *bundles,
                                     size_t count, imgshare_image **out_image,
                                     char **out_warning);

/* format is "png" or "ppm" for the share image; the sidecar is plain text. */
imgshare_status imgshare_bundle_write(const imgshare_bundle *bundle,
                                      const char *image_path,
                                      const char *meta_path, const char *format);

imgshare_status imgshare_bundle_read(const char *image_path,
                                     const char *meta_path,
                                     imgshare_bundle **out);

/* 16 lowercase hex characters plus a terminating NUL. */
imgshare_status imgshare_bundle_identifier_hex(const imgshare_bundle *bundle,
                                               char out[17]);

imgshare_status imgshare_bundle_threshold(const imgshare_bundle *bundle,
                                          uint32_t *t, uint32_t *n);

/* Human-readable session summary of a bundle's metadata. Never includes
 * key material. Free with imgshare_string_free. */
imgshare_status imgshare_bundle_summary(const imgshare_bundle *bundle, char **out_text);

/* Same summary, from a sidecar file alone. */
imgshare_status imgshare_meta_summary(const char *meta_path, char **out_text);

void imgshare_bundle_free(imgshare_bundle *bundle);
void imgshare_string_free(char *text);

#ifdef __cplusplus
}
#endif

#endif /* IMGSHARE_H */
