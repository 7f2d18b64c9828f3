/*
 * Copyright 2026 The dlacs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
/*
 * C interface to the dlacs block codec.
 *
 * Objects are opaque handles created by the library and released with the
 * matching *_free function (passing NULL is allowed). Every fallible call
 * returns a dlacs_status; on failure dlacs_last_error() describes the cause
 * for the calling thread until its next failing call.
 */
#ifndef DLACS_DLACS_H
#define DLACS_DLACS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DLACS_BUILDING_LIBRARY)
#    define DLACS_API __declspec(dllexport)
#  else
#    define DLACS_API __declspec(dllimport)
#  endif
#else
#  define DLACS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dlacs_status {
    DLACS_OK = 0,
    DLACS_E_INVALID_ARGUMENT = 1, /* precondition violated (dims, ranges, missing kernel) */
    DLACS_E_FORMAT = 2,           /* malformed or truncated file / stream */
    DLACS_E_UNSUPPORTED = 3,      /* e.g. PNM maxval != 255, unknown version */
    DLACS_E_IO = 4,
    DLACS_E_INTERNAL = 5
} dlacs_status;

typedef struct dlacs_image dlacs_image;
typedef struct dlacs_masks dlacs_masks;
typedef struct dlacs_container dlacs_container;
typedef struct dlacs_buffer dlacs_buffer;

DLACS_API const char* dlacs_version(void);
DLACS_API const char* dlacs_last_error(void);
/* "ok", "invalid_argument", "format", "unsupported", "io", "internal" */
DLACS_API const char* dlacs_status_name(dlacs_status status);

/* ---- images: PGM (raw RGGB mosaic, 1 channel) or PPM (RGB, 3 channels) ---- */

typedef struct dlacs_image_info {
    uint32_t width;
    uint32_t height;
    uint32_t channels;
} dlacs_image_info;

DLACS_API dlacs_status dlacs_image_load(const char* path, dlacs_image** out);
DLACS_API dlacs_status dlacs_image_save(const dlacs_image* image, const char* path);
/* Row-major samples; channels > 1 are passed as separate planes. */
DLACS_API dlacs_status dlacs_image_create(uint32_t width, uint32_t height, uint32_t channels,
                                          const uint8_t* const* planes, dlacs_image** out);
/* Seeded smooth-noise test image (1 or 3 channels). */
DLACS_API dlacs_status dlacs_image_synthesize(uint32_t width, uint32_t height, uint32_t channels, uint64_t seed,
                                              dlacs_image** out);
DLACS_API dlacs_status dlacs_image_get_info(const dlacs_image* image, dlacs_image_info* out);
DLACS_API dlacs_status dlacs_image_plane(const dlacs_image* image, uint32_t channel, const uint8_t** data);
DLACS_API void dlacs_image_free(dlacs_image* image);

/* ---- mask sets ---- */

typedef struct dlacs_train_params {
    uint32_t kx;
    uint32_t ky;
    uint32_t mask_count;
    uint32_t bits;
    uint32_t crop;
    uint32_t crops_per_frame;
    uint64_t seed;
    double learning_rate;
    uint32_t epochs;
    uint32_t batch_size;
} dlacs_train_params;

typedef struct dlacs_train_summary {
    double initial_mse;
    double final_mse;
    double pca_mse;
    double integer_mse_before_refit;
    double integer_mse;
    uint32_t q_scale;
    float mask_scale;
    int degenerate;
} dlacs_train_summary;

typedef void (*dlacs_epoch_callback)(uint32_t epoch, double mse, void* user);

typedef struct dlacs_masks_info {
    uint32_t kx;
    uint32_t ky;
    uint32_t mask_count;
    uint32_t bits;
    uint32_t q_scale;
    float mask_scale;
    int has_decoder;
    int degenerate;
} dlacs_masks_info;

DLACS_API void dlacs_train_params_default(dlacs_train_params* params);
/* Train on every .pgm/.ppm in `directory`; `on_epoch` may be NULL. */
DLACS_API dlacs_status dlacs_masks_train(const char* directory, const dlacs_train_params* params,
                                         dlacs_epoch_callback on_epoch, void* user, dlacs_masks** out,
                                         dlacs_train_summary* summary);
DLACS_API dlacs_status dlacs_masks_load(const char* path, dlacs_masks** out);
DLACS_API dlacs_status dlacs_masks_save(const dlacs_masks* masks, const char* path);
DLACS_API dlacs_status dlacs_masks_get_info(const dlacs_masks* masks, dlacs_masks_info* out);
/* Integer masks, count*ky*kx signed values laid out [mask][row][col]. */
DLACS_API dlacs_status dlacs_masks_encoder(const dlacs_masks* masks, const int8_t** data, size_t* size);
DLACS_API void dlacs_masks_free(dlacs_masks* masks);

/* ---- compression ---- */

typedef struct dlacs_compress_options {
    int entropy_coding; /* nonzero: arithmetic-code the payload */
    int embed_decoder;  /* nonzero: store the decode kernel in the container */
} dlacs_compress_options;

typedef struct dlacs_container_info {
    uint32_t width;
    uint32_t height;
    uint32_t kx;
    uint32_t ky;
    uint32_t mask_count;
    uint32_t bits;
    uint32_t q_scale;
    float mask_scale;
    uint8_t flags;
    uint64_t payload_size;
    uint64_t raw_payload_size;
} dlacs_container_info;

#define DLACS_FLAG_ENTROPY_CODED 0x01u
#define DLACS_FLAG_RGB 0x02u
#define DLACS_FLAG_DECODER 0x04u

DLACS_API dlacs_status dlacs_compress(const dlacs_image* image, const dlacs_masks* masks,
                                      const dlacs_compress_options* options, dlacs_container** out);
/* `masks` may be NULL when the container embeds its decode kernel. */
DLACS_API dlacs_status dlacs_decompress(const dlacs_container* container, const dlacs_masks* masks, int demosaic,
                                        dlacs_image** out);
DLACS_API dlacs_status dlacs_container_load(const char* path, dlacs_container** out);
DLACS_API dlacs_status dlacs_container_save(const dlacs_container* container, const char* path);
DLACS_API dlacs_status dlacs_container_get_info(const dlacs_container* container, dlacs_container_info* out);
DLACS_API void dlacs_container_free(dlacs_container* container);

/* ---- metrics ---- */

typedef struct dlacs_quality {
    double mse;
    double psnr; /* +inf when identical */
    int psnr_infinite;
    double ssim;
} dlacs_quality;

/* rgb != 0 demosaics mosaics before comparing. */
DLACS_API dlacs_status dlacs_compare(const dlacs_image* a, const dlacs_image* b, int rgb, dlacs_quality* out);

/* ---- encoder cost ---- */

typedef enum dlacs_mode { DLACS_MODE_BAYER = 0, DLACS_MODE_RGB = 1 } dlacs_mode;
typedef enum dlacs_chroma { DLACS_CHROMA_444 = 0, DLACS_CHROMA_422 = 1, DLACS_CHROMA_420 = 2 } dlacs_chroma;

typedef struct dlacs_rational {
    int64_t num;
    int64_t den;
} dlacs_rational;

typedef struct dlacs_op_count {
    dlacs_rational dlacs_multiplies;
    dlacs_rational dlacs_additions;
    dlacs_rational dlacs_divisions;
    dlacs_rational dct_multiplies;
    dlacs_rational dct_additions;
    dlacs_rational jpeg_ratio;
    dlacs_rational compression_ratio;
} dlacs_op_count;

DLACS_API dlacs_status dlacs_count_ops(uint32_t kx, uint32_t ky, uint32_t mask_count, dlacs_mode mode,
                                       dlacs_chroma chroma, dlacs_op_count* out);

typedef struct dlacs_bench_report {
    double ns_per_pixel_dlacs;
    double ns_per_pixel_dct;
    double ratio;
    uint32_t iterations;
    uint32_t width;
    uint32_t height;
    uint32_t mask_size;
    uint32_t threads;
    double dlacs_min;
    double dlacs_max;
    double dct_min;
    double dct_max;
} dlacs_bench_report;

/* `image` must be a single-channel frame. */
DLACS_API dlacs_status dlacs_bench(const dlacs_image* image, uint32_t iterations, uint32_t mask_size,
                                   dlacs_bench_report* out);

/* ---- entropy coding: framed stream = u64 LE length + coded bytes ---- */

DLACS_API dlacs_status dlacs_ec_encode(const uint8_t* data, size_t size, dlacs_buffer** out);
DLACS_API dlacs_status dlacs_ec_decode(const uint8_t* data, size_t size, dlacs_buffer** out);
DLACS_API const uint8_t* dlacs_buffer_data(const dlacs_buffer* buffer);
DLACS_API size_t dlacs_buffer_size(const dlacs_buffer* buffer);
DLACS_API void dlacs_buffer_free(dlacs_buffer* buffer);

#ifdef __cplusplus
}
#endif

#endif /* DLACS_DLACS_H */
