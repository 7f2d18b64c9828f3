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
#include "dlacs/dlacs.h"

#include "dlacs/bench.hpp"
#include "dlacs/encoder.hpp"
#include "dlacs/entropy.hpp"
#include "dlacs/error.hpp"
#include "dlacs/pipeline.hpp"
#include "dlacs/synthetic.hpp"

#include <algorithm>
#include <exception>
#include <new>
#include <string>

struct dlacs_image {
    dlacs::Image value;
};

struct dlacs_masks {
    dlacs::MaskSet value;
};

struct dlacs_container {
    dlacs::Container value;
};

struct dlacs_buffer {
    std::vector<std::uint8_t> value;
};

namespace {

thread_local std::string t_last_error;

dlacs_status set_error(dlacs_status status, const char* what)
{
    t_last_error = what;
    return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
dlacs_status guarded(F&& body) noexcept
{
    try {
        body();
        return DLACS_OK;
    } catch (const dlacs::Error& e) {
        switch (e.code()) {
        case dlacs::ErrorCode::InvalidArgument:
            return set_error(DLACS_E_INVALID_ARGUMENT, e.what());
        case dlacs::ErrorCode::Format:
            return set_error(DLACS_E_FORMAT, e.what());
        case dlacs::ErrorCode::Unsupported:
            return set_error(DLACS_E_UNSUPPORTED, e.what());
        case dlacs::ErrorCode::Io:
            return set_error(DLACS_E_IO, e.what());
        }
        return set_error(DLACS_E_INTERNAL, e.what());
    } catch (const std::bad_alloc&) {
        return set_error(DLACS_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(DLACS_E_INTERNAL, e.what());
    } catch (...) {
        return set_error(DLACS_E_INTERNAL, "unknown error");
    }
}

void need(const void* p, const char* name)
{
    if (p == nullptr) {
        dlacs::fail(dlacs::ErrorCode::InvalidArgument, std::string(name) + " must not be NULL");
    }
}

dlacs_rational to_c(const dlacs::Rational& r) { return {r.num, r.den}; }

} // namespace

extern "C" {

const char* dlacs_version(void) { return "1.0.0"; }

const char* dlacs_last_error(void) { return t_last_error.c_str(); }

const char* dlacs_status_name(dlacs_status status)
{
    switch (status) {
    case DLACS_OK:
        return "ok";
    case DLACS_E_INVALID_ARGUMENT:
        return "invalid_argument";
    case DLACS_E_FORMAT:
        return "format";
    case DLACS_E_UNSUPPORTED:
        return "unsupported";
    case DLACS_E_IO:
        return "io";
    case DLACS_E_INTERNAL:
        return "internal";
    }
    return "unknown";
}

dlacs_status dlacs_image_load(const char* path, dlacs_image** out)
{
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new dlacs_image{dlacs::load_image(path)};
    });
}

dlacs_status dlacs_image_save(const dlacs_image* image, const char* path)
{
    return guarded([&] {
        need(image, "image");
        need(path, "path");
        dlacs::save_image(image->value, path);
    });
}

dlacs_status dlacs_image_create(uint32_t width, uint32_t height, uint32_t channels, const uint8_t* const* planes,
                                dlacs_image** out)
{
    return guarded([&] {
        need(planes, "planes");
        need(out, "out");
        dlacs::require(width > 0 && height > 0, "image dimensions must be positive");
        dlacs::require(channels == 1 || channels == 3, "channels must be 1 or 3");
        const std::size_t n = std::size_t(width) * height;
        if (channels == 1) {
            need(planes[0], "plane 0");
            dlacs::BayerFrame f(width, height);
            std::copy_n(planes[0], n, f.samples.begin());
            *out = new dlacs_image{std::move(f)};
        } else {
            dlacs::RgbImage img(width, height);
            for (int c = 0; c < 3; ++c) {
                need(planes[c], "plane");
                std::copy_n(planes[c], n, img.planes[c].begin());
            }
            *out = new dlacs_image{std::move(img)};
        }
    });
}

dlacs_status dlacs_image_synthesize(uint32_t width, uint32_t height, uint32_t channels, uint64_t seed,
                                    dlacs_image** out)
{
    return guarded([&] {
        need(out, "out");
        dlacs::require(channels == 1 || channels == 3, "channels must be 1 or 3");
        if (channels == 1) {
            *out = new dlacs_image{dlacs::synthesize_frame(width, height, seed)};
        } else {
            *out = new dlacs_image{dlacs::synthesize_rgb(width, height, seed)};
        }
    });
}

dlacs_status dlacs_image_get_info(const dlacs_image* image, dlacs_image_info* out)
{
    return guarded([&] {
        need(image, "image");
        need(out, "out");
        if (const auto* f = std::get_if<dlacs::BayerFrame>(&image->value)) {
            *out = {f->width, f->height, 1};
        } else {
            const auto& rgb = std::get<dlacs::RgbImage>(image->value);
            *out = {rgb.width, rgb.height, 3};
        }
    });
}

dlacs_status dlacs_image_plane(const dlacs_image* image, uint32_t channel, const uint8_t** data)
{
    return guarded([&] {
        need(image, "image");
        need(data, "data");
        if (const auto* f = std::get_if<dlacs::BayerFrame>(&image->value)) {
            dlacs::require(channel == 0, "channel out of range");
            *data = f->samples.data();
        } else {
            dlacs::require(channel < 3, "channel out of range");
            *data = std::get<dlacs::RgbImage>(image->value).planes[channel].data();
        }
    });
}

void dlacs_image_free(dlacs_image* image) { delete image; }

void dlacs_train_params_default(dlacs_train_params* params)
{
    if (params == nullptr) {
        return;
    }
    const dlacs::TrainOptions d;
    *params = {d.kx,   d.ky,
               d.count, static_cast<uint32_t>(d.bits),
               d.crop, d.crops_per_frame,
               d.config.seed, d.config.learning_rate,
               d.config.epochs, d.config.batch_size};
}

dlacs_status dlacs_masks_train(const char* directory, const dlacs_train_params* params, dlacs_epoch_callback on_epoch,
                               void* user, dlacs_masks** out, dlacs_train_summary* summary)
{
    return guarded([&] {
        need(directory, "directory");
        need(out, "out");
        dlacs_train_params p;
        dlacs_train_params_default(&p);
        if (params != nullptr) {
            p = *params;
        }
        dlacs::require(p.kx > 0 && p.kx <= 0xFFFF && p.ky > 0 && p.ky <= 0xFFFF, "block dimensions out of range");
        dlacs::require(p.mask_count > 0 && p.mask_count <= 0xFF, "mask count must be in [1, 255]");
        dlacs::TrainOptions options;
        options.kx = p.kx;
        options.ky = p.ky;
        options.count = p.mask_count;
        options.bits = static_cast<int>(p.bits);
        options.crop = p.crop;
        options.crops_per_frame = p.crops_per_frame;
        options.config = {p.learning_rate, p.epochs, p.batch_size, p.seed};

        dlacs::EpochCallback cb;
        if (on_epoch != nullptr) {
            cb = [on_epoch, user](std::uint32_t epoch, double mse) { on_epoch(epoch, mse, user); };
        }
        const auto frames = dlacs::load_training_frames(directory);
        auto outcome = dlacs::train_masks(frames, options, cb);
        if (summary != nullptr) {
            summary->initial_mse = outcome.report.epoch_mse.front();
            summary->final_mse = outcome.report.final_mse;
            summary->pca_mse = outcome.report.pca_mse;
            summary->integer_mse_before_refit = outcome.integer_mse_before_refit;
            summary->integer_mse = outcome.integer_mse;
            summary->q_scale = outcome.masks.q_scale;
            summary->mask_scale = outcome.masks.scale;
            summary->degenerate = outcome.masks.degenerate ? 1 : 0;
        }
        *out = new dlacs_masks{std::move(outcome.masks)};
    });
}

dlacs_status dlacs_masks_load(const char* path, dlacs_masks** out)
{
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new dlacs_masks{dlacs::deserialize_masks(dlacs::read_file(path))};
    });
}

dlacs_status dlacs_masks_save(const dlacs_masks* masks, const char* path)
{
    return guarded([&] {
        need(masks, "masks");
        need(path, "path");
        dlacs::write_file(path, dlacs::serialize_masks(masks->value));
    });
}

dlacs_status dlacs_masks_get_info(const dlacs_masks* masks, dlacs_masks_info* out)
{
    return guarded([&] {
        need(masks, "masks");
        need(out, "out");
        const auto& m = masks->value;
        *out = {m.kx, m.ky, m.count, m.bits, m.q_scale, m.scale, m.has_decoder() ? 1 : 0, m.degenerate ? 1 : 0};
    });
}

dlacs_status dlacs_masks_encoder(const dlacs_masks* masks, const int8_t** data, size_t* size)
{
    return guarded([&] {
        need(masks, "masks");
        need(data, "data");
        need(size, "size");
        *data = masks->value.encoder.data();
        *size = masks->value.encoder.size();
    });
}

void dlacs_masks_free(dlacs_masks* masks) { delete masks; }

dlacs_status dlacs_compress(const dlacs_image* image, const dlacs_masks* masks, const dlacs_compress_options* options,
                            dlacs_container** out)
{
    return guarded([&] {
        need(image, "image");
        need(masks, "masks");
        need(out, "out");
        dlacs::CompressOptions opts;
        if (options != nullptr) {
            opts.entropy_coding = options->entropy_coding != 0;
            opts.embed_decoder = options->embed_decoder != 0;
        }
        *out = new dlacs_container{dlacs::compress_image(image->value, masks->value, opts)};
    });
}

dlacs_status dlacs_decompress(const dlacs_container* container, const dlacs_masks* masks, int demosaic,
                              dlacs_image** out)
{
    return guarded([&] {
        need(container, "container");
        need(out, "out");
        *out = new dlacs_image{
            dlacs::decompress_container(container->value, masks ? &masks->value : nullptr, demosaic != 0)};
    });
}

dlacs_status dlacs_container_load(const char* path, dlacs_container** out)
{
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new dlacs_container{dlacs::deserialize_container(dlacs::read_file(path))};
    });
}

dlacs_status dlacs_container_save(const dlacs_container* container, const char* path)
{
    return guarded([&] {
        need(container, "container");
        need(path, "path");
        dlacs::write_file(path, dlacs::serialize_container(container->value));
    });
}

dlacs_status dlacs_container_get_info(const dlacs_container* container, dlacs_container_info* out)
{
    return guarded([&] {
        need(container, "container");
        need(out, "out");
        const auto& c = container->value;
        *out = {c.width,  c.height, c.kx,      c.ky,          c.count,
                c.bits,   c.q_scale, c.scale, c.flags(),     c.payload.size(),
                c.raw_payload_size()};
    });
}

void dlacs_container_free(dlacs_container* container) { delete container; }

dlacs_status dlacs_compare(const dlacs_image* a, const dlacs_image* b, int rgb, dlacs_quality* out)
{
    return guarded([&] {
        need(a, "a");
        need(b, "b");
        need(out, "out");
        const auto q = dlacs::compare_images(a->value, b->value, rgb != 0);
        *out = {q.mse, q.psnr, q.psnr_infinite() ? 1 : 0, q.ssim};
    });
}

dlacs_status dlacs_count_ops(uint32_t kx, uint32_t ky, uint32_t mask_count, dlacs_mode mode, dlacs_chroma chroma,
                             dlacs_op_count* out)
{
    return guarded([&] {
        need(out, "out");
        const auto m = mode == DLACS_MODE_RGB ? dlacs::CompressionMode::Rgb : dlacs::CompressionMode::Bayer;
        dlacs::ChromaSampling c = dlacs::ChromaSampling::Yuv444;
        if (chroma == DLACS_CHROMA_422) {
            c = dlacs::ChromaSampling::Yuv422;
        } else if (chroma == DLACS_CHROMA_420) {
            c = dlacs::ChromaSampling::Yuv420;
        }
        const auto ops = dlacs::count_ops(kx, ky, mask_count, m, c);
        *out = {to_c(ops.dlacs.multiplies),   to_c(ops.dlacs.additions), to_c(ops.dlacs.divisions),
                to_c(ops.jpeg_dct.multiplies), to_c(ops.jpeg_dct.additions), to_c(ops.jpeg_ratio),
                to_c(dlacs::compression_ratio(kx, ky, mask_count, m))};
    });
}

dlacs_status dlacs_bench(const dlacs_image* image, uint32_t iterations, uint32_t mask_size, dlacs_bench_report* out)
{
    return guarded([&] {
        need(image, "image");
        need(out, "out");
        const auto* frame = std::get_if<dlacs::BayerFrame>(&image->value);
        dlacs::require(frame != nullptr, "benchmark needs a single-channel frame");
        const auto r = dlacs::bench_encode_vs_dct(*frame, iterations, mask_size);
        const auto [dl_min, dl_max] = std::minmax_element(r.dlacs_samples.begin(), r.dlacs_samples.end());
        const auto [dc_min, dc_max] = std::minmax_element(r.dct_samples.begin(), r.dct_samples.end());
        *out = {r.ns_per_pixel_dlacs, r.ns_per_pixel_dct, r.ratio,  r.iterations, r.width,  r.height,
                r.mask_size,          r.threads,          *dl_min,  *dl_max,      *dc_min,  *dc_max};
    });
}

dlacs_status dlacs_ec_encode(const uint8_t* data, size_t size, dlacs_buffer** out)
{
    return guarded([&] {
        need(out, "out");
        dlacs::require(data != nullptr || size == 0, "data must not be NULL");
        const std::span<const std::uint8_t> in(data, size);
        *out = new dlacs_buffer{dlacs::frame_stream(dlacs::ec_encode(in))};
    });
}

dlacs_status dlacs_ec_decode(const uint8_t* data, size_t size, dlacs_buffer** out)
{
    return guarded([&] {
        need(out, "out");
        dlacs::require(data != nullptr || size == 0, "data must not be NULL");
        const std::span<const std::uint8_t> in(data, size);
        *out = new dlacs_buffer{dlacs::ec_decode(dlacs::parse_stream(in))};
    });
}

const uint8_t* dlacs_buffer_data(const dlacs_buffer* buffer) { return buffer ? buffer->value.data() : nullptr; }

size_t dlacs_buffer_size(const dlacs_buffer* buffer) { return buffer ? buffer->value.size() : 0; }

void dlacs_buffer_free(dlacs_buffer* buffer) { delete buffer; }

} // extern "C"
