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
#pragma once

#include "dlacs/container.hpp"
#include "dlacs/frame_io.hpp"
#include "dlacs/masks.hpp"
#include "dlacs/metrics.hpp"
#include "dlacs/trainer.hpp"

#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace dlacs {

/// A decoded file: a raw mosaic (PGM) or an RGB image (PPM).
using Image = std::variant<BayerFrame, RgbImage>;

Image load_image(const std::filesystem::path& path);
void save_image(const Image& image, const std::filesystem::path& path);

struct TrainOptions {
    std::uint32_t kx = 8;
    std::uint32_t ky = 8;
    std::uint32_t count = 4;
    int bits = 4;
    std::uint32_t crop = 128;
    std::uint32_t crops_per_frame = 10;
    TrainConfig config;
};

struct TrainOutcome {
    MaskSet masks;
    TrainReport report;
    double integer_mse_before_refit = 0.0; ///< integer encoder, float-trained decoder
    double integer_mse = 0.0;              ///< integer encoder, refit decoder
};

/// Crops every frame, trains the float kernels, integerizes the encoder,
/// refits the decoder to it and picks q_scale on the compressed crops.
TrainOutcome train_masks(std::span<const BayerFrame> frames, const TrainOptions& options,
                         const EpochCallback& on_epoch = {});

/// Frames for training from every .pgm (one mosaic) and .ppm (three planes)
/// file in `dir`, in file-name order.
std::vector<BayerFrame> load_training_frames(const std::filesystem::path& dir);

struct CompressOptions {
    bool entropy_coding = false;
    bool embed_decoder = true;
};

Container compress_image(const Image& image, const MaskSet& masks, const CompressOptions& options = {});

/// Raw CompQ bytes of the container (entropy decoded when flagged).
std::vector<std::uint8_t> container_codes(const Container& container);

/// Linear decode. Uses the container's decode kernel, else `masks`; throws
/// "decode kernel unavailable" when neither has one.
Image decompress_container(const Container& container, const MaskSet* masks = nullptr, bool demosaic = false);

/// With `rgb`, mosaics are demosaiced before comparison.
QualityReport compare_images(const Image& a, const Image& b, bool rgb = false);

} // namespace dlacs
