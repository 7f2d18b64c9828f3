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

#include <array>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace dlacs {

enum class Pattern : std::uint8_t { RGGB, Plain };

/// Single-plane 8-bit frame: a raw Bayer mosaic or one color channel.
/// Samples are row-major, `width` columns by `height` rows.
struct BayerFrame {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> samples;
    Pattern pattern = Pattern::RGGB;

    BayerFrame() = default;
    BayerFrame(std::uint32_t w, std::uint32_t h, Pattern p = Pattern::RGGB)
        : width(w), height(h), samples(std::size_t(w) * h, 0), pattern(p)
    {
    }

    std::uint8_t at(std::uint32_t x, std::uint32_t y) const { return samples[std::size_t(y) * width + x]; }
    std::uint8_t& at(std::uint32_t x, std::uint32_t y) { return samples[std::size_t(y) * width + x]; }
    std::size_t size() const { return samples.size(); }

    bool operator==(const BayerFrame&) const = default;
};

/// Planar 8-bit RGB image.
struct RgbImage {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::array<std::vector<std::uint8_t>, 3> planes;

    RgbImage() = default;
    RgbImage(std::uint32_t w, std::uint32_t h) : width(w), height(h)
    {
        for (auto& p : planes) {
            p.assign(std::size_t(w) * h, 0);
        }
    }

    /// Copy of one channel as a plain frame.
    BayerFrame plane(int channel) const;
    void set_plane(int channel, const BayerFrame& frame);

    bool operator==(const RgbImage&) const = default;
};

BayerFrame load_pgm(const std::filesystem::path& path, Pattern pattern = Pattern::RGGB);
void save_pgm(const BayerFrame& frame, const std::filesystem::path& path);

RgbImage load_ppm(const std::filesystem::path& path);
void save_ppm(const RgbImage& image, const std::filesystem::path& path);

// In-memory forms of the above; the file functions are thin wrappers.
BayerFrame decode_pgm(const std::vector<std::uint8_t>& bytes, Pattern pattern = Pattern::RGGB);
std::vector<std::uint8_t> encode_pgm(const BayerFrame& frame);
RgbImage decode_ppm(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_ppm(const RgbImage& image);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

/// Top-left corners (x, y) of `count` square crops. Both coordinates are
/// always even so every crop keeps the RGGB phase of its source.
std::vector<std::pair<std::uint32_t, std::uint32_t>> crop_offsets(std::uint32_t width, std::uint32_t height,
                                                                  std::uint32_t crop, std::size_t count,
                                                                  std::uint64_t seed);

std::vector<BayerFrame> extract_crops(const BayerFrame& frame, std::uint32_t crop, std::size_t count,
                                      std::uint64_t seed);

BayerFrame crop_frame(const BayerFrame& frame, std::uint32_t x, std::uint32_t y, std::uint32_t w, std::uint32_t h);

} // namespace dlacs
