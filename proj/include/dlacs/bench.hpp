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

#include "dlacs/encoder.hpp"
#include "dlacs/frame_io.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dlacs {

using Block8x8 = std::array<double, 64>;

/// Orthonormal 2D DCT-II of a row-major 8x8 block, in the direct form: each
/// coefficient is a 64-term dot product with a precomputed basis image.
Block8x8 dct8x8(std::span<const double, 64> block);
Block8x8 idct8x8(std::span<const double, 64> coeffs);

/// Arithmetic per pixel.
struct OpCount {
    Rational multiplies;
    Rational additions;
    Rational divisions;

    bool operator==(const OpCount&) const = default;
};

enum class ChromaSampling { Yuv444, Yuv422, Yuv420 };

struct OpComparison {
    OpCount dlacs;
    OpCount jpeg_dct;
    Rational jpeg_ratio; ///< jpeg multiplies / dlacs multiplies
};

/// Encoder cost of mask sums plus one quantizing division per code, against
/// a direct-form 8x8 DCT (64 multiplies and 64 additions per coefficient) on
/// the Y, Cb, Cr planes at the given chroma sampling.
OpComparison count_ops(std::uint32_t kx, std::uint32_t ky, std::uint32_t count, CompressionMode mode,
                       ChromaSampling chroma = ChromaSampling::Yuv444);

struct BenchReport {
    double ns_per_pixel_dlacs = 0.0; ///< medians
    double ns_per_pixel_dct = 0.0;
    double ratio = 0.0; ///< dct / dlacs
    std::uint32_t iterations = 0;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t mask_size = 8;
    std::uint32_t threads = 1;
    std::vector<double> dlacs_samples; ///< ns per pixel, one per iteration
    std::vector<double> dct_samples;

    std::string to_table() const;
};

/// Single-threaded wall-clock comparison of the integer mask encoder (four
/// masks of mask_size x mask_size, plus quantization) and a full-frame 8x8
/// DCT over the same pixels. One untimed warm-up pass; medians reported.
BenchReport bench_encode_vs_dct(const BayerFrame& frame, std::uint32_t iterations, std::uint32_t mask_size = 8);

double median(std::vector<double> values);

/// Down-and-up sampling baseline: area-average downsample by `factor`, then
/// bilinear (pixel-center aligned, edge-clamped) upsample to the original size.
BayerFrame daus_baseline(const BayerFrame& plane, std::uint32_t factor);
RgbImage daus_baseline(const RgbImage& image, std::uint32_t factor);

} // namespace dlacs
