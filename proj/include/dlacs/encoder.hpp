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

#include "dlacs/error.hpp"
#include "dlacs/frame_io.hpp"
#include "dlacs/masks.hpp"

#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace dlacs {

/// Mask-summed block values before quantization.
/// Layout: [mask][block row][block col].
struct CompRaw {
    std::uint32_t blocks_x = 0;
    std::uint32_t blocks_y = 0;
    std::uint32_t count = 0;
    std::vector<std::int32_t> values;

    std::size_t plane_size() const { return std::size_t(blocks_x) * blocks_y; }
    std::int32_t at(std::uint32_t c, std::uint32_t by, std::uint32_t bx) const
    {
        return values[(std::size_t(c) * blocks_y + by) * blocks_x + bx];
    }
    bool operator==(const CompRaw&) const = default;
};

/// Quantized codes, stored as signed level + 128. Same layout as CompRaw.
struct CompQ {
    std::uint32_t blocks_x = 0;
    std::uint32_t blocks_y = 0;
    std::uint32_t count = 0;
    std::uint32_t q_scale = 1;
    std::vector<std::uint8_t> stored;

    bool operator==(const CompQ&) const = default;
};

/// Non-owning view of an integer mask kernel, [mask][row][col].
struct IntKernel {
    std::uint32_t kx = 0;
    std::uint32_t ky = 0;
    std::uint32_t count = 0;
    std::span<const std::int8_t> weights;

    static IntKernel of(const MaskSet& m) { return {m.kx, m.ky, m.count, m.encoder}; }
};

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t n, std::int64_t d)
    {
        require(d != 0, "zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const auto g = std::gcd(n, d);
        return g == 0 ? Rational{0, 1} : Rational{n / g, d / g};
    }
    double value() const { return double(num) / double(den); }
    bool operator==(const Rational&) const = default;
};

enum class CompressionMode { Bayer, Rgb };

/// Default arithmetic for the encoder loops. Tests substitute a counting
/// policy with the same interface to audit per-pixel operation counts.
struct PlainArith {
    static std::int32_t mul(std::int32_t a, std::int32_t b) { return a * b; }
    static std::int32_t add(std::int32_t a, std::int32_t b) { return a + b; }
    /// Integer division rounding half away from zero.
    static std::int32_t div_round(std::int32_t v, std::int32_t q)
    {
        const std::int64_t num = 2 * std::int64_t(v);
        const std::int64_t den = 2 * std::int64_t(q);
        return static_cast<std::int32_t>(v >= 0 ? (num + q) / den : -((-num + q) / den));
    }
};

template <class Arith>
CompRaw compress_with(const BayerFrame& frame, const IntKernel& kernel, Arith& arith)
{
    require(kernel.kx > 0 && kernel.ky > 0 && kernel.count > 0, "empty mask kernel");
    require(kernel.weights.size() == std::size_t(kernel.kx) * kernel.ky * kernel.count, "mask kernel size mismatch");
    if (frame.width % kernel.kx != 0 || frame.height % kernel.ky != 0) {
        fail(ErrorCode::InvalidArgument,
             "frame " + std::to_string(frame.width) + "x" + std::to_string(frame.height) +
                 " not divisible by block " + std::to_string(kernel.kx) + "x" + std::to_string(kernel.ky) +
                 ": pad or crop required (e.g. crop to " + std::to_string(frame.width / kernel.kx * kernel.kx) + "x" +
                 std::to_string(frame.height / kernel.ky * kernel.ky) + ")");
    }
    CompRaw out;
    out.blocks_x = frame.width / kernel.kx;
    out.blocks_y = frame.height / kernel.ky;
    out.count = kernel.count;
    out.values.assign(out.plane_size() * kernel.count, 0);

    const std::size_t mask_size = std::size_t(kernel.kx) * kernel.ky;
    for (std::uint32_t by = 0; by < out.blocks_y; ++by) {
        for (std::uint32_t c = 0; c < kernel.count; ++c) {
            std::int32_t* acc = out.values.data() + (std::size_t(c) * out.blocks_y + by) * out.blocks_x;
            const std::int8_t* mask = kernel.weights.data() + c * mask_size;
            for (std::uint32_t v = 0; v < kernel.ky; ++v) {
                const std::uint8_t* row = frame.samples.data() + (std::size_t(by) * kernel.ky + v) * frame.width;
                const std::int8_t* mrow = mask + std::size_t(v) * kernel.kx;
                for (std::uint32_t bx = 0; bx < out.blocks_x; ++bx) {
                    const std::uint8_t* px = row + std::size_t(bx) * kernel.kx;
                    std::int32_t sum = acc[bx];
                    for (std::uint32_t u = 0; u < kernel.kx; ++u) {
                        sum = arith.add(sum, arith.mul(px[u], mrow[u]));
                    }
                    acc[bx] = sum;
                }
            }
        }
    }
    return out;
}

template <class Arith>
CompQ quantize_with(const CompRaw& comp, std::uint32_t q_scale, Arith& arith)
{
    require(q_scale >= 1 && q_scale <= 0x7FFFFFFFu, "quantization scale must be >= 1");
    CompQ out{comp.blocks_x, comp.blocks_y, comp.count, q_scale, {}};
    out.stored.resize(comp.values.size());
    for (std::size_t i = 0; i < comp.values.size(); ++i) {
        auto level = arith.div_round(comp.values[i], static_cast<std::int32_t>(q_scale));
        level = level < -128 ? -128 : (level > 127 ? 127 : level);
        out.stored[i] = static_cast<std::uint8_t>(level + 128);
    }
    return out;
}

/// Blocked mask sums: out[c][by][bx] = sum over the block of pixel * mask[c].
/// Frame dimensions must be multiples of the block dimensions.
CompRaw compress(const BayerFrame& frame, const IntKernel& kernel);
CompRaw compress(const BayerFrame& frame, const MaskSet& masks);

/// One CompRaw per plane, same masks.
std::array<CompRaw, 3> compress_rgb(const RgbImage& image, const IntKernel& kernel);

/// stored = clamp(round(value / q_scale), -128, 127) + 128
CompQ quantize(const CompRaw& comp, std::uint32_t q_scale);

std::vector<std::uint32_t> default_q_grid();

/// Integer q minimizing mean (q * clamp(round(v / q), -128, 127) - v)^2 over all
/// sample values; ties resolve to the smallest q.
std::uint32_t select_q_scale(std::span<const CompRaw> samples, std::span<const std::uint32_t> grid);
std::uint32_t select_q_scale(std::span<const CompRaw> samples);

/// Bayer: n_c / (3 kx ky) against a 3 x 8-bit frame. Rgb: n_c / (kx ky) per channel.
Rational compression_ratio(std::uint32_t kx, std::uint32_t ky, std::uint32_t count, CompressionMode mode);

} // namespace dlacs
