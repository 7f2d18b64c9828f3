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
#include "dlacs/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dlacs {

namespace {

constexpr std::uint32_t kTile = 64;

void halve(const std::int32_t* __restrict in, std::int32_t* __restrict out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = in[2 * i] + in[2 * i + 1];
    }
}

// Row-wise multiply-accumulate against each mask row repeated to a fixed
// 64-wide tile, then one horizontal reduction per block row. Same inner loop
// for every block width that divides the tile.
void accumulate_tiled(const BayerFrame& frame, const IntKernel& kernel, CompRaw& out)
{
    const std::uint32_t width = frame.width;
    const std::uint32_t kx = kernel.kx;
    const std::uint32_t ky = kernel.ky;
    const std::size_t mask_size = std::size_t(kx) * ky;

    std::vector<std::int16_t> tile(std::size_t(kernel.count) * ky * kTile);
    for (std::uint32_t c = 0; c < kernel.count; ++c) {
        for (std::uint32_t v = 0; v < ky; ++v) {
            for (std::uint32_t j = 0; j < kTile; ++j) {
                tile[(std::size_t(c) * ky + v) * kTile + j] = kernel.weights[c * mask_size + v * kx + j % kx];
            }
        }
    }

    std::vector<std::int32_t> acc(width);
    std::vector<std::int32_t> half(width / 2 + 1);
    for (std::uint32_t by = 0; by < out.blocks_y; ++by) {
        const std::uint8_t* rows = frame.samples.data() + std::size_t(by) * ky * width;
        for (std::uint32_t c = 0; c < kernel.count; ++c) {
            std::int32_t* __restrict a = acc.data();
            std::fill(acc.begin(), acc.end(), 0);
            for (std::uint32_t v = 0; v < ky; ++v) {
                const std::uint8_t* __restrict row = rows + std::size_t(v) * width;
                const std::int16_t* __restrict t = tile.data() + (std::size_t(c) * ky + v) * kTile;
                std::size_t x = 0;
                for (; x + kTile <= width; x += kTile) {
                    const std::uint8_t* __restrict px = row + x;
                    std::int32_t* __restrict ax = a + x;
                    for (std::size_t j = 0; j < kTile; ++j) {
                        ax[j] += std::int32_t(std::int16_t(px[j]) * t[j]);
                    }
                }
                for (; x < width; ++x) {
                    a[x] += std::int32_t(row[x]) * t[x % kTile];
                }
            }
            // kx is a power of two here; pairwise halving keeps the reduction vectorizable
            std::int32_t* src = acc.data();
            std::int32_t* dst = half.data();
            std::size_t n = width;
            for (std::uint32_t step = kx; step > 1; step /= 2) {
                n /= 2;
                halve(src, dst, n);
                std::swap(src, dst);
            }
            std::copy_n(src, out.blocks_x, out.values.data() + (std::size_t(c) * out.blocks_y + by) * out.blocks_x);
        }
    }
}

} // namespace

CompRaw compress(const BayerFrame& frame, const IntKernel& kernel)
{
    const bool fast = kernel.kx > 0 && kTile % kernel.kx == 0 && kernel.ky > 0 && kernel.count > 0 &&
                      frame.width % kernel.kx == 0 && frame.height % kernel.ky == 0 &&
                      kernel.weights.size() == std::size_t(kernel.kx) * kernel.ky * kernel.count;
    if (fast) {
        CompRaw out;
        out.blocks_x = frame.width / kernel.kx;
        out.blocks_y = frame.height / kernel.ky;
        out.count = kernel.count;
        out.values.assign(out.plane_size() * kernel.count, 0);
        accumulate_tiled(frame, kernel, out);
        return out;
    }
    PlainArith arith;
    return compress_with(frame, kernel, arith);
}

CompRaw compress(const BayerFrame& frame, const MaskSet& masks) { return compress(frame, IntKernel::of(masks)); }

std::array<CompRaw, 3> compress_rgb(const RgbImage& image, const IntKernel& kernel)
{
    return {compress(image.plane(0), kernel), compress(image.plane(1), kernel), compress(image.plane(2), kernel)};
}

CompQ quantize(const CompRaw& comp, std::uint32_t q_scale)
{
    require(q_scale >= 1 && q_scale <= 0x7FFFFFFFu, "quantization scale must be >= 1");
    CompQ out{comp.blocks_x, comp.blocks_y, comp.count, q_scale, {}};
    out.stored.resize(comp.values.size());
    // m = floor((2|v| + q) / 2q) via a reciprocal. Only quotients below 257
    // matter; there the product is within 2^-43 of exact, while a non-integer
    // quotient sits at least 1/2q >= 2^-32 under the next integer. The 2^-38
    // bias lifts exact integers that rounded low and moves nothing else.
    const double q = double(q_scale);
    const double inv = 1.0 / (2.0 * q);
    const std::int32_t* __restrict in = comp.values.data();
    std::uint8_t* __restrict dst = out.stored.data();
    const std::size_t n = comp.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double num = 2.0 * std::abs(double(in[i])) + q;
        const auto m = static_cast<std::int32_t>(std::min(num * inv + 0x1p-38, 256.0));
        const std::int32_t sign = in[i] >> 31;
        const std::int32_t level = std::clamp((m ^ sign) - sign, -128, 127);
        dst[i] = static_cast<std::uint8_t>(level + 128);
    }
    return out;
}

std::vector<std::uint32_t> default_q_grid()
{
    std::vector<std::uint32_t> grid(4096);
    for (std::uint32_t i = 0; i < grid.size(); ++i) {
        grid[i] = i + 1;
    }
    return grid;
}

std::uint32_t select_q_scale(std::span<const CompRaw> samples, std::span<const std::uint32_t> grid)
{
    require(!grid.empty(), "q_scale grid is empty");
    std::map<std::int32_t, std::uint64_t> histogram;
    std::uint64_t total = 0;
    for (const auto& s : samples) {
        for (const auto v : s.values) {
            ++histogram[v];
        }
        total += s.values.size();
    }
    require(total > 0, "select_q_scale needs at least one sample value");

    std::uint32_t best_q = 0;
    long double best_err = 0;
    for (const auto q : grid) {
        require(q >= 1 && q <= 0x7FFFFFFFu, "q_scale grid values must be >= 1");
        long double err = 0;
        for (const auto& [v, n] : histogram) {
            const auto level = std::clamp(PlainArith::div_round(v, std::int32_t(q)), -128, 127);
            const long double d = (long double)q * level - v;
            err += d * d * n;
        }
        err /= total;
        if (best_q == 0 || err < best_err || (err == best_err && q < best_q)) {
            best_q = q;
            best_err = err;
        }
    }
    return best_q;
}

std::uint32_t select_q_scale(std::span<const CompRaw> samples)
{
    const auto grid = default_q_grid();
    return select_q_scale(samples, grid);
}

Rational compression_ratio(std::uint32_t kx, std::uint32_t ky, std::uint32_t count, CompressionMode mode)
{
    require(kx > 0 && ky > 0 && count > 0, "compression ratio needs positive dimensions");
    const std::int64_t block = std::int64_t(kx) * ky;
    return mode == CompressionMode::Bayer ? Rational::make(count, 3 * block) : Rational::make(count, block);
}

} // namespace dlacs
