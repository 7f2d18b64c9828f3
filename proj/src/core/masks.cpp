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
#include "dlacs/masks.hpp"

#include "byte_io.hpp"
#include "dlacs/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dlacs {

namespace {

constexpr std::uint8_t kMaskMagic[6] = {'D', 'L', 'M', 'S', 'K', 0};
constexpr std::uint8_t kMaskVersion = 1;

enum MaskFlags : std::uint8_t {
    kDegenerate = 1u << 0,
    kHasDecoder = 1u << 1,
    kHasFloatEncoder = 1u << 2,
};

double max_abs(std::span<const double> w)
{
    double m = 0.0;
    for (const double v : w) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

void check_bits(int bits) { require(bits >= 2 && bits <= 8, "mask bit depth must be in [2, 8]"); }

} // namespace

void MaskSet::validate() const
{
    require(kx > 0 && ky > 0 && count > 0, "mask dimensions must be positive");
    check_bits(bits);
    require(encoder.size() == weight_count(), "integer mask array has wrong size");
    for (const auto v : encoder) {
        require(v >= mask_min(bits) && v <= mask_max(bits), "integer mask weight outside bit-depth range");
    }
    require(std::isfinite(scale) && scale > 0.0f, "mask scale must be positive");
    require(encoder_float.empty() || encoder_float.size() == weight_count(), "float mask array has wrong size");
    require(decoder.empty() || decoder.size() == weight_count(), "decode kernel has wrong size");
    require(q_scale >= 1, "quantization scale must be >= 1");
}

std::vector<double> default_scale_grid(std::span<const double> weights, int bits)
{
    check_bits(bits);
    const double m = max_abs(weights);
    if (m == 0.0) {
        return {1.0};
    }
    constexpr int kSteps = 512;
    const double lo = 0.1 / m;
    const double hi = 2.0 * mask_max(bits) / m;
    std::vector<double> grid(kSteps);
    const double ratio = std::log(hi / lo);
    for (int i = 0; i < kSteps; ++i) {
        grid[i] = lo * std::exp(ratio * i / (kSteps - 1));
    }
    return grid;
}

IntegerizedMasks integerize_masks(std::span<const double> weights, int bits, std::span<const double> grid)
{
    check_bits(bits);
    require(!grid.empty(), "scale grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require(grid[i] > 0.0 && std::isfinite(grid[i]), "scale grid values must be positive");
        require(i == 0 || grid[i] > grid[i - 1], "scale grid must be ascending");
    }

    IntegerizedMasks result;
    result.values.assign(weights.size(), 0);
    if (max_abs(weights) == 0.0) {
        result.scale = grid.front();
        result.degenerate = true;
        return result;
    }

    const double lo = mask_min(bits);
    const double hi = mask_max(bits);
    double best_err = 0.0;
    bool have_best = false;
    for (const double sc : grid) {
        double err = 0.0;
        for (const double w : weights) {
            const double q = std::clamp(std::round(w * sc), lo, hi);
            const double d = w - q / sc;
            err += d * d;
        }
        err /= double(weights.size());
        // Strict comparison keeps the smallest scale on ties.
        if (!have_best || err < best_err) {
            best_err = err;
            result.scale = sc;
            have_best = true;
        }
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
        result.values[i] = static_cast<std::int8_t>(std::clamp(std::round(weights[i] * result.scale), lo, hi));
    }
    result.degenerate = std::all_of(result.values.begin(), result.values.end(), [](auto v) { return v == 0; });
    return result;
}

IntegerizedMasks integerize_masks(std::span<const double> weights, int bits)
{
    const auto grid = default_scale_grid(weights, bits);
    return integerize_masks(weights, bits, grid);
}

std::vector<std::uint8_t> serialize_masks(const MaskSet& masks)
{
    masks.validate();
    detail::ByteWriter w;
    w.bytes(kMaskMagic);
    w.u8(kMaskVersion);
    std::uint8_t flags = 0;
    if (masks.degenerate) {
        flags |= kDegenerate;
    }
    if (masks.has_decoder()) {
        flags |= kHasDecoder;
    }
    if (!masks.encoder_float.empty()) {
        flags |= kHasFloatEncoder;
    }
    w.u8(flags);
    w.u16(masks.kx);
    w.u16(masks.ky);
    w.u8(masks.count);
    w.u8(masks.bits);
    w.u32(masks.q_scale);
    w.f32(masks.scale);
    for (const auto v : masks.encoder) {
        w.u8(static_cast<std::uint8_t>(v));
    }
    for (const float v : masks.encoder_float) {
        w.f32(v);
    }
    for (const float v : masks.decoder) {
        w.f32(v);
    }
    return w.take();
}

MaskSet deserialize_masks(std::span<const std::uint8_t> bytes)
{
    detail::ByteReader r(bytes, "mask file");
    const auto magic = r.bytes(sizeof(kMaskMagic));
    if (!std::equal(magic.begin(), magic.end(), std::begin(kMaskMagic))) {
        fail(ErrorCode::Format, "mask file: bad magic");
    }
    const auto version = r.u8();
    if (version != kMaskVersion) {
        fail(ErrorCode::Unsupported, "mask file: unsupported version " + std::to_string(version));
    }
    const auto flags = r.u8();
    if (flags & ~(kDegenerate | kHasDecoder | kHasFloatEncoder)) {
        fail(ErrorCode::Format, "mask file: unknown flag bits");
    }
    MaskSet m;
    m.kx = r.u16();
    m.ky = r.u16();
    m.count = r.u8();
    m.bits = r.u8();
    m.q_scale = r.u32();
    m.scale = r.f32();
    m.degenerate = flags & kDegenerate;
    const std::size_t n = m.weight_count();
    for (const auto b : r.bytes(n)) {
        m.encoder.push_back(static_cast<std::int8_t>(b));
    }
    if (flags & kHasFloatEncoder) {
        m.encoder_float.resize(n);
        for (auto& v : m.encoder_float) {
            v = r.f32();
        }
    }
    if (flags & kHasDecoder) {
        m.decoder.resize(n);
        for (auto& v : m.decoder) {
            v = r.f32();
        }
    }
    if (r.remaining() != 0) {
        fail(ErrorCode::Format, "mask file: trailing bytes");
    }
    try {
        m.validate();
    } catch (const Error& e) {
        fail(ErrorCode::Format, std::string("mask file: ") + e.what());
    }
    return m;
}

} // namespace dlacs
