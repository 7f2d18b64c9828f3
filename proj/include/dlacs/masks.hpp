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

#include <cstdint>
#include <span>
#include <vector>

namespace dlacs {

/// A set of `count` block masks of `kx` columns by `ky` rows.
///
/// All arrays are laid out [mask][row][col]. `encoder` holds the signed
/// integer masks the capture side applies; `scale` is the factor that took
/// the float masks onto that integer grid (encoder ~= round(scale * float)).
/// `decoder` is the real-valued transpose kernel used on the display side,
/// expressed for codes divided by `scale`. `q_scale` is the quantization
/// divisor chosen on training data.
struct MaskSet {
    std::uint16_t kx = 8;
    std::uint16_t ky = 8;
    std::uint8_t count = 4;
    std::uint8_t bits = 4;
    std::vector<std::int8_t> encoder;
    float scale = 1.0f;
    std::vector<float> encoder_float; ///< optional; kept for retraining/inspection
    std::vector<float> decoder;       ///< optional; required for decoding
    std::uint32_t q_scale = 1;
    bool degenerate = false;

    std::size_t mask_size() const { return std::size_t(kx) * ky; }
    std::size_t weight_count() const { return mask_size() * count; }
    bool has_decoder() const { return !decoder.empty(); }

    /// Throws unless array sizes, bit depth and integer ranges are consistent.
    void validate() const;

    bool operator==(const MaskSet&) const = default;
};

struct IntegerizedMasks {
    std::vector<std::int8_t> values;
    double scale = 0.0;
    bool degenerate = false;
};

/// Inclusive signed range of a `bits`-bit integer mask weight.
constexpr int mask_min(int bits) { return -(1 << (bits - 1)); }
constexpr int mask_max(int bits) { return (1 << (bits - 1)) - 1; }

/// 512 log-spaced scales spanning [0.1, 2 * mask_max(bits)] / max|w|.
std::vector<double> default_scale_grid(std::span<const double> weights, int bits);

/// Scan `grid` for the scale whose clamped rounding best reproduces the float
/// weights: minimizes mean((w - clamp(round(w * sc)) / sc)^2). Ties go to the
/// smaller scale. All-zero weights yield zeros and the degenerate flag.
IntegerizedMasks integerize_masks(std::span<const double> weights, int bits, std::span<const double> grid);
IntegerizedMasks integerize_masks(std::span<const double> weights, int bits);

/// The kernel the encoder actually applies.
inline const std::vector<std::int8_t>& effective_encoder(const MaskSet& masks) { return masks.encoder; }

std::vector<std::uint8_t> serialize_masks(const MaskSet& masks);
MaskSet deserialize_masks(std::span<const std::uint8_t> bytes);

} // namespace dlacs
