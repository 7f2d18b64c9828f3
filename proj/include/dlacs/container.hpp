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

#include "dlacs/masks.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace dlacs {

/// On-disk record: header, integer masks, optional decode kernel, payload.
///
///   offset  size  field
///   0       6     magic "DLACS\0"
///   6       1     version (1)
///   7       1     flags: bit0 entropy coded, bit1 RGB planes, bit2 decode kernel present
///   8       4     width  (Nx)
///   12      4     height (Ny)
///   16      2     kx
///   18      2     ky
///   20      1     mask count
///   21      1     mask bit depth
///   22      4     q_scale
///   26      4     mask scale (f32)
///   30      n     integer masks, n = count*kx*ky signed bytes
///   ...     4n    decode kernel f32 (only with bit2)
///   ...     8     payload length
///   ...           payload: CompQ bytes (three planes back to back in RGB
///                 mode), or one framed entropy stream over those bytes
///
/// All integers little-endian.
struct Container {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint16_t kx = 0;
    std::uint16_t ky = 0;
    std::uint8_t count = 0;
    std::uint8_t bits = 0;
    std::uint32_t q_scale = 1;
    float scale = 1.0f;
    bool entropy_coded = false;
    bool rgb = false;
    std::vector<std::int8_t> encoder;
    std::vector<float> decoder;
    std::vector<std::uint8_t> payload;

    static constexpr std::size_t kFixedHeaderSize = 30;
    static constexpr std::uint8_t kVersion = 1;

    std::uint8_t flags() const;
    std::size_t planes() const { return rgb ? 3 : 1; }
    /// Bytes of CompQ data the payload carries (after entropy decoding).
    std::uint64_t raw_payload_size() const;

    /// Mask set implied by the header (no float encoder).
    MaskSet masks() const;

    bool operator==(const Container&) const = default;
};

std::vector<std::uint8_t> serialize_container(const Container& container);
Container deserialize_container(std::span<const std::uint8_t> bytes);

} // namespace dlacs
