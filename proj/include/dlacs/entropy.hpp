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

/// Order-0 adaptive arithmetic coding of byte payloads.
///
/// Model: 256 symbols, all starting at frequency 1; a coded symbol gains
/// kFrequencyIncrement and every frequency is halved (rounding up) once the
/// total exceeds kMaxTotal. Coder: 32-bit carry-less range coder emitting
/// whole bytes, flushed with four bytes of state.
struct EcStream {
    std::uint64_t original_length = 0;
    std::vector<std::uint8_t> coded;

    bool operator==(const EcStream&) const = default;
};

inline constexpr std::uint32_t kFrequencyIncrement = 32;
inline constexpr std::uint32_t kMaxTotal = 1u << 16;

EcStream ec_encode(std::span<const std::uint8_t> payload);
std::vector<std::uint8_t> ec_decode(const EcStream& stream);

/// Framing used inside the container: u64 little-endian original length, then coded bytes.
std::vector<std::uint8_t> frame_stream(const EcStream& stream);
EcStream parse_stream(std::span<const std::uint8_t> framed);

} // namespace dlacs
