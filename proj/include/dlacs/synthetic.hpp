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

#include "dlacs/frame_io.hpp"

#include <cstdint>
#include <vector>

namespace dlacs {

/// Multi-octave smoothed value noise. Each octave is a grid of Gaussian
/// samples every `spacing` pixels, smoothstep-interpolated, weighted by
/// spacing^amplitude_exponent (exponent 1 gives a 1/f amplitude spectrum).
struct SynthParams {
    std::vector<std::uint32_t> spacings{64, 32, 16, 8, 4};
    double amplitude_exponent = 1.0;
    std::uint8_t low = 16;
    std::uint8_t high = 240;
};

BayerFrame synthesize_frame(std::uint32_t width, std::uint32_t height, std::uint64_t seed,
                            const SynthParams& params = {});

/// Correlated RGB planes: a shared luminance field plus two weaker chroma fields.
RgbImage synthesize_rgb(std::uint32_t width, std::uint32_t height, std::uint64_t seed,
                        const SynthParams& params = {});

} // namespace dlacs
